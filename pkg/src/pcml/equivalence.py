"""Universal-equivalence toolkit: the cycle sentence, witness search,
the vertex-merge homomorphism, and the finite-set witness construction.

The existential sentence Theta(z_0..z_{m-1}) (m >= 4) asserts, over the
cyclic index set Z_m: consecutive brackets vanish, distant pairs have
nonvanishing brackets, and triple brackets [[z_i,z_{i+2}],z_j] do not
vanish unless j sits directly between i and i+2.  On a cycle of the
same length the generators witness it; on a shorter cycle the search
over generator assignments exhausts without a witness, which is the
computational half of the cycle separation theorem.

The merge homomorphism phi_lambda sends x_{n-1} to lambda*x_{n-2} when
those two vertices have equal closed neighborhoods, fixing all other
generators.  For any nonzero element there is a threshold lambda_0
beyond which the image stays nonzero; taking the maximum over a closed
finite set Gamma-bar gives an embedding-style witness that merging a
neighborhood-equivalent vertex preserves the universal theory.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .core import (
    BasisMonomial,
    GeneratorOrder,
    LieElement,
    basis_monomial_with_start,
    bracket,
    glued_decomposition,
    monomial_normal_form,
)
from .errors import AlgebraError, CertificationError, GraphError
from .graphs import Graph, circ_dist, closed_neighborhood, cycle_graph, perp_classes


# ---------------------------------------------------------------------------
# the sentence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaInstance:
    """The quantifier-free core of the cycle sentence with m variables."""

    m: int
    graph: Graph
    order: GeneratorOrder

    def __post_init__(self):
        if self.m < 4:
            raise AlgebraError("the sentence needs at least 4 variables")


class Atom(NamedTuple):
    family: str  # "adjacent-zero", "distant-nonzero", "triple-nonzero"
    i: int
    j: int


class ThetaResult(NamedTuple):
    holds: bool
    failing_atom: Optional[Atom]


def theta_atoms(m: int) -> Iterator[Atom]:
    for i in range(m):
        yield Atom("adjacent-zero", i, (i + 1) % m)
    for i in range(m):
        for j in range(i + 1, m):
            if circ_dist(m, i, j) > 1:
                yield Atom("distant-nonzero", i, j)
    for i in range(m):
        for j in range(m):
            if circ_dist(m, i, j) * circ_dist(m, (i + 2) % m, j) != 1:
                yield Atom("triple-nonzero", i, j)


def eval_theta(inst: ThetaInstance, assignment: Sequence[LieElement]) -> ThetaResult:
    """Evaluate all atoms; report the first violated one, if any."""
    if len(assignment) != inst.m:
        raise AlgebraError(f"assignment length {len(assignment)} != m = {inst.m}")
    for z in assignment:
        if z.graph != inst.graph or z.order != inst.order:
            raise AlgebraError("assignment element over the wrong algebra")
    z = list(assignment)
    m = inst.m
    for atom in theta_atoms(m):
        if atom.family == "adjacent-zero":
            ok = bracket(z[atom.i], z[atom.j]).is_zero()
        elif atom.family == "distant-nonzero":
            ok = not bracket(z[atom.i], z[atom.j]).is_zero()
        else:
            inner = bracket(z[atom.i], z[(atom.i + 2) % m])
            ok = not bracket(inner, z[atom.j]).is_zero()
        if not ok:
            return ThetaResult(False, atom)
    return ThetaResult(True, None)


def theta_identity_holds(m: int) -> bool:
    """Theta on the cycle of length m under z_i = x_i."""
    graph = cycle_graph(m)
    order = GeneratorOrder.ascending(m)
    inst = ThetaInstance(m, graph, order)
    assignment = [LieElement.generator(graph, order, i) for i in range(m)]
    return eval_theta(inst, assignment).holds


# ---------------------------------------------------------------------------
# witness search
# ---------------------------------------------------------------------------

class WitnessSearchReport(NamedTuple):
    mode: str
    n: int
    m: int
    witness: Optional[Tuple[int, ...]]
    checked: int
    space: int
    exhausted: bool
    no_repeat_sequences: Tuple[Tuple[int, ...], ...] = ()


def _constrained_sequences(n: int, m: int) -> Iterator[Tuple[int, ...]]:
    """All maps Z_m -> Z_n whose consecutive images (cyclically) are at
    cyclic distance <= 1.  Any other map violates an adjacent-zero atom
    under z_i = x_{j_i}, so pruning to these is sound and exhaustive."""
    seq = [0] * m

    def extend(pos: int) -> Iterator[Tuple[int, ...]]:
        if pos == m:
            if circ_dist(n, seq[m - 1], seq[0]) <= 1:
                yield tuple(seq)
            return
        prev = seq[pos - 1]
        for step in sorted({(prev - 1) % n, prev, (prev + 1) % n}):
            seq[pos] = step
            yield from extend(pos + 1)

    for start in range(n):
        seq[0] = start
        yield from extend(1)


def search_theta_witness(n: int, m: int, mode: str = "generator-assignments") -> WitnessSearchReport:
    """Search Theta(m) over generator assignments in the cycle algebra
    on n vertices.

    In generator-assignments mode the search is exhaustive over all n^m
    maps (pruned by the sound adjacency constraint) and returns either
    a witness or an exhaustion report.  In j-sequences mode only the
    constrained index sequences are enumerated and each is checked for
    a repeated index, the combinatorial core of the refutation: a
    sequence with a repeat cannot witness the sentence.
    """
    if n < 4 or m < 5:
        raise AlgebraError(
            "witness search assumes n >= 4 and m >= 5; shorter cases are "
            "handled by distinguish_cycles directly"
        )
    if mode not in ("generator-assignments", "j-sequences"):
        raise AlgebraError(f"unknown search mode {mode!r}")
    space = n ** m
    checked = 0
    if mode == "generator-assignments":
        graph = cycle_graph(n)
        order = GeneratorOrder.ascending(n)
        inst = ThetaInstance(m, graph, order)
        gens = [LieElement.generator(graph, order, i) for i in range(n)]
        for seq in _constrained_sequences(n, m):
            checked += 1
            if eval_theta(inst, [gens[j] for j in seq]).holds:
                return WitnessSearchReport(mode, n, m, seq, checked, space, False)
        return WitnessSearchReport(mode, n, m, None, checked, space, True)
    no_repeat: List[Tuple[int, ...]] = []
    for seq in _constrained_sequences(n, m):
        checked += 1
        if len(set(seq)) == m:
            no_repeat.append(seq)
    return WitnessSearchReport(
        mode, n, m, None, checked, space,
        exhausted=not no_repeat, no_repeat_sequences=tuple(no_repeat),
    )


@dataclass
class DistinguishReport:
    n: int
    m: int
    equivalent: bool
    sentence: str                    # "isomorphic", "Psi", or "Phi(k)"
    separated: bool
    detail: Dict[str, object]


def distinguish_cycles(n: int, m: int) -> DistinguishReport:
    """Decide and certify whether the cycle algebras of lengths n and m
    have the same universal theory at the searched fragment."""
    if n < 3 or m < 3:
        raise GraphError("cycles need at least 3 vertices")
    if n == m:
        return DistinguishReport(n, m, True, "isomorphic", False, {})
    small, large = min(n, m), max(n, m)
    if small == 3:
        g3 = cycle_graph(3)
        o3 = GeneratorOrder.ascending(3)
        abelian = all(
            bracket(LieElement.generator(g3, o3, i), LieElement.generator(g3, o3, j)).is_zero()
            for i in range(3)
            for j in range(i + 1, 3)
        )
        gl = cycle_graph(large)
        ol = GeneratorOrder.ascending(large)
        counter = bracket(
            LieElement.generator(gl, ol, 1), LieElement.generator(gl, ol, 3)
        )
        detail = {
            "abelian_small": abelian,
            "counterexample": "[x1,x3]",
            "counterexample_nonzero": not counter.is_zero(),
            "counterexample_value": counter,
        }
        separated = abelian and not counter.is_zero()
        return DistinguishReport(n, m, False, "Psi", separated, detail)
    holds_large = theta_identity_holds(large)
    search = search_theta_witness(small, large, mode="generator-assignments")
    detail = {
        "theta_holds_in_large": holds_large,
        "search": search,
    }
    separated = holds_large and search.exhausted
    return DistinguishReport(n, m, False, f"Phi({large})", separated, detail)


# ---------------------------------------------------------------------------
# the merge homomorphism
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhiHom:
    """Merge x_{n-1} onto lambda * x_{n-2}.

    Requires the two merged vertices to have equal closed neighborhoods
    in the source graph.  The generator order puts x_{n-2} < x_{n-1}
    below everything else; the target order drops x_{n-1}.
    """

    graph: Graph
    lam: int
    source_order: GeneratorOrder
    target_graph: Graph
    target_order: GeneratorOrder


def merge_order(n: int) -> GeneratorOrder:
    return GeneratorOrder((n - 2, n - 1) + tuple(range(n - 2)))


def build_phi_hom(graph: Graph, lam: int) -> PhiHom:
    n = graph.n
    if n < 2:
        raise GraphError("merging needs at least two vertices")
    if lam < 1:
        raise AlgebraError(f"the scale must be a positive integer, got {lam}")
    if closed_neighborhood(graph, n - 1) != closed_neighborhood(graph, n - 2):
        raise GraphError(
            f"vertices {n - 2} and {n - 1} do not have equal closed neighborhoods"
        )
    target_edges = [(i, j) for (i, j) in graph.edges if i != n - 1 and j != n - 1]
    target_graph = Graph(n - 1, target_edges)
    target_order = GeneratorOrder((n - 2,) + tuple(range(n - 2)))
    return PhiHom(graph, lam, merge_order(n), target_graph, target_order)


def phi_lambda(hom: PhiHom, g: LieElement) -> LieElement:
    """Image of g under the merge homomorphism, in normal form."""
    if g.graph != hom.graph or g.order != hom.source_order:
        raise AlgebraError("element is not over the homomorphism's source algebra")
    n = hom.graph.n
    last, kept = n - 1, n - 2
    linear: Dict[int, int] = {}
    for i, c in g.linear.items():
        if i == last:
            linear[kept] = linear.get(kept, 0) + c * hom.lam
        else:
            linear[i] = linear.get(i, 0) + c
    derived: Dict[BasisMonomial, int] = {}
    for m, c in g.derived.items():
        letters = m.letters()
        j = letters.count(last)
        renamed = tuple(kept if v == last else v for v in letters)
        head = (renamed[0], renamed[1])
        if head[0] == head[1]:
            continue
        coeff = c * hom.lam ** j
        for m2, c2 in monomial_normal_form(hom.target_graph, hom.target_order, head, renamed[2:]):
            new = derived.get(m2, 0) + coeff * c2
            if new:
                derived[m2] = new
            elif m2 in derived:
                del derived[m2]
    return LieElement(hom.target_graph, hom.target_order, linear, derived)


# ---------------------------------------------------------------------------
# vanishing thresholds
# ---------------------------------------------------------------------------

def positive_integer_roots(coeffs: Sequence[int]) -> List[int]:
    """Positive integer roots of sum_j coeffs[j] * t^j.

    Any such root divides the trailing nonzero coefficient, so testing
    the divisors is exact and complete.
    """
    first = next((k for k, c in enumerate(coeffs) if c), None)
    if first is None:
        return []
    if all(c == 0 for c in coeffs[first + 1:]):
        return []
    trailing = abs(coeffs[first])
    roots = []
    for r in range(1, trailing + 1):
        if trailing % r:
            continue
        if sum(c * r ** k for k, c in enumerate(coeffs)) == 0:
            roots.append(r)
    return roots


class ScalingComponent(NamedTuple):
    """One glued component with its scale polynomial coefficients.

    ``coeffs[j]`` multiplies lambda^j; for derived components j counts
    the occurrences of x_{n-1}, for the linear pair it is the
    coefficient of x_{n-1} itself.
    """

    label: Tuple
    coeffs: Tuple[int, ...]
    base: Optional[BasisMonomial]


def merge_scaling_components(g: LieElement, hom: PhiHom) -> List[ScalingComponent]:
    """Scale polynomials governing when phi_lambda kills each piece of g."""
    if g.graph != hom.graph or g.order != hom.source_order:
        raise AlgebraError("element is not over the homomorphism's source algebra")
    n = hom.graph.n
    last, kept = n - 1, n - 2
    out: List[ScalingComponent] = []
    for i in sorted(g.linear):
        if i in (kept, last):
            continue
        out.append(ScalingComponent(("linear", i), (g.linear[i],), None))
    pair = (g.linear.get(kept, 0), g.linear.get(last, 0))
    if pair != (0, 0):
        out.append(ScalingComponent(("linear-pair",), pair, None))
    if g.derived:
        derived_part = LieElement(g.graph, g.order, {}, g.derived)
        for comp in glued_decomposition(derived_part):
            eps_last = comp.glued[-1]
            coeffs = [0] * (eps_last + 1)
            for m, c in comp.element.derived.items():
                coeffs[m.letters().count(last)] = c
            base = basis_monomial_with_start(
                comp.glued, comp.start, hom.target_graph, hom.target_order
            )
            out.append(ScalingComponent(("glued", comp.glued, comp.start), tuple(coeffs), base))
    return out


def lambda_zero(g: LieElement, hom: PhiHom) -> int:
    """Least threshold such that phi_lambda(g) != 0 for every integer
    scale at or above it."""
    if g.is_zero():
        raise AlgebraError("the zero element has no nonvanishing threshold")
    largest = 0
    for comp in merge_scaling_components(g, hom):
        roots = positive_integer_roots(comp.coeffs)
        if roots:
            largest = max(largest, max(roots))
    return largest + 1


def check_hombas(graph: Graph, glued: Tuple[int, ...], start: int, coeffs: Sequence[int], scales: Sequence[int] = (1, 2, 3)) -> bool:
    """Instance check of the glued-component mapping laws.

    Builds the component sum_j coeffs[j] * [u_{start,j}], verifies that
    the j = 0 monomial is a basis monomial whenever any slot is, and
    that the merge image equals (sum_j coeffs[j] lambda^j) [u_{start,0}]
    by direct evaluation for each given scale.
    """
    hom = build_phi_hom(graph, 1)
    n = graph.n
    eps_last = glued[-1]
    if len(coeffs) != eps_last + 1:
        raise AlgebraError(
            f"component of glued degree {glued} needs {eps_last + 1} coefficients"
        )
    slots: List[Optional[BasisMonomial]] = []
    for j in range(eps_last + 1):
        delta = glued[:-1] + (eps_last - j, j)
        mono = basis_monomial_with_start(delta, start, graph, hom.source_order)
        if coeffs[j] and mono is None:
            raise AlgebraError(f"no basis monomial for slot j={j} of {glued}")
        slots.append(mono)
    if any(m is not None for m in slots) and slots[0] is None:
        return False
    base = basis_monomial_with_start(glued, start, hom.target_graph, hom.target_order)
    if base is None:
        return False
    g = LieElement(graph, hom.source_order, {}, {
        m: c for m, c in zip(slots, coeffs) if c
    })
    for lam in scales:
        hom_l = build_phi_hom(graph, lam)
        image = phi_lambda(hom_l, g)
        scale = sum(c * lam ** j for j, c in enumerate(coeffs))
        expected = LieElement.from_monomial(hom.target_graph, hom.target_order, base, scale)
        if image != expected:
            return False
        if image.is_zero() != (scale == 0):
            return False
    return True


# ---------------------------------------------------------------------------
# finite-set witnesses
# ---------------------------------------------------------------------------

def gamma_closure(gamma: Sequence[LieElement]) -> List[LieElement]:
    """Close a finite set under g_i - g_j, g_i + g_j - g_k, and
    [g_i, g_j] - g_k, deduplicating structurally."""
    out: List[LieElement] = []
    seen = set()

    def push(e: LieElement) -> None:
        key = e.canonical_key()
        if key not in seen:
            seen.add(key)
            out.append(e)

    for g in gamma:
        push(g)
    k = len(gamma)
    for i in range(k):
        for j in range(k):
            push(gamma[i] - gamma[j])
    for i in range(k):
        for j in range(k):
            for l in range(k):
                push(gamma[i] + gamma[j] - gamma[l])
                push(bracket(gamma[i], gamma[j]) - gamma[l])
    return out


def merge_relabeling(graph: Graph, keep: int, remove: int) -> Tuple[Dict[int, int], Graph]:
    """Permutation placing keep at n-2 and remove at n-1, other
    vertices packed in ascending original order."""
    n = graph.n
    others = [v for v in range(n) if v not in (keep, remove)]
    perm = {v: k for k, v in enumerate(others)}
    perm[keep] = n - 2
    perm[remove] = n - 1
    new_graph = Graph(n, [(perm[i], perm[j]) for (i, j) in graph.edges])
    return perm, new_graph


def relabel_element(g: LieElement, perm: Dict[int, int], new_graph: Graph, new_order: GeneratorOrder) -> LieElement:
    """Push an element through a vertex relabeling (a graph isomorphism)
    and renormalize over the relabeled graph."""
    linear = {perm[i]: c for i, c in g.linear.items()}
    derived: Dict[BasisMonomial, int] = {}
    for m, c in g.derived.items():
        letters = tuple(perm[v] for v in m.letters())
        for m2, c2 in monomial_normal_form(new_graph, new_order, (letters[0], letters[1]), letters[2:]):
            new = derived.get(m2, 0) + c * c2
            if new:
                derived[m2] = new
            elif m2 in derived:
                del derived[m2]
    return LieElement(new_graph, new_order, linear, derived)


@dataclass
class CompactionWitnessReport:
    lam: int
    gamma_size: int
    closure_size: int
    nonzero_in_closure: int
    removed_vertex: int
    kept_vertex: int
    images_distinct: bool
    bracket_faithful: bool
    ok: bool


def compaction_witness(graph: Graph, gamma: Sequence[LieElement], order: GeneratorOrder = None) -> CompactionWitnessReport:
    """Produce and verify a scale for which the merge homomorphism is
    injective on the closure of a finite set.

    The merged pair is chosen deterministically: in the neighborhood
    class with the smallest minimum that has at least two vertices, the
    two largest vertices are merged (largest removed).  Elements of
    gamma may be given over any order on the original graph; they are
    relabeled and reordered internally.
    """
    order = order or GeneratorOrder.ascending(graph.n)
    classes = [b for b in perp_classes(graph) if len(b) >= 2]
    if not classes:
        raise GraphError("no neighborhood class with two or more vertices")
    block = sorted(classes, key=min)[0]
    remove = max(block)
    keep = max(block - {remove})
    perm, new_graph = merge_relabeling(graph, keep, remove)
    hom1 = build_phi_hom(new_graph, 1)
    moved = [relabel_element(g, perm, new_graph, hom1.source_order) for g in gamma]
    closure = gamma_closure(moved)
    lam = 1
    for g in closure:
        if not g.is_zero():
            lam = max(lam, lambda_zero(g, hom1))
    hom = build_phi_hom(new_graph, lam)
    nonzero = 0
    for g in closure:
        if g.is_zero():
            continue
        nonzero += 1
        if phi_lambda(hom, g).is_zero():
            raise CertificationError(
                f"phi with scale {lam} kills a nonzero closure element"
            )
    images = [phi_lambda(hom, g) for g in moved]
    distinct = True
    for i in range(len(moved)):
        for j in range(i + 1, len(moved)):
            if (moved[i] != moved[j]) and images[i] == images[j]:
                distinct = False
    faithful = True
    for i in range(len(moved)):
        for j in range(len(moved)):
            lhs = phi_lambda(hom, bracket(moved[i], moved[j]))
            if lhs != bracket(images[i], images[j]):
                faithful = False
    ok = distinct and faithful
    if not ok:
        raise CertificationError("merge witness verification failed")
    return CompactionWitnessReport(
        lam, len(gamma), len(closure), nonzero, remove, keep, distinct, faithful, ok,
    )
