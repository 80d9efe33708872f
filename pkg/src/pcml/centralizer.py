"""Bounded-degree derived centralizers of linear combinations.

For a combination g of generators, the derived centralizer is the set
of elements of the derived subalgebra commuting with g.  Bracketing a
degree-k element with g lands in degree k+1, so the kernel splits by
total degree and is found degree by degree with exact elimination.
Within one degree the constraint matrix further splits into blocks of
multidegrees linked by moves e_a - e_b over the support of g, which
keeps the matrices small.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .core import (
    AssocPoly,
    BasisMonomial,
    GeneratorOrder,
    LieElement,
    act,
    basis_monomials_of_degree,
    basis_monomials_of_multidegree,
    bracket,
    homogeneous_components,
    mdeg,
    monomial_normal_form,
    multidegrees,
)
from .errors import AlgebraError, CertificationError
from .graphs import Graph, circ_dist, cycle_graph


def _check_linear(g: LieElement) -> Dict[int, int]:
    if g.derived:
        raise AlgebraError("centralizer argument must be a combination of generators")
    if not g.linear:
        raise AlgebraError("centralizer argument must be nonzero")
    return g.linear


def _blocks(deltas: List[Tuple[int, ...]], supp: Sequence[int]) -> List[List[Tuple[int, ...]]]:
    """Group multidegrees linked by delta -> delta + e_a - e_b."""
    present = set(deltas)
    seen = set()
    blocks = []
    for start in deltas:
        if start in seen:
            continue
        block = [start]
        seen.add(start)
        stack = [start]
        while stack:
            delta = stack.pop()
            for a in supp:
                for b in supp:
                    if a == b or delta[b] == 0:
                        continue
                    nxt = list(delta)
                    nxt[a] += 1
                    nxt[b] -= 1
                    key = tuple(nxt)
                    if key in present and key not in seen:
                        seen.add(key)
                        block.append(key)
                        stack.append(key)
        blocks.append(block)
    return blocks


def _kernel_elements(graph: Graph, order: GeneratorOrder, lin: Dict[int, int], columns: List[BasisMonomial]) -> List[Dict[BasisMonomial, int]]:
    """Kernel of h -> [h, g] on the span of the given monomials."""
    rows: Dict[BasisMonomial, Dict[int, int]] = {}
    for ci, m in enumerate(columns):
        for i, alpha in lin.items():
            for m2, c2 in monomial_normal_form(graph, order, m.head, m.tail + (i,)):
                row = rows.setdefault(m2, {})
                row[ci] = row.get(ci, 0) + alpha * c2
    matrix = []
    for _, sparse in sorted(rows.items()):
        row = [0] * len(columns)
        for ci, v in sparse.items():
            row[ci] = v
        matrix.append(row)
    out = []
    for vec in linalg.kernel_basis(matrix, len(columns)):
        out.append({m: v for m, v in zip(columns, vec) if v})
    return out


def centralizer_vectors_by_degree(g: LieElement, degree_bound: int) -> Dict[int, List[Dict[BasisMonomial, int]]]:
    """Kernel bases per total degree 2..degree_bound, as sparse vectors."""
    lin = _check_linear(g)
    graph, order = g.graph, g.order
    supp = sorted(lin)
    result: Dict[int, List[Dict[BasisMonomial, int]]] = {}
    for k in range(2, degree_bound + 1):
        mons_by_delta = {}
        for delta in multidegrees(graph.n, k):
            mons = basis_monomials_of_multidegree(graph, order, delta)
            if mons:
                mons_by_delta[delta] = mons
        found: List[Dict[BasisMonomial, int]] = []
        for block in _blocks(sorted(mons_by_delta), supp):
            columns = [m for delta in sorted(block) for m in mons_by_delta[delta]]
            found.extend(_kernel_elements(graph, order, lin, columns))
        result[k] = found
    return result


@dataclass
class CentralizerSlice:
    """Basis of {h in M' : [h, g] = 0, total degree <= bound}."""

    g: LieElement
    degree_bound: int
    elements: List[LieElement] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def is_empty(self) -> bool:
        return not self.elements


def derived_centralizer(g: LieElement, degree_bound: int) -> CentralizerSlice:
    """Exact basis of the derived centralizer up to a total degree."""
    if degree_bound < 2:
        raise AlgebraError("degree bound must be at least 2")
    vectors = centralizer_vectors_by_degree(g, degree_bound)
    elements = []
    for k in sorted(vectors):
        for sparse in vectors[k]:
            h = LieElement(g.graph, g.order, {}, dict(sparse))
            if not bracket(h, g).is_zero():
                raise CertificationError("kernel vector fails the bracket check")
            elements.append(h)
    return CentralizerSlice(g, degree_bound, elements)


def _densify(vectors: List[Dict[BasisMonomial, int]], columns: List[BasisMonomial]) -> List[List[int]]:
    index = {m: i for i, m in enumerate(columns)}
    out = []
    for sparse in vectors:
        row = [0] * len(columns)
        for m, v in sparse.items():
            row[index[m]] = v
        out.append(row)
    return out


def check_intersection_theorem(indices: Sequence[int], coefficients: Sequence[int], graph: Graph, degree_bound: int, order: GeneratorOrder = None) -> bool:
    """Compare the centralizer of a combination with the intersection
    of the generators' centralizers, as subspaces per total degree."""
    if len(indices) != len(coefficients) or len(set(indices)) != len(indices):
        raise AlgebraError("indices must be distinct and match the coefficients")
    if any(c == 0 for c in coefficients):
        raise AlgebraError("coefficients must be nonzero")
    order = order or GeneratorOrder.ascending(graph.n)
    g = LieElement.from_linear(graph, order, dict(zip(indices, coefficients)))
    direct = centralizer_vectors_by_degree(g, degree_bound)
    for k in range(2, degree_bound + 1):
        columns = basis_monomials_of_degree(graph, order, k)
        if not columns:
            if direct[k]:
                return False
            continue
        # intersection of the single-generator kernels, multidegree-wise
        intersection_rows: List[List[int]] = []
        mons_by_delta: Dict[Tuple[int, ...], List[BasisMonomial]] = {}
        for m in columns:
            mons_by_delta.setdefault(mdeg(m, graph.n), []).append(m)
        for delta in sorted(mons_by_delta):
            mons = sorted(mons_by_delta[delta])
            current = None
            for i in indices:
                vecs = _kernel_elements(graph, order, {i: 1}, mons)
                dense = _densify(vecs, mons)
                current = dense if current is None else linalg.intersect_rowspans(current, dense)
                if not current:
                    break
            if current:
                index = {m: columns.index(m) for m in mons}
                for row in current:
                    full = [0] * len(columns)
                    for m, v in zip(mons, row):
                        full[index[m]] = v
                    intersection_rows.append(full)
        direct_rows = _densify(direct[k], columns)
        if not linalg.same_rowspan(direct_rows, intersection_rows):
            return False
    return True


@dataclass
class CycleCentralizerReport:
    """Structure report for the centralizer of x_i + x_j on a cycle."""

    n: int
    i: int
    j: int
    degree_bound: int
    kind: str                      # "adjacent" or "distant"
    count: int
    counts_by_multidegree: Dict[Tuple[int, ...], int]
    support_ok: bool
    form_ok: bool
    homogeneous_ok: bool

    @property
    def empty(self) -> bool:
        return self.count == 0


def classify_cycle_centralizer(n: int, i: int, j: int, degree_bound: int) -> CycleCentralizerReport:
    """Instance check of the cycle centralizer structure.

    For non-adjacent i, j every slice element must be supported on all
    vertices except x_i and x_j and must be the action of an
    associative polynomial on [x_{i-1}, x_{i+1}]; homogeneous parts of
    slice elements must themselves centralize.
    """
    if n < 4:
        raise AlgebraError("cycle centralizer classification needs n >= 4")
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise AlgebraError("need two distinct vertices of the cycle")
    graph = cycle_graph(n)
    order = GeneratorOrder.ascending(n)
    g = LieElement.from_linear(graph, order, {i: 1, j: 1})
    slice_ = derived_centralizer(g, degree_bound)
    kind = "adjacent" if circ_dist(n, i, j) <= 1 else "distant"
    expected_support = frozenset(range(n)) - {i, j}
    support_ok = True
    form_ok = True
    homogeneous_ok = True
    counts: Dict[Tuple[int, ...], int] = {}
    base = bracket(
        LieElement.generator(graph, order, (i - 1) % n),
        LieElement.generator(graph, order, (i + 1) % n),
    )
    for h in slice_.elements:
        for m in h.derived:
            if frozenset(m.letters()) != expected_support:
                support_ok = False
        for delta, part in homogeneous_components(h):
            if not bracket(part, g).is_zero():
                homogeneous_ok = False
                continue
            counts[delta] = counts.get(delta, 0) + 1
            # the unique completing monomial w with [x_{i-1},x_{i+1}].w
            # of multidegree delta; proportionality decides the form
            exps = list(delta)
            exps[(i - 1) % n] -= 1
            exps[(i + 1) % n] -= 1
            if min(exps) < 0:
                form_ok = False
                continue
            image = act(base, AssocPoly(n, {tuple(exps): 1}))
            if not _proportional(part, image):
                form_ok = False
    if kind == "adjacent":
        form_ok = support_ok = True
    return CycleCentralizerReport(
        n, i, j, degree_bound, kind, len(slice_.elements), counts,
        support_ok, form_ok, homogeneous_ok,
    )


def _proportional(a: LieElement, b: LieElement) -> bool:
    """a = (p/q) b for some rational p/q, with b nonzero."""
    if b.is_zero():
        return a.is_zero()
    if a.is_zero():
        return True
    if set(a.derived) != set(b.derived) or a.linear or b.linear:
        return False
    items = iter(a.derived.items())
    m0, ca = next(items)
    cb = b.derived[m0]
    return all(c * cb == ca * b.derived[m] for m, c in a.derived.items())
