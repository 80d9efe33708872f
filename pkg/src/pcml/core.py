"""Exact normal-form arithmetic in the metabelian algebra of a graph.

The algebra M(X;G) is generated by x_0..x_{n-1} with [x_i,x_j] = 0 for
every edge {i,j} of G, inside the variety where the derived subalgebra
is abelian.  Its elements decompose uniquely over a basis consisting of
the generators and of left-normed monomials [x_a,x_b].x_t1...x_tk that
satisfy four conditions relative to a total order on the generators:

  1. the second head letter precedes the first;
  2. the second head letter precedes every tail letter, tail sorted;
  3. the two head letters lie in different connected components of the
     subgraph induced on the monomial's support;
  4. the first head letter is the greatest vertex of its component.

Normal forms are computed by a closed case analysis rather than by an
iterative rewrite loop.  The rules that justify it are: tails commute;
the Jacobi identity [[a,b],c] = [[a,c],b] + [[c,b],a] moves a tail
letter into the head; a monomial whose head pair is an edge is zero;
and exchanging two letters that lie in the same component of the
support subgraph never changes the value (for head-head exchanges this
forces the monomial to vanish).  Chasing these rules shows that any
monomial equals 0, one basis monomial up to sign, or a difference of
two basis monomials; `monomial_normal_form` emits that answer directly.
Correctness is certified against the independent oracle module rather
than assumed, see `pcml.oracle`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from .errors import AlgebraError
from .graphs import Graph, components_within

Multidegree = Tuple[int, ...]
GluedMultidegree = Tuple[int, ...]
AssocMonomial = Tuple[int, ...]


class GeneratorOrder:
    """Total order on the generators, given as an ascending listing.

    ``perm[k]`` is the generator of rank k; ``rank[i]`` is the rank of
    generator i (so smaller rank means smaller generator).
    """

    __slots__ = ("n", "perm", "rank", "_hash")

    def __init__(self, perm: Iterable[int]):
        p = tuple(perm)
        n = len(p)
        if sorted(p) != list(range(n)):
            raise AlgebraError(f"{p} is not a permutation of 0..{n - 1}")
        rank = [0] * n
        for k, v in enumerate(p):
            rank[v] = k
        self.n = n
        self.perm = p
        self.rank = tuple(rank)
        self._hash = hash(p)

    @classmethod
    def ascending(cls, n: int) -> "GeneratorOrder":
        return cls(range(n))

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorOrder) and self.perm == other.perm

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GeneratorOrder({list(self.perm)})"


class BasisMonomial(NamedTuple):
    """Left-normed monomial: head pair, then the sorted action tail."""

    head: Tuple[int, int]
    tail: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return 2 + len(self.tail)

    def letters(self) -> Tuple[int, ...]:
        return self.head + self.tail


def mdeg(m: BasisMonomial, n: int) -> Multidegree:
    """Occurrence counts of each generator in the monomial."""
    out = [0] * n
    for v in m.letters():
        out[v] += 1
    return tuple(out)


def glued_mdeg(m: BasisMonomial, n: int) -> GluedMultidegree:
    """Multidegree with the last two index coordinates summed."""
    d = mdeg(m, n)
    return d[: n - 2] + (d[n - 2] + d[n - 1],)


def glue(delta: Multidegree) -> GluedMultidegree:
    return delta[:-2] + (delta[-2] + delta[-1],)


def support(m: BasisMonomial) -> FrozenSet[int]:
    return frozenset(m.letters())


def is_basis_monomial(head: Tuple[int, int], tail: Tuple[int, ...], graph: Graph, order: GeneratorOrder) -> bool:
    """Check the four basis conditions literally."""
    a, b = head
    letters = (a, b) + tuple(tail)
    if any(not 0 <= v < graph.n for v in letters):
        return False
    if a == b:
        return False
    rank = order.rank
    if rank[b] > rank[a]:
        return False
    prev = b
    for t in tail:
        if rank[t] < rank[prev]:
            return False
        prev = t
    supp = frozenset(letters)
    comps = components_within(graph, supp)
    comp_of = {v: k for k, block in enumerate(comps) for v in block}
    if comp_of[a] == comp_of[b]:
        return False
    block_a = comps[comp_of[a]]
    return a == max(block_a, key=rank.__getitem__)


@lru_cache(maxsize=None)
def _monomial_nf(graph: Graph, order: GeneratorOrder, a: int, b: int, tail: Tuple[int, ...]) -> Tuple[Tuple[BasisMonomial, int], ...]:
    """Normal form of [x_a,x_b].tail as ((basis monomial, coeff), ...).

    Case analysis (mu is the least letter of the support, C_v the
    component of v in the support subgraph):

      * a == b, or C_a == C_b: zero;
      * mu in C_b: +m(C_a);
      * mu in C_a: -m(C_b), by anticommuting the head;
      * otherwise: m(C_a) - m(C_b), by one Jacobi step on mu;

    where m(C) heads the monomial with the greatest vertex of C, puts
    mu second, and sorts the rest into the tail.
    """
    if a == b:
        return ()
    letters = (a, b) + tail
    supp = frozenset(letters)
    comps = components_within(graph, supp)
    comp_of = {v: k for k, block in enumerate(comps) for v in block}
    if comp_of[a] == comp_of[b]:
        return ()
    rank = order.rank
    mu = min(supp, key=rank.__getitem__)
    counts = Counter(letters)

    def rep(block_index: int) -> BasisMonomial:
        first = max(comps[block_index], key=rank.__getitem__)
        rest = counts.copy()
        rest[first] -= 1
        rest[mu] -= 1
        new_tail = tuple(sorted(rest.elements(), key=rank.__getitem__))
        return BasisMonomial((first, mu), new_tail)

    c_mu = comp_of[mu]
    if c_mu == comp_of[b]:
        return ((rep(comp_of[a]), 1),)
    if c_mu == comp_of[a]:
        return ((rep(comp_of[b]), -1),)
    return ((rep(comp_of[a]), 1), (rep(comp_of[b]), -1))


def monomial_normal_form(graph: Graph, order: GeneratorOrder, head: Tuple[int, int], tail: Iterable[int]) -> Tuple[Tuple[BasisMonomial, int], ...]:
    a, b = head
    tail_sorted = tuple(sorted(tail, key=order.rank.__getitem__))
    for v in (a, b) + tail_sorted:
        if not 0 <= v < graph.n:
            raise AlgebraError(f"unknown generator x{v} for a graph on {graph.n} vertices")
    return _monomial_nf(graph, order, a, b, tail_sorted)


def _strip(mapping: Dict) -> Dict:
    return {k: v for k, v in mapping.items() if v}


def _bump(acc: Dict, key, value) -> None:
    new = acc.get(key, 0) + value
    if new:
        acc[key] = new
    elif key in acc:
        del acc[key]


class LieElement:
    """Element of M(X;G) stored in normal form.

    ``linear`` maps generator index -> coefficient, ``derived`` maps
    BasisMonomial -> coefficient; zero coefficients are never stored.
    Instances are immutable by convention and all operations are pure.
    """

    __slots__ = ("graph", "order", "linear", "derived")

    def __init__(self, graph: Graph, order: GeneratorOrder, linear: Dict[int, int], derived: Dict[BasisMonomial, int]):
        if order.n != graph.n:
            raise AlgebraError(f"order on {order.n} generators does not fit a graph on {graph.n}")
        self.graph = graph
        self.order = order
        self.linear = _strip(linear)
        self.derived = _strip(derived)

    @classmethod
    def zero(cls, graph: Graph, order: GeneratorOrder) -> "LieElement":
        return cls(graph, order, {}, {})

    @classmethod
    def generator(cls, graph: Graph, order: GeneratorOrder, i: int) -> "LieElement":
        if not 0 <= i < graph.n:
            raise AlgebraError(f"unknown generator x{i}")
        return cls(graph, order, {i: 1}, {})

    @classmethod
    def from_linear(cls, graph: Graph, order: GeneratorOrder, coeffs: Dict[int, int]) -> "LieElement":
        for i in coeffs:
            if not 0 <= i < graph.n:
                raise AlgebraError(f"unknown generator x{i}")
        return cls(graph, order, dict(coeffs), {})

    @classmethod
    def from_monomial(cls, graph: Graph, order: GeneratorOrder, m: BasisMonomial, coeff: int = 1) -> "LieElement":
        return cls(graph, order, {}, {m: coeff})

    def is_zero(self) -> bool:
        return not self.linear and not self.derived

    def same_context(self, other: "LieElement") -> bool:
        return self.graph == other.graph and self.order == other.order

    def support(self) -> FrozenSet[int]:
        out = set(self.linear)
        for m in self.derived:
            out.update(m.letters())
        return frozenset(out)

    def max_degree(self) -> int:
        deg = 1 if self.linear else 0
        for m in self.derived:
            deg = max(deg, m.degree)
        return deg

    def mdeg_if_homogeneous(self) -> Optional[Multidegree]:
        degs = set()
        n = self.graph.n
        for i in self.linear:
            d = [0] * n
            d[i] = 1
            degs.add(tuple(d))
        for m in self.derived:
            degs.add(mdeg(m, n))
        if len(degs) == 1:
            return degs.pop()
        return None

    def __add__(self, other: "LieElement") -> "LieElement":
        _check_context(self, other)
        lin = dict(self.linear)
        der = dict(self.derived)
        for i, c in other.linear.items():
            _bump(lin, i, c)
        for m, c in other.derived.items():
            _bump(der, m, c)
        return LieElement(self.graph, self.order, lin, der)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return self * -1

    def __mul__(self, scalar: int) -> "LieElement":
        if not isinstance(scalar, int):
            return NotImplemented
        return LieElement(
            self.graph,
            self.order,
            {i: c * scalar for i, c in self.linear.items()},
            {m: c * scalar for m, c in self.derived.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return (
            self.same_context(other)
            and self.linear == other.linear
            and self.derived == other.derived
        )

    def __repr__(self) -> str:
        return f"LieElement({format_element(self)!r})"

    def canonical_key(self):
        return (
            tuple(sorted(self.linear.items())),
            tuple(sorted(self.derived.items())),
        )


def _check_context(a: LieElement, b: LieElement) -> None:
    if not a.same_context(b):
        raise AlgebraError("elements live over different graphs or orders")


def equal(a: LieElement, b: LieElement) -> bool:
    _check_context(a, b)
    return a.linear == b.linear and a.derived == b.derived


def is_zero(g: LieElement) -> bool:
    return g.is_zero()


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Lie product in normal form; derived x derived vanishes."""
    _check_context(a, b)
    graph, order = a.graph, a.order
    acc: Dict[BasisMonomial, int] = {}
    for i, ci in a.linear.items():
        for j, cj in b.linear.items():
            for m, c in _monomial_nf(graph, order, i, j, ()):
                _bump(acc, m, ci * cj * c)
    for m1, c1 in a.derived.items():
        for j, cj in b.linear.items():
            for m, c in monomial_normal_form(graph, order, m1.head, m1.tail + (j,)):
                _bump(acc, m, c1 * cj * c)
    for m2, c2 in b.derived.items():
        for i, ci in a.linear.items():
            for m, c in monomial_normal_form(graph, order, m2.head, m2.tail + (i,)):
                _bump(acc, m, -c2 * ci * c)
    return LieElement(graph, order, {}, acc)


class AssocPoly:
    """Commutative polynomial acting on the derived subalgebra.

    Terms map exponent vectors (length n) to integer coefficients.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[AssocMonomial, int]):
        for exps in terms:
            if len(exps) != n or any(e < 0 for e in exps):
                raise AlgebraError(f"bad exponent vector {exps} for {n} generators")
        self.n = n
        self.terms = _strip(terms)

    @classmethod
    def constant(cls, n: int, c: int) -> "AssocPoly":
        return cls(n, {tuple([0] * n): c})

    @classmethod
    def variable(cls, n: int, i: int, power: int = 1) -> "AssocPoly":
        exps = [0] * n
        exps[i] = power
        return cls(n, {tuple(exps): 1})

    def __add__(self, other: "AssocPoly") -> "AssocPoly":
        if self.n != other.n:
            raise AlgebraError("polynomials over different generator sets")
        terms = dict(self.terms)
        for e, c in other.terms.items():
            _bump(terms, e, c)
        return AssocPoly(self.n, terms)

    def __neg__(self) -> "AssocPoly":
        return AssocPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "AssocPoly") -> "AssocPoly":
        return self + (-other)

    def __mul__(self, other: "AssocPoly") -> "AssocPoly":
        if self.n != other.n:
            raise AlgebraError("polynomials over different generator sets")
        terms: Dict[AssocMonomial, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _bump(terms, tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
        return AssocPoly(self.n, terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, AssocPoly) and self.n == other.n and self.terms == other.terms

    def __repr__(self) -> str:
        return f"AssocPoly(n={self.n}, terms={self.terms})"


def _exps_to_letters(exps: AssocMonomial) -> Tuple[int, ...]:
    out: List[int] = []
    for i, e in enumerate(exps):
        out.extend([i] * e)
    return tuple(out)


def act(u: LieElement, f: AssocPoly) -> LieElement:
    """Module action u.f of a polynomial on a derived element."""
    if u.linear:
        raise AlgebraError("module action is defined on the derived subalgebra only")
    if f.n != u.graph.n:
        raise AlgebraError("polynomial does not fit the element's generator set")
    graph, order = u.graph, u.order
    acc: Dict[BasisMonomial, int] = {}
    for exps, cf in f.terms.items():
        letters = _exps_to_letters(exps)
        for m, cm in u.derived.items():
            if not letters:
                _bump(acc, m, cm * cf)
                continue
            for m2, c2 in monomial_normal_form(graph, order, m.head, m.tail + letters):
                _bump(acc, m2, cm * cf * c2)
    return LieElement(graph, order, {}, acc)


# ---------------------------------------------------------------------------
# raw expressions
# ---------------------------------------------------------------------------

class RawExpr:
    """Unevaluated tree of sums, scalings, brackets, and generators."""

    __slots__ = ()


@dataclass(frozen=True)
class Gen(RawExpr):
    index: int


@dataclass(frozen=True)
class Scale(RawExpr):
    coeff: int
    arg: RawExpr


@dataclass(frozen=True)
class Sum(RawExpr):
    parts: Tuple[RawExpr, ...]


@dataclass(frozen=True)
class Bracket(RawExpr):
    left: RawExpr
    right: RawExpr


def normal_form(expr: RawExpr, graph: Graph, order: GeneratorOrder) -> LieElement:
    """Evaluate an expression tree to its unique basis decomposition."""
    if isinstance(expr, Gen):
        return LieElement.generator(graph, order, expr.index)
    if isinstance(expr, Scale):
        return normal_form(expr.arg, graph, order) * expr.coeff
    if isinstance(expr, Sum):
        out = LieElement.zero(graph, order)
        for part in expr.parts:
            out = out + normal_form(part, graph, order)
        return out
    if isinstance(expr, Bracket):
        return bracket(normal_form(expr.left, graph, order), normal_form(expr.right, graph, order))
    raise AlgebraError(f"not a raw expression: {expr!r}")


def word_element(graph: Graph, order: GeneratorOrder, letters: Iterable[int]) -> LieElement:
    """Normal form of the left-normed word [x_l1, x_l2, x_l3, ...]."""
    seq = tuple(letters)
    if not seq:
        raise AlgebraError("empty word")
    if len(seq) == 1:
        return LieElement.generator(graph, order, seq[0])
    nf = monomial_normal_form(graph, order, (seq[0], seq[1]), seq[2:])
    return LieElement(graph, order, {}, dict(nf))


def element_to_raw(g: LieElement) -> RawExpr:
    """Rebuild an expression tree whose value is g (used to re-evaluate
    an element under another generator order)."""
    parts: List[RawExpr] = []
    for i, c in sorted(g.linear.items()):
        parts.append(Scale(c, Gen(i)))
    for m, c in sorted(g.derived.items()):
        node: RawExpr = Bracket(Gen(m.head[0]), Gen(m.head[1]))
        for t in m.tail:
            node = Bracket(node, Gen(t))
        parts.append(Scale(c, node))
    return Sum(tuple(parts))


def change_order(g: LieElement, new_order: GeneratorOrder) -> LieElement:
    return normal_form(element_to_raw(g), g.graph, new_order)


# ---------------------------------------------------------------------------
# gradings
# ---------------------------------------------------------------------------

def homogeneous_components(g: LieElement) -> List[Tuple[Multidegree, LieElement]]:
    """Split g into its nonzero multidegree-homogeneous parts."""
    n = g.graph.n
    buckets: Dict[Multidegree, Tuple[Dict[int, int], Dict[BasisMonomial, int]]] = {}
    for i, c in g.linear.items():
        d = [0] * n
        d[i] = 1
        buckets.setdefault(tuple(d), ({}, {}))[0][i] = c
    for m, c in g.derived.items():
        buckets.setdefault(mdeg(m, n), ({}, {}))[1][m] = c
    return [
        (delta, LieElement(g.graph, g.order, lin, der))
        for delta, (lin, der) in sorted(buckets.items())
    ]


class GluedComponent(NamedTuple):
    """Monomials of one glued multidegree sharing their first letter."""

    glued: GluedMultidegree
    start: int
    element: LieElement


def glued_decomposition(g: LieElement) -> List[GluedComponent]:
    """Group a derived element by (glued multidegree, first letter)."""
    if g.linear:
        raise AlgebraError("glued decomposition applies to derived elements only")
    n = g.graph.n
    buckets: Dict[Tuple[GluedMultidegree, int], Dict[BasisMonomial, int]] = {}
    for m, c in g.derived.items():
        key = (glued_mdeg(m, n), m.head[0])
        buckets.setdefault(key, {})[m] = c
    return [
        GluedComponent(gd, start, LieElement(g.graph, g.order, {}, der))
        for (gd, start), der in sorted(buckets.items())
    ]


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def multidegrees(n: int, total: int) -> Iterator[Multidegree]:
    """All length-n vectors of nonnegative integers summing to total."""
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in multidegrees(n - 1, total - first):
            yield (first,) + rest


def delta_support(delta: Multidegree) -> FrozenSet[int]:
    return frozenset(i for i, d in enumerate(delta) if d)


def basis_monomials_of_multidegree(graph: Graph, order: GeneratorOrder, delta: Multidegree) -> List[BasisMonomial]:
    """All basis monomials of one multidegree.

    There is exactly one per connected component of the support
    subgraph that avoids the least support letter, headed by that
    component's greatest vertex.
    """
    if len(delta) != graph.n:
        raise AlgebraError(f"multidegree {delta} does not fit a graph on {graph.n} vertices")
    if sum(delta) < 2:
        return []
    supp = delta_support(delta)
    if len(supp) == 1:
        return []
    rank = order.rank
    comps = components_within(graph, supp)
    mu = min(supp, key=rank.__getitem__)
    out = []
    for block in comps:
        if mu in block:
            continue
        first = max(block, key=rank.__getitem__)
        counts = Counter()
        for i, d in enumerate(delta):
            if d:
                counts[i] = d
        counts[first] -= 1
        counts[mu] -= 1
        tail = tuple(sorted(counts.elements(), key=rank.__getitem__))
        out.append(BasisMonomial((first, mu), tail))
    return sorted(out)


def basis_monomials_of_degree(graph: Graph, order: GeneratorOrder, degree: int) -> List[BasisMonomial]:
    out: List[BasisMonomial] = []
    for delta in multidegrees(graph.n, degree):
        out.extend(basis_monomials_of_multidegree(graph, order, delta))
    return out


def basis_monomial_with_start(delta: Multidegree, start: int, graph: Graph, order: GeneratorOrder) -> Optional[BasisMonomial]:
    """The unique basis monomial of a multidegree with a given first
    letter, or None when no such monomial is valid."""
    if sum(delta) < 2 or len(delta) != graph.n:
        return None
    if not 0 <= start < graph.n or delta[start] == 0:
        return None
    supp = delta_support(delta)
    rank = order.rank
    mu = min(supp, key=rank.__getitem__)
    if start == mu:
        return None
    counts = Counter()
    for i, d in enumerate(delta):
        if d:
            counts[i] = d
    counts[start] -= 1
    counts[mu] -= 1
    tail = tuple(sorted(counts.elements(), key=rank.__getitem__))
    m = BasisMonomial((start, mu), tail)
    return m if is_basis_monomial(m.head, m.tail, graph, order) else None


# ---------------------------------------------------------------------------
# canonical text
# ---------------------------------------------------------------------------

def _term_sort_key(item):
    m, _ = item
    return (m.degree, tuple(sorted(m.letters())), m.head, m.tail)


def format_monomial(m: BasisMonomial) -> str:
    head = f"x{m.head[0]},x{m.head[1]}"
    if m.tail:
        return "[" + head + ";" + ",".join(f"x{t}" for t in m.tail) + "]"
    return "[" + head + "]"


def format_element(g: LieElement) -> str:
    """Canonical text: linear terms by index, then monomials by degree."""
    chunks: List[Tuple[int, str]] = []
    for i, c in sorted(g.linear.items()):
        chunks.append((c, f"x{i}"))
    for m, c in sorted(g.derived.items(), key=_term_sort_key):
        chunks.append((c, format_monomial(m)))
    if not chunks:
        return "0"
    parts: List[str] = []
    for k, (c, body) in enumerate(chunks):
        mag = abs(c)
        text = body if mag == 1 else f"{mag}*{body}"
        if k == 0:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append(("- " if c < 0 else "+ ") + text)
    return " ".join(parts)
