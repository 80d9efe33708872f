"""Brute-force certifier by graded linear algebra over the free algebra.

This module never calls the rewriting engine.  It works in the free
metabelian algebra on n generators, where the classical straightening
(second head letter minimal, tail sorted, plain Jacobi expansion) gives
a standard monomial basis of each multidegree.  The relation ideal of a
graph is spanned, degree by degree, by every edge bracket acted on by
the one completing associative monomial, so dimensions and membership
questions reduce to exact rational rank computations.
"""

from __future__ import annotations

from bisect import insort
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from . import linalg
from .core import GeneratorOrder, Multidegree, is_basis_monomial
from .errors import AlgebraError
from .graphs import Graph

# standard monomial key: ((first, second), sorted tail)
FreeMonomial = Tuple[Tuple[int, int], Tuple[int, ...]]
RawMonomial = Tuple[int, Tuple[int, ...]]  # (coefficient, left-normed letters)


def _merge(into: Dict[FreeMonomial, int], other: Dict[FreeMonomial, int], scale: int = 1) -> None:
    for k, v in other.items():
        new = into.get(k, 0) + scale * v
        if new:
            into[k] = new
        elif k in into:
            del into[k]


def _with_inserted(tail: Tuple[int, ...], letter: int) -> Tuple[int, ...]:
    out = list(tail)
    insort(out, letter)
    return tuple(out)


def _free_expand(a: int, b: int, tail: Tuple[int, ...]) -> Dict[FreeMonomial, int]:
    """Expand [x_a,x_b].tail over the standard monomials of the free
    metabelian algebra (tail must be sorted ascending)."""
    if a == b:
        return {}
    if a < b:
        return {k: -v for k, v in _free_expand(b, a, tail).items()}
    if tail and tail[0] < b:
        t, rest = tail[0], tail[1:]
        out: Dict[FreeMonomial, int] = {}
        _merge(out, _free_expand(a, t, _with_inserted(rest, b)))
        _merge(out, _free_expand(t, b, _with_inserted(rest, a)))
        return out
    return {((a, b), tail): 1}


def expand_word(letters: Sequence[int]) -> Dict[FreeMonomial, int]:
    """Standard-basis expansion of a left-normed word of length >= 2."""
    if len(letters) < 2:
        raise AlgebraError("a bracket word needs at least two letters")
    a, b = letters[0], letters[1]
    return _free_expand(a, b, tuple(sorted(letters[2:])))


def free_standard_monomials(delta: Multidegree) -> List[FreeMonomial]:
    """Standard monomials of one multidegree, sorted."""
    if sum(delta) < 2:
        return []
    supp = [i for i, d in enumerate(delta) if d]
    if len(supp) < 2:
        return []
    mu = supp[0]
    out = []
    for first in supp[1:]:
        tail: List[int] = []
        for i, d in enumerate(delta):
            copies = d - (i == first) - (i == mu)
            tail.extend([i] * copies)
        out.append(((first, mu), tuple(tail)))
    return sorted(out)


def _word_mdeg(n: int, letters: Sequence[int]) -> Multidegree:
    out = [0] * n
    for v in letters:
        if not 0 <= v < n:
            raise AlgebraError(f"letter x{v} out of range")
        out[v] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _ideal_slice(graph: Graph, delta: Multidegree):
    """RREF of the relation ideal at one multidegree.

    Spanning rows are the expansions of [x_i,x_j].w for every edge
    {i,j} and the single associative monomial w completing delta; that
    enumeration is exact, not sampled.
    """
    basis = free_standard_monomials(delta)
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    for i, j in sorted(graph.edges):
        if delta[i] < 1 or delta[j] < 1:
            continue
        tail: List[int] = []
        for v, d in enumerate(delta):
            copies = d - (v == i) - (v == j)
            tail.extend([v] * copies)
        expansion = _free_expand(j, i, tuple(tail))
        row = [0] * len(basis)
        for m, c in expansion.items():
            row[index[m]] = c
        rows.append(row)
    red, pivots = linalg.rref(rows)
    return basis, index, red, pivots


def graded_dimension(graph: Graph, delta: Multidegree) -> int:
    """dim of the multidegree slice of the graph algebra."""
    if len(delta) != graph.n:
        raise AlgebraError(f"multidegree {delta} does not fit the graph")
    total = sum(delta)
    if total == 0:
        return 0
    if total == 1:
        return 1
    basis, _, red, _ = _ideal_slice(graph, delta)
    return len(basis) - len(red)


def ideal_member(raw: Sequence[RawMonomial], graph: Graph) -> bool:
    """Does the combination of left-normed words vanish in the graph
    algebra, i.e. lie in the relation ideal of the free algebra?"""
    linear: Dict[int, int] = {}
    by_delta: Dict[Multidegree, Dict[FreeMonomial, int]] = {}
    for coeff, letters in raw:
        if len(letters) == 1:
            v = letters[0]
            linear[v] = linear.get(v, 0) + coeff
            continue
        delta = _word_mdeg(graph.n, letters)
        _merge(by_delta.setdefault(delta, {}), expand_word(letters), coeff)
    if any(linear.values()):
        return False
    for delta, combo in by_delta.items():
        if not combo:
            continue
        basis, index, red, pivots = _ideal_slice(graph, delta)
        vector = [0] * len(basis)
        for m, c in combo.items():
            vector[index[m]] = c
        if not linalg.in_rowspan(red, pivots, vector):
            return False
    return True


class CertifyReport(NamedTuple):
    ok: bool
    delta: Multidegree
    count: int
    dim: int
    independent: bool
    witness: Optional[str]


def certify_basis(graph: Graph, delta: Multidegree, order: GeneratorOrder) -> CertifyReport:
    """Check the engine's basis claim at one multidegree.

    Candidate monomials are enumerated by brute force over head pairs
    and filtered through the literal four conditions, then compared in
    number with the oracle dimension and checked to be independent
    modulo the ideal slice.
    """
    total = sum(delta)
    if total < 2:
        count = 1 if total == 1 else 0
        dim = graded_dimension(graph, delta)
        return CertifyReport(count == dim, delta, count, dim, True, None)
    supp = sorted(i for i, d in enumerate(delta) if d)
    candidates = []
    for a in supp:
        for b in supp:
            if a == b:
                continue
            tail = []
            for i, d in enumerate(delta):
                copies = d - (i == a) - (i == b)
                if copies < 0:
                    break
                tail.extend([i] * copies)
            else:
                tail.sort(key=order.rank.__getitem__)
                if is_basis_monomial((a, b), tuple(tail), graph, order):
                    candidates.append(((a, b), tuple(tail)))
    dim = graded_dimension(graph, delta)
    count = len(candidates)
    if count != dim:
        return CertifyReport(False, delta, count, dim, False, "count != dim")
    basis, index, red, _ = _ideal_slice(graph, delta)
    stacked = [list(row) for row in red]
    for head, tail in candidates:
        row = [0] * len(basis)
        for m, c in _free_expand(head[0], head[1], tuple(sorted(tail))).items():
            row[index[m]] = c
        stacked.append(row)
    independent = linalg.rank(stacked) == len(red) + count
    witness = None if independent else "dependent modulo the relation ideal"
    return CertifyReport(independent, delta, count, dim, independent, witness)
