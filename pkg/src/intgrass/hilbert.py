"""Dimensions of graded pieces of R(n, m) = K[T_ij, S_l] / I_{2,n}.

The fast path counts standard monomials: multichains in the poset of pairs
(i, j) under the componentwise order, times monomials in the free
variables. The oracle counts monomials minus the rank of the degree-w part
of the ideal, so it does not rely on the standard-monomial basis.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import NoCertificate, OracleTooLarge, PreconditionError
from .grading import (
    Cone2,
    ConeKind,
    GradingData,
    Weight,
    add,
    dot,
    is_homogeneous,
    is_pointed,
    pairs,
    sub,
)
from .plucker import Monomial, iter_relations, straighten

Pair = tuple[int, int]

DEFAULT_ORACLE_BOUND = 6


def oracle_bound() -> int:
    raw = os.environ.get("GRASS_ORACLE_BOUND")
    return int(raw) if raw else DEFAULT_ORACLE_BOUND


def precedes(p: Pair, q: Pair) -> bool:
    return p[0] <= q[0] and p[1] <= q[1]


@dataclass(frozen=True)
class ColumnPoset:
    """Pairs in lexicographic order (a linear extension of the componentwise order)."""

    pairs: tuple[Pair, ...]
    weights: tuple[Weight, ...]
    above: tuple[tuple[int, ...], ...]  # above[c] = indices c' with pairs[c] <= pairs[c']

    @classmethod
    def from_grading(cls, g: GradingData) -> "ColumnPoset":
        ps = tuple(pairs(g.n))
        above = tuple(tuple(d for d in range(len(ps)) if precedes(ps[c], ps[d])) for c in range(len(ps)))
        return cls(ps, g.t_weights, above)

    def leq(self, p: Pair, q: Pair) -> bool:
        return precedes(p, q)


def positivity_certificate(g: GradingData) -> Weight:
    """Integer functional lam with lam . w >= 1 on every generator degree."""
    if not is_pointed(g):
        raise NoCertificate("grading is not pointed; its effective cone contains a line")
    ws = set(g.weights)
    bound = max(abs(c) for w in ws for c in w) + 1
    cands = [
        (a, b)
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
        if (a, b) != (0, 0) and math.gcd(a, b) == 1
    ]
    cands.sort(key=lambda v: (abs(v[0]) + abs(v[1]), -v[0], -v[1]))
    for lam in cands:
        if all(dot(lam, w) >= 1 for w in ws):
            return lam
    # sum of the inward normals of the extremal rays always works
    eff = Cone2.from_generators(ws)
    if eff.kind is ConeKind.RAY:
        return eff.rays[0]
    r1, r2 = eff.rays
    lam = ((-r1[1]) + r2[1], r1[0] - r2[0])
    if all(dot(lam, w) >= 1 for w in ws):
        return lam
    raise NoCertificate("no positivity certificate found")


def _check_certificate(weights: Iterable[Weight], lam: Weight) -> None:
    if any(dot(lam, w) < 1 for w in weights):
        raise PreconditionError(f"{lam} is not a positivity certificate for these weights")


def chain_count(poset: ColumnPoset, target: Weight, lam: Weight) -> int:
    """Number of multichains c_1 <= ... <= c_s whose weights sum to ``target``."""
    _check_certificate(poset.weights, lam)
    ws = poset.weights
    above = poset.above

    @lru_cache(maxsize=None)
    def count(c: int, r: Weight) -> int:
        # chains whose elements all lie above pairs[c], with weight r
        total = 1 if r == (0, 0) else 0
        for d in above[c]:
            rest = sub(r, ws[d])
            if dot(lam, rest) >= 0:
                total += count(d, rest)
        return total

    if dot(lam, target) < 0:
        return 0
    # pair (1, 2) is the minimum, so chains above it are all chains
    return count(0, tuple(target))


def free_table(s_weights: Sequence[Weight], lam: Weight, level: int) -> dict[Weight, int]:
    """Number of monomials in the S_l of each degree w with lam . w <= level."""
    _check_certificate(s_weights, lam)
    table: dict[Weight, int] = {(0, 0): 1}
    for w in s_weights:
        new: dict[Weight, int] = {}
        for v, c in table.items():
            e_v = v
            while dot(lam, e_v) <= level:
                new[e_v] = new.get(e_v, 0) + c
                e_v = add(e_v, w)
        table = new
    return table


def free_count(s_weights: Sequence[Weight], target: Weight, lam: Weight) -> int:
    return free_table(s_weights, lam, dot(lam, target)).get(tuple(target), 0)


def graded_dim(g: GradingData, target: Weight, lam: Optional[Weight] = None) -> int:
    if not is_homogeneous(g):
        raise PreconditionError("grading does not make the Pluecker relations homogeneous")
    lam = positivity_certificate(g) if lam is None else lam
    target = tuple(target)
    level = dot(lam, target)
    if level < 0:
        return 0
    poset = ColumnPoset.from_grading(g)
    total = 0
    for v, c in free_table(g.s_weights, lam, level).items():
        total += c * chain_count(poset, sub(target, v), lam)
    return total


# oracle ----------------------------------------------------------------------------


def _monomials(weights: Sequence[Weight], target: Weight, lam: Weight) -> Iterator[tuple[int, ...]]:
    """Exponent vectors e with sum e_i * weights[i] == target."""
    k = len(weights)
    exps = [0] * k

    def rec(i: int, r: Weight) -> Iterator[tuple[int, ...]]:
        if i == k:
            if r == (0, 0):
                yield tuple(exps)
            return
        e = 0
        while dot(lam, r) >= 0:
            exps[i] = e
            yield from rec(i + 1, r)
            r = sub(r, weights[i])
            e += 1
        exps[i] = 0

    if dot(lam, target) >= 0:
        yield from rec(0, tuple(target))


class _Echelon:
    """Incremental row echelon form over Q using primitive integer rows."""

    def __init__(self) -> None:
        self.rows: dict[int, dict[int, int]] = {}

    def add(self, row: dict[int, int]) -> bool:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = max(row)
            piv = self.rows.get(lead)
            if piv is None:
                g = 0
                for v in row.values():
                    g = math.gcd(g, v)
                self.rows[lead] = {c: v // g for c, v in row.items()}
                return True
            a, b = piv[lead], row[lead]
            new = {c: a * v for c, v in row.items()}
            for c, v in piv.items():
                new[c] = new.get(c, 0) - b * v
            g = 0
            row = {}
            for c, v in new.items():
                if v:
                    row[c] = v
                    g = math.gcd(g, v)
            if g > 1:
                row = {c: v // g for c, v in row.items()}
        return False

    @property
    def rank(self) -> int:
        return len(self.rows)


def _oracle_ideal(g: GradingData, target: Weight, lam: Weight) -> int:
    ps = pairs(g.n)
    pos = {p: t for t, p in enumerate(ps)}
    weights = list(g.weights)
    monos = list(_monomials(weights, target, lam))
    index = {e: t for t, e in enumerate(monos)}
    ech = _Echelon()
    cache: dict[Weight, list[tuple[int, ...]]] = {}
    for rel in iter_relations(g.n):
        _, p0, q0 = rel.terms[0]
        deg = add(g.w(*p0), g.w(*q0))
        rest = sub(target, deg)
        if rest not in cache:
            cache[rest] = list(_monomials(weights, rest, lam))
        for mu in cache[rest]:
            row: dict[int, int] = {}
            for coeff, p, q in rel.terms:
                e = list(mu)
                e[pos[p]] += 1
                e[pos[q]] += 1
                col = index[tuple(e)]
                row[col] = row.get(col, 0) + coeff
            ech.add(row)
    return len(monos) - ech.rank


def _oracle_straighten(g: GradingData, target: Weight, lam: Weight) -> int:
    ps = pairs(g.n)
    nt = len(ps)
    cols: dict[tuple, int] = {}
    ech = _Echelon()
    for e in _monomials(list(g.weights), target, lam):
        mono = Monomial.from_exponents({ps[t]: e[t] for t in range(nt) if e[t]}, e[nt:])
        row: dict[int, int] = {}
        for std, c in straighten(mono).items():
            col = cols.setdefault((std.pairs, std.s), len(cols))
            row[col] = row.get(col, 0) + c
        ech.add(row)
    return ech.rank


def graded_dim_oracle(
    g: GradingData, target: Weight, bound: Optional[int] = None, method: str = "ideal"
) -> int:
    """Brute-force graded dimension; ``ideal`` subtracts the rank of I_w, ``straighten``
    takes the rank of the straightened images of all monomials."""
    if not is_homogeneous(g):
        raise PreconditionError("grading does not make the Pluecker relations homogeneous")
    lam = positivity_certificate(g)
    bound = oracle_bound() if bound is None else bound
    level = dot(lam, target)
    if level > bound:
        raise OracleTooLarge(f"lam . target = {level} exceeds the oracle bound {bound}")
    target = tuple(target)
    if method == "ideal":
        return _oracle_ideal(g, target, lam)
    if method == "straighten":
        return _oracle_straighten(g, target, lam)
    raise ValueError(f"unknown oracle method {method!r}")


def h0_anticanonical(v) -> int:
    from .classify import anticanonical

    g = v.grading()
    return graded_dim(g, anticanonical(g))
