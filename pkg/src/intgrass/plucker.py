"""The Pluecker ideal I_{2,n}: relations, standard monomials, straightening."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .errors import InvalidParameter

Pair = tuple[int, int]


@dataclass(frozen=True)
class PluckerRelation:
    quad: tuple[int, int, int, int]
    terms: tuple[tuple[int, Pair, Pair], ...]

    def to_json(self) -> dict:
        return {
            "quad": list(self.quad),
            "terms": [[c, list(p), list(q)] for c, p, q in self.terms],
        }

    def __str__(self) -> str:
        out = []
        for c, (a, b), (d, e) in self.terms:
            sign = "+" if c > 0 else "-"
            out.append(f"{sign} T{a}{b}*T{d}{e}")
        s = " ".join(out)
        return s[2:] if s.startswith("+ ") else s


@dataclass(frozen=True, order=True)
class Monomial:
    """A monomial in the T_ij and S_l; ``pairs`` is the sorted multiset of T-factors."""

    pairs: tuple[Pair, ...] = ()
    s: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ps = []
        for p in self.pairs:
            i, j = p
            if not i < j:
                raise InvalidParameter(f"T-index {p} must satisfy i < j")
            ps.append((int(i), int(j)))
        if any(e < 0 for e in self.s):
            raise InvalidParameter("negative exponent")
        object.__setattr__(self, "pairs", tuple(sorted(ps)))
        object.__setattr__(self, "s", tuple(self.s))

    @classmethod
    def from_exponents(cls, t_exponents: Mapping[Pair, int], s_exponents=()) -> "Monomial":
        ps = []
        for p, e in t_exponents.items():
            if e < 0:
                raise InvalidParameter("negative exponent")
            ps.extend([tuple(p)] * e)
        return cls(tuple(ps), tuple(s_exponents))

    @property
    def t_exponents(self) -> dict[Pair, int]:
        out: dict[Pair, int] = defaultdict(int)
        for p in self.pairs:
            out[p] += 1
        return dict(out)

    @property
    def degree(self) -> int:
        return len(self.pairs) + sum(self.s)

    def __str__(self) -> str:
        parts = [f"T{i}{j}" for i, j in self.pairs]
        parts += [f"S{l + 1}^{e}" if e > 1 else f"S{l + 1}" for l, e in enumerate(self.s) if e]
        return "*".join(parts) or "1"


def quadruples(n: int) -> list[tuple[int, int, int, int]]:
    if n < 4:
        raise InvalidParameter(f"need n >= 4, got {n}")
    return list(itertools.combinations(range(1, n + 1), 4))


def relation(quad) -> PluckerRelation:
    a, b, c, d = quad
    if not (a < b < c < d) or a < 1:
        raise InvalidParameter(f"quadruple {quad} must be strictly increasing positive indices")
    return PluckerRelation(
        (a, b, c, d),
        ((1, (a, b), (c, d)), (-1, (a, c), (b, d)), (1, (a, d), (b, c))),
    )


def iter_relations(n: int) -> Iterator[PluckerRelation]:
    if n < 4:
        raise InvalidParameter(f"need n >= 4, got {n}")
    for q in itertools.combinations(range(1, n + 1), 4):
        yield relation(q)


def comparable(p: Pair, q: Pair) -> bool:
    return (p[0] <= q[0] and p[1] <= q[1]) or (q[0] <= p[0] and q[1] <= p[1])


def _pairs_standard(ps: tuple[Pair, ...]) -> bool:
    # ps sorted by (i, j): standard iff the second row weakly increases
    return all(ps[t][1] <= ps[t + 1][1] for t in range(len(ps) - 1))


def is_standard(mono: Monomial) -> bool:
    return _pairs_standard(mono.pairs)


@lru_cache(maxsize=None)
def _straighten_pairs(ps: tuple[Pair, ...]) -> tuple[tuple[tuple[Pair, ...], int], ...]:
    if _pairs_standard(ps):
        return ((ps, 1),)
    worst = None
    for x, y in itertools.combinations(range(len(ps)), 2):
        if not comparable(ps[x], ps[y]):
            key = (ps[x], ps[y])
            if worst is None or key > worst[0]:
                worst = (key, x, y)
    (outer, inner), x, y = worst
    if outer[0] > inner[0]:
        outer, inner = inner, outer
    # outer = (p, s), inner = (q, r) with p < q < r < s:
    # T_ps T_qr = T_pr T_qs - T_pq T_rs
    p, s = outer
    q, r = inner
    rest = tuple(ps[t] for t in range(len(ps)) if t not in (x, y))
    out: dict[tuple[Pair, ...], int] = defaultdict(int)
    for coeff, new in ((1, ((p, r), (q, s))), (-1, ((p, q), (r, s)))):
        for mono, c in _straighten_pairs(tuple(sorted(rest + new))):
            out[mono] += coeff * c
    return tuple((k, v) for k, v in sorted(out.items()) if v)


def straighten(mono: Monomial) -> dict[Monomial, int]:
    """Rewrite ``mono`` modulo I_{2,n} as an integer combination of standard monomials.

    Each rewrite strictly lowers sum((j - i)^2) over the T-factors, so the
    recursion terminates.
    """
    return {Monomial(ps, mono.s): c for ps, c in _straighten_pairs(mono.pairs)}


def straighten_combination(poly: Mapping[Monomial, int]) -> dict[Monomial, int]:
    out: dict[Monomial, int] = defaultdict(int)
    for mono, c in poly.items():
        for m2, c2 in straighten(mono).items():
            out[m2] += c * c2
    return {k: v for k, v in out.items() if v}
