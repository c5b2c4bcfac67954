"""Z^2-gradings of R(n, m), their validity predicates and planar cone arithmetic.

Weights are plain ``(x, y)`` integer tuples. Every cone that shows up
(effective, moving, semiample, images of orthant faces) lives in Q^2, so
a small exact 2D cone type is enough; no polyhedral library is needed.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .errors import InvalidParameter, PreconditionError

Weight = tuple[int, int]
# ("T", i, j) for the Pluecker variable T_ij, ("S", l) for the free variable S_l.
Label = Union[tuple[str, int, int], tuple[str, int]]

ZERO: Weight = (0, 0)


def det(a: Weight, b: Weight) -> int:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Weight, b: Weight) -> int:
    return a[0] * b[0] + a[1] * b[1]


def add(a: Weight, b: Weight) -> Weight:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Weight, b: Weight) -> Weight:
    return (a[0] - b[0], a[1] - b[1])


def scale(c: int, a: Weight) -> Weight:
    return (c * a[0], c * a[1])


def neg(a: Weight) -> Weight:
    return (-a[0], -a[1])


def primitive(v: Weight) -> Weight:
    g = math.gcd(v[0], v[1])
    if g == 0:
        raise InvalidParameter("the zero vector has no primitive direction")
    return (v[0] // g, v[1] // g)


def _half(v: Weight) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(a: Weight, b: Weight) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    d = det(a, b)
    return -1 if d > 0 else (1 if d < 0 else 0)


angle_key = functools.cmp_to_key(_angle_cmp)


def gcd_of_minors(vectors: Iterable[Weight]) -> int:
    """gcd of all 2x2 minors; equals 1 iff the vectors generate Z^2."""
    vs = list(dict.fromkeys(vectors))
    g = 0
    for a, b in itertools.combinations(vs, 2):
        g = math.gcd(g, det(a, b))
        if g == 1:
            return 1
    return g


class ConeKind(enum.Enum):
    ZERO = "zero"
    RAY = "ray"
    SALIENT = "salient"
    LINE = "line"
    HALFPLANE = "halfplane"
    FULL = "full"


@dataclass(frozen=True)
class Cone2:
    """A rational polyhedral cone in Q^2.

    ``rays`` holds primitive integer vectors: one for RAY, the
    counterclockwise-ordered pair for SALIENT, ``(r, -r)`` for LINE and for
    HALFPLANE (the half-plane to the left of ``r``), nothing otherwise.
    """

    kind: ConeKind
    rays: tuple[Weight, ...] = ()

    @classmethod
    def zero(cls) -> "Cone2":
        return cls(ConeKind.ZERO)

    @classmethod
    def full(cls) -> "Cone2":
        return cls(ConeKind.FULL)

    @classmethod
    def from_generators(cls, vectors: Iterable[Weight]) -> "Cone2":
        dirs = sorted({primitive(v) for v in set(vectors) if v != ZERO}, key=angle_key)
        if not dirs:
            return cls.zero()
        if len(dirs) == 1:
            return cls(ConeKind.RAY, (dirs[0],))
        if len(dirs) == 2 and dirs[1] == neg(dirs[0]):
            r = dirs[0] if _half(dirs[0]) == 0 else dirs[1]
            return cls(ConeKind.LINE, (r, neg(r)))
        k = len(dirs)
        straight = None
        for idx in range(k):
            a, b = dirs[idx], dirs[(idx + 1) % k]
            d = det(a, b)
            if d < 0:
                # the ccw gap from a to b exceeds pi: b starts the cone, a ends it
                return cls(ConeKind.SALIENT, (b, a))
            if d == 0 and b == neg(a):
                straight = b
        if straight is not None:
            return cls(ConeKind.HALFPLANE, (straight, neg(straight)))
        return cls.full()

    @classmethod
    def between(cls, a: Weight, b: Weight) -> "Cone2":
        return cls.from_generators([a, b])

    @property
    def dim(self) -> int:
        return {
            ConeKind.ZERO: 0,
            ConeKind.RAY: 1,
            ConeKind.LINE: 1,
        }.get(self.kind, 2)

    @property
    def is_full_dim(self) -> bool:
        return self.dim == 2

    def contains(self, v: Weight) -> bool:
        k = self.kind
        if k is ConeKind.FULL or v == ZERO:
            return True
        if k is ConeKind.ZERO:
            return False
        if k is ConeKind.RAY:
            r = self.rays[0]
            return det(r, v) == 0 and dot(r, v) > 0
        if k is ConeKind.LINE:
            return det(self.rays[0], v) == 0
        if k is ConeKind.HALFPLANE:
            return det(self.rays[0], v) >= 0
        r1, r2 = self.rays
        return det(r1, v) >= 0 and det(v, r2) >= 0

    def interior_contains(self, v: Weight) -> bool:
        """Membership in the topological interior of the cone in Q^2."""
        k = self.kind
        if k is ConeKind.FULL:
            return True
        if k is ConeKind.HALFPLANE:
            return det(self.rays[0], v) > 0
        if k is ConeKind.SALIENT:
            r1, r2 = self.rays
            return det(r1, v) > 0 and det(v, r2) > 0
        return False

    def relint_contains(self, v: Weight) -> bool:
        if self.kind is ConeKind.ZERO:
            return v == ZERO
        if self.kind is ConeKind.RAY:
            return self.contains(v) and v != ZERO
        if self.kind is ConeKind.LINE:
            return self.contains(v)
        return self.interior_contains(v)

    def on_boundary(self, v: Weight) -> bool:
        return self.contains(v) and not self.interior_contains(v)

    def ray_of(self, v: Weight) -> Weight | None:
        """The extremal ray through ``v`` if ``v`` is a nonzero boundary point."""
        if v == ZERO:
            return None
        p = primitive(v)
        return p if p in self.rays and self.contains(v) else None

    def intersect(self, other: "Cone2") -> "Cone2":
        if self.kind is ConeKind.FULL:
            return other
        if other.kind is ConeKind.FULL:
            return self
        if ConeKind.ZERO in (self.kind, other.kind):
            return Cone2.zero()
        if self.kind is ConeKind.HALFPLANE and self == other:
            return self
        cands = [r for r in self.rays if other.contains(r)]
        cands += [r for r in other.rays if self.contains(r)]
        return Cone2.from_generators(cands)

    def __str__(self) -> str:
        if self.kind is ConeKind.ZERO:
            return "{0}"
        if self.kind is ConeKind.FULL:
            return "Q^2"
        body = ", ".join(f"({x},{y})" for x, y in self.rays)
        if self.kind is ConeKind.LINE:
            return f"line({body})"
        if self.kind is ConeKind.HALFPLANE:
            return f"halfplane({body})"
        return f"cone({body})"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "rays": [list(r) for r in self.rays]}


def intersect_all(cones: Iterable[Cone2]) -> Cone2:
    out = Cone2.full()
    for c in cones:
        out = out.intersect(c)
    return out


def pairs(n: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), 1 <= i < j <= n, in lexicographic order."""
    return list(itertools.combinations(range(1, n + 1), 2))


def lex_position(pair: tuple[int, int], n: int) -> int:
    i, j = pair
    if not (1 <= i < j <= n):
        raise InvalidParameter(f"pair {pair} out of range for n={n}")
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


def t_label(i: int, j: int) -> Label:
    return ("T", i, j) if i < j else ("T", j, i)


def s_label(l: int) -> Label:
    return ("S", l)


def is_free(label: Label) -> bool:
    return label[0] == "S"


def label_str(label: Label) -> str:
    if label[0] == "S":
        return f"S{label[1]}"
    sep = "," if label[2] >= 10 else ""
    return f"T{label[1]}{sep}{label[2]}"


def _as_weight(v: Sequence[int]) -> Weight:
    if len(v) != 2:
        raise InvalidParameter(f"weights live in Z^2, got {v!r}")
    x, y = v
    if int(x) != x or int(y) != y:
        raise InvalidParameter(f"non-integral weight {v!r}")
    return (int(x), int(y))


@dataclass(frozen=True)
class GradingData:
    """Degrees of T_ij (lexicographic pair order) and of S_1, ..., S_m in Cl(X) = Z^2."""

    n: int
    m: int
    t_weights: tuple[Weight, ...]
    s_weights: tuple[Weight, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.n < 4:
            raise InvalidParameter(f"need n >= 4, got {self.n}")
        tw = tuple(_as_weight(w) for w in self.t_weights)
        sw = tuple(_as_weight(w) for w in self.s_weights)
        if len(tw) != math.comb(self.n, 2):
            raise InvalidParameter(
                f"expected {math.comb(self.n, 2)} T-weights for n={self.n}, got {len(tw)}"
            )
        if len(sw) != self.m:
            raise InvalidParameter(f"expected {self.m} S-weights, got {len(sw)}")
        object.__setattr__(self, "t_weights", tw)
        object.__setattr__(self, "s_weights", sw)
        object.__setattr__(self, "_by_pair", dict(zip(pairs(self.n), tw)))

    @classmethod
    def from_function(cls, n: int, t_weight, s_weights: Sequence[Weight] = ()) -> "GradingData":
        return cls(n, len(s_weights), tuple(t_weight(i, j) for i, j in pairs(n)), tuple(s_weights))

    def w(self, i: int, j: int) -> Weight:
        try:
            return self._by_pair[(i, j) if i < j else (j, i)]
        except KeyError:
            raise InvalidParameter(f"pair {(i, j)} out of range for n={self.n}") from None

    def weight_of(self, label: Label) -> Weight:
        if label[0] == "S":
            return self.s_weights[label[1] - 1]
        return self.w(label[1], label[2])

    def t_items(self) -> Iterator[tuple[tuple[int, int], Weight]]:
        return zip(pairs(self.n), self.t_weights)

    def columns(self) -> list[tuple[Label, Weight]]:
        cols: list[tuple[Label, Weight]] = [(("T", i, j), w) for (i, j), w in self.t_items()]
        cols += [(("S", l + 1), w) for l, w in enumerate(self.s_weights)]
        return cols

    @property
    def weights(self) -> tuple[Weight, ...]:
        return self.t_weights + self.s_weights

    def matrix(self) -> list[list[int]]:
        ws = self.weights
        return [[w[0] for w in ws], [w[1] for w in ws]]

    def transform(self, a: Sequence[Sequence[int]]) -> "GradingData":
        """Apply the integer 2x2 matrix ``a`` to every weight."""
        (p, q), (r, s) = a

        def f(w: Weight) -> Weight:
            return (p * w[0] + q * w[1], r * w[0] + s * w[1])

        return GradingData(self.n, self.m, tuple(map(f, self.t_weights)), tuple(map(f, self.s_weights)))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "t_weights": [list(w) for w in self.t_weights],
            "s_weights": [list(w) for w in self.s_weights],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GradingData":
        if "torsion" in obj and obj["torsion"]:
            raise InvalidParameter("only torsion-free class group Z^2 is supported")
        try:
            n = int(obj["n"])
            tw = [tuple(w) for w in obj["t_weights"]]
            sw = [tuple(w) for w in obj.get("s_weights", [])]
            m = int(obj.get("m", len(sw)))
        except (KeyError, TypeError) as exc:
            raise InvalidParameter(f"malformed grading JSON: {exc}") from exc
        return cls(n, m, tuple(tw), tuple(sw))


def is_homogeneous(g: GradingData) -> bool:
    for a, b, c, d in itertools.combinations(range(1, g.n + 1), 4):
        s1 = add(g.w(a, b), g.w(c, d))
        if s1 != add(g.w(a, c), g.w(b, d)) or s1 != add(g.w(a, d), g.w(b, c)):
            return False
    return True


@functools.lru_cache(maxsize=4096)
def is_pointed(g: GradingData) -> bool:
    ws = set(g.weights)
    if ZERO in ws:
        return False
    return Cone2.from_generators(ws).kind in (ConeKind.RAY, ConeKind.SALIENT)


def is_almost_free(g: GradingData) -> bool:
    counts = Counter(g.weights)
    distinct = list(counts)
    if gcd_of_minors(distinct) != 1:
        return False
    for w, c in counts.items():
        if c == 1 and gcd_of_minors(v for v in distinct if v != w) != 1:
            return False
    return True


def effective_cone(g: GradingData) -> Cone2:
    if not is_pointed(g):
        raise PreconditionError("effective cone requested for a non-pointed grading")
    return Cone2.from_generators(set(g.weights))


@functools.lru_cache(maxsize=4096)
def moving_cone(g: GradingData) -> Cone2:
    eff = effective_cone(g)
    counts = Counter(g.weights)
    if len(g.weights) == 1:
        return Cone2.zero()
    out = eff
    for w, c in counts.items():
        if c == 1:
            out = out.intersect(Cone2.from_generators(v for v in counts if v != w))
    return out


def dim_x(n: int, m: int) -> int:
    """dim X = d(n-d) + m - rank Cl(X) + 1 with d = 2 and rank 2."""
    if n < 4 or m < 0:
        raise InvalidParameter(f"invalid (n, m) = ({n}, {m})")
    return 2 * (n - 2) + m - 2 + 1
