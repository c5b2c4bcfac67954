"""The six families of smooth Picard-number-two gradings: construction,
anticanonical class, Fano status, enumeration, counting and recognition.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .errors import InvalidParameter, NeedsPermutation, NonIntegralClass, PreconditionError
from .grading import GradingData, Weight, add, det, pairs

Matrix = tuple[tuple[int, int], tuple[int, int]]
IDENTITY: Matrix = ((1, 0), (0, 1))


class FanoStatus(enum.Enum):
    FANO = "fano"
    TRULY_ALMOST_FANO = "truly_almost"
    NEITHER = "neither"


def _status_from_comparison(lhs2: int, rhs2: int) -> FanoStatus:
    if lhs2 < rhs2:
        return FanoStatus.FANO
    if lhs2 == rhs2:
        return FanoStatus.TRULY_ALMOST_FANO
    return FanoStatus.NEITHER


def _nondecreasing(seq: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(seq, seq[1:]))


@dataclass(frozen=True)
class TypedVariety:
    """Parameters of one of the six families.

    ``alphas`` is (alpha_k, ..., alpha_n) for type 1, (alpha,) for type 2
    and (alpha_4, ..., alpha_n) for type 5. ``b`` is (b_1, b_2) for type 5.
    For types 1 and 2, ``a`` defaults to the largest alpha or beta.
    """

    tag: int
    n: int
    m: int = 0
    k: Optional[int] = None
    a: Optional[int] = None
    alphas: tuple[int, ...] = ()
    betas: tuple[int, ...] = ()
    b: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphas", tuple(int(x) for x in self.alphas))
        object.__setattr__(self, "betas", tuple(int(x) for x in self.betas))
        if self.b is not None:
            object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if self.tag in (1, 2) and self.a is None and (self.alphas or self.betas):
            object.__setattr__(self, "a", max(self.alphas + self.betas))
        self.validate()

    # convenience constructors -------------------------------------------------
    @classmethod
    def type1(cls, n: int, k: int, alphas: Sequence[int], betas: Sequence[int] = (), a: Optional[int] = None):
        return cls(1, n, len(betas), k=k, a=a, alphas=tuple(alphas), betas=tuple(betas))

    @classmethod
    def type2(cls, n: int, alpha: int, betas: Sequence[int] = (), a: Optional[int] = None):
        return cls(2, n, len(betas), a=a, alphas=(alpha,), betas=tuple(betas))

    @classmethod
    def type3(cls, n: int, k: int, m: int = 0):
        return cls(3, n, m, k=k)

    @classmethod
    def type4(cls, n: int, m: int):
        return cls(4, n, m)

    @classmethod
    def type5(cls, n: int, m: int, b: tuple[int, int], alphas: Sequence[int]):
        return cls(5, n, m, b=tuple(b), alphas=tuple(alphas))

    @classmethod
    def type6(cls, n: int, betas: Sequence[int]):
        return cls(6, n, len(betas), betas=tuple(betas))

    # validation ---------------------------------------------------------------
    def validate(self) -> None:
        n, m, tag = self.n, self.m, self.tag
        if tag not in range(1, 7):
            raise InvalidParameter(f"unknown type {tag}")
        if n < 4:
            raise InvalidParameter(f"need n >= 4, got n={n}")
        if m < 0:
            raise InvalidParameter(f"need m >= 0, got m={m}")
        if tag in (1, 2, 6) and len(self.betas) != m:
            raise InvalidParameter(f"type {tag} needs {m} betas, got {len(self.betas)}")
        if tag in (3, 4, 5) and self.betas:
            raise InvalidParameter(f"type {tag} has no beta parameters")
        check = getattr(self, f"_validate_type{tag}")
        check()

    def _fail(self, msg: str) -> None:
        raise InvalidParameter(f"type {self.tag} (n={self.n}, m={self.m}): {msg}")

    def _validate_ab(self) -> None:
        vals = self.alphas + self.betas
        if self.a is None or self.a < 0:
            self._fail("a must be a nonnegative integer")
        if not _nondecreasing(self.alphas) or not _nondecreasing(self.betas):
            self._fail("alpha and beta sequences must be nondecreasing")
        if min(vals) < 0 or max(vals) > self.a:
            self._fail(f"alphas and betas must lie in [0, a={self.a}]")
        if min(vals) != 0 or max(vals) != self.a:
            self._fail("both (0,1) and (a,1) must occur among the weights")

    def _validate_type1(self) -> None:
        n, k = self.n, self.k
        if k is None or not 4 <= k <= n:
            self._fail(f"need 4 <= k <= n, got k={k}")
        if len(self.alphas) != n - k + 1:
            self._fail(f"need {n - k + 1} alphas (alpha_k..alpha_n), got {len(self.alphas)}")
        if self.b is not None:
            self._fail("type 1 has no b parameters")
        self._validate_ab()

    def _validate_type2(self) -> None:
        if self.k is not None or self.b is not None or len(self.alphas) != 1:
            self._fail("type 2 takes a single alpha, a and betas")
        self._validate_ab()

    def _validate_type3(self) -> None:
        if self.k is None or not 4 <= self.k < self.n:
            self._fail(f"need 4 <= k < n, got k={self.k}")
        if self.alphas or self.b is not None or self.a is not None:
            self._fail("type 3 takes only k and m")

    def _validate_type4(self) -> None:
        if self.m < 1:
            self._fail("need m >= 1")
        if self.alphas or self.b is not None or self.a is not None or self.k is not None:
            self._fail("type 4 takes only m")

    def _validate_type5(self) -> None:
        if self.m < 2:
            self._fail("need m >= 2")
        if self.b is None or len(self.b) != 2:
            self._fail("need b = (b1, b2)")
        if len(self.alphas) != self.n - 3:
            self._fail(f"need {self.n - 3} alphas (alpha_4..alpha_n), got {len(self.alphas)}")
        b1, b2 = self.b
        if not _nondecreasing((0, b2, b1) + self.alphas):
            self._fail("need 0 = b3 <= b2 <= b1 <= alpha_4 <= ... <= alpha_n")
        if self.k is not None or self.a is not None:
            self._fail("type 5 takes only m, b and alphas")
        if any(w[0] < 0 for w in self._t_weights()):
            self._fail("every derived x_ij must be nonnegative")

    def _validate_type6(self) -> None:
        if self.m < 2:
            self._fail("need m >= 2")
        if not self.betas or self.betas[0] != 0 or not _nondecreasing(self.betas):
            self._fail("need 0 = beta_1 <= ... <= beta_m")
        if self.alphas or self.b is not None or self.k is not None or self.a is not None:
            self._fail("type 6 takes only betas")

    # weights ------------------------------------------------------------------
    def _t_weight_fn(self):
        n, k, tag = self.n, self.k, self.tag
        if tag == 1:
            al = {j: self.alphas[j - k] for j in range(k, n + 1)}

            def w(i, j):
                if j < k:
                    return (1, 0)
                if i < k:
                    return (al[j], 1)
                return (al[i] + al[j] - 1, 2)

        elif tag == 2:
            alpha = self.alphas[0]

            def w(i, j):
                return (1, 0) if j == n else (alpha, 1)

        elif tag == 3:

            def w(i, j):
                if j < k:
                    return (2, 1)
                if i >= k:
                    return (0, 1)
                return (1, 1)

        elif tag == 4:

            def w(i, j):
                if (i, j) == (1, 2):
                    return (2, 1)
                return (1, 1) if i <= 2 else (0, 1)

        elif tag == 5:
            b1, b2 = self.b
            bs = {1: b1, 2: b2, 3: 0}
            al = {j: self.alphas[j - 4] for j in range(4, n + 1)}

            def w(i, j):
                if j <= 3:
                    return (bs[6 - i - j], 1)
                if i <= 3:
                    return (al[j] - bs[i], 1)
                return (al[i] + al[j] - b1 - b2, 1)

        else:

            def w(i, j):
                return (1, 0)

        return w

    def _t_weights(self) -> list[Weight]:
        w = self._t_weight_fn()
        return [w(i, j) for i, j in pairs(self.n)]

    def _s_weights(self) -> list[Weight]:
        if self.tag in (1, 2, 6):
            return [(b, 1) for b in self.betas]
        return [(1, 0)] * self.m

    def grading(self) -> GradingData:
        return GradingData(self.n, self.m, tuple(self._t_weights()), tuple(self._s_weights()))

    def semiample_rays(self) -> tuple[Weight, Weight]:
        """The two extremal rays of the family's semiample cone, clockwise first."""
        if self.tag in (1, 2):
            return (1, 0), (self.a, 1)
        if self.tag in (3, 4):
            return (2, 1), (1, 1)
        if self.tag == 5:
            return (1, 0), (max(w[0] for w in self._t_weights()), 1)
        return (1, 0), (self.betas[-1], 1)

    def ample_class(self) -> Weight:
        r1, r2 = self.semiample_rays()
        return add(r1, r2)

    @property
    def params(self) -> dict:
        if self.tag == 1:
            return {"k": self.k, "a": self.a, "alpha": list(self.alphas), "beta": list(self.betas)}
        if self.tag == 2:
            return {"a": self.a, "alpha": self.alphas[0], "beta": list(self.betas)}
        if self.tag == 3:
            return {"k": self.k}
        if self.tag == 4:
            return {}
        if self.tag == 5:
            return {"b": list(self.b), "alpha": list(self.alphas)}
        return {"beta": list(self.betas)}

    def to_json(self) -> dict:
        g = self.grading()
        return {
            "type": self.tag,
            "n": self.n,
            "m": self.m,
            "params": self.params,
            "matrix": g.matrix(),
            "antican": list(anticanonical(g)),
            "fano": fano_status_by_criterion(self).value,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TypedVariety":
        try:
            tag, n, m = int(obj["type"]), int(obj["n"]), int(obj.get("m", 0))
            p = obj.get("params", {})
            if tag == 1:
                return cls(1, n, m, k=p["k"], a=p.get("a"), alphas=p["alpha"], betas=p.get("beta", []))
            if tag == 2:
                return cls(2, n, m, a=p.get("a"), alphas=(p["alpha"],), betas=p.get("beta", []))
            if tag == 3:
                return cls(3, n, m, k=p["k"])
            if tag == 4:
                return cls(4, n, m)
            if tag == 5:
                return cls(5, n, m, b=tuple(p["b"]), alphas=p["alpha"])
            return cls(tag, n, m, betas=p.get("beta", []))
        except (KeyError, TypeError) as exc:
            raise InvalidParameter(f"malformed variety JSON: {exc}") from exc

    def __str__(self) -> str:
        body = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"Type{self.tag}(n={self.n}, m={self.m}{', ' + body if body else ''})"


@dataclass(frozen=True)
class BuiltVariety:
    grading: GradingData
    u: Weight


def build(v: TypedVariety) -> BuiltVariety:
    v.validate()
    return BuiltVariety(v.grading(), v.ample_class())


def anticanonical(g: GradingData) -> Weight:
    """-K_X = 2/(n-1) * sum of T-degrees + sum of S-degrees."""
    sx = 2 * sum(w[0] for w in g.t_weights)
    sy = 2 * sum(w[1] for w in g.t_weights)
    if sx % (g.n - 1) or sy % (g.n - 1):
        raise NonIntegralClass(f"2*sum(w_ij) = ({sx},{sy}) is not divisible by n-1 = {g.n - 1}")
    out = (sx // (g.n - 1), sy // (g.n - 1))
    for w in g.s_weights:
        out = add(out, w)
    return out


def anticanonical_closed_form(v: TypedVariety) -> Weight:
    n, m = v.n, v.m
    if v.tag == 1:
        return (2 * sum(v.alphas) + sum(v.betas) + 2 * v.k - n - 2, 2 * (n - v.k + 1) + m)
    if v.tag == 2:
        return (sum(v.betas) + (n - 2) * v.alphas[0] + 2, n + m - 2)
    if v.tag == 3:
        return (2 * (v.k - 1) + m, n)
    if v.tag == 4:
        return (4 + m, n)
    if v.tag == 5:
        b1, b2 = v.b
        return (2 * sum(v.alphas) - (n - 4) * (b1 + b2) + m, n)
    return (n + sum(v.betas), m)


def fano_status_by_criterion(v: TypedVariety) -> FanoStatus:
    """Fano status from the per-family inequality, halves cleared by doubling."""
    n, m = v.n, v.m
    if v.tag == 1:
        lhs2 = (2 * n + m - 2 * v.k + 2) * v.a
        rhs2 = 2 * sum(v.alphas) + 2 * v.k - n - 2 + sum(v.betas)
        return _status_from_comparison(lhs2, rhs2)
    if v.tag == 2:
        return _status_from_comparison((n + m - 2) * v.a, sum(v.betas) + (n - 2) * v.alphas[0] + 2)
    if v.tag in (3, 4):
        x = 2 * (v.k - 1) + m if v.tag == 3 else 4 + m
        if n < x < 2 * n:
            return FanoStatus.FANO
        return FanoStatus.TRULY_ALMOST_FANO if x in (n, 2 * n) else FanoStatus.NEITHER
    if v.tag == 5:
        b1, b2 = v.b
        top = max(w[0] for w in v._t_weights())
        return _status_from_comparison(n * top, 2 * sum(v.alphas) - (n - 4) * (b1 + b2) + m)
    # type 6: -K = (n + sum beta, m) against the ray (beta_m, 1)
    return _status_from_comparison(m * v.betas[-1], n + sum(v.betas))


def fano_status_by_cone(g: GradingData, u: Weight) -> FanoStatus:
    from .faces import semiample_cone, verify_smooth

    if not verify_smooth(g, u).is_smooth:
        raise PreconditionError("Fano status by cone needs a smooth instance")
    sa = semiample_cone(g, u)
    k = anticanonical(g)
    if sa.interior_contains(k):
        return FanoStatus.FANO
    if sa.contains(k):
        return FanoStatus.TRULY_ALMOST_FANO
    return FanoStatus.NEITHER


# enumeration and counting ------------------------------------------------------


def _full_alpha_bound(n: int, k: int) -> int:
    # the Fano inequality forces alpha_n < k - n/2 - 1; equality allows alpha_n = k - n/2 - 1
    return (2 * k - n - 2) // 2


def iter_full_parameters(n: int, k: int, max_alpha: int) -> Iterator[tuple[int, ...]]:
    """All (alpha_k, ..., alpha_n) with 0 = alpha_k <= ... <= alpha_n <= max_alpha."""
    if max_alpha < 0:
        return
    for tail in itertools.combinations_with_replacement(range(max_alpha + 1), n - k):
        yield (0,) + tail


def enumerate_smooth_full(
    n: int,
    statuses: Sequence[FanoStatus] = (FanoStatus.FANO,),
    max_alpha: Optional[int] = None,
) -> list[TypedVariety]:
    """Full (m = 0) type 1 varieties with the requested Fano statuses, sorted by (k, alpha)."""
    if n < 4:
        raise InvalidParameter(f"need n >= 4, got {n}")
    wanted = set(statuses)
    if FanoStatus.NEITHER in wanted and max_alpha is None:
        raise InvalidParameter("the non-Fano family is infinite; pass max_alpha")
    out = []
    for k in range(4, n + 1):
        bound = _full_alpha_bound(n, k) if max_alpha is None else max_alpha
        for alphas in iter_full_parameters(n, k, bound):
            v = TypedVariety.type1(n, k, alphas)
            if fano_status_by_criterion(v) in wanted:
                out.append(v)
    out.sort(key=lambda v: (v.k, v.alphas))
    return out


def enumerate_smooth_fano_full(n: int) -> list[TypedVariety]:
    return enumerate_smooth_full(n, (FanoStatus.FANO,))


@lru_cache(maxsize=None)
def a_count(x: int, y: int, z: int) -> int:
    """Number of sequences 0 <= a_1 <= ... <= a_y <= z with sum x."""
    if x < 0:
        return 0
    if y <= 0 or z <= 0:
        return 1 if x == 0 else 0
    # smallest entry zero, or shift every entry down by one
    return a_count(x, y - 1, z) + a_count(x - y, y, z - 1)


def count_fano_formula(n: int) -> int:
    if n < 4:
        raise InvalidParameter(f"need n >= 4, got {n}")
    h = n // 2
    total = 0
    for i in range(h + 2, n + 1):
        for j in range(0, i - h - 1):
            for k in range(0, i - h - 1 - j):
                total += a_count(j * (n - i - 1) - k, n - i - 1, j)
    return total


def count_fano_oracle(n: int) -> int:
    if n < 4:
        raise InvalidParameter(f"need n >= 4, got {n}")
    count = 0
    for k in range(4, n + 1):
        for alphas in iter_full_parameters(n, k, _full_alpha_bound(n, k)):
            # Fano inequality of the full case with m = 0, a = alpha_n, doubled
            lhs2 = 2 * (n - k + 1) * alphas[-1]
            rhs2 = 2 * sum(alphas) + 2 * k - n - 2
            count += lhs2 < rhs2
    return count


# degree profiles and relabelling ----------------------------------------------


@dataclass(frozen=True)
class GeneratorDegreeProfile:
    counts: tuple[tuple[Weight, int], ...]

    @classmethod
    def of(cls, g: GradingData) -> "GeneratorDegreeProfile":
        return cls(tuple(sorted(Counter(g.weights).items())))

    def as_dict(self) -> dict[Weight, int]:
        return dict(self.counts)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)


def degree_profile(g: GradingData) -> GeneratorDegreeProfile:
    return GeneratorDegreeProfile.of(g)


def profiles_distinct(p1: GeneratorDegreeProfile, p2: GeneratorDegreeProfile) -> bool:
    return p1.counts != p2.counts


def relabel(g: GradingData, perm: Sequence[int], s_perm: Optional[Sequence[int]] = None) -> GradingData:
    """Rename index i to perm[i-1]; free variables likewise via ``s_perm``."""
    n = g.n
    if sorted(perm) != list(range(1, n + 1)):
        raise InvalidParameter(f"{perm} is not a permutation of 1..{n}")
    new: dict[tuple[int, int], Weight] = {}
    for (i, j), w in g.t_items():
        a, b = perm[i - 1], perm[j - 1]
        new[(min(a, b), max(a, b))] = w
    s = list(g.s_weights)
    if s_perm is not None:
        s = [None] * g.m
        for l, w in enumerate(g.s_weights):
            s[s_perm[l] - 1] = w
    return GradingData(n, g.m, tuple(new[p] for p in pairs(n)), tuple(s))


# recognition -------------------------------------------------------------------


@dataclass(frozen=True)
class Recognition:
    """``build(variety)`` equals ``g`` after renaming index i to perm[i-1] and applying ``basis``."""

    variety: TypedVariety
    perm: tuple[int, ...]
    basis: Matrix = field(default=IDENTITY)


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _same_up_to_relabel(h: GradingData, v: TypedVariety, perm: Sequence[int]) -> bool:
    try:
        ref = v.grading()
    except InvalidParameter:
        return False
    if ref.n != h.n or ref.m != h.m:
        return False
    for (i, j), w in h.t_items():
        if ref.w(perm[i - 1], perm[j - 1]) != w:
            return False
    return sorted(ref.s_weights) == sorted(h.s_weights)


def _normal_form_one_sided(g: GradingData, side_p, side_m) -> Optional[Matrix]:
    """Basis change sending the common weight of ``side_p`` to (1,0), ``side_m`` into y > 0,
    and the leftmost height-one weight of ``side_m`` onto the y-axis."""
    ws = {g.weight_of(l) for l in side_p}
    if len(ws) != 1:
        return None
    p = ws.pop()
    if math.gcd(*p) != 1:
        return None
    some_m = g.weight_of(next(iter(side_m)))
    s = 1 if det(p, some_m) > 0 else -1
    _, r1, r2 = _ext_gcd(p[0], p[1])
    a: Matrix = ((r1, r2), (-s * p[1], s * p[0]))
    heights = [(a[0][0] * w[0] + a[0][1] * w[1], a[1][0] * w[0] + a[1][1] * w[1]) for w in map(g.weight_of, side_m)]
    xs = [x for x, y in heights if y == 1]
    if not xs:
        return None
    return _mat_mul(((1, -min(xs)), (0, 1)), a)


def _betas_from(h: GradingData) -> Optional[tuple[int, ...]]:
    if any(w[1] != 1 for w in h.s_weights):
        return None
    return tuple(sorted(w[0] for w in h.s_weights))


def _try_type1(h: GradingData, side_p, side_m):
    if any(l[0] == "S" for l in side_p):
        return None
    verts = sorted({x for l in side_p for x in l[1:]})
    if len(verts) < 3 or len(side_p) != math.comb(len(verts), 2):
        return None
    k = len(verts) + 1
    rest = [j for j in range(1, h.n + 1) if j not in verts]
    alpha_of = {}
    for j in rest:
        w = h.w(verts[0], j)
        if w[1] != 1:
            return None
        alpha_of[j] = w[0]
    rest.sort(key=lambda j: (alpha_of[j], j))
    betas = _betas_from(h)
    if betas is None:
        return None
    perm = [0] * h.n
    for t, i in enumerate(verts):
        perm[i - 1] = t + 1
    for t, j in enumerate(rest):
        perm[j - 1] = k + t
    try:
        v = TypedVariety.type1(h.n, k, tuple(alpha_of[j] for j in rest), betas)
    except InvalidParameter:
        return None
    return v, perm


def _try_type2(h: GradingData, side_p, side_m):
    if any(l[0] == "S" for l in side_p) or len(side_p) != h.n - 1:
        return None
    common = set.intersection(*({l[1], l[2]} for l in side_p))
    if len(common) != 1:
        return None
    c = common.pop()
    others = [i for i in range(1, h.n + 1) if i != c]
    w = h.w(others[0], others[1])
    betas = _betas_from(h)
    if w[1] != 1 or betas is None:
        return None
    perm = [0] * h.n
    for t, i in enumerate(others):
        perm[i - 1] = t + 1
    perm[c - 1] = h.n
    try:
        v = TypedVariety.type2(h.n, w[0], betas)
    except InvalidParameter:
        return None
    return v, perm


def _try_type5(h: GradingData, side_p, side_m):
    if h.m < 2 or len(side_p) != h.m or any(l[0] == "T" for l in side_p):
        return None
    if any(w[1] != 1 for w in h.t_weights):
        return None
    n = h.n
    c = {}
    for i in range(1, n + 1):
        j, k = [x for x in range(1, n + 1) if x != i][:2]
        c[i] = Fraction(h.w(i, j)[0] + h.w(i, k)[0] - h.w(j, k)[0], 2)
    order = sorted(range(1, n + 1), key=lambda i: (c[i], i))
    cs = [c[i] for i in order]
    vals = [cs[0] + cs[2], cs[1] + cs[2]] + [cs[2] + x for x in cs[3:]]
    if any(x.denominator != 1 for x in vals):
        return None
    b2, b1 = int(vals[0]), int(vals[1])
    perm = [0] * n
    for t, i in enumerate(order):
        perm[i - 1] = t + 1
    try:
        v = TypedVariety.type5(n, h.m, (b1, b2), tuple(int(x) for x in vals[2:]))
    except InvalidParameter:
        return None
    return v, perm


def _try_type6(h: GradingData, side_p, side_m):
    if h.m < 2 or len(side_p) != math.comb(h.n, 2) or any(l[0] == "S" for l in side_p):
        return None
    betas = _betas_from(h)
    if betas is None:
        return None
    try:
        v = TypedVariety.type6(h.n, betas)
    except InvalidParameter:
        return None
    return v, list(range(1, h.n + 1))


def _clique_perm(h: GradingData, edges: list[tuple[int, int]]):
    verts = sorted({x for e in edges for x in e})
    if len(edges) != math.comb(len(verts), 2):
        return None
    rest = [j for j in range(1, h.n + 1) if j not in verts]
    perm = [0] * h.n
    for t, i in enumerate(verts + rest):
        perm[i - 1] = t + 1
    return len(verts), perm


def _try_type3(h: GradingData):
    edges = [p for p, w in h.t_items() if w == (2, 1)]
    found = _clique_perm(h, edges)
    if found is None or found[0] < 3:
        return None
    size, perm = found
    try:
        v = TypedVariety.type3(h.n, size + 1, h.m)
    except InvalidParameter:
        return None
    return v, perm


def _try_type4(h: GradingData):
    edges = [p for p, w in h.t_items() if w == (2, 1)]
    if len(edges) != 1 or h.m < 1:
        return None
    _, perm = _clique_perm(h, edges)
    return TypedVariety.type4(h.n, h.m), perm


def recognize_all(g: GradingData, u: Weight) -> list[Recognition]:
    """Every family (in type order) whose normal form matches ``g``; empty if none."""
    from .errors import ChamberError
    from .faces import tau_split

    try:
        split = tau_split(g, u)
    except (ChamberError, PreconditionError):
        return []
    found: dict[int, Recognition] = {}
    sides = [(split.plus, split.minus), (split.minus, split.plus)]
    for side_p, side_m in sides:
        a = _normal_form_one_sided(g, side_p, side_m)
        if a is None:
            continue
        h = g.transform(a)
        for attempt in (_try_type1, _try_type2, _try_type5, _try_type6):
            got = attempt(h, side_p, side_m)
            if got is not None and _same_up_to_relabel(h, *got):
                v, perm = got
                found.setdefault(v.tag, Recognition(v, tuple(perm), a))
    rays = split.chamber.rays
    for c_p, c_m in ((rays[0], rays[1]), (rays[1], rays[0])):
        d = det(c_p, c_m)
        if abs(d) != 1:
            continue
        inv = ((c_m[1] * d, -c_m[0] * d), (-c_p[1] * d, c_p[0] * d))
        a = _mat_mul(((2, 1), (1, 1)), inv)
        h = g.transform(a)
        if any(w != (1, 0) for w in h.s_weights):
            continue
        for attempt in (_try_type3, _try_type4):
            got = attempt(h)
            if got is not None and _same_up_to_relabel(h, *got):
                v, perm = got
                found.setdefault(v.tag, Recognition(v, tuple(perm), a))
    return [found[t] for t in sorted(found)]


def recognize(g: GradingData, u: Weight) -> Optional[TypedVariety]:
    matches = recognize_all(g, u)
    return matches[0].variety if matches else None


# deleting an index ---------------------------------------------------------------


def _side_counts_without(g: GradingData, u: Weight, l: int) -> tuple[int, int]:
    from .faces import tau_split

    split = tau_split(g, u)
    plus = sum(1 for lab in split.plus if lab[0] == "T" and l not in lab[1:])
    minus = sum(1 for lab in split.minus if lab[0] == "T" and l not in lab[1:])
    return plus, minus


def _check_full(g: GradingData) -> None:
    if g.m != 0:
        raise PreconditionError("index deletion is defined for full gradings (m = 0)")
    if g.n < 5:
        raise PreconditionError(f"deleting an index needs n >= 5, got n={g.n}")


def restrict_index(g: GradingData, l: int, u: Optional[Weight] = None) -> GradingData:
    """Drop every column w_il, relabelling the remaining indices in order."""
    from .faces import default_ample_class

    _check_full(g)
    if not 1 <= l <= g.n:
        raise InvalidParameter(f"index {l} out of range 1..{g.n}")
    u = default_ample_class(g) if u is None else u
    plus, minus = _side_counts_without(g, u, l)
    if plus < 2 or minus < 2:
        raise NeedsPermutation(
            f"without index {l} the chamber sides keep {plus} and {minus} weights; need two each"
        )
    keep = [i for i in range(1, g.n + 1) if i != l]
    return GradingData(g.n - 1, 0, tuple(g.w(keep[i - 1], keep[j - 1]) for i, j in pairs(g.n - 1)))


def restrict_last_index(g: GradingData, u: Optional[Weight] = None) -> GradingData:
    return restrict_index(g, g.n, u)


def restrict(g: GradingData, u: Optional[Weight] = None, index: Optional[int] = None) -> tuple[GradingData, int]:
    """Delete an index that keeps two weights on each chamber side; prefers the last index."""
    from .faces import default_ample_class

    _check_full(g)
    u = default_ample_class(g) if u is None else u
    if index is not None:
        return restrict_index(g, index, u), index
    for l in [g.n] + list(range(1, g.n)):
        plus, minus = _side_counts_without(g, u, l)
        if plus >= 2 and minus >= 2:
            return restrict_index(g, l, u), l
    raise NeedsPermutation("no index can be deleted while keeping two weights on each side")


# parameter grid ------------------------------------------------------------------


def _sequences(length: int, top: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations_with_replacement(range(top + 1), length)


def iter_grid(max_n: int = 8, max_m: int = 3, max_param: int = 3) -> Iterator[TypedVariety]:
    """Every valid instance of the six families with n <= max_n, m <= max_m and parameters <= max_param."""
    for n in range(4, max_n + 1):
        for m in range(0, max_m + 1):
            for k in range(4, n + 1):
                for alphas in _sequences(n - k + 1, max_param):
                    for betas in _sequences(m, max_param):
                        if min(alphas + betas) == 0:
                            yield TypedVariety.type1(n, k, alphas, betas)
            for alpha in range(max_param + 1):
                for betas in _sequences(m, max_param):
                    if min((alpha,) + betas) == 0:
                        yield TypedVariety.type2(n, alpha, betas)
            for k in range(4, n):
                yield TypedVariety.type3(n, k, m)
            if m >= 1:
                yield TypedVariety.type4(n, m)
            if m >= 2:
                for seq in _sequences(n, max_param):
                    if seq[0] == 0:
                        yield TypedVariety.type5(n, m, (seq[2], seq[1]), seq[3:])
                for betas in _sequences(m, max_param):
                    if betas[0] == 0:
                        yield TypedVariety.type6(n, betas)
