"""Orthant faces, the tau-split around an ample class, and the smoothness test.

Only faces of dimension <= 2 are ever enumerated. For Picard number two
every relevant face contains a relevant two-dimensional X-bar-face once the
ample class sits in an open chamber; :func:`minimal_faces_are_two_dimensional`
re-checks the combinatorial step of that argument for the grading at hand.
"""

from __future__ import annotations

import enum
import functools
import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .errors import ChamberError, PreconditionError, UnknownStructure
from .grading import (
    Cone2,
    ConeKind,
    GradingData,
    Label,
    Weight,
    add,
    det,
    intersect_all,
    is_almost_free,
    is_homogeneous,
    is_pointed,
    label_str,
    moving_cone,
    pairs,
    primitive,
)


@dataclass(frozen=True)
class Face:
    """Face of the positive orthant spanned by the listed coordinate rays."""

    t_members: frozenset = frozenset()
    s_members: frozenset = frozenset()

    @classmethod
    def of(cls, *labels: Label) -> "Face":
        ts = frozenset((lab[1], lab[2]) for lab in labels if lab[0] == "T")
        ss = frozenset(lab[1] for lab in labels if lab[0] == "S")
        return cls(ts, ss)

    @property
    def dim(self) -> int:
        return len(self.t_members) + len(self.s_members)

    @property
    def labels(self) -> list[Label]:
        out: list[Label] = [("T", i, j) for i, j in sorted(self.t_members)]
        return out + [("S", l) for l in sorted(self.s_members)]

    def __str__(self) -> str:
        return "{" + ",".join(label_str(l)[1:] if l[0] == "T" else label_str(l) for l in self.labels) + "}"


def is_xbar_face(face: Face) -> bool:
    """X-bar-face test for faces of dimension <= 2."""
    if face.dim > 2:
        raise ValueError("only faces of dimension <= 2 are classified")
    if len(face.t_members) == 2:
        (a, b), (c, d) = face.t_members
        return len({a, b, c, d}) == 3
    return True


def two_dim_x_faces(n: int, m: int) -> list[Face]:
    """All X-bar-faces of dimension 1 and 2 for R(n, m)."""
    if n < 4:
        raise PreconditionError(f"need n >= 4, got {n}")
    ps = pairs(n)
    faces = [Face(s_members=frozenset({l})) for l in range(1, m + 1)]
    faces += [Face(t_members=frozenset({p})) for p in ps]
    faces += [Face(s_members=frozenset(c)) for c in itertools.combinations(range(1, m + 1), 2)]
    faces += [Face(frozenset({p}), frozenset({l})) for l in range(1, m + 1) for p in ps]
    for p, q in itertools.combinations(ps, 2):
        if len({*p, *q}) == 3:
            faces.append(Face(t_members=frozenset({p, q})))
    return faces


@dataclass(frozen=True)
class TauSplit:
    u: Weight
    plus: frozenset
    minus: frozenset
    chamber: Cone2

    def side(self, label: Label) -> int:
        return 1 if label in self.plus else -1


def tau_split(g: GradingData, u: Weight) -> TauSplit:
    """Sort generators to the clockwise (plus) or counterclockwise (minus) side of ``u``."""
    u = (int(u[0]), int(u[1]))
    if not is_pointed(g):
        raise PreconditionError("grading is not pointed")
    if not moving_cone(g).interior_contains(u):
        raise ChamberError(f"u={u} is not in the interior of the moving cone")
    plus, minus = [], []
    near_plus: Optional[Weight] = None
    near_minus: Optional[Weight] = None
    for label, w in g.columns():
        d = det(w, u)
        if d == 0:
            raise ChamberError(f"u={u} lies on the ray through {label_str(label)}")
        if d > 0:
            plus.append(label)
            if near_plus is None or det(near_plus, w) > 0:
                near_plus = w
        else:
            minus.append(label)
            if near_minus is None or det(w, near_minus) > 0:
                near_minus = w
    return TauSplit(u, frozenset(plus), frozenset(minus), Cone2.between(near_plus, near_minus))


def chambers(g: GradingData) -> list[Cone2]:
    """Subdivision of the moving cone by the weight rays inside it, clockwise first."""
    mov = moving_cone(g)
    if mov.kind is not ConeKind.SALIENT:
        return []
    r1, r2 = mov.rays
    inner = {primitive(w) for w in g.weights if mov.interior_contains(w)}
    # inside a salient cone, a precedes b counterclockwise iff det(a, b) > 0
    order = functools.cmp_to_key(lambda a, b: -det(a, b))
    rays = [r1] + sorted(inner, key=order) + [r2]
    return [Cone2.between(a, b) for a, b in zip(rays, rays[1:])]


def default_ample_class(g: GradingData) -> Weight:
    """Sum of the rays of the first chamber admitting a smooth variety, else of the first chamber."""
    cs = chambers(g)
    if not cs:
        raise ChamberError("the moving cone has empty interior")
    cands = [add(*c.rays) for c in cs]
    for u in cands:
        if verify_smooth(g, u).is_smooth:
            return u
    return cands[0]


def relevant_two_faces(g: GradingData, split: TauSplit) -> list[tuple[Label, Label]]:
    """Two-dimensional X-relevant faces as (plus generator, minus generator), in column order."""
    order = {lab: idx for idx, (lab, _) in enumerate(g.columns())}
    plus = sorted(split.plus, key=order.__getitem__)
    minus = sorted(split.minus, key=order.__getitem__)
    by_vertex: dict[int, list[Label]] = defaultdict(list)
    for lab in minus:
        if lab[0] == "T":
            by_vertex[lab[1]].append(lab)
            by_vertex[lab[2]].append(lab)
    minus_s = [lab for lab in minus if lab[0] == "S"]
    out = []
    for a in plus:
        if a[0] == "S":
            out.extend((a, b) for b in minus)
            continue
        hits = set(by_vertex[a[1]]) ^ set(by_vertex[a[2]])
        hits.update(minus_s)
        out.extend((a, b) for b in sorted(hits, key=order.__getitem__))
    return out


def minimal_faces_are_two_dimensional(g: GradingData, split: TauSplit) -> bool:
    """Check that every minimal relevant face is two-dimensional.

    Free weights must be one-sided, and every disjoint cross pair
    T_{i1 j1} (plus), T_{i2 j2} (minus) must be linked through
    e_{i1 i2}, e_{j1 j2} or e_{i1 j2}, e_{i2 j1} to relevant 2-faces.
    """
    s_plus = any(l[0] == "S" for l in split.plus)
    s_minus = any(l[0] == "S" for l in split.minus)
    if s_plus and s_minus:
        return False
    tp = [l for l in split.plus if l[0] == "T"]
    tm = [l for l in split.minus if l[0] == "T"]

    def lab(i: int, j: int) -> Label:
        return ("T", min(i, j), max(i, j))

    def links(pl: Label, mi: Label, c: Label) -> bool:
        # c together with the generator of the opposite side shares one index
        other = mi if c in split.plus else pl
        return len({c[1], c[2], other[1], other[2]}) == 3

    for p in tp:
        for q in tm:
            i1, j1 = p[1], p[2]
            i2, j2 = q[1], q[2]
            if len({i1, j1, i2, j2}) < 4:
                continue
            first = (lab(i1, i2), lab(j1, j2))
            second = (lab(i1, j2), lab(i2, j1))
            if not any(all(links(p, q, c) for c in alt) for alt in (first, second)):
                return False
    return True


def _checked_faces(g: GradingData, u: Weight) -> tuple[TauSplit, list[tuple[Label, Label]]]:
    split = tau_split(g, u)
    if not minimal_faces_are_two_dimensional(g, split):
        raise UnknownStructure("cannot verify that minimal relevant faces are two-dimensional")
    faces = relevant_two_faces(g, split)
    if not faces:
        raise UnknownStructure("no two-dimensional relevant face")
    return split, faces


def semiample_cone(g: GradingData, u: Weight) -> Cone2:
    _, faces = _checked_faces(g, u)
    spans = {(g.weight_of(a), g.weight_of(b)) for a, b in faces}
    return intersect_all(Cone2.between(w, v) for w, v in spans)


def ample_contains(g: GradingData, u: Weight, v: Weight) -> bool:
    return semiample_cone(g, u).interior_contains(v)


def picard_subgroup_is_full(g: GradingData, u: Weight) -> bool:
    _, faces = _checked_faces(g, u)
    return all(abs(det(g.weight_of(a), g.weight_of(b))) == 1 for a, b in faces)


class SmoothStatus(enum.Enum):
    SMOOTH = "smooth"
    NOT_SMOOTH = "not_smooth"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SmoothnessVerdict:
    status: SmoothStatus
    witness: Optional[object] = None  # a Face or the name of a failed predicate
    detail: str = ""
    recognized: Optional[object] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.status is SmoothStatus.NOT_SMOOTH and self.witness is None:
            raise ValueError("NotSmooth verdicts carry a witness")

    @property
    def is_smooth(self) -> bool:
        return self.status is SmoothStatus.SMOOTH

    def __str__(self) -> str:
        s = self.status.value
        if self.witness is not None:
            s += f" (witness: {self.witness})"
        if self.detail:
            s += f" -- {self.detail}"
        return s


def _not_smooth(witness, detail: str) -> SmoothnessVerdict:
    return SmoothnessVerdict(SmoothStatus.NOT_SMOOTH, witness, detail)


def verify_smooth(g: GradingData, u: Weight) -> SmoothnessVerdict:
    """Necessary smoothness checks, then recognition against the six classified types."""
    from .classify import recognize

    if not is_homogeneous(g):
        return _not_smooth("homogeneity", "some Pluecker relation is not homogeneous")
    if not is_pointed(g):
        return _not_smooth("pointed", "effective cone contains a line or a zero weight")
    if not moving_cone(g).is_full_dim:
        return _not_smooth("moving-cone", "moving cone is not full-dimensional")
    try:
        split = tau_split(g, u)
    except ChamberError as exc:
        return SmoothnessVerdict(SmoothStatus.UNKNOWN, "ample-class", str(exc))

    s_plus = sorted(l[1] for l in split.plus if l[0] == "S")
    s_minus = sorted(l[1] for l in split.minus if l[0] == "S")
    if s_plus and s_minus:
        return _not_smooth(
            Face(s_members=frozenset({s_plus[0], s_minus[0]})),
            "free weights on both sides of the ample chamber",
        )
    faces = relevant_two_faces(g, split)
    for a, b in faces:
        if a[0] == "S" and b[0] == "S":
            return _not_smooth(Face.of(a, b), "relevant face without a Pluecker coordinate")
        d = det(g.weight_of(a), g.weight_of(b))
        if abs(d) != 1:
            return _not_smooth(Face.of(a, b), f"relevant face has determinant {d}")
    if not is_almost_free(g):
        return _not_smooth("almost-free", "dropping one weight leaves a proper sublattice")
    if not faces or not minimal_faces_are_two_dimensional(g, split):
        return SmoothnessVerdict(SmoothStatus.UNKNOWN, "minimal-faces", "minimal relevant faces unverified")
    spans = {(g.weight_of(a), g.weight_of(b)) for a, b in faces}
    sa = intersect_all(Cone2.between(w, v) for w, v in spans)
    if not sa.is_full_dim or any(sa.interior_contains(w) for w in g.weights):
        return SmoothnessVerdict(SmoothStatus.UNKNOWN, "semiample", f"unexpected semiample cone {sa}")
    rec = recognize(g, u)
    if rec is None:
        return SmoothnessVerdict(SmoothStatus.UNKNOWN, None, "no classified type matches")
    return SmoothnessVerdict(SmoothStatus.SMOOTH, recognized=rec)


def bpf_saturated(g: GradingData, u: Weight) -> bool:
    """Whether every minimal relevant face maps onto a Z-basis, making BPF(X) saturated."""
    if not verify_smooth(g, u).is_smooth:
        raise PreconditionError("BPF saturation is only decided for smooth instances")
    _, faces = _checked_faces(g, u)
    return all(abs(det(g.weight_of(a), g.weight_of(b))) == 1 for a, b in faces)


def bpf_contains(g: GradingData, u: Weight, v: Weight) -> bool:
    """Membership of ``v`` in the monoid intersection over minimal relevant faces."""
    _, faces = _checked_faces(g, u)
    for a, b in {(g.weight_of(a), g.weight_of(b)) for a, b in faces}:
        d = det(a, b)
        # v = s*a + t*b  with  s = det(v, b)/d,  t = det(a, v)/d
        s_num, t_num = det(v, b), det(a, v)
        if s_num % d or t_num % d or s_num // d < 0 or t_num // d < 0:
            return False
    return True
