"""Elementary contractions and a descriptive report for the classified families."""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from .classify import TypedVariety, build, recognize_all
from .errors import NoContraction, NotApplicable, PreconditionError
from .faces import bpf_saturated, semiample_cone
from .grading import GradingData, Weight, dim_x, effective_cone, moving_cone


class ContractionKind(enum.Enum):
    FIBER_TYPE = "fiber_type"
    DIVISORIAL = "divisorial"
    SMALL = "small"


def contraction_kind(g: GradingData, u: Weight, cls: Weight) -> ContractionKind:
    """Kind of the contraction defined by a nef, non-ample class."""
    cls = tuple(cls)
    sa = semiample_cone(g, u)
    if cls == (0, 0) or not sa.contains(cls):
        raise PreconditionError(f"{cls} is not a nonzero semiample class (SAmple = {sa})")
    if sa.interior_contains(cls):
        raise NoContraction(f"{cls} is ample")
    if effective_cone(g).on_boundary(cls):
        return ContractionKind.FIBER_TYPE
    if moving_cone(g).on_boundary(cls):
        return ContractionKind.DIVISORIAL
    return ContractionKind.SMALL


@dataclass(frozen=True)
class BundleData:
    s: int
    t1: int
    t2: int
    twists: tuple[int, ...]

    @property
    def t(self) -> int:
        return self.t1 + self.t2


def _bundle_counts(h: GradingData) -> BundleData:
    s = 0
    ones, twos = [], []
    for w in h.weights:
        if w == (1, 0):
            s += 1
        elif w[1] == 1:
            ones.append(w[0])
        elif w[1] == 2:
            twos.append(w[0])
        else:
            raise NotApplicable(f"weight {w} is not of the form (1,0), (a,1) or (a,2)")
    return BundleData(s, len(ones), len(twos), tuple(sorted(ones)) + tuple(sorted(twos)))


def bundle_data(g: GradingData, u: Weight) -> BundleData:
    """Split-bundle data read off the normal form of a type 1, 2, 5 or 6 grading."""
    for rec in recognize_all(g, u):
        if rec.variety.tag in (1, 2, 5, 6):
            return _bundle_counts(g.transform(rec.basis))
    raise NotApplicable("the chamber side next to (1,0) does not consist of equal weights")


@dataclass(frozen=True)
class ContractionRecord:
    cls: Weight
    kind: ContractionKind
    description: str


@dataclass(frozen=True)
class GeometryReport:
    variety: str
    dim_x: int
    semiample_rays: tuple[Weight, Weight]
    contractions: tuple[ContractionRecord, ...]
    bundle: Optional[BundleData] = None
    base: Optional[str] = None
    base_dim: Optional[int] = None
    fiber: Optional[str] = None
    fiber_dim: Optional[int] = None
    center: Optional[str] = None
    blowup: Optional[str] = None
    fujita: bool = False
    notes: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        out = asdict(self)
        out["semiample_rays"] = [list(r) for r in self.semiample_rays]
        out["contractions"] = [
            {"class": list(c.cls), "kind": c.kind.value, "description": c.description}
            for c in self.contractions
        ]
        if self.bundle is not None:
            out["bundle"] = {**asdict(self.bundle), "t": self.bundle.t, "twists": list(self.bundle.twists)}
        out["notes"] = list(self.notes)
        return out

    def to_text(self) -> str:
        lines = [f"variety: {self.variety}", f"dim X: {self.dim_x}"]
        lines.append("semiample rays: " + ", ".join(f"({x},{y})" for x, y in self.semiample_rays))
        for c in self.contractions:
            lines.append(f"contraction at ({c.cls[0]},{c.cls[1]}): {c.kind.value} -- {c.description}")
        if self.bundle is not None:
            b = self.bundle
            lines.append(f"bundle: s={b.s} t={b.t} t1={b.t1} t2={b.t2} twists={list(b.twists)}")
        for key in ("base", "base_dim", "fiber", "fiber_dim", "center", "blowup"):
            val = getattr(self, key)
            if val is not None:
                lines.append(f"{key.replace('_', ' ')}: {val}")
        lines.append(f"BPF monoid saturated (Fujita freeness): {self.fujita}")
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)


_KIND_TEXT = {
    ContractionKind.FIBER_TYPE: "fiber type (class on the boundary of Eff)",
    ContractionKind.DIVISORIAL: "birational divisorial (boundary of Mov, interior of Eff)",
    ContractionKind.SMALL: "birational small (interior of Mov)",
}


def geometry_report(v: TypedVariety) -> GeometryReport:
    built = build(v)
    g, u = built.grading, built.u
    n, m = v.n, v.m
    dim = dim_x(n, m)
    rays = v.semiample_rays()
    records = tuple(
        ContractionRecord(r, kind, _KIND_TEXT[kind])
        for r in rays
        for kind in [contraction_kind(g, u, r)]
    )
    extra: dict = {}
    notes: list[str] = []
    if v.tag in (1, 2, 5, 6):
        extra["bundle"] = _bundle_counts(g)
    if v.tag == 1:
        k = v.k
        base_dim = 2 * (k - 3)
        fiber_dim = dim - base_dim
        b = extra["bundle"]
        extra.update(
            base=f"Gr(2,{k - 1}) in P^{math.comb(k - 1, 2) - 1}",
            base_dim=base_dim,
            fiber=f"locally trivial fibration, fibers of dimension {fiber_dim} in P(1^{b.t1},2^{b.t2})",
            fiber_dim=fiber_dim,
        )
    elif v.tag == 2:
        extra.update(
            base=f"P^{n - 2}",
            base_dim=n - 2,
            fiber=f"P^{n + m - 3}",
            fiber_dim=n + m - 3,
        )
    elif v.tag == 5:
        extra.update(
            base=f"P^{m - 1}",
            base_dim=m - 1,
            fiber=f"Gr(2,{n}) in P^{math.comb(n, 2) - 1}",
            fiber_dim=2 * (n - 2),
        )
    elif v.tag == 6:
        twists = " + ".join(f"O({b})" for b in v.betas)
        extra.update(
            base=f"Gr(2,{n})",
            base_dim=2 * (n - 2),
            fiber=f"P^{m - 1}; X = P({twists}) over Gr(2,{n})",
            fiber_dim=m - 1,
        )
    elif m == 1:
        if v.tag == 3:
            extra["center"] = f"V(I_(2,{v.k - 1}), T_ij; j >= {v.k}) = Gr(2,{v.k - 1}) in P^{math.comb(n, 2) - 1}"
        else:
            extra["center"] = f"the point V(T_ij; j >= 3) in P^{math.comb(n, 2) - 1}"
    if v.tag == 4 and n == 4:
        ss = ", ".join(f"S{l}" for l in range(1, m + 1))
        extra["blowup"] = f"blow-up of P^{3 + m} centred at V(T13*T24 - T14*T23, {ss})"
    if any(r.kind is ContractionKind.SMALL for r in records):
        notes.append("a semiample boundary ray lies inside the moving cone")
    return GeometryReport(
        variety=str(v),
        dim_x=dim,
        semiample_rays=rays,
        contractions=records,
        fujita=fujita_statement(v),
        notes=tuple(notes),
        **extra,
    )


def fujita_statement(v: TypedVariety) -> bool:
    built = build(v)
    return bpf_saturated(built.grading, built.u)
