"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import io
import json
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE, load_json, row_grading, table_rows  # noqa: E402

from intgrass.classify import (  # noqa: E402
    TypedVariety,
    anticanonical,
    anticanonical_closed_form,
    build,
    count_fano_formula,
    count_fano_oracle,
    fano_status_by_cone,
    fano_status_by_criterion,
    iter_grid,
    restrict,
)
from intgrass.cli import run  # noqa: E402
from intgrass.faces import Face, SmoothStatus, bpf_saturated, semiample_cone, verify_smooth  # noqa: E402
from intgrass.grading import Cone2, GradingData, dot, effective_cone, is_pointed  # noqa: E402
from intgrass.hilbert import graded_dim, graded_dim_oracle, positivity_certificate  # noqa: E402


def record(no: int, ok: bool, msg: str) -> None:
    ACCEPTANCE[no] = (ok, msg)
    print(f"{'PASS' if ok else 'FAIL'} criterion {no}: {msg}")


def _cli_json(argv):
    out = io.StringIO()
    assert run(argv, out) == 0
    return json.loads(out.getvalue())


# 1. table reproduction --------------------------------------------------------------


def check_table():
    expected = table_rows()
    t0 = time.perf_counter()
    fast = _cli_json(["table", "--n-from", "5", "--n-to", "8", "--format", "json", "--no-h0"])
    t_fast = time.perf_counter() - t0
    t0 = time.perf_counter()
    full = _cli_json(["table", "--n-from", "5", "--n-to", "8", "--format", "json"])
    t_full = time.perf_counter() - t0
    problems = []
    if len(full) != len(expected):
        problems.append(f"{len(full)} rows instead of {len(expected)}")
    for got, exp in zip(full, expected):
        if got["matrix"] != exp["matrix"] or got["n"] != exp["n"]:
            problems.append(f"row {exp['no']} matrix")
        if got["antican"] != exp["antican"]:
            problems.append(f"row {exp['no']} -K {got['antican']} != {exp['antican']}")
        if got["h0"] != exp["h0"]:
            problems.append(f"row {exp['no']} h0 {got['h0']} != {exp['h0']}")
    if [r["matrix"] for r in fast] != [r["matrix"] for r in full]:
        problems.append("--no-h0 rows differ")
    if t_full > 60 or t_fast > 5:
        problems.append(f"too slow ({t_full:.1f}s, {t_fast:.1f}s without h0)")
    return full, problems, (t_full, t_fast)


def test_criterion_1_table():
    full, problems, (t_full, t_fast) = check_table()
    timing = f"{t_full:.2f}s, {t_fast:.2f}s without h0"
    record(1, not problems, "12 rows reproduced exactly, " + timing if not problems else "; ".join(problems) + f" ({timing})")
    # matrices and -K must match everywhere; h0 is checked row by row below
    assert all("matrix" not in p and "-K" not in p and "rows instead" not in p for p in problems)


@pytest.mark.parametrize(
    "no",
    [
        pytest.param(
            no,
            marks=pytest.mark.xfail(
                strict=True,
                reason="printed value 3750; standard monomials, ideal rank and hook content all give 3150",
            ),
        )
        if no == 3
        else no
        for no in range(1, 13)
    ],
)
def test_criterion_1_h0_row(no):
    row = table_rows()[no - 1]
    g = row_grading(no)
    assert graded_dim(g, tuple(row["antican"])) == row["h0"]


# 2. counting -------------------------------------------------------------------------


def test_criterion_2_counting():
    t0 = time.perf_counter()
    mismatches = [n for n in range(4, 31) if count_fano_formula(n) != count_fano_oracle(n)]
    first = [count_fano_formula(n) for n in range(4, 9)]
    dt = time.perf_counter() - t0
    ok = not mismatches and first == [1, 2, 2, 4, 4] and dt < 30
    record(2, ok, f"formula = oracle for 4 <= n <= 30, n=4..8 gives {first} ({dt:.2f}s)")
    assert ok, mismatches


# 3. smoothness suite -----------------------------------------------------------------


def _curated():
    out = []
    for case in load_json("not_smooth.json")["cases"]:
        g = GradingData(
            case["n"],
            len(case["s_weights"]),
            tuple(map(tuple, case["t_weights"])),
            tuple(map(tuple, case["s_weights"])),
        )
        out.append((g, tuple(case["ample"]), case["witness"]))
    return out


def test_criterion_3_smoothness(grid_verdicts):
    t0 = time.perf_counter()
    bad = [str(v) for v, _, r in grid_verdicts if not r.is_smooth]
    curated = _curated()
    missed = []
    for g, u, witness in curated:
        r = verify_smooth(g, u)
        if r.status is not SmoothStatus.NOT_SMOOTH or not isinstance(r.witness, Face) or str(r.witness) != witness:
            missed.append(witness)
    dt = time.perf_counter() - t0
    ok = not bad and not missed and len(curated) == 20
    record(
        3,
        ok,
        f"{len(grid_verdicts)} grid instances Smooth, {len(curated) - len(missed)}/{len(curated)} "
        f"perturbed gradings NotSmooth with a face witness ({dt:.1f}s after the shared grid build)",
    )
    assert not bad, bad[:5]
    assert not missed, missed


# 4. Fano consistency ------------------------------------------------------------------


def test_criterion_4_fano_consistency(grid_verdicts):
    bad = [
        str(v)
        for v, b, _ in grid_verdicts
        if fano_status_by_criterion(v) is not fano_status_by_cone(b.grading, b.u)
    ]
    record(4, not bad, f"criterion and cone routes agree on {len(grid_verdicts)} instances" if not bad else f"{len(bad)} disagreements")
    assert not bad, bad[:5]


# 5. Hilbert oracle equivalence --------------------------------------------------------


def random_homogeneous_grading(rng: random.Random, n: int) -> GradingData:
    """w_ij = c_i + c_j with all c_i in (1/2)Z^2 congruent mod Z^2, plus a few free weights."""
    while True:
        shift = (rng.randint(0, 1), rng.randint(0, 1))
        c2 = [(2 * rng.randint(-1, 2) + shift[0], 2 * rng.randint(-1, 2) + shift[1]) for _ in range(n)]
        t = tuple(
            ((c2[i][0] + c2[j][0]) // 2, (c2[i][1] + c2[j][1]) // 2) for i in range(n) for j in range(i + 1, n)
        )
        m = rng.randint(0, 2)
        s = tuple((rng.randint(-1, 3), rng.randint(-1, 3)) for _ in range(m))
        g = GradingData(n, m, t, s)
        if (0, 0) not in g.weights and is_pointed(g):
            return g


def _targets(g: GradingData, level: int):
    lam = positivity_certificate(g)
    eff = effective_cone(g)
    reach = level * max(abs(c) for w in g.weights for c in w) + level
    for x in range(-reach, reach + 1):
        for y in range(-reach, reach + 1):
            if 0 <= dot(lam, (x, y)) <= level and eff.contains((x, y)):
                yield (x, y)


def check_hilbert(n_random: int = 50, seed: int = 20240611):
    compared = 0
    bad = []
    for no in (1, 2):
        g = row_grading(no)
        for t in _targets(g, 6):
            compared += 1
            if graded_dim(g, t) != graded_dim_oracle(g, t, bound=6):
                bad.append((no, t))
    rng = random.Random(seed)
    for idx in range(n_random):
        g = random_homogeneous_grading(rng, 4 + idx % 2)
        lam = positivity_certificate(g)
        level = 4 if g.n == 5 else 5
        targets = sorted(_targets(g, level), key=lambda t: (dot(lam, t), t))
        for t in targets[:: max(1, len(targets) // 8)]:
            compared += 1
            if graded_dim(g, t) != graded_dim_oracle(g, t, bound=level):
                bad.append((g.t_weights, g.s_weights, t))
    return compared, bad


def test_criterion_5_hilbert_oracle():
    t0 = time.perf_counter()
    compared, bad = check_hilbert()
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    record(5, ok, f"{compared} graded pieces agree with the ideal-rank oracle ({dt:.1f}s)")
    assert not bad, bad[:3]


# 6. anticanonical class ----------------------------------------------------------------


def test_criterion_6_anticanonical(grid_built):
    bad = [str(v) for v, b in grid_built if anticanonical(b.grading) != anticanonical_closed_form(v)]
    flag = build(TypedVariety.type1(4, 4, (0,)))
    flag_ok = anticanonical(flag.grading) == (2, 2) and semiample_cone(flag.grading, flag.u) == Cone2.between(
        (1, 0), (0, 1)
    )
    ok = not bad and flag_ok
    record(6, ok, f"closed forms hold on {len(grid_built)} instances; n=4 flag variety -K=(2,2), SAmple = quadrant")
    assert not bad, bad[:5]
    assert flag_ok


# 7. BPF saturation ---------------------------------------------------------------------


def test_criterion_7_bpf(grid_built):
    bad = [str(v) for v, b in grid_built if not bpf_saturated(b.grading, b.u)]
    record(7, not bad, f"BPF monoid saturated on {len(grid_built)} instances" if not bad else f"{len(bad)} failures")
    assert not bad, bad[:5]


# 8. restriction --------------------------------------------------------------------------


FULL_N4 = [[1, 1, 0, 1, 0, 0], [0, 0, 1, 0, 1, 1]]


def check_restriction():
    rows = table_rows()
    n5 = [r["matrix"] for r in rows if r["n"] == 5]
    steps = []
    for no in (3, 4):
        h, l = restrict(row_grading(no))
        steps.append((f"row {no}", l, h.matrix() in n5, h.matrix()))
    h, l = restrict(row_grading(1))
    steps.append(("row 1", l, h.matrix() == FULL_N4, h.matrix()))
    return steps


def test_criterion_8_restriction():
    steps = check_restriction()
    ok = all(s[2] for s in steps)
    msg = ", ".join(f"{name} -> deleting index {l}" for name, l, _, _ in steps)
    record(8, ok, msg + "; images are table rows / the (2,4) matrix")
    assert ok, steps


def main() -> int:
    grid = list(iter_grid())
    built = [(v, build(v)) for v in grid]
    verdicts = [(v, b, verify_smooth(b.grading, b.u)) for v, b in built]
    tests = [
        test_criterion_1_table,
        test_criterion_2_counting,
        lambda: test_criterion_3_smoothness(verdicts),
        lambda: test_criterion_4_fano_consistency(verdicts),
        test_criterion_5_hilbert_oracle,
        lambda: test_criterion_6_anticanonical(built),
        lambda: test_criterion_7_bpf(built),
        test_criterion_8_restriction,
    ]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    return 0 if all(ok for ok, _ in ACCEPTANCE.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
