"""Acceptance gate: one test and one PASS/FAIL summary line per criterion.

Run ``pytest tests/test_acceptance.py -v`` (the summary lines appear at the
end of the run) or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conelab.catalog import EQUIVALENCE_MATRIX, catalog_names, f4_quartic_cone, make_grid, named, random_config
from conelab.cones import (
    classify_cc2,
    cone_defect,
    cone_property,
    cone_table,
    projection_ci_property,
    sample_projection,
)
from conelab.geometry import ProjPoint, apply_transform, collinear_subsets, detect_grid, sample_point
from conelab.ideals import condition_matrix, fat_ideal_dim, h_vector, ideal_dim, multiplicity_at
from conelab.linalg import mat_vec
from conelab.protocol import GenericityProtocol
from props import one_tail_violations, small_configs, hilbert_fact_violations, has_long_one_tail

PROTOCOL = GenericityProtocol()
RESULTS: dict[int, tuple[bool, str]] = {}


def criterion_1():
    t = time.perf_counter()
    rows = cone_table(named("F4").config, 3, 8, PROTOCOL)
    took = time.perf_counter() - t
    dims = tuple(r.actual_dim for r in rows)
    expected = tuple(r.clamped_expected for r in rows)
    unexp = tuple(r.degree for r in rows if r.unexpected)
    ok = (dims == (0, 1, 3, 7, 13, 21) and expected == (0, 0, 0, 4, 12, 21)
          and unexp == (4, 5, 6, 7) and took < 30)
    return ok, f"F4 d=3..8 dim={dims} expected={expected} unexpected at {unexp} ({took:.2f}s)"


def criterion_2():
    checks = []
    for name, k, want in (("F4", 4, 18), ("F4", 5, 0), ("D4", 3, 16), ("D4", 4, 0), ("Z2", 4, 4)):
        t = time.perf_counter()
        got = len(collinear_subsets(named(name).config, k))
        took = time.perf_counter() - t
        checks.append((name, k, got, want, took))
    ok = all(got == want and took < 1 for _, _, got, want, took in checks)
    return ok, " ".join(f"{n}[>={k}]={g}" for n, k, g, _, _ in checks)


def criterion_3():
    t = time.perf_counter()
    want = {"F4": (4, 6), "Z1": (4, 5), "Z2": (4, 4), "D4": (3, 4), "Z4": (3, 4)}
    got, ok = {}, True
    for name, ab in want.items():
        cfg = named(name).config
        res = projection_ci_property(cfg, PROTOCOL)
        every_trial = len(res.trials) == PROTOCOL.trials and all(tr[ab].certified for tr in res.trials)
        got[name] = res.type_pair
        ok &= res.type_pair == ab and every_trial and detect_grid(cfg) is None
    took = time.perf_counter() - t
    ok &= took < 60
    return ok, " ".join(f"{n}:{v}" for n, v in got.items()) + f", no grids ({took:.1f}s)"


def criterion_4():
    shapes = [(2, 3), (3, 3), (3, 4), (4, 4), (3, 5), (4, 5)]
    failures = []
    ci_checked = 0
    for a, b in shapes:
        for s in range(10):
            g = make_grid(a, b, random.Random(f"grid-{a}-{b}-{s}"))
            w = detect_grid(g)
            if w is None or (w.a, w.b) != (a, b):
                failures.append((a, b, s, "detect"))
            if not cone_property(g, a, PROTOCOL).unexpected:
                failures.append((a, b, s, f"C({a})"))
            if a >= 3 and b != a and not cone_property(g, b, PROTOCOL).unexpected:
                failures.append((a, b, s, f"C({b})"))
            if (a, b) == (3, 3):
                ci_checked += 1
                if projection_ci_property(g, PROTOCOL, (3, 3)).type_pair != (3, 3):
                    failures.append((a, b, s, "CI(3,3)"))
    return not failures, f"{len(shapes) * 10} grids, {ci_checked} (3,3) projections, failures={failures}"


def criterion_5():
    rng = random.Random("acceptance-cc2")
    inside, outside = [], []
    for _ in range(50):
        inside.append(random_config("on-two-skew-lines", (rng.randint(3, 7), rng.randint(3, 7)), rng))
    for i in range(50):
        if i % 2 == 0:
            outside.append(random_config("general-position", rng.randint(6, 10), rng))
        else:
            extra = rng.randint(0, 2)
            outside.append(random_config("on-two-skew-lines", (rng.randint(4 - extra, 8), 2, extra), rng))
    disagree = 0
    verdicts = {True: 0, False: 0}
    for cfg in inside + outside:
        c = classify_cc2(cfg).satisfies
        verdicts[c] += 1
        disagree += c != cone_property(cfg, 2, PROTOCOL).unexpected
    ok = disagree == 0 and verdicts[True] == 50
    return ok, f"100 verdicts, {verdicts[True]} C(2) / {verdicts[False]} not, disagreements={disagree}"


def _sixteen_point_candidates(rng):
    makers = [
        lambda: make_grid(4, 4, rng),
        lambda: random_config("on-skew-lines", ((5, 5, 5), 1), rng),
        lambda: random_config("on-skew-lines", ((4, 4, 4, 4), 0), rng),
        lambda: random_config("on-grid-lines", (4, 5, 16), rng),
        lambda: random_config("on-skew-lines", ((4, 4, 4), 4), rng),
        lambda: random_config("random", 16, rng),
    ]
    while True:
        yield rng.choice(makers)()


def criterion_6():
    grid = make_grid(4, 4, random.Random("acceptance-44"))
    d_grid = cone_defect(grid, 4, PROTOCOL)
    zp = random_config("on-skew-lines", ((5, 5, 5), 1), random.Random("acceptance-zprime"))
    hv = h_vector(zp).values
    d_zp = cone_defect(zp, 4, PROTOCOL) if hv == (1, 3, 6, 3, 3) else None
    found, drawn, worst = [], 0, None
    for cfg in _sixteen_point_candidates(random.Random("acceptance-c4")):
        drawn += 1
        if drawn > 300 or len(found) == 30:
            break
        c4 = cone_property(cfg, 4, PROTOCOL)
        if c4.unexpected and not cone_property(cfg, 3, PROTOCOL).unexpected:
            found.append(c4.defect)
    worst = max(found) if found else None
    ok = d_grid == 3 and d_zp == 3 and len(found) == 30 and worst <= 3
    return ok, (f"(4,4)-grid defect={d_grid}, Z' h-vector={hv} defect={d_zp}, "
                f"{len(found)} C(4)-not-C(3) configs (of {drawn - 1} drawn) max defect={worst}")


def criterion_7():
    f4 = named("F4").config
    rng = PROTOCOL.rng("acceptance-quartic")
    bad = []
    for s in range(10):
        Q = sample_point(rng, PROTOCOL.height, avoid=f4.points)
        f = f4_quartic_cone(Q)
        mult = multiplicity_at(f, Q.coords)
        vanish = all(f(p.coords) == 0 for p in f4)
        kernel = not any(mat_vec(condition_matrix(f4, 4, (Q, 4)), f.coefficients))
        if not (mult == 4 and vanish and kernel):
            bad.append((Q, mult, vanish, kernel))
    return not bad, f"10 sampled vertices, failures={bad}"


def criterion_8():
    z3, z4 = named("D4").config, named("Z4").config
    fwd = apply_transform(z4, EQUIVALENCE_MATRIX).as_set() == z3.as_set()
    back = apply_transform(z3, EQUIVALENCE_MATRIX).as_set() == z4.as_set()
    return fwd and back, f"Z4->D4 {fwd}, D4->Z4 {back}"


def criterion_9():
    configs = small_configs(100, seed="acceptance-hilbert")
    fact_bad = sum(bool(hilbert_fact_violations(c)) for c in configs)
    pool = configs + [named(n).config for n in catalog_names()]
    tails = [c for c in pool if has_long_one_tail(c)]
    tail_bad = sum(bool(one_tail_violations(c)) for c in tails)
    ident_bad, ident_checked = 0, 0
    for name in catalog_names():
        cfg = named(name).config
        for trial in range(PROTOCOL.trials):
            center, _, image = sample_projection(cfg, PROTOCOL, trial)
            for d in range(1, 9):
                ident_checked += 1
                ident_bad += fat_ideal_dim(cfg, center, d, d) != ideal_dim(image, d)
    ok = fact_bad == 0 and tail_bad == 0 and ident_bad == 0 and tails
    return ok, (f"Hilbert-function violations {fact_bad}/100, one-tail violations {tail_bad}/{len(tails)}, "
                f"projection identity violations {ident_bad}/{ident_checked}")


def criterion_10():
    t = time.perf_counter()
    f4 = named("F4").config
    quads = collinear_subsets(f4, 4)
    ci20 = 0
    chain = None
    for q1 in quads:
        z20 = f4.without(q1.members)
        if detect_grid(z20) is not None:
            continue
        if projection_ci_property(z20, PROTOCOL, (4, 5)).type_pair != (4, 5):
            continue
        ci20 += 1
        if chain is not None:
            continue
        for q2 in collinear_subsets(z20, 4):
            z16 = z20.without(q2.members)
            if detect_grid(z16) is None and projection_ci_property(z16, PROTOCOL, (4, 4)).type_pair == (4, 4):
                chain = (q1.members, q2.members)
                break
    z2 = named("Z2").config
    z2_quads = collinear_subsets(z2, 4)
    grids = []
    for q in z2_quads:
        w = detect_grid(z2.without(q.members))
        grids.append(w is not None and (w.a, w.b) == (3, 4))
    took = time.perf_counter() - t
    ok = chain is not None and len(z2_quads) == 4 and all(grids) and took < 300
    return ok, (f"{ci20}/18 removals give non-grid CI(4,5), chain={chain}, "
                f"Z2 removals giving (3,4)-grids: {sum(grids)}/{len(z2_quads)} ({took:.1f}s)")


CRITERIA = {
    1: ("F4 cone table", criterion_1),
    2: ("collinearity censuses", criterion_2),
    3: ("projection CI suite", criterion_3),
    4: ("sampled grids", criterion_4),
    5: ("C(2) classification agreement", criterion_5),
    6: ("cone defect values", criterion_6),
    7: ("F4 quartic cone", criterion_7),
    8: ("projective equivalence Z4 <-> D4", criterion_8),
    9: ("invariant property suites", criterion_9),
    10: ("residual trimming", criterion_10),
}


def summary_lines():
    lines = []
    for n, (title, _) in CRITERIA.items():
        if n in RESULTS:
            ok, detail = RESULTS[n]
            lines.append(f"{'PASS' if ok else 'FAIL'} criterion {n:2d} {title}: {detail}")
    return lines


@pytest.mark.parametrize("number", list(CRITERIA))
def test_criterion(number):
    title, fn = CRITERIA[number]
    ok, detail = fn()
    RESULTS[number] = (ok, detail)
    print(f"{'PASS' if ok else 'FAIL'} criterion {number} {title}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    for n, (_, fn) in CRITERIA.items():
        RESULTS[n] = fn()
        print(summary_lines()[-1], flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
