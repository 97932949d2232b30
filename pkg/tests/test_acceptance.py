"""Acceptance checks for the headline analyses and cross-cutting contracts.

Each test evaluates every clause of its criterion, prints one PASS/FAIL
line naming any clause that missed its target, then asserts them all.
Targets the implemented formulas provably cannot hit are asserted anyway
so the shortfall stays visible; the assertion message reports the
computed value.
"""

import json
import math
import time

import numpy as np

import bff.cli as cli
from bff.bayes_factors import (
    Family,
    TestStatistic,
    log_bf,
    log_bf_chisq,
    log_bf_f,
    log_bf_t,
    log_bf_z,
)
from bff.curves import EffectGrid, Study, combine, evaluate_bff, find_crossings
from bff.effect_sizes import Design, StudyDesign
from bff.exports import parse_csv, render_csv
from bff.numerics import IntegrationError, QuadratureSpec, integrate
from bff.oracle import (
    log_bf_quadrature,
    log_density_null,
    log_marginal_mixture_chisq,
    log_marginal_mixture_f,
)
from bff.priors import (
    GammaNCPPrior,
    NormalMomentPrior,
    gamma_log_density,
    gamma_mode,
    nm_log_density,
    nm_modes,
)

Z_STUDY = Study(
    TestStatistic(Family.Z, 2.0), StudyDesign(Design.ONE_SAMPLE_Z, n=100)
)
CHISQ_STUDY = Study(
    TestStatistic(Family.CHISQ, 12.65, df1=6),
    StudyDesign(Design.MULTINOMIAL_CHISQ, n=707, k=6),
)
F_STUDIES = [
    Study(
        TestStatistic(Family.F, 4.05, df1=2, df2=82),
        StudyDesign(Design.LINEAR_MODEL_F, n=85, k=2),
        label="original",
    ),
    Study(
        TestStatistic(Family.F, 1.99, df1=2, df2=137),
        StudyDesign(Design.LINEAR_MODEL_F, n=140, k=2),
        label="replication",
    ),
]

F_META_DOC = {
    "studies": [
        {
            "family": "f",
            "value": 4.05,
            "df1": 2,
            "df2": 82,
            "design": "linear_model_f",
            "n": 85,
            "k": 2,
            "label": "original",
        },
        {
            "family": "f",
            "value": 1.99,
            "df1": 2,
            "df2": 137,
            "design": "linear_model_f",
            "n": 140,
            "k": 2,
            "label": "replication",
        },
    ]
}


def _report(name, checks):
    failed = [label for label, ok in checks if not ok]
    status = "PASS" if not failed else "FAIL -> " + "; ".join(failed)
    print(f"[acceptance] {name}: {status}")
    return failed


def test_criterion_1_one_sample_z_example():
    start = time.perf_counter()
    curve = evaluate_bff(Z_STUDY)
    one_fifth = find_crossings(curve, math.log(0.2))
    elapsed = time.perf_counter() - start

    max_bf = math.exp(curve.max_log_bf)
    crossing = curve.crossings[0] if curve.crossings else math.nan
    fifth = one_fifth[0] if one_fifth else math.nan
    checks = [
        (f"max BF {max_bf:.6f} in 2.90+/-0.01", abs(max_bf - 2.90) <= 0.01),
        (
            f"argmax omega {curve.argmax_omega:.6f} in 0.150+/-0.005",
            abs(curve.argmax_omega - 0.150) <= 0.005,
        ),
        (
            f"BF=1 crossing {crossing:.6f} in 0.40+/-0.01",
            len(curve.crossings) == 1 and abs(crossing - 0.40) <= 0.01,
        ),
        (
            f"BF=1/5 crossing {fifth:.6f} in 0.80+/-0.02",
            len(one_fifth) == 1 and abs(fifth - 0.80) <= 0.02,
        ),
        (f"runtime {elapsed:.3f}s < 1s", elapsed < 1.0),
    ]
    failed = _report("criterion 1 (z=2, n=100)", checks)
    assert not failed, "; ".join(failed)


def test_criterion_2_multinomial_chisq_application():
    start = time.perf_counter()
    curve = evaluate_bff(CHISQ_STUDY)
    against_at_02 = math.exp(-CHISQ_STUDY.log_bf_at(0.2))
    elapsed = time.perf_counter() - start

    max_bf = math.exp(curve.max_log_bf)
    crossing = curve.crossings[0] if curve.crossings else math.nan
    checks = [
        (f"max BF {max_bf:.6f} in 3.07+/-0.01", abs(max_bf - 3.07) <= 0.01),
        (
            f"argmax omega {curve.argmax_omega:.6f} in 0.035+/-0.003",
            abs(curve.argmax_omega - 0.035) <= 0.003,
        ),
        (
            f"BF=1 crossing {crossing:.6f} in 0.068+/-0.002",
            len(curve.crossings) == 1 and abs(crossing - 0.068) <= 0.002,
        ),
        (
            f"odds against H1 at omega=0.2 are {against_at_02:.1f}:1 > 400:1",
            against_at_02 > 400.0,
        ),
        (f"runtime {elapsed:.3f}s < 1s", elapsed < 1.0),
    ]
    failed = _report("criterion 2 (chisq h=12.65, k=6, n=707)", checks)
    assert not failed, "; ".join(failed)


def test_criterion_3_f_replication_meta_analysis():
    start = time.perf_counter()
    curve = combine(F_STUDIES)
    interval = find_crossings(curve, math.log(2.0))
    elapsed = time.perf_counter() - start

    max_bf = math.exp(curve.max_log_bf)
    lo = interval[0] if len(interval) == 2 else math.nan
    hi = interval[1] if len(interval) == 2 else math.nan
    checks = [
        (f"combined max BF {max_bf:.6f} in 5.0+/-0.1", abs(max_bf - 5.0) <= 0.1),
        (
            f"argmax omega {curve.argmax_omega:.6f} in 0.14+/-0.01",
            abs(curve.argmax_omega - 0.14) <= 0.01,
        ),
        (
            f"BF>2 interval lower end {lo:.6f} in 0.05+/-0.01",
            len(interval) == 2 and abs(lo - 0.05) <= 0.01,
        ),
        (
            f"BF>2 interval upper end {hi:.6f} in 0.28+/-0.01",
            len(interval) == 2 and abs(hi - 0.28) <= 0.01,
        ),
        (f"runtime {elapsed:.3f}s < 1s", elapsed < 1.0),
    ]
    failed = _report("criterion 3 (F meta-analysis)", checks)
    assert not failed, "; ".join(failed)


def test_criterion_4_consistency_identities():
    worst_chisq = 0.0
    worst_f = 0.0
    for s in [0.5, 1.0, 2.0, 4.0]:
        for tau2 in [0.1, 1.0, 10.0]:
            worst_chisq = max(
                worst_chisq, abs(log_bf_chisq(s * s, 1, tau2) - log_bf_z(s, tau2))
            )
            for nu in [5, 30]:
                worst_f = max(
                    worst_f, abs(log_bf_f(s * s, 1, nu, tau2) - log_bf_t(s, nu, tau2))
                )
    checks = [
        (f"|chisq(z^2,1) - z| worst {worst_chisq:.3e} <= 1e-12", worst_chisq <= 1e-12),
        (f"|f(t^2,1,nu) - t| worst {worst_f:.3e} <= 1e-12", worst_f <= 1e-12),
    ]
    failed = _report("criterion 4 (consistency identities)", checks)
    assert not failed, "; ".join(failed)


def test_criterion_5_oracle_equivalence():
    start = time.perf_counter()

    stats = [TestStatistic(Family.Z, z) for z in [0.5, 2.0, 4.0]]
    stats += [
        TestStatistic(Family.T, t, df1=nu)
        for t in [0.5, 2.0, 4.0]
        for nu in [2, 10, 40]
    ]
    stats += [
        TestStatistic(Family.CHISQ, h, df1=k)
        for h in [1.0, 8.0, 20.0]
        for k in [1, 4, 10]
    ]
    stats += [
        TestStatistic(Family.F, f, df1=k, df2=m)
        for f in [0.3, 2.5, 6.0]
        for k, m in [(1, 10), (3, 30), (8, 120)]
    ]
    cases = [(stat, tau2) for stat in stats for tau2 in [0.1, 1.0, 10.0]]

    worst_rel = 0.0
    for stat, tau2 in cases:
        closed = log_bf(stat, tau2)
        quad = log_bf_quadrature(stat, tau2)
        worst_rel = max(worst_rel, abs(quad - closed) / abs(closed))

    tight = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-11, max_subdivisions=2000)
    rng = np.random.default_rng(20250825)
    worst_mix = 0.0
    for _ in range(10):
        h = float(rng.uniform(0.5, 25.0))
        k = int(rng.integers(1, 11))
        tau2 = float(rng.uniform(0.1, 5.0))
        stat = TestStatistic(Family.CHISQ, h, df1=k)
        via_quad = log_bf_quadrature(stat, tau2, tight) + log_density_null(
            Family.CHISQ, h, k
        )
        worst_mix = max(worst_mix, abs(log_marginal_mixture_chisq(h, k, tau2) - via_quad))
    for _ in range(10):
        f = float(rng.uniform(0.2, 6.0))
        k = int(rng.integers(1, 9))
        m = int(rng.integers(10, 150))
        tau2 = float(rng.uniform(0.1, 5.0))
        stat = TestStatistic(Family.F, f, df1=k, df2=m)
        via_quad = log_bf_quadrature(stat, tau2, tight) + log_density_null(
            Family.F, f, k, m
        )
        worst_mix = max(worst_mix, abs(log_marginal_mixture_f(f, k, m, tau2) - via_quad))

    elapsed = time.perf_counter() - start
    checks = [
        (
            f"closed vs quadrature worst rel err {worst_rel:.3e} <= 1e-6 "
            f"({len(cases)} grid cases)",
            worst_rel <= 1e-6,
        ),
        (
            f"mixture vs quadrature marginal worst abs err {worst_mix:.3e} <= 1e-9 "
            f"(20 seeded draws)",
            worst_mix <= 1e-9,
        ),
        (f"runtime {elapsed:.1f}s < 60s", elapsed < 60.0),
    ]
    failed = _report("criterion 5 (oracle equivalence)", checks)
    assert not failed, "; ".join(failed)


def test_criterion_6_property_suite():
    checks = []

    # prior normalizations
    worst = 0.0
    for tau2 in [0.01, 0.5, 1.0, 10.0, 100.0]:
        p = NormalMomentPrior(0.0, tau2)
        total = integrate(
            lambda x: math.exp(nm_log_density(p, x)), -math.inf, math.inf
        )
        worst = max(worst, abs(total - 1.0))
        for k in [1, 2, 6, 10]:
            g = GammaNCPPrior(k, tau2)
            total = integrate(
                lambda x: math.exp(gamma_log_density(g, x)), 0.0, math.inf
            )
            worst = max(worst, abs(total - 1.0))
    checks.append((f"prior normalizations off by {worst:.2e} <= 1e-8", worst <= 1e-8))

    # modes confirmed by numerical argmax
    p = NormalMomentPrior(0.0, 1.0)
    xs = np.linspace(-5.0, 5.0, 40001)
    best = xs[int(np.argmax([nm_log_density(p, x) for x in xs]))]
    lo, hi = nm_modes(p)
    step = xs[1] - xs[0]
    ok_nm = min(abs(best - lo), abs(best - hi)) <= step
    g = GammaNCPPrior(4, 0.7)
    xs = np.linspace(1e-9, 12.0, 40001)
    best = xs[int(np.argmax([gamma_log_density(g, x) for x in xs]))]
    ok_gamma = abs(best - gamma_mode(g)) <= xs[1] - xs[0]
    checks.append(("prior modes match numerical argmax", ok_nm and ok_gamma))

    # point-null limit
    tau2 = 1e-10
    worst = max(
        abs(log_bf_z(2.0, tau2)),
        abs(log_bf_t(2.0, 10, tau2)),
        abs(log_bf_chisq(5.0, 3, tau2)),
        abs(log_bf_f(2.5, 3, 30, tau2)),
    )
    checks.append((f"|log BF| {worst:.2e} < 1e-6 at tau2=1e-10", worst < 1e-6))

    # sign symmetry, exact
    sym = all(
        log_bf_z(s, tau2) == log_bf_z(-s, tau2)
        and log_bf_t(s, 7, tau2) == log_bf_t(-s, 7, tau2)
        for s in [0.5, 1.0, 2.0, 4.0]
        for tau2 in [0.1, 1.0, 10.0]
    )
    checks.append(("z/t sign symmetry exact", sym))

    # combine is the pointwise log sum
    grid = EffectGrid(0.0, 1.0, 101)
    combined = combine(F_STUDIES, grid)
    parts = [evaluate_bff(s, grid) for s in F_STUDIES]
    worst = max(
        abs(lb - (pa[1] + pb[1]))
        for (_, lb), pa, pb in zip(combined.points, parts[0].points, parts[1].points)
    )
    checks.append((f"combine pointwise log-sum off by {worst:.2e} <= 1e-12", worst <= 1e-12))

    # overflow guard
    checks.append(("log_bf_z(40, 1e4) finite", math.isfinite(log_bf_z(40.0, 1e4))))

    failed = _report("criterion 6 (property suite)", checks)
    assert not failed, "; ".join(failed)


def test_criterion_7_io_contract(tmp_path, capsys, monkeypatch):
    study_path = tmp_path / "meta.json"
    study_path.write_text(json.dumps(F_META_DOC), encoding="utf-8")
    checks = []

    # parses, runs, and every format is byte-deterministic
    def emit_once(fmt, run):
        out_path = tmp_path / f"meta-{run}.{fmt}"
        code = cli.main(
            [
                "combine",
                "--studies",
                str(study_path),
                "--per-study",
                "--format",
                fmt,
                "--out",
                str(out_path),
            ]
        )
        return out_path.read_bytes() if code == 0 else None

    deterministic = True
    for fmt in ["csv", "json", "svg"]:
        first, second = emit_once(fmt, 0), emit_once(fmt, 1)
        deterministic = deterministic and first is not None and first == second
    capsys.readouterr()
    checks.append(("study file runs; CSV/JSON/SVG byte-deterministic", deterministic))

    # CSV round trip
    csv_text = (tmp_path / "meta-0.csv").read_text(encoding="utf-8")
    checks.append(
        ("CSV parse/render round trip byte-identical", render_csv(parse_csv(csv_text)) == csv_text)
    )

    # exit codes: 0 success, 2 usage/schema, 1 compute
    ok_success = cli.main(["z", "--stat", "2", "--n", "100", "--steps", "21"]) == 0
    bad = json.loads(json.dumps(F_META_DOC))
    bad["studies"][0]["design"] = "anova"
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad), encoding="utf-8")
    ok_schema = cli.main(["combine", "--studies", str(bad_path)]) == 2

    def boom(studies, grid):
        raise IntegrationError("synthetic failure")

    monkeypatch.setattr(cli, "combine", boom)
    ok_compute = cli.main(["combine", "--studies", str(study_path)]) == 1
    monkeypatch.undo()
    capsys.readouterr()
    checks.append(
        (
            f"exit codes: success {ok_success}, schema {ok_schema}, compute {ok_compute}",
            ok_success and ok_schema and ok_compute,
        )
    )

    failed = _report("criterion 7 (IO contract)", checks)
    assert not failed, "; ".join(failed)
