"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np

from symfem import groups
from symfem.burgers import (
    BurgersState,
    DirichletBoundary,
    MeshMotion,
    Scheme,
    assemble_galerkin_fixed,
    assemble_invariant_lagrangian,
    assemble_invariant_radaptive,
    constant_boundary,
    galerkin_rows,
    radaptive_terms,
    simulate,
    stability_bound,
)
from symfem.frames import frame_burgers, frame_painleve, frame_sl2_cubic, frame_superposition
from symfem.groups import act_jet, compose
from symfem.harness import (
    ProblemId,
    TravelingWave,
    equivariance_drift,
    run_burgers_audit,
    run_convergence,
    run_invariance_audit,
    run_painleve_error_series,
    traveling_wave,
)
from symfem.mesh import DiscreteJet, Mesh, hat_deriv, hat_eval, stencil_quantities
from symfem.schemes import SchemeId, oscillator_problem, residual_linear_invariant, residual_linear_weak_form

RESULTS = {}


def report(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS[number] = line
    print(line)


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# -- 1, 2, 4: convergence ladders ----------------------------------------------------


def _order_check(number, problem, scheme, ic, lo, hi, budget):
    table, secs = _timed(lambda: run_convergence(problem, scheme, ic=ic))
    ok = lo <= table.fitted_order <= hi and (budget is None or secs < budget)
    budget_txt = f", runtime {secs:.2f}s (< {budget}s)" if budget else ""
    report(number, ok, f"{scheme.value} fitted order {table.fitted_order:.4f} in [{lo}, {hi}]{budget_txt}")
    assert ok


def test_criterion_1_exp_invariant_first_order():
    _order_check(1, ProblemId.EXP_ODE, SchemeId.EXP_INVARIANT, (1.0, 0.0), 0.9, 1.1, 5.0)


def test_criterion_2_cubic_invariant_first_order():
    _order_check(2, ProblemId.CUBIC_ODE, SchemeId.CUBIC_INVARIANT, (1.0, 0.0), 0.9, 1.1, 5.0)


def test_criterion_4_painleve_noninvariant_second_order():
    _order_check(4, ProblemId.PAINLEVE_ODE, SchemeId.PAINLEVE_NONINVARIANT, (1.0, 1.0), 1.8, 2.2, None)


# -- 3: Painleve error series --------------------------------------------------------


def test_criterion_3_painleve_error_series():
    series, secs = _timed(run_painleve_error_series)
    inv_max = float(np.max(series.err_invariant))
    inv_end = float(series.err_invariant[-1])
    non_end = float(series.err_noninvariant[-1])
    ratio = non_end / max(inv_end, np.finfo(float).tiny)
    ok = inv_max <= 1e-9 and ratio >= 1e4 and secs < 1.0
    report(
        3,
        ok,
        f"invariant max rel error {inv_max:.2e} (<= 1e-9), final ratio non/inv {ratio:.2e} (>= 1e4), "
        f"runtime {secs:.3f}s (< 1s)",
    )
    assert ok


# -- 5: superposition exactness ------------------------------------------------------


def test_criterion_5_superposition_exactness():
    prob = oscillator_problem()
    rng = np.random.default_rng(5)
    x = np.sort(rng.uniform(0.0, 1.0, 50))
    mesh = Mesh(x)
    u = 3 * np.exp(x) - 2 * np.exp(-x)
    worst = max(abs(residual_linear_invariant(mesh.jet(k, u), prob)) for k in range(1, 49))
    eps1 = 0.5
    boosted = u + eps1 * np.exp(x)
    plain = max(abs(residual_linear_weak_form(mesh.jet(k, boosted), prob)) for k in range(1, 49))
    ok = worst <= 1e-11 and plain > 1e-6
    report(
        5,
        ok,
        f"invariant weak form max |residual| {worst:.2e} (<= 1e-11); "
        f"plain weak form on u + {eps1} alpha max |residual| {plain:.2e} (> 1e-6)",
    )
    assert ok


# -- 6: moving frames ----------------------------------------------------------------


def _gamma(x):
    return math.exp(-x)


def _frame_sup(jet):
    return frame_superposition(jet, math.exp, _gamma)


def _close(g, h):
    if isinstance(g, groups.Sl2Element):
        return min(np.max(np.abs(g.matrix - h.matrix)), np.max(np.abs(g.matrix + h.matrix)))
    names = ("eps1", "eps2") if isinstance(g, groups.SuperpositionElement) else ("a", "b", "lam", "v")
    return max(abs(getattr(g, n) - getattr(h, n)) for n in names if hasattr(g, n))


def test_criterion_6_moving_frames():
    rng = np.random.default_rng(6)
    equi = {"sl2": 0.0, "superposition": 0.0, "painleve": 0.0, "burgers": 0.0}
    norm = dict(equi)
    for _ in range(100):
        x0 = rng.uniform(-0.5, 0.5)
        hl, hr = rng.uniform(0.05, 0.3, 2)
        jet = DiscreteJet.from_points((x0, x0 + hl, x0 + hl + hr), rng.uniform(0.5, 2.0, 3), k=1)
        for name, frame, g in (
            ("sl2", frame_sl2_cubic, groups.random_sl2(rng, 0.2)),
            ("superposition", _frame_sup, groups.random_superposition(rng, math.exp, _gamma)),
            ("painleve", frame_painleve, groups.random_painleve(rng)),
        ):
            rho = frame(jet)
            moved = act_jet(rho, jet)
            s = stencil_quantities(moved)
            target = {"sl2": (moved.x_mid, moved.u_mid - 1), "superposition": (moved.u_mid,), "painleve": (moved.u_mid - 1,)}
            norm[name] = max(norm[name], abs(s.ux_centered), *map(abs, target[name]))
            equi[name] = max(equi[name], _close(compose(frame(act_jet(g, jet)), g), rho))
        x, t, u = rng.uniform(-1, 1, 3)
        ux = rng.uniform(0.2, 3.0)
        rho = frame_burgers(x, u, ux, t)
        X, T, U = rho.act(x, t, u)
        norm["burgers"] = max(norm["burgers"], abs(X), abs(T), abs(U), abs(ux / rho.lam**2 - 1))
        g = groups.random_burgers(rng)
        Xg, Tg, Ug = g.act(x, t, u)
        equi["burgers"] = max(equi["burgers"], _close(compose(frame_burgers(Xg, Ug, ux / g.lam**2, Tg), g), rho))
    ok = max(equi.values()) <= 1e-9 and max(norm.values()) <= 1e-11
    detail = ", ".join(f"{k} equi {equi[k]:.1e} norm {norm[k]:.1e}" for k in equi)
    report(6, ok, f"100 seeded inputs per frame (tol 1e-9 / 1e-11): {detail}")
    assert ok


# -- 7: invariance audits ------------------------------------------------------------


def test_criterion_7_invariance_audits():
    parts = []
    ok = True
    for problem, scheme in (
        (ProblemId.EXP_ODE, SchemeId.EXP_INVARIANT),
        (ProblemId.CUBIC_ODE, SchemeId.CUBIC_INVARIANT),
        (ProblemId.CUBIC_ODE, SchemeId.CUBIC_ALTERNATIVE),
        (ProblemId.PAINLEVE_ODE, SchemeId.PAINLEVE_INVARIANT),
    ):
        r = run_invariance_audit(problem, scheme, seed=1, n_samples=100)
        ok &= r.max_drift <= 1e-9 and r.inconclusive < r.n_samples
        parts.append(f"{scheme.value} drift {r.max_drift:.1e}")
    r = run_invariance_audit(ProblemId.PAINLEVE_ODE, SchemeId.PAINLEVE_NONINVARIANT, seed=1, n_samples=100)
    ok &= bool(r.witnesses)
    parts.append(f"painleve-noninvariant witnesses {len(r.witnesses)}")
    r = run_burgers_audit(seed=1, n_samples=100)
    ok &= bool(r.witnesses)
    parts.append(f"burgers galerkin witnesses {len(r.witnesses)}")
    report(7, ok, "; ".join(parts))
    assert ok


# -- 8: Burgers reduction identities -------------------------------------------------


def _random_states(seed, count=100):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(8, 40))
        x = np.sort(rng.uniform(-1, 1, n))
        yield BurgersState(0.0, x, rng.uniform(-1, 1, n), rng.uniform(0.01, 0.5))


def test_criterion_8_burgers_reduction_identities():
    lag_gap = 0.0
    for s in _random_states(8):
        lag = assemble_invariant_lagrangian(s)
        rad = assemble_invariant_radaptive(s, MeshMotion.LAGRANGIAN)
        lag_gap = max(lag_gap, float(np.max(np.abs(rad.du_dt - lag.du_dt))), float(np.max(np.abs(rad.dx_dt - lag.dx_dt))))
    term_gap = 0.0
    for s in _random_states(80):
        lower, diag, upper, load = galerkin_rows(s)
        width = s.nodes[2:] - s.nodes[:-2]
        slope = np.diff(s.values) / np.diff(s.nodes)
        diffusion = s.nu * (slope[1:] - slope[:-1])
        t = radaptive_terms(s, np.zeros_like(s.nodes))
        term_gap = max(
            term_gap,
            float(np.max(np.abs(t.diffusion * width / 2 - diffusion))),
            float(np.max(np.abs((t.flux + t.invariantization) * width / 2 - (load - diffusion)))),
            float(np.max(np.abs(t.mesh_coupling))),
            float(np.max(np.abs(assemble_invariant_radaptive(s, MeshMotion.FIXED).du_dt - assemble_galerkin_fixed(s).du_dt))),
        )
    ok = lag_gap <= 1e-12 and term_gap <= 1e-10
    report(
        8,
        ok,
        f"r-adaptive(Lagrangian motion) vs Lagrangian assembler max gap {lag_gap:.3e} (<= 1e-12); "
        f"r-adaptive(zero velocity) vs fixed-mesh form term-by-term max gap {term_gap:.1e}",
    )
    assert ok


# -- 9: Burgers properties -----------------------------------------------------------


def _wave_ladder(wave, scheme, motion):
    errs = []
    for n in (30, 60, 120):
        x = np.linspace(-2.0, 4.0, n + 1)
        s = BurgersState(0.0, x, wave.value(x, 0.0), wave.nu)
        bc = DirichletBoundary(wave.value, wave.d_dt, wave.d_dx)
        final = simulate(s, scheme, motion, stability_bound(s), 1.0, bc)[-1]
        errs.append(float(np.max(np.abs(final.values[1:-1] - wave.value(final.nodes[1:-1], final.t)))))
    return errs


def test_criterion_9_burgers_properties():
    t0 = time.perf_counter()
    traveling_wave(0.1, 0.5, 1.0, (-2.0, 4.0))
    wave = TravelingWave(0.1, 0.5, 1.0)
    ladders = {
        "galerkin": _wave_ladder(wave, Scheme.GALERKIN, MeshMotion.FIXED),
        "radaptive/fixed": _wave_ladder(wave, Scheme.RADAPTIVE, MeshMotion.FIXED),
    }
    decreasing = all(e[0] > e[1] > e[2] for e in ladders.values())

    v = 0.5
    x = np.linspace(-2.0, 4.0, 61)
    bump = BurgersState(0.0, x, 0.2 * np.exp(-x * x), 0.1)
    bump_bc = constant_boundary(0.0, 0.0, -2.0, 4.0, pin_nodes=False)
    wave_state = BurgersState(0.0, x, wave.value(x, 0.0), 0.1)
    wave_bc = DirichletBoundary(wave.value, wave.d_dt, wave.d_dx, pin_nodes=False)
    dt = stability_bound(bump)
    drifts = {
        "lagrangian": equivariance_drift(bump, Scheme.LAGRANGIAN, MeshMotion.LAGRANGIAN, dt, 1.0, bump_bc, v),
        "radaptive/lagrangian": equivariance_drift(bump, Scheme.RADAPTIVE, MeshMotion.LAGRANGIAN, dt, 1.0, bump_bc, v),
        "radaptive/fixed": equivariance_drift(bump, Scheme.RADAPTIVE, MeshMotion.FIXED, dt, 1.0, bump_bc, v),
        "radaptive/fixed (wave)": equivariance_drift(wave_state, Scheme.RADAPTIVE, MeshMotion.FIXED, dt, 1.0, wave_bc, v),
    }
    secs = time.perf_counter() - t0
    ok = decreasing and max(drifts.values()) <= 1e-6 and secs < 30
    ladder_txt = "; ".join(f"{k} " + " > ".join(f"{e:.2e}" for e in errs) for k, errs in ladders.items())
    drift_txt = ", ".join(f"{k} {d:.1e}" for k, d in drifts.items())
    report(9, ok, f"ladders {ladder_txt}; boost drift (<= 1e-6) {drift_txt}; runtime {secs:.2f}s (< 30s)")
    assert ok


# -- 10: core identities -------------------------------------------------------------


def test_criterion_10_core_identities():
    rng = np.random.default_rng(10)
    mesh = Mesh(np.concatenate([[0.0], np.cumsum(rng.uniform(0.05, 0.3, 20))]))
    xs = rng.uniform(mesh.nodes[0], mesh.nodes[-1], 10_000)
    pu = max(abs(sum(hat_eval(mesh, k, x) for k in range(len(mesh))) - 1.0) for x in xs)
    ds = max(abs(sum(hat_deriv(mesh, k, x) for k in range(len(mesh)))) for x in xs)
    chain = 0.0
    for _ in range(200):
        g = groups.random_sl2(rng)
        k = int(rng.integers(0, len(mesh)))
        x = rng.uniform(mesh.nodes[0], mesh.nodes[-1])
        h = 1e-6
        if np.min(np.abs(mesh.nodes - x)) < 4 * h:
            continue
        fd = (groups.sl2_transform_hat(g, mesh, k, x + h) - groups.sl2_transform_hat(g, mesh, k, x - h)) / (
            g.act_x(x + h) - g.act_x(x - h)
        )
        chain = max(chain, abs(groups.sl2_transform_hat_deriv(g, mesh, k, x) - fd))
    ok = pu <= 1e-12 and ds <= 1e-12 and chain <= 1e-6
    report(10, ok, f"partition of unity {pu:.1e}, derivative sum {ds:.1e} (<= 1e-12); hat transformation law vs FD {chain:.1e} (<= 1e-6)")
    assert ok


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
