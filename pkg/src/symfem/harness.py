"""Experiment registry: exact solutions, error metrics, convergence ladders,
invariance audits and Burgers runs driven by a JSON config."""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import groups
from .burgers import (
    BurgersState,
    DirichletBoundary,
    MeshMotion,
    Scheme,
    SimulationError,
    constant_boundary,
    make_rhs,
    simulate,
    stability_bound,
    trajectory_csv_rows,
)
from .mesh import DiscreteJet, build_uniform_mesh
from .schemes import (
    LinearProblem,
    MarchError,
    SchemeId,
    StartUp,
    _derivative_for,
    march_ivp,
    oscillator_problem,
    residual_for,
)
from .solvers import ConvergenceTable, NewtonConfig, NewtonError, newton_scalar

DEFAULT_LADDER = (10, 20, 40, 80, 160, 320, 640, 1280)
SELF_CHECK_TOL = 1e-6
WITNESS_TOL = 1e-6
DRIFT_TOL = 1e-9


class ProblemId(enum.Enum):
    EXP_ODE = "exp-ode"
    CUBIC_ODE = "cubic-ode"
    PAINLEVE_ODE = "painleve-ode"
    LINEAR_ODE = "linear-ode"
    BURGERS = "burgers"


COMPATIBLE = {
    ProblemId.EXP_ODE: (SchemeId.EXP_INVARIANT,),
    ProblemId.CUBIC_ODE: (SchemeId.CUBIC_INVARIANT, SchemeId.CUBIC_ALTERNATIVE),
    ProblemId.PAINLEVE_ODE: (SchemeId.PAINLEVE_INVARIANT, SchemeId.PAINLEVE_NONINVARIANT),
    ProblemId.LINEAR_ODE: (SchemeId.LINEAR_INVARIANT,),
}

# schemes expected to fail the invariance audit
NON_INVARIANT = {SchemeId.PAINLEVE_NONINVARIANT}

DEFAULT_IC = {
    ProblemId.EXP_ODE: (1.0, 0.0),
    ProblemId.CUBIC_ODE: (1.0, 0.0),
    ProblemId.PAINLEVE_ODE: (1.0, 1.0),
    ProblemId.LINEAR_ODE: (1.0, 0.0),
}


class ExperimentError(RuntimeError):
    """A numerical failure inside an experiment, tagged with where it happened."""

    def __init__(self, message: str, resolution: int | None = None):
        super().__init__(message if resolution is None else f"N={resolution}: {message}")
        self.resolution = resolution


class SelfCheckError(AssertionError):
    pass


# -- exact solutions -------------------------------------------------------------


@dataclass(frozen=True)
class ExactSolution:
    """Closed-form solution with the residual of its strong-form equation.

    ``eval`` takes ``x`` for the ODEs and ``(x, t)`` for Burgers.
    """

    problem: ProblemId
    params: dict
    eval: Callable
    domain: tuple[float, float]

    def __call__(self, *args):
        return self.eval(*args)

    def substitution_residual(self, n_points: int = 20) -> float:
        """Largest strong-form residual from central differences at ``n_points``."""
        a, b = self.domain
        if self.problem is ProblemId.BURGERS:
            nu = self.params["nu"]
            h = 1e-4
            worst = 0.0
            for x in np.linspace(a, b, n_points):
                for t in (0.0, 0.5):
                    f = self.eval
                    u = f(x, t)
                    ut = (f(x, t + h) - f(x, t - h)) / (2 * h)
                    ux = (f(x + h, t) - f(x - h, t)) / (2 * h)
                    uxx = (f(x + h, t) - 2 * u + f(x - h, t)) / (h * h)
                    worst = max(worst, abs(ut + u * ux - nu * uxx))
            return worst
        rhs = _ODE_RHS[self.problem]
        h = 1e-4
        pad = 2 * h
        worst = 0.0
        for x in np.linspace(a + pad, b - pad, n_points):
            f = self.eval
            u = f(x)
            ux = (f(x + h) - f(x - h)) / (2 * h)
            uxx = (f(x + h) - 2 * u + f(x - h)) / (h * h)
            worst = max(worst, abs(uxx - rhs(x, u, ux)))
        return worst

    def self_check(self) -> None:
        r = self.substitution_residual()
        if not r <= SELF_CHECK_TOL:
            raise SelfCheckError(f"{self.problem.value} exact solution fails substitution check ({r:.3e})")


_ODE_RHS = {
    ProblemId.EXP_ODE: lambda x, u, ux: math.exp(-ux),
    ProblemId.CUBIC_ODE: lambda x, u, ux: u**-3,
    ProblemId.PAINLEVE_ODE: lambda x, u, ux: ux * ux / u,
    ProblemId.LINEAR_ODE: lambda x, u, ux: u,
}


def _exp_solution(u0, ux0, x0):
    c1 = math.exp(ux0) - x0
    c2 = u0 - math.exp(ux0) * ux0 + x0
    return {"c1": c1, "c2": c2}, lambda x: (x + c1) * np.log(x + c1) - x + c2


def _cubic_solution(u0, ux0, x0):
    if u0 == 0:
        raise ValueError("the cubic problem needs u(x_0) != 0")
    c1 = (1.0 + (u0 * ux0) ** 2) / u0**2
    c2 = u0 * ux0 / c1 - x0
    sign = math.copysign(1.0, u0)
    return {"c1": c1, "c2": c2}, lambda x: sign * np.sqrt(1.0 / c1 + c1 * (x + c2) ** 2)


def _painleve_solution(u0, ux0, x0):
    if not u0 > 0:
        raise ValueError("the Painleve problem needs u(x_0) > 0")
    rate = ux0 / u0
    amp = u0 * math.exp(-rate * x0)
    return {"c1": amp, "c2": rate}, lambda x: amp * np.exp(rate * x)


def _linear_solution(u0, ux0, x0):
    c1 = 0.5 * (u0 + ux0) * math.exp(-x0)
    c2 = 0.5 * (u0 - ux0) * math.exp(x0)
    return {"c1": c1, "c2": c2}, lambda x: c1 * np.exp(x) + c2 * np.exp(-x)


_ODE_FACTORIES = {
    ProblemId.EXP_ODE: _exp_solution,
    ProblemId.CUBIC_ODE: _cubic_solution,
    ProblemId.PAINLEVE_ODE: _painleve_solution,
    ProblemId.LINEAR_ODE: _linear_solution,
}


def exact_solution(problem: ProblemId, u0: float, ux0: float, interval=(0.0, 1.0)) -> ExactSolution:
    """Registered exact solution through ``u(a) = u0, u_x(a) = ux0``, self-checked."""
    if problem is ProblemId.BURGERS:
        raise ValueError("use traveling_wave() for the Burgers problem")
    a, b = interval
    params, fn = _ODE_FACTORIES[problem](u0, ux0, a)
    sol = ExactSolution(problem, params, fn, (a, b))
    sol.self_check()
    return sol


@dataclass(frozen=True)
class TravelingWave:
    nu: float
    a: float
    c: float

    def value(self, x, t):
        return self.c - self.a * np.tanh(self.a * (x - self.c * t) / (2 * self.nu))

    def d_dx(self, x, t):
        s = np.tanh(self.a * (x - self.c * t) / (2 * self.nu))
        return -self.a**2 / (2 * self.nu) * (1 - s * s)

    def d_dt(self, x, t):
        return -self.c * self.d_dx(x, t)


def traveling_wave(nu: float, a: float, c: float, interval=(-2.0, 4.0)) -> ExactSolution:
    w = TravelingWave(nu, a, c)
    sol = ExactSolution(ProblemId.BURGERS, {"nu": nu, "a": a, "c": c}, w.value, tuple(interval))
    sol.self_check()
    return sol


# -- metrics and ladders ---------------------------------------------------------


def relative_linf_error(numeric, exact) -> float:
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numeric.shape != exact.shape:
        raise ValueError(f"length mismatch: {numeric.shape} vs {exact.shape}")
    norm = np.max(np.abs(exact)) if exact.size else 0.0
    if not norm > 0:
        raise ValueError("exact solution has zero l-infinity norm")
    return float(np.max(np.abs(numeric - exact)) / norm)


def _check_compatible(problem: ProblemId, scheme: SchemeId) -> None:
    if scheme not in COMPATIBLE.get(problem, ()):
        raise ValueError(f"scheme {scheme.value} does not discretize {problem.value}")


def _linear_problem(problem: ProblemId) -> LinearProblem | None:
    return oscillator_problem() if problem is ProblemId.LINEAR_ODE else None


def solve(problem: ProblemId, scheme: SchemeId, n: int, interval=(0.0, 1.0), u0=None, ux0=None, start=None):
    """March one resolution; returns ``(nodes, numeric, exact)``."""
    _check_compatible(problem, scheme)
    d0, d1 = DEFAULT_IC[problem]
    u0 = d0 if u0 is None else u0
    ux0 = d1 if ux0 is None else ux0
    exact = exact_solution(problem, u0, ux0, interval)
    mesh = build_uniform_mesh(interval[0], interval[1], n)
    u = march_ivp(scheme, mesh, u0, ux0, problem=_linear_problem(problem), start=start)
    return mesh.nodes.copy(), u, exact(mesh.nodes)


def run_convergence(
    problem: ProblemId,
    scheme: SchemeId,
    n_list=DEFAULT_LADDER,
    ic=None,
    interval=(0.0, 1.0),
    start: StartUp | None = None,
) -> ConvergenceTable:
    _check_compatible(problem, scheme)
    u0, ux0 = DEFAULT_IC[problem] if ic is None else ic
    exact_solution(problem, u0, ux0, interval)
    table = ConvergenceTable()
    for n in n_list:
        try:
            x, u, ue = solve(problem, scheme, n, interval, u0, ux0, start)
        except MarchError as exc:
            raise ExperimentError(str(exc), resolution=n) from exc
        table.add(n, (interval[1] - interval[0]) / n, relative_linf_error(u, ue))
    table.fit()
    return table


# -- invariance audits -----------------------------------------------------------


@dataclass
class AuditReport:
    problem: str
    scheme: str
    seed: int
    n_samples: int
    expect_invariant: bool
    max_drift: float = 0.0
    witnesses: list = field(default_factory=list)
    inconclusive: int = 0

    @property
    def passed(self) -> bool:
        if self.expect_invariant:
            return self.max_drift <= DRIFT_TOL and self.inconclusive < self.n_samples
        return bool(self.witnesses)

    def as_dict(self) -> dict:
        return {
            "problem": self.problem,
            "scheme": self.scheme,
            "seed": self.seed,
            "n_samples": self.n_samples,
            "expect_invariant": self.expect_invariant,
            "max_drift": self.max_drift,
            "witnesses": self.witnesses[:5],
            "n_witnesses": len(self.witnesses),
            "inconclusive": self.inconclusive,
            "passed": self.passed,
        }


def _random_element(scheme: SchemeId, rng: np.random.Generator, problem: LinearProblem | None):
    if scheme is SchemeId.EXP_INVARIANT:
        return groups.random_exp(rng)
    if scheme in (SchemeId.CUBIC_INVARIANT, SchemeId.CUBIC_ALTERNATIVE):
        return groups.random_sl2(rng)
    if scheme in (SchemeId.PAINLEVE_INVARIANT, SchemeId.PAINLEVE_NONINVARIANT):
        return groups.random_painleve(rng)
    return groups.random_superposition(rng, problem.alpha_fn, problem.gamma_fn)


def _random_zero(scheme: SchemeId, rng: np.random.Generator, residual, derivative) -> DiscreteJet:
    """A jet on the scheme's zero set: random first two points, Newton for the third."""
    x_prev = rng.uniform(-0.5, 0.5)
    hl, hr = rng.uniform(0.02, 0.2, size=2)
    u_prev = rng.uniform(0.5, 2.0)
    u_mid = u_prev + hl * rng.uniform(-1.0, 1.0)
    base = DiscreteJet(1, x_prev, x_prev + hl, x_prev + hl + hr, u_prev, u_mid, u_mid)
    guess = u_mid + (u_mid - u_prev) * hr / hl
    if guess <= 0:
        guess = 0.5 * u_mid
    root = newton_scalar(lambda v: residual(base.with_next(v)), lambda v: derivative(base.with_next(v)), guess)
    return base.with_next(root)


def run_invariance_audit(problem: ProblemId, scheme: SchemeId, seed: int = 1, n_samples: int = 100) -> AuditReport:
    """Push points of a residual's zero set through random group elements.

    Drift is ``|residual(g . z)|``. Samples whose construction fails (Newton
    failure, pole, folded stencil) are counted as inconclusive, not dropped
    silently.
    """
    if problem is ProblemId.BURGERS:
        return run_burgers_audit(seed, n_samples)
    _check_compatible(problem, scheme)
    lin = _linear_problem(problem)
    residual = residual_for(scheme, lin)
    derivative = _derivative_for(scheme, residual)
    rng = np.random.default_rng(seed)
    report = AuditReport(problem.value, scheme.value, seed, n_samples, scheme not in NON_INVARIANT)
    for i in range(n_samples):
        try:
            z = _random_zero(scheme, rng, residual, derivative)
            g = _random_element(scheme, rng, lin)
            drift = abs(residual(groups.act_jet(g, z)))
        except (NewtonError, groups.PoleError, groups.OrderingError, ValueError, ZeroDivisionError):
            report.inconclusive += 1
            continue
        report.max_drift = max(report.max_drift, drift)
        if drift > WITNESS_TOL:
            report.witnesses.append({"sample": i, "jet": list(z.xs) + list(z.us), "drift": drift})
    return report


def _bump_state(rng: np.random.Generator, n: int = 40, nu: float = 0.1) -> BurgersState:
    x = np.sort(rng.uniform(-2.0, 4.0, size=n + 1))
    x[0], x[-1] = -2.0, 4.0
    amp, centre = rng.uniform(0.2, 1.0), rng.uniform(-0.5, 1.5)
    return BurgersState(0.0, x, amp * np.exp(-((x - centre) ** 2)) + rng.uniform(-0.3, 0.3), nu)


def boost_drift(state: BurgersState, scheme: Scheme, motion: MeshMotion, v: float) -> float:
    """Mismatch between the scheme's rates at the boosted state and the boosted rates.

    A Galilean boost keeps ``du/dt`` along each node and adds ``v`` to every node
    velocity, so an equivariant semi-discretization satisfies
    ``F(g . z) = (dx/dt + v, du/dt)``. Interior nodes only.
    """
    g = groups.BurgersElement(1.0, 0.0, 0.0, v)
    base = make_rhs(scheme, motion)(state)
    moved = state.boosted(g)
    boosted_motion = MeshMotion.PRESCRIBED if motion is MeshMotion.FIXED and scheme is not Scheme.GALERKIN else motion
    prescribed = (lambda s: np.full(len(s.nodes), v)) if boosted_motion is MeshMotion.PRESCRIBED else None
    other = make_rhs(scheme, boosted_motion, prescribed=prescribed)(moved)
    du = np.max(np.abs(other.du_dt[1:-1] - base.du_dt[1:-1]))
    if scheme is Scheme.GALERKIN:
        # nodes cannot follow the boost, so only the value rates are comparable
        return float(du)
    dx = np.max(np.abs(other.dx_dt[1:-1] - (base.dx_dt[1:-1] + v)))
    return float(max(du, dx))


def run_burgers_audit(seed: int = 1, n_samples: int = 100, v: float = 0.5) -> AuditReport:
    """Galilean audit of the fixed-mesh Galerkin assembler (a non-invariance witness search)."""
    rng = np.random.default_rng(seed)
    report = AuditReport(ProblemId.BURGERS.value, Scheme.GALERKIN.value, seed, n_samples, False)
    for i in range(n_samples):
        drift = boost_drift(_bump_state(rng), Scheme.GALERKIN, MeshMotion.FIXED, v)
        report.max_drift = max(report.max_drift, drift)
        if drift > WITNESS_TOL:
            report.witnesses.append({"sample": i, "drift": drift})
    return report


# -- Painleve error series -------------------------------------------------------


@dataclass
class PainleveSeries:
    x: np.ndarray
    err_invariant: np.ndarray
    err_noninvariant: np.ndarray

    def rows(self):
        return zip(self.x, self.err_invariant, self.err_noninvariant)


def run_painleve_error_series(dx: float = 0.01) -> PainleveSeries:
    """Pointwise relative error of both Painleve schemes on ``[0, 1]``, ``u(0) = u_x(0) = 1``."""
    n = int(round(1.0 / dx))
    exact = exact_solution(ProblemId.PAINLEVE_ODE, 1.0, 1.0, (0.0, 1.0))
    mesh = build_uniform_mesh(0.0, 1.0, n)
    ue = exact(mesh.nodes)
    errs = []
    for scheme in (SchemeId.PAINLEVE_INVARIANT, SchemeId.PAINLEVE_NONINVARIANT):
        try:
            u = march_ivp(scheme, mesh, 1.0, 1.0)
        except MarchError as exc:
            raise ExperimentError(f"{scheme.value}: {exc}", resolution=n) from exc
        errs.append(np.abs(u - ue) / np.abs(ue))
    return PainleveSeries(mesh.nodes.copy(), errs[0], errs[1])


# -- Burgers runs ----------------------------------------------------------------


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class BurgersConfig:
    nu: float
    interval: tuple[float, float]
    n: int
    dt: float
    t_end: float
    scheme: Scheme
    motion: MeshMotion
    ic: dict
    boundary: str
    snapshot_stride: int = 1
    equivariance: dict | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> BurgersConfig:
        if not isinstance(raw, dict):
            raise ConfigError("<root>", "config must be a JSON object")
        required = ("nu", "interval", "n", "dt", "t_end", "scheme", "motion", "ic", "boundary")
        for name in required:
            if name not in raw:
                raise ConfigError(name, "missing required field")
        known = set(required) | {"snapshot_stride", "equivariance"}
        for name in raw:
            if name not in known:
                raise ConfigError(name, "unknown field")

        def number(name, positive=True):
            v = raw[name]
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ConfigError(name, f"expected a finite number, got {v!r}")
            if positive and not v > 0:
                raise ConfigError(name, f"must be positive, got {v!r}")
            return float(v)

        nu, dt = number("nu"), number("dt")
        t_end = number("t_end", positive=False)
        if t_end < 0:
            raise ConfigError("t_end", "must be non-negative")
        interval = raw["interval"]
        if (
            not isinstance(interval, (list, tuple))
            or len(interval) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in interval)
            or not interval[0] < interval[1]
        ):
            raise ConfigError("interval", f"expected [a, b] with a < b, got {interval!r}")
        n = raw["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 2:
            raise ConfigError("n", f"expected an integer >= 2, got {n!r}")
        stride = raw.get("snapshot_stride", 1)
        if isinstance(stride, bool) or not isinstance(stride, int) or stride < 1:
            raise ConfigError("snapshot_stride", f"expected a positive integer, got {stride!r}")
        try:
            scheme = Scheme(raw["scheme"])
        except ValueError:
            raise ConfigError("scheme", f"expected galerkin|lagrangian|radaptive, got {raw['scheme']!r}") from None
        try:
            motion = MeshMotion(raw["motion"])
        except ValueError:
            raise ConfigError("motion", f"expected fixed|lagrangian, got {raw['motion']!r}") from None
        if motion is MeshMotion.PRESCRIBED:
            raise ConfigError("motion", "expected fixed|lagrangian")
        if scheme is Scheme.GALERKIN and motion is not MeshMotion.FIXED:
            raise ConfigError("motion", "the galerkin scheme needs motion=fixed")
        if scheme is Scheme.LAGRANGIAN and motion is not MeshMotion.LAGRANGIAN:
            raise ConfigError("motion", "the lagrangian scheme needs motion=lagrangian")

        ic = raw["ic"]
        if not isinstance(ic, dict) or "name" not in ic:
            raise ConfigError("ic", "expected an object with a 'name'")
        if ic["name"] == "constant":
            if not isinstance(ic.get("value"), (int, float)) or isinstance(ic.get("value"), bool):
                raise ConfigError("ic.value", "constant IC needs a numeric 'value'")
        elif ic["name"] == "traveling_wave":
            for p in ("a", "c"):
                if not isinstance(ic.get(p), (int, float)) or isinstance(ic.get(p), bool):
                    raise ConfigError(f"ic.{p}", "traveling_wave IC needs numeric 'a' and 'c'")
        else:
            raise ConfigError("ic.name", f"expected constant|traveling_wave, got {ic['name']!r}")

        boundary = raw["boundary"]
        if boundary not in ("dirichlet_exact", "dirichlet_const"):
            raise ConfigError("boundary", f"expected dirichlet_exact|dirichlet_const, got {boundary!r}")

        eq = raw.get("equivariance")
        if eq is not None:
            if not isinstance(eq, dict) or not isinstance(eq.get("v"), (int, float)) or isinstance(eq.get("v"), bool):
                raise ConfigError("equivariance.v", "expected an object with a numeric boost 'v'")
        return cls(nu, (float(interval[0]), float(interval[1])), n, dt, t_end, scheme, motion, dict(ic), boundary, stride, eq)


@dataclass
class BurgersResult:
    config: BurgersConfig
    snapshots: list
    summary: dict


def _initial_state(cfg: BurgersConfig) -> tuple[BurgersState, Callable | None]:
    x = build_uniform_mesh(cfg.interval[0], cfg.interval[1], cfg.n).nodes.copy()
    if cfg.ic["name"] == "constant":
        value = float(cfg.ic["value"])
        return BurgersState(0.0, x, np.full(x.shape, value), cfg.nu), None
    wave = TravelingWave(cfg.nu, float(cfg.ic["a"]), float(cfg.ic["c"]))
    traveling_wave(wave.nu, wave.a, wave.c, cfg.interval)
    return BurgersState(0.0, x, wave.value(x, 0.0), cfg.nu), wave


def _boundary(cfg: BurgersConfig, initial: BurgersState, wave) -> DirichletBoundary:
    # boundary nodes follow the mesh law so boosted runs stay comparable
    if cfg.boundary == "dirichlet_exact" and wave is not None:
        return DirichletBoundary(wave.value, wave.d_dt, wave.d_dx, pin_nodes=False)
    return constant_boundary(
        float(initial.values[0]), float(initial.values[-1]), cfg.interval[0], cfg.interval[1], pin_nodes=False
    )


def interior_error(state: BurgersState, wave: TravelingWave) -> float:
    x = state.nodes[1:-1]
    return float(np.max(np.abs(state.values[1:-1] - wave.value(x, state.t))))


def equivariance_drift(
    initial: BurgersState,
    scheme: Scheme,
    motion: MeshMotion,
    dt: float,
    t_end: float,
    boundary: DirichletBoundary,
    v: float,
) -> float:
    """Run, boost the result, and compare with a run from the boosted start.

    Interior nodes only. Fixed-mesh r-adaptive runs are boosted onto a mesh that
    translates with speed ``v``. The Galerkin scheme has no such option, so its
    boosted run stays on the fixed mesh and is compared by interpolation.
    """
    g = groups.BurgersElement(1.0, 0.0, 0.0, v)
    final = simulate(initial, scheme, motion, dt, t_end, boundary)[-1].boosted(g)
    if scheme is Scheme.GALERKIN:
        other = simulate(initial.boosted(g), scheme, motion, dt, t_end, boundary.boosted(v))[-1]
        xi = other.nodes[1:-1]
        inside = (xi > final.nodes[0]) & (xi < final.nodes[-1])
        ref = np.interp(xi[inside], final.nodes, final.values)
        return float(np.max(np.abs(other.values[1:-1][inside] - ref)))
    boosted_motion = MeshMotion.PRESCRIBED if motion is MeshMotion.FIXED else motion
    prescribed = (lambda s: np.full(len(s.nodes), v)) if boosted_motion is MeshMotion.PRESCRIBED else None
    other = simulate(initial.boosted(g), scheme, boosted_motion, dt, t_end, boundary.boosted(v), prescribed=prescribed)[-1]
    return float(
        max(
            np.max(np.abs(other.nodes[1:-1] - final.nodes[1:-1])),
            np.max(np.abs(other.values[1:-1] - final.values[1:-1])),
        )
    )


def run_burgers(config) -> BurgersResult:
    """Run a Burgers experiment from a config dict, a JSON path or a :class:`BurgersConfig`."""
    if isinstance(config, (str, Path)):
        try:
            raw = json.loads(Path(config).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
        cfg = BurgersConfig.from_dict(raw)
    elif isinstance(config, BurgersConfig):
        cfg = config
    else:
        cfg = BurgersConfig.from_dict(config)

    initial, wave = _initial_state(cfg)
    boundary = _boundary(cfg, initial, wave)
    snapshots = simulate(initial, cfg.scheme, cfg.motion, cfg.dt, cfg.t_end, boundary, cfg.snapshot_stride)
    final = snapshots[-1]
    summary = {
        "scheme": cfg.scheme.value,
        "motion": cfg.motion.value,
        "n": cfg.n,
        "dt": cfg.dt,
        "stability_bound": stability_bound(initial),
        "t_final": final.t,
        "n_snapshots": len(snapshots),
        "final_interior_linf_error": None,
        "equivariance_drift": None,
    }
    if wave is not None:
        summary["final_interior_linf_error"] = interior_error(final, wave)
    elif cfg.ic["name"] == "constant":
        summary["final_interior_linf_error"] = float(np.max(np.abs(final.values[1:-1] - float(cfg.ic["value"]))))
    if cfg.equivariance is not None:
        v = float(cfg.equivariance["v"])
        summary["equivariance_v"] = v
        summary["equivariance_drift"] = equivariance_drift(initial, cfg.scheme, cfg.motion, cfg.dt, cfg.t_end, boundary, v)
    return BurgersResult(cfg, snapshots, summary)


# -- output ----------------------------------------------------------------------


def format_float(v: float) -> str:
    return "%.17g" % v


def write_csv(path, header, rows) -> None:
    """CSV with a header row, 17 significant digits and LF line endings."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, (float, np.floating)) else v for v in row])
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


def write_json(path, payload) -> None:
    with open(path, "w", newline="") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_trajectory(path, snapshots) -> None:
    write_csv(path, ("t", "node", "x", "u"), trajectory_csv_rows(snapshots))


__all__ = [
    "AuditReport",
    "BurgersConfig",
    "BurgersResult",
    "ConfigError",
    "ExactSolution",
    "ExperimentError",
    "PainleveSeries",
    "ProblemId",
    "SimulationError",
    "TravelingWave",
    "boost_drift",
    "equivariance_drift",
    "exact_solution",
    "relative_linf_error",
    "run_burgers",
    "run_burgers_audit",
    "run_convergence",
    "run_invariance_audit",
    "run_painleve_error_series",
    "solve",
    "traveling_wave",
]
