"""Method-of-lines discretisations of Burgers' equation ``u_t + u u_x = nu u_xx``.

Three assemblers turn a :class:`BurgersState` into nodal rates
``(du/dt, dx/dt)``:

* :func:`assemble_galerkin_fixed` -- plain hat-function Galerkin on a fixed mesh,
* :func:`assemble_invariant_lagrangian` -- invariantized weak form with the
  mesh following the flow, ``dx/dt = u``,
* :func:`assemble_invariant_radaptive` -- invariantized moving-mesh weak form,
  valid for any mesh velocity.

Only interior rows are assembled; the two boundary rates are supplied by the
caller (see :class:`DirichletBoundary`).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .groups import BurgersElement
from .solvers import is_strictly_diagonally_dominant, solve_tridiagonal


class MeshTanglingError(RuntimeError):
    def __init__(self, index: int, t: float):
        super().__init__(f"mesh tangled between nodes {index} and {index + 1} at t={t}")
        self.index = index
        self.t = t


class MeshMotion(enum.Enum):
    FIXED = "fixed"
    LAGRANGIAN = "lagrangian"
    PRESCRIBED = "prescribed"


@dataclass(frozen=True)
class BurgersState:
    t: float
    nodes: np.ndarray
    values: np.ndarray
    nu: float

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        values = np.array(self.values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape or nodes.size < 3:
            raise ValueError("nodes and values must be 1-d arrays of equal length >= 3")
        if not self.nu > 0:
            raise ValueError(f"viscosity must be positive, got {self.nu}")
        bad = np.flatnonzero(np.diff(nodes) <= 0)
        if bad.size:
            raise MeshTanglingError(int(bad[0]), self.t)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    def boosted(self, g: BurgersElement) -> BurgersState:
        """Apply a symmetry transformation to every node and value."""
        lam = g.lam
        return BurgersState(
            lam * lam * self.t + g.b,
            lam * (self.nodes + g.v * self.t) + g.a,
            (self.values + g.v) / lam,
            self.nu,
        )


@dataclass(frozen=True)
class SemiDiscreteRhs:
    du_dt: np.ndarray
    dx_dt: np.ndarray


def _differences(state: BurgersState):
    x, u = state.nodes, state.values
    dx = np.diff(x)
    dl, dr = dx[:-1], dx[1:]
    width = x[2:] - x[:-2]
    slope = np.diff(u) / dx
    uxx = 2.0 * (slope[1:] - slope[:-1]) / width
    ux = (u[2:] - u[:-2]) / width
    return dl, dr, width, uxx, ux


def _solve_interior(lower, diag, upper, rhs, bc_rates) -> np.ndarray:
    """Solve interior rows; ``lower[0]`` and ``upper[-1]`` couple to the boundary rates."""
    if not is_strictly_diagonally_dominant(lower[1:], diag, upper[:-1]):
        raise ArithmeticError("mass matrix lost strict diagonal dominance")
    rhs = rhs.copy()
    rhs[0] -= lower[0] * bc_rates[0]
    rhs[-1] -= upper[-1] * bc_rates[1]
    du = np.empty(diag.size + 2)
    du[0], du[-1] = bc_rates
    du[1:-1] = solve_tridiagonal(lower[1:], diag, upper[:-1], rhs)
    return du


def galerkin_rows(state: BurgersState):
    """Consistent mass rows and load vector of the fixed-mesh Galerkin form."""
    u = state.values
    dl, dr, _, _, _ = _differences(state)
    um, uk, up = u[:-2], u[1:-1], u[2:]
    slope = np.diff(u) / np.diff(state.nodes)
    load = state.nu * (slope[1:] - slope[:-1]) + (
        (um * um + um * uk + uk * uk) - (uk * uk + uk * up + up * up)
    ) / 6.0
    return dl / 6.0, (dl + dr) / 3.0, dr / 6.0, load


def assemble_galerkin_fixed(state: BurgersState, bc_rates=(0.0, 0.0)) -> SemiDiscreteRhs:
    lower, diag, upper, load = galerkin_rows(state)
    du = _solve_interior(lower, diag, upper, load, bc_rates)
    return SemiDiscreteRhs(du, np.zeros_like(du))


def invariant_mass_rows(state: BurgersState):
    dl, dr, width, _, _ = _differences(state)
    return dl / (3.0 * width), np.full(dl.size, 2.0 / 3.0), dr / (3.0 * width)


def assemble_invariant_lagrangian(state: BurgersState, bc_rates=(0.0, 0.0), dx_dt=None) -> SemiDiscreteRhs:
    """Invariant scheme with the mesh law ``dx/dt = u``.

    ``dx_dt`` may override the boundary node velocities (e.g. pinned ends);
    interior rows do not depend on it.
    """
    u = state.values
    _, _, _, uxx, ux = _differences(state)
    lower, diag, upper = invariant_mass_rows(state)
    forcing = state.nu * uxx - (u[2:] - 2.0 * u[1:-1] + u[:-2]) / 3.0 * ux
    du = _solve_interior(lower, diag, upper, forcing, bc_rates)
    xdot = u.copy() if dx_dt is None else np.asarray(dx_dt, dtype=float)
    return SemiDiscreteRhs(du, xdot)


@dataclass(frozen=True)
class RadaptiveTerms:
    """Interior right-hand side of the r-adaptive scheme split into its pieces."""

    diffusion: np.ndarray  # nu u_xx
    flux: np.ndarray  # -((u_{l+1} - 2 u_l + u_{l-1})/3) u_x, from (u^d)^2/2 - u_l u^d
    invariantization: np.ndarray  # -u_l u_x, the frame's contribution on the left
    mesh_coupling: np.ndarray  # dx/dt terms moved to the right

    @property
    def total(self) -> np.ndarray:
        return self.diffusion + self.flux + self.invariantization + self.mesh_coupling


def radaptive_terms(state: BurgersState, dx_dt) -> RadaptiveTerms:
    u = state.values
    xdot = np.asarray(dx_dt, dtype=float)
    _, _, width, uxx, ux = _differences(state)
    um, uk, up = u[:-2], u[1:-1], u[2:]
    coupling = (
        (uk - um) / (3.0 * width) * xdot[:-2]
        + 2.0 / 3.0 * ux * xdot[1:-1]
        + (up - uk) / (3.0 * width) * xdot[2:]
    )
    return RadaptiveTerms(
        diffusion=state.nu * uxx,
        flux=-(up - 2.0 * uk + um) / 3.0 * ux,
        invariantization=-uk * ux,
        mesh_coupling=coupling,
    )


def mesh_velocity(state: BurgersState, motion: MeshMotion, prescribed=None) -> np.ndarray:
    if motion is MeshMotion.FIXED:
        return np.zeros_like(state.nodes)
    if motion is MeshMotion.LAGRANGIAN:
        return state.values.copy()
    if prescribed is None:
        raise ValueError("prescribed motion needs node velocities")
    v = prescribed(state) if callable(prescribed) else prescribed
    v = np.broadcast_to(np.asarray(v, dtype=float), state.nodes.shape).copy()
    return v


def assemble_invariant_radaptive(
    state: BurgersState,
    motion: MeshMotion = MeshMotion.LAGRANGIAN,
    bc_rates=(0.0, 0.0),
    dx_dt=None,
    prescribed=None,
) -> SemiDiscreteRhs:
    """Invariant moving-mesh scheme; ``dx_dt`` (if given) overrides ``motion``."""
    xdot = mesh_velocity(state, motion, prescribed) if dx_dt is None else np.asarray(dx_dt, dtype=float)
    if xdot.shape != state.nodes.shape:
        raise ValueError("mesh velocities must be given for every node")
    lower, diag, upper = invariant_mass_rows(state)
    du = _solve_interior(lower, diag, upper, radaptive_terms(state, xdot).total, bc_rates)
    return SemiDiscreteRhs(du, xdot)


# -- boundaries and time stepping ------------------------------------------------


@dataclass(frozen=True)
class DirichletBoundary:
    """Boundary data ``g(x, t)`` imposed at both end nodes.

    With ``pin_nodes`` the end nodes never move; otherwise they move with the
    mesh law of the scheme.
    """

    value: Callable[[float, float], float]
    d_dt: Callable[[float, float], float]
    d_dx: Callable[[float, float], float]
    pin_nodes: bool = True

    def rates(self, state: BurgersState, dx_dt) -> tuple[float, float]:
        x, t = state.nodes, state.t
        return tuple(
            self.d_dt(x[i], t) + dx_dt[i] * self.d_dx(x[i], t) for i in (0, -1)
        )

    def impose(self, state: BurgersState) -> BurgersState:
        values = state.values.copy()
        values[0] = self.value(state.nodes[0], state.t)
        values[-1] = self.value(state.nodes[-1], state.t)
        return replace(state, values=values)

    def boosted(self, v: float) -> DirichletBoundary:
        """Boundary data seen from a frame moving with speed ``v`` (``lam = 1``)."""
        g, gt, gx = self.value, self.d_dt, self.d_dx
        return DirichletBoundary(
            lambda x, t: g(x - v * t, t) + v,
            lambda x, t: gt(x - v * t, t) - v * gx(x - v * t, t),
            lambda x, t: gx(x - v * t, t),
            self.pin_nodes,
        )


def constant_boundary(left: float, right: float, a: float, b: float, pin_nodes: bool = True) -> DirichletBoundary:
    """Constant Dirichlet values ``left`` near ``x = a`` and ``right`` near ``x = b``."""
    mid = 0.5 * (a + b)
    return DirichletBoundary(
        lambda x, t: left if x < mid else right,
        lambda x, t: 0.0,
        lambda x, t: 0.0,
        pin_nodes,
    )


class Scheme(enum.Enum):
    GALERKIN = "galerkin"
    LAGRANGIAN = "lagrangian"
    RADAPTIVE = "radaptive"


def make_rhs(
    scheme: Scheme,
    motion: MeshMotion = MeshMotion.FIXED,
    boundary: DirichletBoundary | None = None,
    prescribed=None,
) -> Callable[[BurgersState], SemiDiscreteRhs]:
    """Close over scheme, mesh law and boundary to get ``state -> rates``."""
    if scheme is Scheme.GALERKIN and motion is not MeshMotion.FIXED:
        raise ValueError("the Galerkin scheme lives on a fixed mesh")
    if scheme is Scheme.LAGRANGIAN and motion is not MeshMotion.LAGRANGIAN:
        raise ValueError("the Lagrangian scheme needs Lagrangian motion")

    def rhs(state: BurgersState) -> SemiDiscreteRhs:
        xdot = mesh_velocity(state, motion, prescribed)
        if boundary is not None and boundary.pin_nodes:
            xdot[0] = xdot[-1] = 0.0
        rates = boundary.rates(state, xdot) if boundary is not None else (0.0, 0.0)
        if scheme is Scheme.GALERKIN:
            return assemble_galerkin_fixed(state, rates)
        if scheme is Scheme.LAGRANGIAN:
            return assemble_invariant_lagrangian(state, rates, dx_dt=xdot)
        return assemble_invariant_radaptive(state, bc_rates=rates, dx_dt=xdot)

    return rhs


def rk4_step(
    state: BurgersState,
    dt: float,
    assembler: Callable[[BurgersState], SemiDiscreteRhs],
    boundary: DirichletBoundary | None = None,
) -> BurgersState:
    """Classical RK4 on the coupled node/value system."""
    if not dt > 0:
        raise ValueError(f"time step must be positive, got {dt}")
    t, x, u, nu = state.t, state.nodes, state.values, state.nu

    def stage(xs, us, ts):
        bad = np.flatnonzero(np.diff(xs) <= 0)
        if bad.size:
            raise MeshTanglingError(int(bad[0]), ts)
        return assembler(BurgersState(ts, xs, us, nu))

    k1 = stage(x, u, t)
    k2 = stage(x + 0.5 * dt * k1.dx_dt, u + 0.5 * dt * k1.du_dt, t + 0.5 * dt)
    k3 = stage(x + 0.5 * dt * k2.dx_dt, u + 0.5 * dt * k2.du_dt, t + 0.5 * dt)
    k4 = stage(x + dt * k3.dx_dt, u + dt * k3.du_dt, t + dt)
    x_new = x + dt / 6.0 * (k1.dx_dt + 2.0 * k2.dx_dt + 2.0 * k3.dx_dt + k4.dx_dt)
    u_new = u + dt / 6.0 * (k1.du_dt + 2.0 * k2.du_dt + 2.0 * k3.du_dt + k4.du_dt)
    bad = np.flatnonzero(np.diff(x_new) <= 0)
    if bad.size:
        raise MeshTanglingError(int(bad[0]), t + dt)
    new = BurgersState(t + dt, x_new, u_new, nu)
    if boundary is not None:
        new = boundary.impose(new)
    return new


class SimulationError(RuntimeError):
    def __init__(self, step: int, t: float, cause: Exception):
        super().__init__(f"step {step} (t={t}) failed: {cause}")
        self.step = step
        self.t = t
        self.cause = cause


def stability_bound(state: BurgersState) -> float:
    """Advisory explicit RK4 step bound ``0.2 min(dx)^2 / nu``.

    The consistent mass matrix puts the largest diffusion eigenvalue near
    ``12 nu / dx^2``; RK4 is stable up to about ``2.78 / 12``.
    """
    return 0.2 * float(np.min(np.diff(state.nodes))) ** 2 / state.nu


def simulate(
    initial: BurgersState,
    scheme: Scheme,
    motion: MeshMotion,
    dt: float,
    t_end: float,
    boundary: DirichletBoundary | None = None,
    snapshot_stride: int = 1,
    prescribed=None,
) -> list[BurgersState]:
    """Step with RK4 until ``t_end``; returns the initial state and every
    ``snapshot_stride``-th state plus the final one."""
    if not dt > 0 or not t_end >= initial.t:
        raise ValueError("need dt > 0 and t_end >= t0")
    rhs = make_rhs(scheme, motion, boundary, prescribed)
    n_steps = max(1, int(math.ceil((t_end - initial.t) / dt - 1e-9)))
    step_dt = (t_end - initial.t) / n_steps
    state = boundary.impose(initial) if boundary is not None else initial
    snapshots = [state]
    for n in range(1, n_steps + 1):
        try:
            state = rk4_step(state, step_dt, rhs, boundary)
        except (MeshTanglingError, ArithmeticError, ValueError) as exc:
            raise SimulationError(n, state.t, exc) from exc
        if n % snapshot_stride == 0 or n == n_steps:
            snapshots.append(state)
    return snapshots


def trajectory_csv_rows(snapshots):
    for s in snapshots:
        for ell, (x, u) in enumerate(zip(s.nodes, s.values)):
            yield s.t, ell, x, u
