"""Three-point finite element schemes for second-order ODEs and the IVP marcher.

Every residual is a function of a :class:`~symfem.mesh.DiscreteJet` and is
written as the scheme's displayed equation moved to one side (left minus
right), so a discrete solution makes it vanish at every interior node.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from .frames import frame_superposition, painleve_invariants
from .mesh import DiscreteJet, Mesh, stencil_quantities
from .solvers import NewtonConfig, NewtonError, newton_scalar


class SchemeId(enum.Enum):
    EXP_INVARIANT = "exp-invariant"
    CUBIC_INVARIANT = "cubic-invariant"
    CUBIC_ALTERNATIVE = "cubic-alternative"
    PAINLEVE_INVARIANT = "painleve-invariant"
    PAINLEVE_NONINVARIANT = "painleve-noninvariant"
    LINEAR_INVARIANT = "linear-invariant"


class StartUp(enum.Enum):
    """How the second node ``u_1`` is obtained from ``u(x_0)`` and ``u_x(x_0)``.

    ``FORWARD``      ``(u_1 - u_0)/h = u_x(x_0)``
    ``LOG_FORWARD``  ``(ln u_1 - ln u_0)/h = u_x(x_0)/u(x_0)``
    ``TAYLOR2``      ``u_0 + h u_x + h^2/2 u_xx`` with ``u_xx`` from the ODE
    ``ODE``          integrate the ODE accurately across the first element
    """

    FORWARD = "forward"
    LOG_FORWARD = "log-forward"
    TAYLOR2 = "taylor2"
    ODE = "ode"


class MarchError(RuntimeError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"march failed computing node {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class LinearProblem:
    """``u_xx + p(x) u_x + q(x) u = f(x)`` with two homogeneous solutions."""

    p_fn: Callable[[float], float]
    q_fn: Callable[[float], float]
    f_fn: Callable[[float], float]
    alpha_fn: Callable[[float], float]
    gamma_fn: Callable[[float], float]


def _zero(x):
    return 0.0


def oscillator_problem() -> LinearProblem:
    """``u_xx - u = 0`` with ``alpha = e^x`` and ``gamma = e^-x``."""
    return LinearProblem(_zero, lambda x: -1.0, _zero, math.exp, lambda x: math.exp(-x))


# -- residuals -----------------------------------------------------------------


def residual_exp(jet: DiscreteJet) -> float:
    s = stencil_quantities(jet)
    return (
        (s.dx_right + s.dx_left) * s.uxx
        - s.dx_left * math.exp(-s.ux_left)
        - s.dx_right * math.exp(-s.ux_right)
    )


def _check_nonzero(jet: DiscreteJet) -> None:
    if 0.0 in jet.us:
        raise ValueError(f"scheme needs nonzero data, got {jet.us}")


def residual_cubic_invariant(jet: DiscreteJet) -> float:
    _check_nonzero(jet)
    s = stencil_quantities(jet)
    bp, bk, bn = ((x - s.x_bar) * s.ux_centered + s.u_bar for x in jet.xs)
    if min(abs(bp), abs(bk), abs(bn)) == 0.0:
        raise ValueError("degenerate SL(2) bracket in the cubic scheme")
    up, uk, un = jet.us
    return (
        -s.ux_right
        + s.ux_left
        + s.dx_left * bp**2 / (6.0 * up**3 * bk**2)
        + (jet.x_next - jet.x_prev) * bk**2 / (3.0 * uk**3 * bn * bp)
        + s.dx_right * bn**2 / (6.0 * un**3 * bk**2)
    )


def residual_cubic_alt(jet: DiscreteJet) -> float:
    _check_nonzero(jet)
    s = stencil_quantities(jet)
    up, uk, un = jet.us
    return (
        s.ux_right
        - s.ux_left
        - s.dx_right / (2.0 * uk**2 * un)
        - s.dx_left / (2.0 * uk**2 * up)
    )


def _check_positive(jet: DiscreteJet) -> None:
    if min(jet.us) <= 0.0:
        raise ValueError(f"Painleve schemes need positive data, got {jet.us}")


def residual_painleve_noninv(jet: DiscreteJet) -> float:
    _check_positive(jet)
    s = stencil_quantities(jet)
    up, uk, un = jet.us
    return (
        -2.0 * (s.ux_right - s.ux_left)
        + up / s.dx_left * math.log(up / uk)
        + un / s.dx_right * math.log(un / uk)
    )


def residual_painleve_inv(jet: DiscreteJet) -> float:
    inv = painleve_invariants(jet)
    i, j = inv.i_k, inv.j_k
    dl = jet.x_mid - jet.x_prev
    dr = jet.x_next - jet.x_mid
    return -2.0 * ((i - 1.0) / dr - (1.0 - j) / dl) + j * math.log(j) / dl + i * math.log(i) / dr


def _product_integral(length: float, factors) -> float:
    """Exact integral over an element of a product of linear factors.

    Each factor is given by its (left, right) endpoint values. Uses
    ``int_0^1 (1-s)^i s^j ds = i! j! / (i+j+1)!``.
    """
    n = len(factors)
    total = 0.0
    for m in range(n + 1):
        weight = math.factorial(m) * math.factorial(n - m) / math.factorial(n + 1)
        for right in combinations(range(n), m):
            term = 1.0
            for idx, (a, b) in enumerate(factors):
                term *= b if idx in right else a
            total += weight * term
    return length * total


def _weak_form_row(xs, ws, ps, qs, fs=None) -> float:
    """``int [-w_x phi_k' + (p w_x + q w - f) phi_k] dx`` with interpolated coefficients."""
    total = 0.0
    for e, hat in ((0, (0.0, 1.0)), (1, (1.0, 0.0))):
        length = xs[e + 1] - xs[e]
        slope = (ws[e + 1] - ws[e]) / length
        dphi = (hat[1] - hat[0]) / length
        w_end = (ws[e], ws[e + 1])
        p_end = (ps[e], ps[e + 1])
        q_end = (qs[e], qs[e + 1])
        total += -slope * dphi * length
        total += slope * _product_integral(length, [p_end, hat])
        total += _product_integral(length, [q_end, w_end, hat])
        if fs is not None:
            total -= _product_integral(length, [(fs[e], fs[e + 1]), hat])
    return total


def _coefficients(jet: DiscreteJet, problem: LinearProblem):
    xs = jet.xs
    ps = [problem.p_fn(x) for x in xs]
    qs = [problem.q_fn(x) for x in xs]
    fs = [problem.f_fn(x) for x in xs]
    return xs, ps, qs, fs


def residual_linear_weak_form(jet: DiscreteJet, problem: LinearProblem) -> float:
    """The plain (non-invariant) discrete weak form of the linear ODE at node ``k``."""
    xs, ps, qs, fs = _coefficients(jet, problem)
    return _weak_form_row(xs, jet.us, ps, qs, fs)


def residual_linear_invariant(jet: DiscreteJet, problem: LinearProblem) -> float:
    """Discrete weak form invariantized with the superposition frame.

    ``p``, ``q`` and ``f`` enter through their nodal piecewise-linear
    interpolants so that every element integral is evaluated exactly.
    """
    xs, ps, qs, fs = _coefficients(jet, problem)
    frame = frame_superposition(jet, problem.alpha_fn, problem.gamma_fn)
    alphas = [problem.alpha_fn(x) for x in xs]
    gammas = [problem.gamma_fn(x) for x in xs]
    return (
        _weak_form_row(xs, jet.us, ps, qs, fs)
        + frame.eps1 * _weak_form_row(xs, alphas, ps, qs)
        + frame.eps2 * _weak_form_row(xs, gammas, ps, qs)
    )


# -- derivatives in u_{k+1} for the Newton march ---------------------------------


def _d_exp(jet: DiscreteJet) -> float:
    s = stencil_quantities(jet)
    return 2.0 / s.dx_right + math.exp(-s.ux_right)


def _d_cubic_alt(jet: DiscreteJet) -> float:
    dr = jet.x_next - jet.x_mid
    return 1.0 / dr + dr / (2.0 * jet.u_mid**2 * jet.u_next**2)


def _d_painleve_noninv(jet: DiscreteJet) -> float:
    dr = jet.x_next - jet.x_mid
    return (math.log(jet.u_next / jet.u_mid) - 1.0) / dr


def _d_painleve_inv(jet: DiscreteJet) -> float:
    inv = painleve_invariants(jet)
    dl = jet.x_mid - jet.x_prev
    dr = jet.x_next - jet.x_mid
    # both invariants scale like u_{k+1}^theta with theta = dl/(x_{k+1}-x_{k-1})
    theta = dl / (jet.x_next - jet.x_prev)
    di = inv.i_k * theta / jet.u_next
    dj = inv.j_k * theta / jet.u_next
    return di * (math.log(inv.i_k) - 1.0) / dr + dj * (math.log(inv.j_k) - 1.0) / dl


def _central_difference(residual, jet: DiscreteJet) -> float:
    h = 1e-7 * max(1.0, abs(jet.u_next))
    return (residual(jet.with_next(jet.u_next + h)) - residual(jet.with_next(jet.u_next - h))) / (2.0 * h)


@dataclass(frozen=True)
class _SchemeInfo:
    residual: Callable
    derivative: Callable | None
    rhs: Callable  # strong form u_xx = rhs(x, u, u_x)
    start: StartUp
    positive: bool = False
    nonzero: bool = False


_SCHEMES: dict[SchemeId, _SchemeInfo] = {
    SchemeId.EXP_INVARIANT: _SchemeInfo(residual_exp, _d_exp, lambda x, u, ux: math.exp(-ux), StartUp.FORWARD),
    SchemeId.CUBIC_INVARIANT: _SchemeInfo(
        residual_cubic_invariant, None, lambda x, u, ux: u**-3, StartUp.FORWARD, nonzero=True
    ),
    SchemeId.CUBIC_ALTERNATIVE: _SchemeInfo(
        residual_cubic_alt, _d_cubic_alt, lambda x, u, ux: u**-3, StartUp.FORWARD, nonzero=True
    ),
    SchemeId.PAINLEVE_INVARIANT: _SchemeInfo(
        residual_painleve_inv, _d_painleve_inv, lambda x, u, ux: ux * ux / u, StartUp.LOG_FORWARD, positive=True
    ),
    SchemeId.PAINLEVE_NONINVARIANT: _SchemeInfo(
        residual_painleve_noninv, _d_painleve_noninv, lambda x, u, ux: ux * ux / u, StartUp.LOG_FORWARD, positive=True
    ),
}


def default_start(scheme: SchemeId) -> StartUp:
    if scheme is SchemeId.LINEAR_INVARIANT:
        return StartUp.ODE
    return _SCHEMES[scheme].start


def residual_for(scheme: SchemeId, problem: LinearProblem | None = None) -> Callable[[DiscreteJet], float]:
    if scheme is SchemeId.LINEAR_INVARIANT:
        if problem is None:
            raise ValueError("the linear scheme needs a LinearProblem")
        return lambda jet: residual_linear_invariant(jet, problem)
    return _SCHEMES[scheme].residual


def strong_rhs(scheme: SchemeId, problem: LinearProblem | None = None) -> Callable[[float, float, float], float]:
    if scheme is SchemeId.LINEAR_INVARIANT:
        if problem is None:
            raise ValueError("the linear scheme needs a LinearProblem")
        return lambda x, u, ux: problem.f_fn(x) - problem.p_fn(x) * ux - problem.q_fn(x) * u
    return _SCHEMES[scheme].rhs


def _derivative_for(scheme: SchemeId, residual) -> Callable[[DiscreteJet], float]:
    if scheme is SchemeId.LINEAR_INVARIANT:
        # the invariant linear scheme is affine in u_{k+1}
        return lambda jet: residual(jet.with_next(jet.u_next + 1.0)) - residual(jet)
    d = _SCHEMES[scheme].derivative
    if d is None:
        return lambda jet: _central_difference(residual, jet)
    return d


def bootstrap(start: StartUp, rhs, x0: float, x1: float, u0: float, ux0: float) -> float:
    h = x1 - x0
    if start is StartUp.FORWARD:
        return u0 + h * ux0
    if start is StartUp.LOG_FORWARD:
        if not u0 > 0:
            raise ValueError("logarithmic start needs u(x_0) > 0")
        return u0 * math.exp(h * ux0 / u0)
    if start is StartUp.TAYLOR2:
        return u0 + h * ux0 + 0.5 * h * h * rhs(x0, u0, ux0)
    if start is StartUp.ODE:
        sol = solve_ivp(
            lambda x, y: [y[1], rhs(x, y[0], y[1])],
            (x0, x1),
            [u0, ux0],
            method="DOP853",
            rtol=3e-14,
            atol=1e-15,
        )
        if not sol.success:
            raise MarchError(1, f"start-up integration failed: {sol.message}")
        return float(sol.y[0, -1])
    raise ValueError(f"unknown start-up {start!r}")


def march_ivp(
    scheme: SchemeId,
    mesh: Mesh,
    u0: float,
    ux0: float,
    problem: LinearProblem | None = None,
    start: StartUp | None = None,
    cfg: NewtonConfig = NewtonConfig(),
) -> np.ndarray:
    """March a three-point scheme from the left end of ``mesh``.

    ``u_{k+1}`` is the Newton root of the residual at node ``k`` with
    ``u_{k-1}`` and ``u_k`` frozen. Returns the nodal values.
    """
    if not isinstance(mesh, Mesh):
        mesh = Mesh(mesh)
    x = mesh.nodes
    n = len(mesh)
    residual = residual_for(scheme, problem)
    derivative = _derivative_for(scheme, residual)
    info = _SCHEMES.get(scheme)
    start = default_start(scheme) if start is None else start

    u = np.empty(n)
    u[0] = u0
    try:
        u[1] = bootstrap(start, strong_rhs(scheme, problem), x[0], x[1], u0, ux0)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise MarchError(1, str(exc)) from exc
    for k in range(1, n - 1):
        base = mesh.jet(k, u) if k + 1 < n else None
        dl, dr = x[k] - x[k - 1], x[k + 1] - x[k]
        guess = u[k] + (u[k] - u[k - 1]) * dr / dl
        if info is not None and info.positive and guess <= 0:
            guess = 0.5 * u[k]

        def f(v):
            return residual(base.with_next(v))

        def df(v):
            return derivative(base.with_next(v))

        try:
            u[k + 1] = newton_scalar(f, df, guess, cfg)
        except (NewtonError, ValueError, ZeroDivisionError, OverflowError) as exc:
            raise MarchError(k + 1, str(exc)) from exc
        if info is not None and info.positive and not u[k + 1] > 0:
            raise MarchError(k + 1, f"solution left the positive half-line ({u[k + 1]})")
        if info is not None and info.nonzero and u[k + 1] == 0:
            raise MarchError(k + 1, "solution hit zero")
    return u
