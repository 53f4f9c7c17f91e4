"""Lie group actions used by the schemes.

Five concrete groups appear:

* :class:`Sl2Element` -- fractional linear maps ``X = (a x + b)/(c x + d)`` with
  ``U = u/(c x + d)`` (symmetries of ``u_xx = u^-3``),
* :class:`ExpGroupElement` -- ``X = e^eps x + a``, ``U = e^eps u + eps e^eps x + b``
  (symmetries of ``u_xx = exp(-u_x)``),
* :class:`SuperpositionElement` -- ``U = u + eps1 alpha(x) + eps2 gamma(x)``
  (linear superposition),
* :class:`PainleveElement` -- ``U = u e^{a x + b}``,
* :class:`BurgersElement` -- ``X = lam (x + v t) + a``, ``T = lam^2 t + b``,
  ``U = (u + v)/lam``.

``compose(g, h)`` is the element acting as ``g`` after ``h``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .mesh import DiscreteJet, Mesh, hat_deriv, hat_eval

POLE_TOL = 1e-14


class PoleError(ValueError):
    """A fractional linear map was evaluated at (or next to) its pole."""


class OrderingError(ValueError):
    """A group element folded a stencil so that the nodes are no longer ordered."""


@dataclass(frozen=True)
class Sl2Element:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        det = self.alpha * self.delta - self.beta * self.gamma
        if not det > 0:
            raise ValueError(f"SL(2) element needs a positive determinant, got {det}")
        if det != 1.0:
            s = 1.0 / math.sqrt(det)
            for name in ("alpha", "beta", "gamma", "delta"):
                object.__setattr__(self, name, getattr(self, name) * s)

    @classmethod
    def identity(cls) -> Sl2Element:
        return cls(1.0, 0.0, 0.0, 1.0)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]])

    def denominator(self, x: float) -> float:
        d = self.gamma * x + self.delta
        if abs(d) < POLE_TOL:
            raise PoleError(f"pole of the fractional linear map at x={x}")
        return d

    def act_x(self, x: float) -> float:
        return (self.alpha * x + self.beta) / self.denominator(x)

    def act(self, x: float, u: float) -> tuple[float, float]:
        d = self.denominator(x)
        return (self.alpha * x + self.beta) / d, u / d

    def compose(self, other: Sl2Element) -> Sl2Element:
        m = self.matrix @ other.matrix
        return Sl2Element(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    def inverse(self) -> Sl2Element:
        return Sl2Element(self.delta, -self.beta, -self.gamma, self.alpha)


@dataclass(frozen=True)
class ExpGroupElement:
    eps: float
    a: float
    b: float

    @classmethod
    def identity(cls) -> ExpGroupElement:
        return cls(0.0, 0.0, 0.0)

    def act_x(self, x: float) -> float:
        return math.exp(self.eps) * x + self.a

    def act(self, x: float, u: float) -> tuple[float, float]:
        s = math.exp(self.eps)
        return s * x + self.a, s * u + self.eps * s * x + self.b

    def compose(self, other: ExpGroupElement) -> ExpGroupElement:
        s = math.exp(self.eps)
        return ExpGroupElement(
            self.eps + other.eps,
            self.a + s * other.a,
            self.b + s * (other.b + self.eps * other.a),
        )

    def inverse(self) -> ExpGroupElement:
        s = math.exp(-self.eps)
        return ExpGroupElement(-self.eps, -s * self.a, -s * (self.b - self.eps * self.a))


@dataclass(frozen=True)
class SuperpositionElement:
    eps1: float
    eps2: float
    alpha_fn: Callable[[float], float]
    gamma_fn: Callable[[float], float]

    def act_x(self, x: float) -> float:
        return x

    def act(self, x: float, u: float) -> tuple[float, float]:
        return x, u + self.eps1 * self.alpha_fn(x) + self.eps2 * self.gamma_fn(x)

    def _check_same(self, other: SuperpositionElement) -> None:
        if other.alpha_fn is not self.alpha_fn or other.gamma_fn is not self.gamma_fn:
            raise ValueError("superposition elements built on different homogeneous solutions")

    def compose(self, other: SuperpositionElement) -> SuperpositionElement:
        self._check_same(other)
        return SuperpositionElement(self.eps1 + other.eps1, self.eps2 + other.eps2, self.alpha_fn, self.gamma_fn)

    def inverse(self) -> SuperpositionElement:
        return SuperpositionElement(-self.eps1, -self.eps2, self.alpha_fn, self.gamma_fn)


@dataclass(frozen=True)
class PainleveElement:
    a: float
    b: float

    @classmethod
    def identity(cls) -> PainleveElement:
        return cls(0.0, 0.0)

    def act_x(self, x: float) -> float:
        return x

    def act(self, x: float, u: float) -> tuple[float, float]:
        return x, u * math.exp(self.a * x + self.b)

    def compose(self, other: PainleveElement) -> PainleveElement:
        return PainleveElement(self.a + other.a, self.b + other.b)

    def inverse(self) -> PainleveElement:
        return PainleveElement(-self.a, -self.b)


@dataclass(frozen=True)
class BurgersElement:
    lam: float
    a: float
    b: float
    v: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"Burgers scaling must be positive, got {self.lam}")

    @classmethod
    def identity(cls) -> BurgersElement:
        return cls(1.0, 0.0, 0.0, 0.0)

    def act(self, x: float, t: float, u: float) -> tuple[float, float, float]:
        lam = self.lam
        return lam * (x + self.v * t) + self.a, lam * lam * t + self.b, (u + self.v) / lam

    def act_x(self, x: float, t: float = 0.0) -> float:
        return self.lam * (x + self.v * t) + self.a

    def compose(self, other: BurgersElement) -> BurgersElement:
        l1, l2 = self.lam, other.lam
        return BurgersElement(
            l1 * l2,
            self.a + l1 * other.a + l1 * self.v * other.b,
            self.b + l1 * l1 * other.b,
            other.v + l2 * self.v,
        )

    def inverse(self) -> BurgersElement:
        lam = self.lam
        b = -self.b / lam**2
        return BurgersElement(1.0 / lam, -(self.a + lam * self.v * b) / lam, b, -self.v / lam)


GroupElement = Union[Sl2Element, ExpGroupElement, SuperpositionElement, PainleveElement, BurgersElement]


def act_point(g: GroupElement, point):
    """Transform ``(x, u)`` (or ``(x, t, u)`` for Burgers elements)."""
    return g.act(*point)


def act_jet(g: GroupElement, jet: DiscreteJet, t: float = 0.0) -> DiscreteJet:
    """Product action on the three stencil points; ``k`` is left unchanged.

    ``t`` is only used by :class:`BurgersElement`, whose action mixes in time.
    """
    if isinstance(g, BurgersElement):
        pts = [g.act(x, t, u) for x, u in zip(jet.xs, jet.us)]
        pts = [(p[0], p[2]) for p in pts]
    else:
        pts = [g.act(x, u) for x, u in zip(jet.xs, jet.us)]
    xs = [p[0] for p in pts]
    if not xs[0] < xs[1] < xs[2]:
        raise OrderingError(f"transformed stencil lost its ordering: {xs}")
    return DiscreteJet.from_points(xs, [p[1] for p in pts], jet.k)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    if type(g) is not type(h):
        raise TypeError(f"cannot compose {type(g).__name__} with {type(h).__name__}")
    return g.compose(h)


def inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


def sl2_transform_hat(g: Sl2Element, mesh: Mesh, k: int, x: float) -> float:
    """Transformed hat ``Phi_k(X) = phi_k(x) (gamma x_k + delta)/(gamma x + delta)``."""
    return hat_eval(mesh, k, x) * g.denominator(mesh.nodes[k]) / g.denominator(x)


def sl2_transform_hat_deriv(g: Sl2Element, mesh: Mesh, k: int, x: float) -> float:
    """``dPhi_k/dX`` at ``X = g.x``, expressed through the original hat."""
    d = g.denominator(x)
    return g.denominator(mesh.nodes[k]) * (d * hat_deriv(mesh, k, x) - g.gamma * hat_eval(mesh, k, x))


def sl2_form_factor(g: Sl2Element, x: float) -> float:
    """Density of ``g . dx`` against ``dx``, i.e. ``dX/dx = (gamma x + delta)^-2``."""
    return 1.0 / g.denominator(x) ** 2


# -- random near-identity elements (tests and invariance audits) ---------------


def random_sl2(rng: np.random.Generator, scale: float = 0.3) -> Sl2Element:
    alpha = 1.0 + rng.uniform(-scale, scale)
    beta, gamma = rng.uniform(-scale, scale, size=2)
    return Sl2Element(alpha, beta, gamma, (1.0 + beta * gamma) / alpha)


def random_exp(rng: np.random.Generator, scale: float = 0.3) -> ExpGroupElement:
    return ExpGroupElement(*rng.uniform(-scale, scale, size=3))


def random_painleve(rng: np.random.Generator, scale: float = 0.3) -> PainleveElement:
    return PainleveElement(*rng.uniform(-scale, scale, size=2))


def random_superposition(rng: np.random.Generator, alpha_fn, gamma_fn, scale: float = 0.3) -> SuperpositionElement:
    e1, e2 = rng.uniform(-scale, scale, size=2)
    return SuperpositionElement(e1, e2, alpha_fn, gamma_fn)


def random_burgers(rng: np.random.Generator, scale: float = 0.3) -> BurgersElement:
    a, b, v = rng.uniform(-scale, scale, size=3)
    return BurgersElement(rng.uniform(0.75, 1.3), a, b, v)
