"""Closed-form discrete moving frames and the invariants they produce.

Each frame maps a discrete jet to the group element that sends it onto a
cross-section:

=====================  ==========================================
frame                  cross-section
=====================  ==========================================
``frame_sl2_cubic``    ``x_k = 0, u_k = 1, u_x^k = 0``
``frame_superposition````u_k = 0, u_x^k = 0``
``frame_painleve``     ``u_k = 1, u_x^k = 0``
``frame_burgers``      ``x = t = u = 0, u_x = 1``
=====================  ==========================================

where ``u_x^k`` is always the centred slope across the stencil.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groups import BurgersElement, PainleveElement, Sl2Element, SuperpositionElement
from .mesh import DiscreteJet, Mesh, hat_eval, stencil_quantities

DEGENERATE_TOL = 1e-12


class FrameError(ValueError):
    """The cross-section is not reachable from this jet."""


def _sl2_bracket(jet: DiscreteJet, x: float) -> float:
    # (x - x_bar) u_x^k + u_bar; vanishes where the normalised map has its pole
    s = stencil_quantities(jet)
    return (x - s.x_bar) * s.ux_centered + s.u_bar


def frame_sl2_cubic(jet: DiscreteJet) -> Sl2Element:
    if abs(jet.u_mid) < DEGENERATE_TOL:
        raise FrameError("SL(2) frame needs u_k != 0")
    s = stencil_quantities(jet)
    den = (jet.x_mid - s.x_bar) * s.ux_centered + s.u_bar
    if abs(den) < DEGENERATE_TOL:
        raise FrameError("SL(2) cross-section is not transverse at this jet")
    u = jet.u_mid
    return Sl2Element(
        1.0 / u,
        -jet.x_mid / u,
        u * s.ux_centered / den,
        u * (s.u_bar - s.x_bar * s.ux_centered) / den,
    )


def frame_superposition(jet: DiscreteJet, alpha_fn, gamma_fn) -> SuperpositionElement:
    xs = jet.xs
    a_prev, a_k, a_next = (alpha_fn(x) for x in xs)
    g_prev, g_k, g_next = (gamma_fn(x) for x in xs)
    width = jet.x_next - jet.x_prev
    ax = (a_next - a_prev) / width
    gx = (g_next - g_prev) / width
    ux = (jet.u_next - jet.u_prev) / width
    w = g_k * ax - a_k * gx
    if abs(w) < DEGENERATE_TOL:
        raise FrameError(f"discrete Wronskian vanishes ({w:.3e})")
    u = jet.u_mid
    return SuperpositionElement((u * gx - g_k * ux) / w, (a_k * ux - u * ax) / w, alpha_fn, gamma_fn)


def _check_positive(jet: DiscreteJet) -> None:
    if min(jet.us) <= 0:
        raise FrameError(f"Painleve frame needs positive data, got {jet.us}")


def frame_painleve(jet: DiscreteJet) -> PainleveElement:
    _check_positive(jet)
    width = jet.x_next - jet.x_prev
    log_ratio = math.log(jet.u_next / jet.u_prev)
    return PainleveElement(-log_ratio / width, jet.x_mid * log_ratio / width - math.log(jet.u_mid))


def frame_burgers(x_k: float, u_k: float, ux_k: float, t: float) -> BurgersElement:
    if not ux_k > 0:
        raise FrameError(f"Burgers frame needs a positive centred slope, got {ux_k}")
    lam = math.sqrt(ux_k)
    return BurgersElement(lam, -lam * (x_k - t * u_k), -t * ux_k, -u_k)


def invariantize_u(jet: DiscreteJet, x_l: float, u_l: float) -> float:
    """Invariant ``iota_k(u_l)`` of the SL(2) action, in closed form."""
    num = _sl2_bracket(jet, jet.x_mid)
    den = jet.u_mid * _sl2_bracket(jet, x_l)
    if abs(den) < DEGENERATE_TOL or abs(num) < DEGENERATE_TOL:
        raise FrameError("degenerate SL(2) invariantization")
    return u_l * num / den


def invariantize_hat(jet: DiscreteJet, mesh: Mesh, ell: int, x: float) -> float:
    """``iota_k(phi_l)(x)`` for the SL(2) frame at ``jet``."""
    return hat_eval(mesh, ell, x) * _sl2_bracket(jet, mesh.nodes[ell]) / _sl2_bracket(jet, x)


def invariantize_dx(jet: DiscreteJet, x: float) -> float:
    """Density of the invariant one-form ``iota_k(dx)`` against ``dx``."""
    return (_sl2_bracket(jet, jet.x_mid) / (jet.u_mid * _sl2_bracket(jet, x))) ** 2


@dataclass(frozen=True)
class PainleveInvariants:
    i_k: float
    j_k: float


def painleve_invariants(jet: DiscreteJet) -> PainleveInvariants:
    """Normalised neighbours ``I_k = iota_k(u_{k+1})`` and ``J_k = iota_k(u_{k-1})``."""
    _check_positive(jet)
    width = jet.x_next - jet.x_prev
    log_ratio = math.log(jet.u_next / jet.u_prev)
    i_k = jet.u_next / jet.u_mid * math.exp(-(jet.x_next - jet.x_mid) / width * log_ratio)
    j_k = jet.u_prev / jet.u_mid * math.exp((jet.x_mid - jet.x_prev) / width * log_ratio)
    return PainleveInvariants(i_k, j_k)
