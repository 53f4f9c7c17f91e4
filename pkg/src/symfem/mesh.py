"""Meshes, second-order discrete jets, stencil quantities and hat functions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Mesh:
    """Strictly increasing node coordinates ``x_0 < x_1 < ... < x_N``."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        nodes.setflags(write=False)
        if nodes.ndim != 1 or nodes.size < 3:
            raise ValueError("a mesh needs at least 3 nodes")
        if not np.all(np.isfinite(nodes)):
            raise ValueError("mesh nodes must be finite")
        if np.any(np.diff(nodes) <= 0):
            raise ValueError("mesh nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)

    def __len__(self) -> int:
        return self.nodes.size

    @property
    def spacing(self) -> np.ndarray:
        return np.diff(self.nodes)

    def jet(self, k: int, values) -> DiscreteJet:
        """Discrete jet centred at interior node ``k`` for nodal ``values``."""
        if not 1 <= k <= len(self) - 2:
            raise IndexError(f"node {k} is not interior")
        x, u = self.nodes, values
        return DiscreteJet(k, x[k - 1], x[k], x[k + 1], float(u[k - 1]), float(u[k]), float(u[k + 1]))


@dataclass(frozen=True)
class DiscreteJet:
    """The stencil ``(k, x_{k-1}, u_{k-1}, x_k, u_k, x_{k+1}, u_{k+1})``."""

    k: int
    x_prev: float
    x_mid: float
    x_next: float
    u_prev: float
    u_mid: float
    u_next: float

    def __post_init__(self):
        if not (self.x_prev < self.x_mid < self.x_next):
            raise ValueError(
                f"jet nodes not ordered: {self.x_prev}, {self.x_mid}, {self.x_next}"
            )

    @property
    def xs(self) -> tuple[float, float, float]:
        return (self.x_prev, self.x_mid, self.x_next)

    @property
    def us(self) -> tuple[float, float, float]:
        return (self.u_prev, self.u_mid, self.u_next)

    @classmethod
    def from_points(cls, xs, us, k: int = 0) -> DiscreteJet:
        return cls(k, float(xs[0]), float(xs[1]), float(xs[2]), float(us[0]), float(us[1]), float(us[2]))

    def with_next(self, u_next: float) -> DiscreteJet:
        return DiscreteJet(self.k, self.x_prev, self.x_mid, self.x_next, self.u_prev, self.u_mid, u_next)


@dataclass(frozen=True)
class StencilQuantities:
    dx_left: float
    dx_right: float
    ux_left: float
    ux_right: float
    ux_centered: float
    uxx: float
    x_bar: float
    u_bar: float


def build_uniform_mesh(a: float, b: float, n_elements: int) -> Mesh:
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if int(n_elements) != n_elements or n_elements < 2:
        raise ValueError(f"need at least 2 elements, got {n_elements}")
    return Mesh(np.linspace(a, b, int(n_elements) + 1))


def stencil_quantities(jet: DiscreteJet) -> StencilQuantities:
    dx_left = jet.x_mid - jet.x_prev
    dx_right = jet.x_next - jet.x_mid
    width = jet.x_next - jet.x_prev
    ux_left = (jet.u_mid - jet.u_prev) / dx_left
    ux_right = (jet.u_next - jet.u_mid) / dx_right
    return StencilQuantities(
        dx_left=dx_left,
        dx_right=dx_right,
        ux_left=ux_left,
        ux_right=ux_right,
        ux_centered=(jet.u_next - jet.u_prev) / width,
        uxx=2.0 * (ux_right - ux_left) / width,
        x_bar=0.5 * (jet.x_next + jet.x_prev),
        u_bar=0.5 * (jet.u_next + jet.u_prev),
    )


def _check_index(mesh: Mesh, k: int) -> None:
    if not 0 <= k < len(mesh):
        raise IndexError(f"node index {k} out of range for mesh of {len(mesh)} nodes")


def hat_eval(mesh: Mesh, k: int, x: float) -> float:
    """Value of the hat function of node ``k`` at ``x``.

    Hats of the two boundary nodes are truncated at the ends of the mesh.
    """
    _check_index(mesh, k)
    nodes = mesh.nodes
    xk = nodes[k]
    if x == xk:
        return 1.0
    if x < xk:
        if k == 0 or x <= nodes[k - 1]:
            return 0.0
        return (x - nodes[k - 1]) / (xk - nodes[k - 1])
    if k == len(mesh) - 1 or x >= nodes[k + 1]:
        return 0.0
    return (nodes[k + 1] - x) / (nodes[k + 1] - xk)


def hat_deriv(mesh: Mesh, k: int, x: float) -> float:
    """Derivative of the hat function of node ``k`` at a point that is not a node.

    The hats have kinks at the nodes, so node queries raise ``ValueError``;
    integrate element by element instead.
    """
    _check_index(mesh, k)
    nodes = mesh.nodes
    j = int(np.searchsorted(nodes, x))
    if j < len(mesh) and nodes[j] == x:
        raise ValueError(f"hat derivative is undefined at the node x={x}")
    # x lies in (nodes[j-1], nodes[j])
    if j == k and k > 0:
        return 1.0 / (nodes[k] - nodes[k - 1])
    if j == k + 1 and k < len(mesh) - 1:
        return -1.0 / (nodes[k + 1] - nodes[k])
    return 0.0


def interpolate(mesh: Mesh, values, x):
    """Evaluate the piecewise-linear interpolant ``sum_k values_k phi_k(x)``."""
    return np.interp(x, mesh.nodes, values)
