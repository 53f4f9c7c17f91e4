"""Scalar Newton iteration, tridiagonal solves and convergence-order fits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, solve_banded


class NewtonError(RuntimeError):
    def __init__(self, message: str, last_iterate: float, iterations: int):
        super().__init__(f"{message} (last iterate {last_iterate!r} after {iterations} iterations)")
        self.last_iterate = last_iterate
        self.iterations = iterations


class ZeroPivotError(ArithmeticError):
    pass


@dataclass(frozen=True)
class NewtonConfig:
    tol: float = 1e-15
    max_iter: int = 50

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("Newton tolerance must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")


def newton_scalar(f, df, x0: float, cfg: NewtonConfig = NewtonConfig(), history: list | None = None) -> float:
    """Solve ``f(x) = 0`` by Newton's method, stopping on the step size.

    A step is accepted as final when ``|step| <= tol`` or when it is at the
    level of a couple of ulps of the iterate. Once the iterates start cycling
    among floats a few ulps apart (the residual only changes sign there), the
    one with the smallest ``|f|`` is returned.
    """
    x = float(x0)
    seen = {x: None}
    if history is not None:
        history.append(x)
    for it in range(1, cfg.max_iter + 1):
        d = df(x)
        if not abs(d) >= 1e-300:
            raise NewtonError("derivative vanished", x, it - 1)
        fx = f(x)
        seen[x] = abs(fx)
        step = fx / d
        if not math.isfinite(step):
            raise NewtonError("non-finite Newton step", x, it - 1)
        x -= step
        if history is not None:
            history.append(x)
        if abs(step) <= max(cfg.tol, 2.0 * math.ulp(x)):
            return x
        if x in seen and abs(step) <= 1e-12 * max(1.0, abs(x)):
            return min((r, y) for y, r in seen.items() if r is not None)[1]
        seen.setdefault(x, None)
    raise NewtonError("Newton did not converge", x, cfg.max_iter)


def solve_tridiagonal(lower, diag, upper, rhs) -> np.ndarray:
    """Solve a tridiagonal system.

    ``lower[i]`` multiplies ``x[i]`` in row ``i + 1`` and ``upper[i]``
    multiplies ``x[i + 1]`` in row ``i`` (both have length ``n - 1``).
    """
    diag = np.asarray(diag, dtype=float)
    n = diag.size
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if lower.size != n - 1 or upper.size != n - 1 or rhs.shape[0] != n:
        raise ValueError("inconsistent tridiagonal system sizes")
    ab = np.zeros((3, n))
    ab[0, 1:] = upper
    ab[1] = diag
    ab[2, :-1] = lower
    try:
        return solve_banded((1, 1), ab, rhs)
    except LinAlgError as exc:
        raise ZeroPivotError(str(exc)) from exc


def is_strictly_diagonally_dominant(lower, diag, upper) -> bool:
    off = np.zeros_like(np.asarray(diag, dtype=float))
    off[1:] += np.abs(lower)
    off[:-1] += np.abs(upper)
    return bool(np.all(np.abs(diag) > off))


@dataclass
class ConvergenceTable:
    n_elements: list[int] = field(default_factory=list)
    h: list[float] = field(default_factory=list)
    rel_linf_error: list[float] = field(default_factory=list)
    fitted_order: float = float("nan")

    @property
    def rows(self):
        return list(zip(self.n_elements, self.h, self.rel_linf_error))

    def add(self, n: int, h: float, err: float) -> None:
        self.n_elements.append(n)
        self.h.append(h)
        self.rel_linf_error.append(err)

    def fit(self) -> float:
        order = sorted(range(len(self.h)), key=lambda i: -self.h[i])
        self.n_elements = [self.n_elements[i] for i in order]
        self.h = [self.h[i] for i in order]
        self.rel_linf_error = [self.rel_linf_error[i] for i in order]
        self.fitted_order = estimate_order(self.rows)
        return self.fitted_order

    def as_dict(self) -> dict:
        return {
            "rows": [{"n_elements": n, "h": h, "rel_linf_error": e} for n, h, e in self.rows],
            "fitted_order": self.fitted_order,
        }


def estimate_order(rows) -> float:
    """Least-squares slope of ``log(error)`` against ``log(h)``.

    ``rows`` holds ``(n_elements, h, error)`` triples.
    """
    rows = list(rows)
    if len(rows) < 3:
        raise ValueError("need at least 3 resolutions to fit an order")
    h = np.array([r[1] for r in rows], dtype=float)
    err = np.array([r[2] for r in rows], dtype=float)
    if np.any(err <= 0):
        raise ValueError("errors must be positive to fit an order")
    if np.unique(h).size != h.size:
        raise ValueError("mesh sizes must be distinct")
    slope, _ = np.polyfit(np.log(h), np.log(err), 1)
    return float(slope)
