"""Finite-difference residuals of known field solutions and their reflections.

Grids are node-centred and symmetric about the origin on every axis, so
``x -> -x`` and ``t -> -t`` are exact index reversals.  Units have ``c = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .k4 import K4Charge, irrep_sign

__all__ = [
    "Grid",
    "FieldSample",
    "GridError",
    "FIELD_CHARGES",
    "analytic_solution",
    "reflect_fields",
    "reflect_scalar",
    "maxwell_residual",
    "heat_residual",
    "fit_order",
    "convergence_study",
    "CASES",
]

MIN_NODES = 5

# three-vector reflection charges of the field content
FIELD_CHARGES = {"E": K4Charge.P, "B": K4Charge.T, "rho": K4Charge.ONE, "J": K4Charge.PT}


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """Uniform node-centred grid on ``[-L/2, L/2]`` per spatial axis and
    ``[-duration/2, duration/2]`` in time; time is the last array axis."""

    extents: tuple[float, ...]
    duration: float
    shape: tuple[int, ...]

    def __post_init__(self):
        if len(self.shape) != len(self.extents) + 1:
            raise GridError("shape needs one node count per spatial axis plus time")
        if min(self.shape) < MIN_NODES:
            raise GridError(f"every axis needs at least {MIN_NODES} nodes, got {self.shape}")

    @property
    def ndim(self) -> int:
        return len(self.extents)

    @property
    def h(self) -> tuple[float, ...]:
        return tuple(L / (n - 1) for L, n in zip(self.extents, self.shape))

    @property
    def dt(self) -> float:
        return self.duration / (self.shape[-1] - 1)

    def axes(self) -> list[np.ndarray]:
        steps = list(self.h) + [self.dt]
        # (k - c) * h is exactly antisymmetric under k -> n - 1 - k
        return [(np.arange(n) - (n - 1) / 2) * step for step, n in zip(steps, self.shape)]

    def mesh(self) -> list[np.ndarray]:
        return np.meshgrid(*self.axes(), indexing="ij")

    def is_symmetric(self) -> bool:
        return all(np.array_equal(a, -a[::-1]) for a in self.axes())


@dataclass
class FieldSample:
    """Maxwell fields on a grid: E, B, J have a leading axis of length 3."""

    E: np.ndarray
    B: np.ndarray
    rho: np.ndarray
    J: np.ndarray

    def __post_init__(self):
        shape = self.rho.shape
        for name in ("E", "B", "J"):
            if getattr(self, name).shape != (3,) + shape:
                raise GridError(f"{name} has shape {getattr(self, name).shape}, expected {(3,) + shape}")

    @classmethod
    def zeros(cls, grid: Grid) -> "FieldSample":
        z = np.zeros(grid.shape)
        return cls(np.zeros((3,) + grid.shape), np.zeros((3,) + grid.shape), z, np.zeros((3,) + grid.shape))


def _plane_wave(grid: Grid, k: float = 1.0) -> FieldSample:
    if grid.ndim != 3:
        raise GridError("plane wave needs a 3+1 dimensional grid")
    _, _, z, t = grid.mesh()
    phase = np.cos(k * z - k * t)
    zero = np.zeros(grid.shape)
    return FieldSample(
        E=np.stack([phase, zero, zero]),
        B=np.stack([zero, phase, zero]),
        rho=zero.copy(),
        J=np.zeros((3,) + grid.shape),
    )


def _static_coulomb(grid: Grid, q: float = 1.0) -> FieldSample:
    if grid.ndim != 3:
        raise GridError("coulomb field needs a 3+1 dimensional grid")
    x, y, z, _ = grid.mesh()
    # charge a full box length below the grid face, so the sampled region is free
    z0 = -1.5 * grid.extents[2]
    r = np.stack([x, y, z - z0])
    dist3 = np.sum(r * r, axis=0) ** 1.5
    zero = np.zeros(grid.shape)
    return FieldSample(E=q * r / dist3, B=np.zeros((3,) + grid.shape), rho=zero, J=np.zeros((3,) + grid.shape))


def _heat_mode(grid: Grid) -> np.ndarray:
    if grid.ndim != 1:
        raise GridError("heat mode needs a 1+1 dimensional grid")
    x, t = grid.mesh()
    return np.exp(-t) * np.sin(x)


_SOLUTIONS: dict[str, Callable] = {
    "plane_wave": _plane_wave,
    "static_coulomb_free_region": _static_coulomb,
    "heat_mode": _heat_mode,
    "zero": FieldSample.zeros,
}


def analytic_solution(name: str) -> Callable:
    """Sampler ``grid -> FieldSample`` (or ``ndarray`` for the heat mode).

    ``plane_wave``: E = x cos(kz - wt), B = y cos(kz - wt), w = k, no sources.
    ``static_coulomb_free_region``: field of a unit charge sitting outside
    the grid, so the sampled region holds no source.
    ``heat_mode``: u = exp(-t) sin x, solving u_t = u_xx.
    """
    try:
        return _SOLUTIONS[name]
    except KeyError:
        raise KeyError(f"unknown solution {name!r}; choose from {sorted(_SOLUTIONS)}") from None


def _reflect_axes(arr: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    return np.flip(arr, axis=tuple(axes)).copy() if axes else arr.copy()


def _reflection_axes(ndim: int, r: K4Charge, offset: int = 0) -> list[int]:
    axes = []
    if r.p_bit:
        axes += [offset + i for i in range(ndim)]
    if r.t_bit:
        axes.append(offset + ndim)
    return axes


def reflect_fields(f: FieldSample, r, grid: Grid | None = None) -> FieldSample:
    """Reflected configuration, e.g. ``E_P(x, t) = -E(-x, t)``.

    Each field picks up the sign of its reflection charge and has its
    argument reflected.
    """
    r = r if isinstance(r, K4Charge) else K4Charge.parse(r)
    if grid is not None and not grid.is_symmetric():
        raise GridError("reflection needs a grid symmetric about the origin")
    ndim = f.rho.ndim - 1
    out = {}
    for name, charge in FIELD_CHARGES.items():
        arr = getattr(f, name)
        offset = 0 if name == "rho" else 1
        out[name] = irrep_sign(charge, r) * _reflect_axes(arr, _reflection_axes(ndim, r, offset))
    return FieldSample(**out)


def reflect_scalar(u: np.ndarray, r, sign: int = 1, grid: Grid | None = None) -> np.ndarray:
    """``u_P(x, t) = sign * u(-x, t)`` or ``u_T(x, t) = sign * u(x, -t)``."""
    r = r if isinstance(r, K4Charge) else K4Charge.parse(r)
    if grid is not None and not grid.is_symmetric():
        raise GridError("reflection needs a grid symmetric about the origin")
    return sign * _reflect_axes(u, _reflection_axes(u.ndim - 1, r))


def _interior(arr: np.ndarray, skip: int | None = None) -> np.ndarray:
    idx = tuple(slice(None) if ax == skip else slice(1, -1) for ax in range(arr.ndim))
    return arr[idx]


def _d1(arr: np.ndarray, axis: int, h: float) -> np.ndarray:
    n = arr.shape[axis]
    if n < 3:
        raise GridError("grid too small for a central stencil")
    hi = np.take(arr, np.arange(2, n), axis=axis)
    lo = np.take(arr, np.arange(0, n - 2), axis=axis)
    return _interior((hi - lo) / (2.0 * h), skip=axis)


def _d2(arr: np.ndarray, axis: int, h: float) -> np.ndarray:
    n = arr.shape[axis]
    hi = np.take(arr, np.arange(2, n), axis=axis)
    mid = np.take(arr, np.arange(1, n - 1), axis=axis)
    lo = np.take(arr, np.arange(0, n - 2), axis=axis)
    return _interior((hi - 2.0 * mid + lo) / (h * h), skip=axis)


def _check_grid(shape: tuple[int, ...], grid: Grid) -> None:
    if tuple(shape) != tuple(grid.shape):
        raise GridError(f"samples of shape {shape} do not live on grid {grid.shape}")
    if min(grid.shape) < MIN_NODES:
        raise GridError("grid too small for the stencil")


def maxwell_residual(f: FieldSample, grid: Grid) -> dict[str, float]:
    """Max-norm residuals of Gauss, no-monopole, Faraday and Ampere on
    interior nodes, with second-order central differences."""
    _check_grid(f.rho.shape, grid)
    hx, hy, hz = grid.h
    dt = grid.dt
    spacing = (hx, hy, hz)

    def div(v):
        return sum(_d1(v[i], i, spacing[i]) for i in range(3))

    def curl(v):
        d = lambda comp, ax: _d1(v[comp], ax, spacing[ax])  # noqa: E731
        return np.stack([d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)])

    def ddt(v):
        return np.stack([_d1(v[i], 3, dt) for i in range(3)])

    inner = lambda a: _interior(a)  # noqa: E731
    gauss = div(f.E) - inner(f.rho)
    monopole = div(f.B)
    faraday = curl(f.E) + ddt(f.B)
    ampere = curl(f.B) - np.stack([inner(c) for c in f.J]) - ddt(f.E)
    return {
        "gauss": float(np.max(np.abs(gauss))),
        "monopole": float(np.max(np.abs(monopole))),
        "faraday": float(np.max(np.abs(faraday))),
        "ampere": float(np.max(np.abs(ampere))),
    }


def heat_residual(u: np.ndarray, grid: Grid, reflect: str | K4Charge | None = None, sign: int = 1) -> float:
    """Max-norm of ``u_xx - u_t`` on interior nodes of a 1+1 grid, for
    ``u`` or its P/T reflection."""
    if grid.ndim != 1:
        raise GridError("heat residual needs a 1+1 dimensional grid")
    _check_grid(u.shape, grid)
    if reflect not in (None, "none"):
        u = reflect_scalar(u, reflect, sign, grid)
    (h,) = grid.h
    res = _d2(u, 0, h) - _d1(u, 1, grid.dt)
    return float(np.max(np.abs(res)))


def fit_order(hs: Sequence[float], norms: Sequence[float]) -> float:
    """Least-squares slope of ``log(norm)`` against ``log(h)``."""
    slope, _ = np.polyfit(np.log(hs), np.log(norms), 1)
    return float(slope)


def maxwell_grid(n: int, transverse: int = MIN_NODES, time_ratio: int = 2) -> Grid:
    """Grid resolving one wavelength (k = 1) along z with ``n`` nodes.

    The fields do not vary across x and y, so those axes get ``transverse``
    nodes at the same spacing.  Time uses ``n // time_ratio`` nodes over the
    same span; ``dt == h`` would make the stencil errors cancel exactly.
    """
    L = 2 * np.pi
    h = L / (n - 1)
    nt = max(MIN_NODES, n // time_ratio)
    return Grid((h * (transverse - 1),) * 2 + (L,), L, (transverse, transverse, n, nt))


def heat_grid(n: int, time_ratio: int = 1) -> Grid:
    """``x in [-pi, pi]``, ``t in [-1, 1]``.

    With ``n // 2`` time nodes the space and time stencil errors nearly
    cancel on coarse grids, which spoils the fitted order.
    """
    return Grid((2 * np.pi,), 2.0, (n, max(MIN_NODES, n // time_ratio)))


CASES = ("maxwell", "maxwell-P", "maxwell-T", "heat", "heat-P", "heat-T")


def convergence_study(case: str, grids: Sequence[int] = (16, 32, 64)) -> dict:
    """Residual norms over refinements and the fitted convergence order."""
    if case not in CASES:
        raise KeyError(f"unknown case {case!r}; choose from {', '.join(CASES)}")
    family, _, refl = case.partition("-")
    reflection = refl or "none"
    rows = []
    for n in grids:
        if family == "maxwell":
            g = maxwell_grid(n)
            f = _plane_wave(g)
            if refl:
                f = reflect_fields(f, refl, g)
            res = maxwell_residual(f, g)
            h = g.h[2]
            total = max(res.values())
        else:
            g = heat_grid(n)
            u = _heat_mode(g)
            total = heat_residual(u, g, refl or None)
            res = {"heat": total}
            h = g.h[0]
        rows.append({"n": n, "shape": list(g.shape), "h": h, "dt": g.dt, "residuals": res, "max": total})
    order = fit_order([r["h"] for r in rows], [r["max"] for r in rows]) if len(rows) > 1 else None
    return {
        "case": case,
        "reflection": reflection,
        "grids": list(grids),
        "results": rows,
        "fitted_order": order,
    }
