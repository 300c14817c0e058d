"""Deterministic frame search: a seeded multi-restart downhill simplex over
the unitary parameters of Kirkwood-Dirac frames, plus the bisection helper
shared by all threshold computations."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .frames import OVERLAP_FLOOR, frame_from_unitaries, validate_frame
from .qudit import Dimension, Operator, depolarize, fourier_gate
from .representations import (
    OperationalSet,
    _penalty_array,
    standard_operational_set,
)


class NoThresholdError(RuntimeError):
    """Raised when the bisection predicate fails even at the top endpoint."""


@dataclass(frozen=True)
class OptimizerConfig:
    """Settings for the multi-restart frame search.

    restarts counts independent downhill-simplex runs (restart 0 always
    starts at the computational/Fourier frame, restart 1 at a frame adapted
    to the target state's eigenbasis, the rest at seeded random offsets).
    """

    restarts: int = 32
    max_iterations: int = 400
    tol: float = 1e-10
    seed: int = 0
    simplex_scale: float = 0.3
    threads: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if self.max_iterations < 1:
            raise ValueError("need at least one iteration")
        if self.tol <= 0 or self.simplex_scale <= 0:
            raise ValueError("tolerance and simplex scale must be positive")
        if self.threads < 1:
            raise ValueError("thread count must be positive")
        if not isinstance(self.seed, int):
            raise ValueError("seed must be an integer")


@dataclass(frozen=True)
class FrameSearchPoint:
    """Best parameter vector found by a search, with its witness value."""

    params: np.ndarray
    objective: float

    def __post_init__(self):
        arr = np.array(self.params, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "params", arr)


def _hermitian_from_params(d: int, params: np.ndarray) -> np.ndarray:
    h = np.zeros((d, d), dtype=complex)
    h[np.arange(d), np.arange(d)] = params[:d]
    pairs = params[d:].reshape(-1, 2)
    iu = np.triu_indices(d, 1)
    vals = pairs[:, 0] + 1j * pairs[:, 1]
    h[iu] = vals
    h[iu[1], iu[0]] = vals.conj()
    return h


def _params_from_hermitian(h: np.ndarray) -> np.ndarray:
    d = h.shape[0]
    iu = np.triu_indices(d, 1)
    upper = h[iu]
    return np.concatenate([h.diagonal().real, np.column_stack([upper.real, upper.imag]).reshape(-1)])


def _exp_i_hermitian(h: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T


def unitary_from_params(dim: Dimension, params: np.ndarray) -> Operator:
    """Decode d^2 real parameters into exp(iH) for Hermitian H.

    Layout: d diagonal entries of H, then (Re, Im) of each strict upper
    entry in row-major order. The map covers all of U(d).
    """
    params = np.asarray(params, dtype=float).reshape(-1)
    d = dim.d
    if params.size != d * d:
        raise ValueError(f"expected {d * d} parameters, got {params.size}")
    return Operator(dim, _exp_i_hermitian(_hermitian_from_params(d, params)), role="unitary")


def _params_from_unitary_matrix(u: np.ndarray) -> np.ndarray:
    gen = scipy.linalg.logm(u)
    h = (gen - gen.conj().T) / 2j  # hermitize -i log(U) against roundoff
    params = _params_from_hermitian(h)
    back = _exp_i_hermitian(_hermitian_from_params(u.shape[0], params))
    if np.abs(back - u).max() > 1e-10:
        raise RuntimeError("unitary log round trip failed")
    return params


def params_from_unitary(u: Operator) -> np.ndarray:
    """Inverse of unitary_from_params, up to roundoff (verified internally)."""
    return _params_from_unitary_matrix(u.entries)


def decode_frame(dim: Dimension, params: np.ndarray):
    """Split a 2 d^2 vector into two unitaries and build their KD frame."""
    params = np.asarray(params, dtype=float).reshape(-1)
    d2 = dim.d ** 2
    if params.size != 2 * d2:
        raise ValueError(f"expected {2 * d2} parameters, got {params.size}")
    u = unitary_from_params(dim, params[:d2])
    v = unitary_from_params(dim, params[d2:])
    return frame_from_unitaries(u, v)


_MASK = (1 << 64) - 1


def _mix64(z: int) -> int:
    """splitmix-style finalizer used to derive per-restart seeds."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return (z ^ (z >> 31)) & _MASK


def restart_seed(seed: int, restart: int) -> int:
    return _mix64(_mix64(seed & _MASK) ^ restart)


def nelder_mead(
    fn: Callable[[np.ndarray], float],
    x0: np.ndarray,
    scale: float,
    max_iterations: int,
    ftol: float,
) -> tuple[np.ndarray, float]:
    """Downhill simplex with reflection 1, expansion 2, contraction 0.5,
    shrink 0.5. Returns the best vertex ever evaluated.

    The initial simplex offsets x0 by `scale` along each coordinate.
    Termination: value spread below ftol or the iteration cap.
    """
    n = x0.size
    simplex = np.tile(x0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += scale
    values = np.array([fn(x) for x in simplex])

    for _ in range(max_iterations):
        order = np.argsort(values, kind="stable")
        simplex = simplex[order]
        values = values[order]
        spread = values[-1] - values[0]
        if np.isfinite(spread) and spread <= ftol:
            break
        centroid = simplex[:-1].mean(axis=0)
        reflected = centroid + (centroid - simplex[-1])
        f_r = fn(reflected)
        if f_r < values[0]:
            expanded = centroid + 2.0 * (centroid - simplex[-1])
            f_e = fn(expanded)
            if f_e < f_r:
                simplex[-1], values[-1] = expanded, f_e
            else:
                simplex[-1], values[-1] = reflected, f_r
        elif f_r < values[-2]:
            simplex[-1], values[-1] = reflected, f_r
        else:
            shrink = True
            if f_r < values[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
                f_c = fn(contracted)
                if f_c <= f_r:
                    simplex[-1], values[-1] = contracted, f_c
                    shrink = False
            else:
                contracted = centroid + 0.5 * (simplex[-1] - centroid)
                f_c = fn(contracted)
                if f_c < values[-1]:
                    simplex[-1], values[-1] = contracted, f_c
                    shrink = False
            if shrink:
                for i in range(1, n + 1):
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
                    values[i] = fn(simplex[i])

    best = int(np.argmin(values))
    return simplex[best].copy(), float(values[best])


def _kd_values(u: np.ndarray, v: np.ndarray, rho: np.ndarray, ov_t: np.ndarray) -> np.ndarray:
    return (u.conj().T @ rho @ v) * ov_t


class _Objective:
    """Fast witness evaluation straight from the two basis unitaries."""

    def __init__(self, dim: Dimension, rho_p: np.ndarray, opset: Optional[OperationalSet], scope: str):
        self.d = dim.d
        self.rho = rho_p
        self.scope = scope
        if scope == "subtheory":
            assert opset is not None
            self.states = np.stack([op.entries for op in opset.states])
            self.effects = np.stack([op.entries for op in opset.effects])
            self.kraus = [np.stack(ch.kraus) for ch in opset.channels]

    def __call__(self, params: np.ndarray) -> float:
        d = self.d
        d2 = d * d
        u = _exp_i_hermitian(_hermitian_from_params(d, params[:d2]))
        v = _exp_i_hermitian(_hermitian_from_params(d, params[d2:]))
        ov = v.conj().T @ u  # ov[j, i] = <b_j | a_i>
        if np.abs(ov).min() <= OVERLAP_FLOOR:
            return np.inf
        ov_t = ov.T
        if self.scope == "state":
            return _penalty_array(_kd_values(u, v, self.rho, ov_t))
        worst = 0.0
        state_vals = np.einsum("xk,sxy,yl->skl", u.conj(), self.states, v) * ov_t
        for s in range(state_vals.shape[0]):
            worst = max(worst, _penalty_array(state_vals[s]))
        effect_vals = np.einsum("xj,sxy,yi->sji", v.conj(), self.effects, u) / ov
        for s in range(effect_vals.shape[0]):
            worst = max(worst, _penalty_array(effect_vals[s]))
        duals = np.einsum("xi,yj->ijxy", u, v.conj()) / ov_t[:, :, None, None]
        for ks in self.kraus:
            moved = np.einsum("kxy,ijyz,kwz->ijxw", ks, duals, ks.conj())
            gamma = np.einsum("xk,ijxy,yl->ijkl", u.conj(), moved, v) * ov_t[None, None]
            worst = max(worst, _penalty_array(gamma))
        return worst


ZERO_OBJECTIVE_FLOOR = 1e-13


def minimize_omega(
    p: float,
    rho_m: Operator,
    config: OptimizerConfig,
    scope: str = "state",
    opset: Optional[OperationalSet] = None,
) -> FrameSearchPoint:
    """Search KD frames for the smallest witness value at noise level p.

    Restarts are merged by (objective, restart index), so results do not
    depend on the thread count, and enlarging the restart budget can only
    improve the returned objective. Objectives at round-off scale collapse
    to exact zero first, so among equally classical frames the deterministic
    starts (canonical MUB, then the state-adapted frame) win the tie and the
    certificate stays interpretable.
    """
    if scope not in ("state", "subtheory"):
        raise ValueError("scope must be 'state' or 'subtheory'")
    dim = rho_m.dim
    rho_p = depolarize(rho_m, p)
    if scope == "subtheory" and opset is None:
        opset = standard_operational_set(rho_m, p)
    objective = _Objective(dim, rho_p.entries, opset, scope)

    def snapped_objective(x: np.ndarray) -> float:
        f = objective(x)
        return 0.0 if f <= ZERO_OBJECTIVE_FLOOR else f

    d2 = dim.d ** 2
    fourier_params = _params_from_unitary_matrix(fourier_gate(dim).entries)
    starts = [np.concatenate([np.zeros(d2), fourier_params])]
    _, eigvecs = np.linalg.eigh(rho_p.entries)
    starts.append(
        np.concatenate(
            [
                _params_from_unitary_matrix(eigvecs),
                _params_from_unitary_matrix(eigvecs @ fourier_gate(dim).entries),
            ]
        )
    )

    def run(restart: int) -> tuple[float, int, np.ndarray]:
        if restart < len(starts):
            x0 = starts[restart]
        else:
            rng = np.random.default_rng(restart_seed(config.seed, restart))
            x0 = rng.normal(0.0, config.simplex_scale, size=2 * d2)
        x, fx = nelder_mead(
            snapped_objective,
            x0,
            config.simplex_scale,
            config.max_iterations,
            config.tol,
        )
        return fx, restart, x

    indices = range(config.restarts)
    if config.threads == 1:
        outcomes = [run(r) for r in indices]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            outcomes = list(pool.map(run, indices))

    best_f, _, best_x = min(outcomes, key=lambda t: (t[0], t[1]))
    report = validate_frame(decode_frame(dim, best_x))
    if not report.passed:
        raise RuntimeError(
            f"search returned an invalid frame (residuals {report.to_dict()})"
        )
    return FrameSearchPoint(params=best_x, objective=best_f)


def bisect_threshold(
    predicate: Callable[[float], bool],
    interval: tuple[float, float] = (0.0, 1.0),
    tol: float = 1e-6,
) -> float:
    """Smallest parameter (within tol) at which a monotone predicate holds.

    The predicate must be False-then-True over the interval. Exactly
    1 + ceil(log2(span / tol)) evaluations are spent: one on the upper
    endpoint, the rest on midpoints. A False upper endpoint means no
    threshold exists and raises NoThresholdError.
    """
    lo, hi = float(interval[0]), float(interval[1])
    if not (lo < hi):
        raise ValueError("interval must satisfy lo < hi")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if not predicate(hi):
        raise NoThresholdError(
            f"predicate is false at the upper endpoint {hi}; no threshold in range"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi
