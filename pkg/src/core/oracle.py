"""Brute-force evaluation of the Gaussian intrinsic entanglement.

The conditional mutual information is evaluated directly from covariance
matrices and optimized by nested grid searches with local refinement:
sup over pure local measurements on A and B, inf over Eve's measurement.
"""

import csv
import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple, Union, Any

import numpy as np
from scipy.linalg import block_diag

from ..models import (
    StdTwoModeState, SymplecticDecomposition, PurificationCM, SingleModeMeasurement,
    PureLocalMeasurement, GridSpec, SearchResult, TrajectoryPoint
)
from .conditioning import conditional_cm, conditioned_on, measurement_cm, rotation, std_params_batch
from .bounds import alphas, lower_bound_l
from .errors import NumericalError
from .symplectic import classify, purification, williamson

logger = logging.getLogger(__name__)

EveMeasurement = Union[SingleModeMeasurement, np.ndarray, None]

# R = 2 Eve family: two single-mode measurements mixed on a beam splitter
_TWO_MODE_POINTS = 3


@dataclass(frozen=True)
class SearchAxis:
    name: str
    lo: float
    hi: float
    count: int
    periodic: bool = False

    def initial(self) -> np.ndarray:
        if self.periodic:
            return self.lo + (self.hi - self.lo) * np.arange(self.count) / self.count
        return np.linspace(self.lo, self.hi, self.count)

    def zoomed(self, center: float, level: int) -> np.ndarray:
        """Points in a box a quarter of the previous width around center, clipped to the domain."""
        half = (self.hi - self.lo) / (8.0 * 4 ** (level - 1))
        lo, hi = max(self.lo, center - half), min(self.hi, center + half)
        return np.unique(np.append(np.linspace(lo, hi, self.count), center))


def refine_search(
    objective: Callable[[np.ndarray], np.ndarray],
    axes: List[SearchAxis],
    rounds: int,
    maximize: bool = False
) -> SearchResult:
    """Grid search followed by `rounds` zooms around the incumbent.

    Points are enumerated with the first axis slowest, and the first of equal
    values wins, so ties go to the smallest value of the leading axis.
    """
    names = [axis.name for axis in axes]
    axis_values = [axis.initial() for axis in axes]
    best_signed, best_point = math.inf, None
    trajectory: List[TrajectoryPoint] = []

    for level in range(rounds + 1):
        mesh = np.meshgrid(*axis_values, indexing='ij')
        points = np.stack([m.ravel() for m in mesh], axis=-1)
        values = np.asarray(objective(points), dtype=float)
        signed = -values if maximize else values
        signed = np.where(np.isnan(signed), np.inf, signed)

        idx = int(np.argmin(signed))
        if best_point is None or signed[idx] < best_signed:
            best_signed, best_point = float(signed[idx]), points[idx].copy()

        best_value = -best_signed if maximize else best_signed
        params = {name: float(x) for name, x in zip(names, best_point)}
        trajectory.append(TrajectoryPoint(round=level, params=params, value=best_value))
        logger.debug(f"Refinement round {level}: {len(points)} points, incumbent {best_value} at {params}")

        axis_values = [axis.zoomed(best_point[i], level + 1) for i, axis in enumerate(axes)]

    best_value = -best_signed if maximize else best_signed
    return SearchResult(
        value=best_value,
        params={name: float(x) for name, x in zip(names, best_point)},
        trajectory=trajectory,
    )


def measurement_cm_batch(phi: np.ndarray, tau: np.ndarray, t: np.ndarray) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    big, small = tau * np.exp(2 * t), tau * np.exp(-2 * t)
    out = np.empty(np.shape(phi) + (2, 2))
    out[..., 0, 0] = big * c * c + small * s * s
    out[..., 0, 1] = out[..., 1, 0] = (big - small) * s * c
    out[..., 1, 1] = big * s * s + small * c * c
    return out


def local_cm_batch(theta: np.ndarray, r: np.ndarray) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    squeezed, anti = np.exp(-2 * r), np.exp(2 * r)
    out = np.empty(np.shape(theta) + (2, 2))
    out[..., 0, 0] = squeezed * c * c + anti * s * s
    out[..., 0, 1] = out[..., 1, 0] = (squeezed - anti) * s * c
    out[..., 1, 1] = squeezed * s * s + anti * c * c
    return out


def local_measurement_cm(ga: PureLocalMeasurement) -> np.ndarray:
    """P(theta)·diag(e^{-2r}, e^{2r})·Pᵀ(theta); theta = 0 tends to x-homodyne as r grows."""
    rot = rotation(ga.theta)
    return rot @ np.diag([math.exp(-2 * ga.r), math.exp(2 * ga.r)]) @ rot.T


def _logdet(matrices: np.ndarray, what: str) -> np.ndarray:
    sign, logdet = np.linalg.slogdet(matrices)
    if np.any(sign <= 0):
        raise NumericalError(f"Non-positive determinant in {what}")
    return logdet


def _mutual_info_batch(sigmas: np.ndarray) -> np.ndarray:
    return 0.5 * (
        _logdet(sigmas[..., :2, :2], "sigma_A")
        + _logdet(sigmas[..., 2:, 2:], "sigma_B")
        - _logdet(sigmas, "sigma_AB")
    )


def _eve_matrix(p: PurificationCM, ge: EveMeasurement) -> np.ndarray:
    if isinstance(ge, SingleModeMeasurement):
        return conditioned_on(p, ge)
    return conditional_cm(p, ge)


def cond_mutual_info(
    p: PurificationCM,
    ga: PureLocalMeasurement,
    gb: PureLocalMeasurement,
    ge: EveMeasurement = None
) -> float:
    """I(A;B|E) from the outcome CM of the conditional state."""
    gamma = p.gamma_ab.copy() if p.rank == 0 else _eve_matrix(p, ge)
    sigma = gamma + block_diag(local_measurement_cm(ga), local_measurement_cm(gb))
    return float(_mutual_info_batch(sigma[np.newaxis])[0])


def _eve_conditionals(
    p: PurificationCM, ga: PureLocalMeasurement, gb: PureLocalMeasurement
) -> Tuple[float, np.ndarray, np.ndarray, np.ndarray]:
    """I(A;B) and the CMs of E conditioned on A's, B's and both outcomes."""
    sigma_ab = p.gamma_ab + block_diag(local_measurement_cm(ga), local_measurement_cm(gb))
    i_ab = float(_mutual_info_batch(sigma_ab[np.newaxis])[0])
    if p.rank == 0:
        return i_ab, np.zeros((0, 0)), np.zeros((0, 0)), np.zeros((0, 0))

    c_a, c_b = p.gamma_abe[:2], p.gamma_abe[2:]
    x_a = p.gamma_e - c_a.T @ np.linalg.solve(sigma_ab[:2, :2], c_a)
    x_b = p.gamma_e - c_b.T @ np.linalg.solve(sigma_ab[2:, 2:], c_b)
    x_ab = p.gamma_e - p.gamma_abe.T @ np.linalg.solve(sigma_ab, p.gamma_abe)
    return i_ab, x_a, x_b, x_ab


def eve_objective(
    p: PurificationCM, ga: PureLocalMeasurement, gb: PureLocalMeasurement
) -> Callable[[np.ndarray], np.ndarray]:
    """I(A;B|E) as a function of a stack of Eve measurement CMs, for fixed A and B measurements."""
    i_ab, x_a, x_b, x_ab = _eve_conditionals(p, ga, gb)

    def values(gammas: np.ndarray) -> np.ndarray:
        if p.rank == 0:
            return np.full(len(gammas), i_ab)
        return i_ab + 0.5 * (
            _logdet(gammas + x_a, "Gamma_E + X_A")
            + _logdet(gammas + x_b, "Gamma_E + X_B")
            - _logdet(gammas + x_ab, "Gamma_E + X_AB")
            - _logdet(gammas + p.gamma_e, "Gamma_E + gamma_E")
        )

    return values


def cond_mutual_info_decomposed(
    p: PurificationCM,
    ga: PureLocalMeasurement,
    gb: PureLocalMeasurement,
    ge: EveMeasurement = None
) -> float:
    """I(A;B) plus the Eve-dependent correction; must agree with cond_mutual_info."""
    if p.rank == 0:
        return _eve_conditionals(p, ga, gb)[0]
    if isinstance(ge, SingleModeMeasurement):
        gamma = measurement_cm(ge)
    else:
        gamma = np.asarray(ge)
    return float(eve_objective(p, ga, gb)(gamma[np.newaxis])[0])


def _eve_axes(rank: int, grid: GridSpec) -> List[SearchAxis]:
    if rank == 1:
        return [
            SearchAxis("t", 0.0, grid.t_max, grid.n_t),
            SearchAxis("tau", 1.0, grid.tau_max, grid.n_tau),
            SearchAxis("phi", 0.0, math.pi, grid.n_phi, periodic=True),
        ]
    n = _TWO_MODE_POINTS
    return [
        SearchAxis("t1", 0.0, grid.t_max, n),
        SearchAxis("t2", 0.0, grid.t_max, n),
        SearchAxis("tau1", 1.0, grid.tau_max, n),
        SearchAxis("tau2", 1.0, grid.tau_max, n),
        SearchAxis("phi1", 0.0, math.pi, n, periodic=True),
        SearchAxis("phi2", 0.0, math.pi, n, periodic=True),
        SearchAxis("theta_bs", 0.0, math.pi / 2, n),
    ]


def eve_gammas(points: np.ndarray, rank: int) -> np.ndarray:
    """Eve measurement CMs for points laid out as in the Eve search axes."""
    if rank == 1:
        return measurement_cm_batch(points[:, 2], points[:, 1], points[:, 0])

    first = measurement_cm_batch(points[:, 4], points[:, 2], points[:, 0])
    second = measurement_cm_batch(points[:, 5], points[:, 3], points[:, 1])
    n = len(points)
    gammas = np.zeros((n, 4, 4))
    gammas[:, :2, :2] = first
    gammas[:, 2:, 2:] = second

    c, s = np.cos(points[:, 6]), np.sin(points[:, 6])
    splitter = np.zeros((n, 4, 4))
    for i in range(2):
        splitter[:, i, i] = splitter[:, i + 2, i + 2] = c
        splitter[:, i, i + 2] = s
        splitter[:, i + 2, i] = -s
    return splitter @ gammas @ np.transpose(splitter, (0, 2, 1))


def inf_over_eve(
    p: PurificationCM,
    ga: PureLocalMeasurement,
    gb: PureLocalMeasurement,
    grid: GridSpec
) -> SearchResult:
    if p.rank == 0:
        return SearchResult(value=_eve_conditionals(p, ga, gb)[0], params={})

    objective = eve_objective(p, ga, gb)
    result = refine_search(
        lambda points: objective(eve_gammas(points, p.rank)),
        _eve_axes(p.rank, grid),
        grid.refinement_rounds,
    )
    if p.rank == 2:
        return SearchResult(value=result.value, params=result.params, trajectory=result.trajectory, heuristic=True)
    return result


def _inf_over_eve_standalone(job):
    """Standalone function for process-based parallel outer grid evaluation"""
    idx, p, theta_a, r_a, theta_b, r_b, grid = job
    ga = PureLocalMeasurement(theta=theta_a, r=r_a)
    gb = PureLocalMeasurement(theta=theta_b, r=r_b)
    return idx, inf_over_eve(p, ga, gb, grid).value


def _local_axes(grid: GridSpec) -> List[SearchAxis]:
    return [
        SearchAxis("theta_a", 0.0, math.pi, grid.n_theta, periodic=True),
        SearchAxis("theta_b", 0.0, math.pi, grid.n_theta, periodic=True),
        SearchAxis("r_a", 0.0, grid.r_max, grid.n_r),
        SearchAxis("r_b", 0.0, grid.r_max, grid.n_r),
    ]


def sup_inf(p: PurificationCM, grid: GridSpec, max_workers: int = 1) -> SearchResult:
    """Outer sup over pure local measurements of the Eve infimum."""
    executor = ProcessPoolExecutor(max_workers=max_workers) if max_workers > 1 else None

    def outer(points: np.ndarray) -> np.ndarray:
        jobs = [(idx, p, pt[0], pt[2], pt[1], pt[3], grid) for idx, pt in enumerate(points)]
        results = np.empty(len(points))
        if executor is None or len(points) < 10:
            for job in jobs:
                idx, value = _inf_over_eve_standalone(job)
                results[idx] = value
            return results

        futures = {executor.submit(_inf_over_eve_standalone, job): job[0] for job in jobs}
        for future in as_completed(futures):
            idx, value = future.result()
            results[idx] = value
        return results

    try:
        result = refine_search(outer, _local_axes(grid), grid.refinement_rounds, maximize=True)
    finally:
        if executor is not None:
            executor.shutdown()

    logger.info(f"sup-inf oracle value {result.value} at {result.params}")
    return SearchResult(
        value=result.value, params=result.params, trajectory=result.trajectory, heuristic=p.rank == 2
    )


def min_k_h_grid(s: StdTwoModeState, dec: SymplecticDecomposition, grid: GridSpec) -> SearchResult:
    """Direct minimization of K_h over Eve's (phi, tau, t)."""
    al = alphas(s, dec)
    nu = dec.nu1

    def objective(points: np.ndarray) -> np.ndarray:
        t, tau, phi = points[:, 0], points[:, 1], points[:, 2]
        cosh, sinh = np.cosh(2 * t), np.sinh(2 * t)
        q = (tau * (cosh - sinh * np.cos(2 * phi)) + nu) / (tau ** 2 + 2 * tau * nu * cosh + nu ** 2)
        return (1 - al.alpha_a * q) * (1 - al.alpha_b * q) / (1 - al.alpha_ab * q)

    return refine_search(objective, _eve_axes(1, grid), grid.refinement_rounds)


def gcmi_numeric(cm: np.ndarray, grid: GridSpec) -> SearchResult:
    """Sup over pure local measurements of the measured mutual information of a two-mode CM."""

    def objective(points: np.ndarray) -> np.ndarray:
        sigmas = np.repeat(cm[np.newaxis], len(points), axis=0)
        sigmas[:, :2, :2] += local_cm_batch(points[:, 0], points[:, 2])
        sigmas[:, 2:, 2:] += local_cm_batch(points[:, 1], points[:, 3])
        return _mutual_info_batch(sigmas)

    return refine_search(objective, _local_axes(grid), grid.refinement_rounds, maximize=True)


def conditional_cm_batch(p: PurificationCM, gammas: np.ndarray) -> np.ndarray:
    try:
        rhs = np.broadcast_to(p.gamma_abe.T, gammas.shape[:1] + p.gamma_abe.T.shape)
        solved = np.linalg.solve(p.gamma_e + gammas, rhs)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Singular measurement Schur complement: {e}") from e
    cms = p.gamma_ab - p.gamma_abe @ solved
    return (cms + np.transpose(cms, (0, 2, 1))) / 2.0


def _gcmi_batch(cms: np.ndarray, grid: GridSpec) -> np.ndarray:
    """GCMI of each conditional CM: homodyne formula where G >= 0, numeric sup elsewhere."""
    a_t, b_t, cx_t, _ = std_params_batch(cms)
    ab = a_t * b_t
    g = np.sqrt(a_t / b_t) + np.sqrt(b_t / a_t) + 1 / np.sqrt(ab) - np.sqrt(ab - cx_t ** 2)
    values = 0.5 * np.log(ab / (ab - cx_t ** 2))
    for idx in np.flatnonzero(g < 0):
        values[idx] = max(values[idx], gcmi_numeric(cms[idx], grid).value)
    return values


def upper_over_eve(p: PurificationCM, grid: GridSpec) -> SearchResult:
    """Min over the Eve family of the GCMI of the conditional state."""
    if p.rank == 0:
        return SearchResult(value=float(_gcmi_batch(p.gamma_ab[np.newaxis], grid)[0]), params={})
    result = refine_search(
        lambda points: _gcmi_batch(conditional_cm_batch(p, eve_gammas(points, p.rank)), grid),
        _eve_axes(p.rank, grid),
        grid.refinement_rounds,
    )
    return SearchResult(
        value=result.value, params=result.params, trajectory=result.trajectory, heuristic=p.rank == 2
    )


def homodyne_pair(grid: GridSpec) -> Tuple[PureLocalMeasurement, PureLocalMeasurement]:
    """x-homodyne on A and B approximated at the squeezing cap."""
    return PureLocalMeasurement(theta=0.0, r=grid.r_max), PureLocalMeasurement(theta=0.0, r=grid.r_max)


def bracket(s: StdTwoModeState, grid: GridSpec) -> Tuple[float, float, SearchResult]:
    """(lo, hi) around the GIE for states without a closed form, with the Eve search behind hi."""
    dec = williamson(s) if s.is_standard else None
    p = purification(s, dec)
    if classify(s).is_glems:
        lo = lower_bound_l(s, dec)
    else:
        lo = inf_over_eve(p, *homodyne_pair(grid), grid).value

    upper = upper_over_eve(p, grid)
    hi = upper.value
    if lo > hi:
        logger.warning(f"Bracket inverted for {s.as_tuple()}: lo={lo} > hi={hi}; widening hi to lo")
        hi = lo
    logger.info(f"Oracle bracket for {s.as_tuple()}: [{lo}, {hi}]")
    return lo, hi, upper


class OracleService:
    def __init__(self, grid: Optional[GridSpec] = None, max_workers: int = 1):
        self.grid = grid or GridSpec.from_settings()
        self.max_workers = max_workers
        self.progress_callback: Optional[Callable[[int, int, str], None]] = None

    def set_progress_callback(self, callback: Callable[[int, int, str], None]):
        self.progress_callback = callback

    def _report_progress(self, current: int, total: int, message: str):
        if self.progress_callback:
            self.progress_callback(current, total, message)

    def run(self, s: StdTwoModeState) -> Dict[str, Any]:
        total = 3
        self._report_progress(0, total, "Building purification")
        dec = williamson(s) if s.is_standard else None
        p = purification(s, dec)

        self._report_progress(1, total, "Eve infimum at x-homodyne on A and B")
        at_cap = inf_over_eve(p, *homodyne_pair(self.grid), self.grid)
        convergence = None
        if self.grid.r_max > 2:
            coarse_grid = self.grid.with_overrides(r_max=self.grid.r_max - 2)
            coarse = inf_over_eve(p, *homodyne_pair(coarse_grid), coarse_grid)
            convergence = abs(at_cap.value - coarse.value)

        self._report_progress(2, total, "Outer sup over local measurements")
        outer = sup_inf(p, self.grid, self.max_workers)
        self._report_progress(total, total, "Done")

        return {
            "state": s.to_dict(),
            "rank": p.rank,
            "grid": self.grid.to_dict(),
            "inf_over_eve": at_cap.to_dict(),
            "convergence_delta": convergence,
            "sup_inf": outer.to_dict(),
            "heuristic": outer.heuristic,
            "trajectory": [point.to_row() for point in at_cap.trajectory],
        }

    def export_trajectory(self, rows: List[Dict[str, Any]], path: Path):
        if not rows:
            raise ValueError("No trajectory to export")
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        logger.info(f"Wrote {len(rows)} trajectory rows to {path}")
