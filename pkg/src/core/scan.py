import csv
import logging
import math
import threading
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Callable, Dict, List, Optional, Any

import numpy as np

from ..models import StdTwoModeState, StateClass, GridSpec, ScanRecord
from ..utils.formatting import csv_cell
from .analysis import gie
from .bounds import g_tilde_min, g_tilde_variants
from .companion import gr2eof, log_negativity
from .errors import GieError
from .symplectic import classify, is_entangled, is_physical

logger = logging.getLogger(__name__)

PARAM_LOW = 1.0
PARAM_HIGH = 5.0
MAX_ATTEMPTS_PER_STATE = 1000

SCAN_CLASSES = {
    1: StateClass.SYM_GLEMS,
    2: StateClass.SYM_SQTH,
    3: StateClass.ASYM_SQTH_GLEMS,
    4: StateClass.GLEMS4,
    5: StateClass.GLEMS5,
    6: StateClass.GLEMS6,
    7: StateClass.GLEMS7,
}


def _draw_class_1(rng: np.random.Generator) -> Optional[tuple]:
    a = rng.uniform(PARAM_LOW, PARAM_HIGH)
    kx = rng.uniform(a - 1 / a, math.sqrt(a * a - 1))
    return a, a, kx, 1 / (a - kx) - a


def _draw_class_2(rng: np.random.Generator) -> Optional[tuple]:
    a = rng.uniform(PARAM_LOW, PARAM_HIGH)
    k = rng.uniform(a - 1, math.sqrt(a * a - 1))
    return a, a, k, k


def _draw_class_3(rng: np.random.Generator) -> Optional[tuple]:
    a, b = rng.uniform(PARAM_LOW, PARAM_HIGH, size=2)
    big, small = max(a, b), min(a, b)
    k = math.sqrt((big + 1) * (small - 1))
    return a, b, k, k


def _draw_class_4(rng: np.random.Generator) -> Optional[tuple]:
    a, b = rng.uniform(PARAM_LOW, PARAM_HIGH, size=2)
    a, b = max(a, b), min(a, b)
    kx = math.sqrt(a * (b * b - 1) / b)
    return a, b, kx, b * kx / a


def _draw_class_5(rng: np.random.Generator) -> Optional[tuple]:
    a, b, kx, kp = _draw_class_4(rng)
    return b, a, kx, kp


def _draw_on_glems_manifold(rng: np.random.Generator, a_larger: bool) -> Optional[tuple]:
    """Draw (a, b, kx) and solve nu2 = 1 for kp."""
    a, b = rng.uniform(PARAM_LOW, PARAM_HIGH, size=2)
    a, b = (max(a, b), min(a, b)) if a_larger else (min(a, b), max(a, b))
    ab = a * b
    if ab <= 1:
        return None
    kx = rng.uniform(0.0, math.sqrt(ab - 1))
    lead = ab - kx * kx
    constant = lead * ab + 1 - a * a - b * b
    disc = kx * kx + lead * constant
    if disc < 0:
        return None
    root = math.sqrt(disc)
    for kp in ((kx + root) / lead, (kx - root) / lead):
        if 0 < kp <= kx:
            return a, b, kx, kp
    return None


SAMPLERS: Dict[int, Callable[[np.random.Generator], Optional[tuple]]] = {
    1: _draw_class_1,
    2: _draw_class_2,
    3: _draw_class_3,
    4: _draw_class_4,
    5: _draw_class_5,
    6: lambda rng: _draw_on_glems_manifold(rng, a_larger=True),
    7: lambda rng: _draw_on_glems_manifold(rng, a_larger=False),
}


def evaluate_state(s: StdTwoModeState, grid: Optional[GridSpec] = None) -> ScanRecord:
    report = gie(s, grid)
    renyi = gr2eof(s)
    return ScanRecord(
        a=s.a, b=s.b, kx=s.kx, kp=s.kp,
        state_class=classify(s).value,
        homodyne_cond_ok=report.homodyne_cond_ok,
        gie=report.value,
        gie_lo=report.lower_l,
        gie_hi=report.upper_u,
        gr2eof=renyi,
        log_neg=log_negativity(s),
        abs_diff=abs(report.value - renyi) if renyi is not None else None,
        method=report.method.describe(),
    )


def _evaluate_state_standalone(job):
    """Standalone function for process-based parallel scanning"""
    idx, params, grid_data = job
    s = StdTwoModeState(*params)
    return idx, evaluate_state(s, GridSpec.from_dict(grid_data))


class ScanService:
    def __init__(
        self,
        max_workers: Optional[int] = None,
        parallel_threshold: Optional[int] = None,
        grid: Optional[GridSpec] = None
    ):
        from ..utils.settings import settings

        self.max_workers = max_workers if max_workers is not None else settings.get("scan.max_workers", 4)
        self.parallel_threshold = (
            parallel_threshold if parallel_threshold is not None else settings.get("scan.parallel_threshold", 10)
        )
        self.grid = grid or GridSpec.from_settings()
        self.progress_callback: Optional[Callable[[int, int, str], None]] = None
        self._cancel_scan = threading.Event()

    def set_progress_callback(self, callback: Callable[[int, int, str], None]):
        self.progress_callback = callback

    def _report_progress(self, current: int, total: int, message: str):
        if self.progress_callback:
            self.progress_callback(current, total, message)

    def cancel_scan(self):
        self._cancel_scan.set()

    def _accept(self, params: tuple, state_class: StateClass) -> Optional[StdTwoModeState]:
        try:
            s = StdTwoModeState(*params)
        except ValueError:
            return None
        if not is_physical(s) or not is_entangled(s) or classify(s) is not state_class:
            return None
        if g_tilde_min(s) < 0:
            return None
        if state_class is StateClass.SYM_SQTH and not g_tilde_variants(s).cond_sym_sqth:
            return None
        return s

    def sample_states(self, class_id: int, n: int, seed: int) -> List[StdTwoModeState]:
        """Rejection-sample n entangled states of a scan class that pass the homodyne condition."""
        if class_id not in SAMPLERS:
            raise ValueError(f"Unknown scan class {class_id}, expected one of {sorted(SAMPLERS)}")
        if n < 1:
            raise ValueError(f"Number of states must be at least 1, got {n}")

        rng = np.random.default_rng(seed)
        sampler, state_class = SAMPLERS[class_id], SCAN_CLASSES[class_id]
        states: List[StdTwoModeState] = []
        attempts = 0
        while len(states) < n and attempts < n * MAX_ATTEMPTS_PER_STATE:
            attempts += 1
            params = sampler(rng)
            if params is None:
                continue
            s = self._accept(params, state_class)
            if s is not None:
                states.append(s)

        if len(states) < n:
            logger.warning(f"Class {class_id}: only {len(states)} of {n} states accepted after {attempts} draws")
        logger.info(f"Sampled {len(states)} class-{class_id} states in {attempts} draws (seed {seed})")
        return states

    def run(self, class_id: int, n: int, seed: int) -> List[ScanRecord]:
        self._cancel_scan.clear()
        states = self.sample_states(class_id, n, seed)
        total = len(states)
        results: List[Optional[ScanRecord]] = [None] * total
        failed: List[tuple] = []

        if self.max_workers == 1 or total < self.parallel_threshold:
            for idx, s in enumerate(states):
                if self._cancel_scan.is_set():
                    break
                self._report_progress(idx + 1, total, f"Evaluating state {idx + 1}")
                try:
                    results[idx] = evaluate_state(s, self.grid)
                except GieError as e:
                    logger.error(f"Error evaluating {s.as_tuple()}: {e}")
                    failed.append(s.as_tuple())
        else:
            grid_data = self.grid.to_dict()
            with ProcessPoolExecutor(max_workers=self.max_workers) as executor:
                futures = {
                    executor.submit(_evaluate_state_standalone, (idx, s.as_tuple(), grid_data)): (idx, s)
                    for idx, s in enumerate(states)
                }

                completed = 0
                for future in as_completed(futures):
                    if self._cancel_scan.is_set():
                        break

                    idx, s = futures[future]
                    completed += 1
                    self._report_progress(completed, total, f"Evaluating state {idx + 1}")

                    try:
                        _, record = future.result()
                        results[idx] = record
                    except GieError as e:
                        logger.error(f"Error evaluating {s.as_tuple()}: {e}")
                        failed.append(s.as_tuple())

        if failed:
            logger.warning(f"Class {class_id}: {len(failed)} of {total} states failed and have no row: {failed}")
        return [record for record in results if record is not None]

    def write_csv(self, records: List[ScanRecord], path: Path):
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=list(ScanRecord.FIELDS), lineterminator="\n")
            writer.writeheader()
            for record in records:
                writer.writerow({key: csv_cell(value) for key, value in record.to_dict().items()})
        logger.info(f"Wrote {len(records)} scan rows to {path}")

    @staticmethod
    def summarize(records: List[ScanRecord]) -> Dict[str, Any]:
        diffs = [record.abs_diff for record in records if record.abs_diff is not None]
        return {
            "rows": len(records),
            "compared": len(diffs),
            "max_abs_diff": max(diffs) if diffs else None,
        }
