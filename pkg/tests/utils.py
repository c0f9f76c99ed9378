"""
Test utilities and helper functions for GIE Toolkit tests
"""

import math
from typing import List, Optional

import numpy as np

from src.models import StdTwoModeState, StateClass, SingleModeMeasurement
from src.core.symplectic import CASE_TOL, is_physical


class StateGenerator:
    """Generate random states and measurements for property tests"""

    @staticmethod
    def random_physical(rng: np.random.Generator, low: float = 1.0, high: float = 5.0) -> StdTwoModeState:
        """Uniformly drawn physical standard-form state"""
        while True:
            a, b = rng.uniform(low, high, size=2)
            if a * b <= 1:
                continue
            kx = rng.uniform(0.0, math.sqrt(a * b - 1))
            kp = rng.uniform(0.0, kx)
            if kp <= 1e-6:
                continue
            s = StdTwoModeState(a=a, b=b, kx=kx, kp=kp)
            if is_physical(s):
                return s

    @staticmethod
    def random_physical_states(rng: np.random.Generator, count: int) -> List[StdTwoModeState]:
        return [StateGenerator.random_physical(rng) for _ in range(count)]

    @staticmethod
    def random_symmetric(rng: np.random.Generator, low: float = 1.0, high: float = 5.0) -> StdTwoModeState:
        while True:
            a = rng.uniform(low, high)
            kx = rng.uniform(0.0, math.sqrt(a * a - 1))
            kp = rng.uniform(0.0, kx)
            if kp <= 1e-6:
                continue
            s = StdTwoModeState(a=a, b=a, kx=kx, kp=kp)
            if is_physical(s):
                return s

    @staticmethod
    def random_glems(rng: np.random.Generator, state_class: Optional[StateClass] = None) -> StdTwoModeState:
        """GLEMS drawn by the scan samplers; classes 4 to 7 unless one is given"""
        from src.core.scan import SAMPLERS, SCAN_CLASSES
        from src.core.symplectic import classify

        if state_class is None:
            class_ids = [4, 5, 6, 7]
        else:
            class_ids = [k for k, v in SCAN_CLASSES.items() if v is state_class]
        while True:
            class_id = int(rng.choice(class_ids))
            params = SAMPLERS[class_id](rng)
            if params is None:
                continue
            try:
                s = StdTwoModeState(*params)
            except ValueError:
                continue
            if is_physical(s) and classify(s) is SCAN_CLASSES[class_id] and s.kp > CASE_TOL:
                return s

    @staticmethod
    def random_measurement(rng: np.random.Generator, tau_max: float = 5.0, t_max: float = 2.0) -> SingleModeMeasurement:
        return SingleModeMeasurement(
            phi=float(rng.uniform(0.0, math.pi)),
            tau=float(rng.uniform(1.0, tau_max)),
            t=float(rng.uniform(0.0, t_max)),
        )

    @staticmethod
    def local_rotation(theta_a: float, theta_b: float) -> np.ndarray:
        """Block-diagonal local phase rotation on A and B"""
        def rot(angle):
            c, s = math.cos(angle), math.sin(angle)
            return np.array([[c, -s], [s, c]])

        out = np.zeros((4, 4))
        out[:2, :2] = rot(theta_a)
        out[2:, 2:] = rot(theta_b)
        return out
