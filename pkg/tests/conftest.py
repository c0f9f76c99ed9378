"""
Pytest configuration and fixtures for GIE Toolkit tests
"""

import pytest
import tempfile
import shutil
import os
from pathlib import Path

import numpy as np

# Keep the user's settings file out of the test run
os.environ.setdefault('GIE_SETTINGS', str(Path(tempfile.gettempdir()) / "gie_toolkit_tests_settings.json"))

from src.models import StdTwoModeState, GridSpec, SingleModeMeasurement
from src.core import get_entry


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests"""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def rng():
    """Seeded generator so property tests are reproducible"""
    return np.random.default_rng(20240611)


@pytest.fixture
def rho4():
    return get_entry("rho4").state


@pytest.fixture
def rho5():
    return get_entry("rho5").state


@pytest.fixture
def rho6_tilde():
    return get_entry("rho6_tilde").state


@pytest.fixture
def case2a_state():
    return get_entry("case2a").state


@pytest.fixture
def pure_tmsv():
    return get_entry("pure_tmsv").state


@pytest.fixture
def sym_glems():
    return get_entry("sym_glems").state


@pytest.fixture
def sym_sqth():
    return get_entry("sym_sqth_1p2").state


@pytest.fixture
def asym_sqth_glems():
    return get_entry("asym_sqth_glems").state


@pytest.fixture
def separable_state():
    """Physical, standard-form and separable"""
    return StdTwoModeState(a=2.0, b=2.0, kx=0.5, kp=0.5)


@pytest.fixture
def fast_grid():
    """Smallest grid the oracle accepts, one refinement round"""
    return GridSpec(n_theta=3, n_r=3, n_phi=4, n_tau=3, n_t=5, refinement_rounds=1)


@pytest.fixture
def sample_measurement():
    return SingleModeMeasurement(phi=0.7, tau=1.8, t=0.4)


@pytest.fixture
def state_file(temp_dir):
    """JSON state file written with expression strings"""
    path = temp_dir / "rho6.json"
    path.write_text(
        '{"a": "2*sqrt(2)", "b": "sqrt(2)", "kx": "(sqrt(97)+1)/8", "kp": "(sqrt(97)-1)/8"}',
        encoding='utf-8'
    )
    return path
