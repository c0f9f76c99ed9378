from .errors import GieError, NonPhysicalStateError, NotApplicableError, NumericalError
from .symplectic import (
    is_physical, is_entangled, invariants_of, symplectic_eigenvalues, classify,
    williamson, residuals, sign_variants, purification
)
from .conditioning import conditional_cm, glems_conditional, std_params_of
from .bounds import g_tilde_min, homodyne_cond_ok, lower_bound_l, upper_bound_u, minimize_k_h
from .companion import log_negativity, gr2eof
from .oracle import OracleService, inf_over_eve, sup_inf, bracket
from .analysis import AnalysisService, gie
from .catalog import CATALOG, get_entry, verify_catalog
from .scan import ScanService

__all__ = [
    'GieError', 'NonPhysicalStateError', 'NotApplicableError', 'NumericalError',
    'is_physical', 'is_entangled', 'invariants_of', 'symplectic_eigenvalues', 'classify',
    'williamson', 'residuals', 'sign_variants', 'purification',
    'conditional_cm', 'glems_conditional', 'std_params_of',
    'g_tilde_min', 'homodyne_cond_ok', 'lower_bound_l', 'upper_bound_u', 'minimize_k_h',
    'log_negativity', 'gr2eof',
    'OracleService', 'inf_over_eve', 'sup_inf', 'bracket',
    'AnalysisService', 'gie',
    'CATALOG', 'get_entry', 'verify_catalog',
    'ScanService'
]
