from .state import StdTwoModeState, StateClass, CaseTag, SymplecticInvariants, SymplecticDecomposition, PurificationCM
from .measurement import MeasurementLimit, SingleModeMeasurement, PureLocalMeasurement, CondStdParams, GlemsConditional
from .grid import GridSpec
from .report import (
    AlphaTriple, KhMinimum, GTildeVariants, Class6Bound, PureThreeModeParams,
    MethodKind, GieMethod, GieReport, ScanRecord, TrajectoryPoint, SearchResult
)
from .catalog import CatalogEntry, ExpectedValue

__all__ = [
    'StdTwoModeState', 'StateClass', 'CaseTag', 'SymplecticInvariants', 'SymplecticDecomposition',
    'PurificationCM', 'MeasurementLimit', 'SingleModeMeasurement', 'PureLocalMeasurement',
    'CondStdParams', 'GlemsConditional', 'GridSpec', 'AlphaTriple', 'KhMinimum', 'GTildeVariants',
    'Class6Bound', 'PureThreeModeParams', 'MethodKind', 'GieMethod', 'GieReport', 'ScanRecord',
    'TrajectoryPoint', 'SearchResult', 'CatalogEntry', 'ExpectedValue'
]
