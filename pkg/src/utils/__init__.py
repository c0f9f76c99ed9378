from .expressions import evaluate, parse_params
from .formatting import round_significant, format_float, rounded, csv_cell

__all__ = ['evaluate', 'parse_params', 'round_significant', 'format_float', 'rounded', 'csv_cell']
