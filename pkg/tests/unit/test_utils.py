"""
Unit tests for parameter expressions and number formatting
"""

import pytest
import math

from src.utils.expressions import evaluate, parse_params
from src.utils.formatting import round_significant, format_float, rounded, csv_cell


@pytest.mark.unit
class TestExpressions:
    """Test the parameter expression reader"""

    @pytest.mark.parametrize("text,expected", [
        ("2", 2.0),
        ("2*sqrt(2)", 2 * math.sqrt(2)),
        ("(sqrt(97)+1)/8", (math.sqrt(97) + 1) / 8),
        ("1/sqrt(2)", 1 / math.sqrt(2)),
        ("-1.5 + 3", 1.5),
        (" 4/3 ", 4 / 3),
    ])
    def test_evaluate(self, text, expected):
        """Test arithmetic and sqrt expressions evaluate exactly"""
        assert evaluate(text) == pytest.approx(expected, rel=1e-15)

    def test_numbers_pass_through(self):
        """Test plain numbers are returned as floats"""
        assert evaluate(3) == 3.0
        assert evaluate(0.25) == 0.25

    @pytest.mark.parametrize("text", [
        "", "2**3", "__import__('os')", "sqrt(2, 3)", "log(2)", "1/0", "sqrt(-1)", "1e400", "2 +",
    ])
    def test_rejected(self, text):
        """Test unsupported or invalid expressions raise ValueError"""
        with pytest.raises(ValueError):
            evaluate(text)

    def test_bool_rejected(self):
        """Test booleans are not accepted as numbers"""
        with pytest.raises(ValueError):
            evaluate(True)

    def test_parse_params(self):
        """Test a comma-separated parameter list"""
        assert parse_params("2*sqrt(2),sqrt(2),sqrt(2),1/sqrt(2)") == pytest.approx(
            [2 * math.sqrt(2), math.sqrt(2), math.sqrt(2), 1 / math.sqrt(2)]
        )

    def test_parse_params_count(self):
        """Test a parameter list must have four entries"""
        with pytest.raises(ValueError, match="four"):
            parse_params("1,2,3")


@pytest.mark.unit
class TestFormatting:
    """Test output formatting"""

    def test_round_significant(self):
        """Test rounding to 15 significant digits"""
        assert round_significant(1 / 3) == 0.333333333333333
        assert round_significant(0.0) == 0.0
        assert math.isinf(round_significant(math.inf))

    def test_format_float(self):
        """Test fixed-precision formatting"""
        assert format_float(math.log(6 / 5), 6) == "0.182322"

    def test_rounded_nested(self):
        """Test rounding reaches into nested dicts and lists"""
        data = {"a": 1 / 3, "flag": True, "none": None, "items": [2 / 3, "x"], "n": 3}
        result = rounded(data, 4)

        assert result == {"a": 0.3333, "flag": True, "none": None, "items": [0.6667, "x"], "n": 3}

    def test_csv_cell(self):
        """Test CSV cell rendering of None, booleans and numbers"""
        assert csv_cell(None) == ""
        assert csv_cell(True) == "true"
        assert csv_cell(False) == "false"
        assert csv_cell(0.5) == "0.5"
        assert csv_cell("glems4") == "glems4"
