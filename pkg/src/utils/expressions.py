"""Reader for numeric state parameters such as "2*sqrt(2)" or "(sqrt(97)+1)/8"."""

import ast
import math
import operator
from typing import Union, List

_BINARY_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}

_UNARY_OPS = {
    ast.UAdd: operator.pos,
    ast.USub: operator.neg,
}


def evaluate(expression: Union[str, int, float]) -> float:
    """Evaluate a number or an expression built from +, -, *, /, parentheses and sqrt."""
    if isinstance(expression, bool):
        raise ValueError(f"Not a number: {expression!r}")
    if isinstance(expression, (int, float)):
        return float(expression)
    if not isinstance(expression, str) or not expression.strip():
        raise ValueError(f"Not a numeric expression: {expression!r}")

    try:
        tree = ast.parse(expression.strip(), mode='eval')
    except SyntaxError as e:
        raise ValueError(f"Cannot parse expression '{expression}': {e.msg}") from e

    try:
        value = _evaluate_node(tree.body)
    except ZeroDivisionError as e:
        raise ValueError(f"Division by zero in expression '{expression}'") from e

    if not math.isfinite(value):
        raise ValueError(f"Expression '{expression}' is not finite")
    return value


def _evaluate_node(node: ast.AST) -> float:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return float(node.value)
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY_OPS:
        return _BINARY_OPS[type(node.op)](_evaluate_node(node.left), _evaluate_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY_OPS:
        return _UNARY_OPS[type(node.op)](_evaluate_node(node.operand))
    if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt"
            and len(node.args) == 1 and not node.keywords):
        argument = _evaluate_node(node.args[0])
        if argument < 0:
            raise ValueError(f"sqrt of negative number {argument}")
        return math.sqrt(argument)
    raise ValueError(f"Unsupported element in expression: {ast.dump(node)}")


def parse_params(text: str) -> List[float]:
    """Split "a,b,kx,kp" into four evaluated numbers."""
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(f"Expected four comma-separated parameters a,b,kx,kp, got {len(parts)}")
    return [evaluate(part) for part in parts]
