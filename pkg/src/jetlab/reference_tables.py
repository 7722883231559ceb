"""Reference bracket tables of j^2(h^2) (basis E) and Lie(JL_c) (basis F).

Row i, column j holds [b_i, b_j]. The trivial last row and column are
omitted. ``c`` stands for the parameter.
"""
from __future__ import annotations

import re
from fractions import Fraction

E_TABLE = [
['0', '0', '-4E16', '0', '-E17', '-E18', '0', '-E20', '0', '0', '0', '0', '0', '0', '-E19', '0', '-E21', '0', '0', '0'],
['0', '0', '0', '-4E16', '0', '-E17', 'E20', '0', '-E18', '-E19', '-E20', '0', '0', '0', '-E20', '0', '0', '-E21', '0', '0'],
['4E16', '0', '0', '0', '0', '0', '-E17', '0', '0', '-E18', '0', '-E19', '-E20', '0', '0', '0', '0', '0', '-E21', '0'],
['0', '4E16', '0', '0', '0', '0', '0', '-E17', '0', '0', '-E18', '0', '-E19', '-E20', '0', '0', '0', '0', '0', '-E21'],
['E17', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['E18', 'E17', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '-E20', 'E17', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '1/4 E21', '0', '0', '0', '0'],
['E20', '0', '0', 'E17', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', 'E18', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', 'E19', 'E18', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', 'E20', '0', 'E18', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', 'E19', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', 'E20', 'E19', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', '0', 'E20', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['E19', 'E20', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '-1/4 E21', '0', '0', '0', '0'],
['0', '0', '0', '0', '0', '0', '-1/4 E21', '0', '0', '0', '0', '0', '0', '0', '1/4 E21', '0', '0', '0', '0', '0'],
['E21', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', 'E21', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', 'E21', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', '0', 'E21', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
]

F_TABLE = [
['0', '0', '-4F15', '0', '-F17', '0', '-F19', 'cF16', '0', '0', 'F16', '0', 'cF16', '-F18', '0', '-F20', '0', '0', '0'],
['0', '0', '0', '-4F15', '-F16', 'F19', '0', '-F17', '-F18', '-F19', '0', '0', '0', '-F19', '0', '0', '-F20', '0', '0'],
['4F15', '0', '0', '0', '0', '-F16', '0', '0', '-F17', '0', '-F18', '-F19', '0', '0', '0', '0', '0', '-F20', '0'],
['0', '4F15', '0', '0', '0', '0', '-F16', '0', '0', '-F17', '0', '-F18', '-F19', '0', '0', '0', '0', '0', '-F20'],
['F17', 'F16', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '-F19', 'F16', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '1/4 F20', '0', '0', '0', '0'],
['F19', '0', '0', 'F16', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['-cF16', 'F17', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', 'F18', 'F17', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', 'F19', '0', 'F17', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['-F16', '0', 'F18', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', 'F19', 'F18', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['-cF16', '0', '0', 'F19', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['F18', 'F19', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '-1/4 F20', '0', '0', '0', '0'],
['0', '0', '0', '0', '0', '-1/4 F20', '0', '0', '0', '0', '0', '0', '0', '1/4 F20', '0', '0', '0', '0', '0'],
['F20', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', 'F20', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', 'F20', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
['0', '0', '0', 'F20', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0', '0'],
]

_CELL = re.compile(r"^(-?)(c|\d+/\d+ ?|\d+)?([EF])(\d+)$")


def parse_cell(cell: str, c: Fraction | None = None) -> dict[int, Fraction]:
    """``'-4E16'`` -> {15: -4} (0-based index); ``'cF16'`` needs ``c``."""
    cell = cell.strip()
    if cell == "0":
        return {}
    m = _CELL.match(cell)
    if m is None:
        raise ValueError(f"unparsed cell {cell!r}")
    sign, coef, _, idx = m.groups()
    if coef is None:
        value = Fraction(1)
    elif coef == "c":
        value = Fraction(c)
    else:
        value = Fraction(coef.strip())
    if sign:
        value = -value
    return {int(idx) - 1: value}
