"""
FrogLab
Number Formatting v1.0
20260925

Platform-independent text for CSV cells: integers plain, reals with nine
significant digits and a `.` separator.
"""

from fractions import Fraction
from typing import Any

import numpy as np

SIGNIFICANT = 9


def format_number(value: Any) -> str:
    """
    Render one CSV cell.

    bool -> 0/1, int -> plain, float -> '.9g' (no exponent for
    1e-3 <= |v| < 1e9), None -> NA, anything else -> str.
    """
    if value is None:
        return "NA"
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, Fraction):
        value = float(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if value == 0.0:
            return "0"
        return format(value, f".{SIGNIFICANT}g")
    return str(value)
