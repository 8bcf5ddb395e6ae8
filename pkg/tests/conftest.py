import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

EPS = 2.0**-52


def eps_units(x: float, y: float) -> float:
    """Distance in units of the last place, relative to the larger magnitude.

    ``eps_units(x, y) <= k`` means ``|x - y| <= k * 2^-52 * max(|x|, |y|)``,
    the usual convention for "within k ulp" checks.
    """
    if x == y:
        return 0.0
    return abs(x - y) / (EPS * max(abs(x), abs(y)))
