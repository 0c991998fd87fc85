"""Kernel backend selection.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python reference kernels.  ``BACKEND`` names the active one.
"""

from array import array

from degstar import _purepy

try:
    from degstar import _speedups as _impl
    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _purepy
    BACKEND = "python"

BACKENDS = {"python": _purepy}
if BACKEND == "cython":
    BACKENDS["cython"] = _impl

first_bicolored_p4 = _impl.first_bicolored_p4
all_bicolored_p4 = _impl.all_bicolored_p4
peel = _impl.peel
degenerate_search = _impl.degenerate_search
distance_two_conflict = _impl.distance_two_conflict
degeneracy = _impl.degeneracy


def int_array(values) -> array:
    return array("q", values)
