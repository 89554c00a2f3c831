"""Campaign kernel backend selection.

The compiled extension is preferred when importable; setting
CONFOUND_KIT_PURE=1 forces the pure-Python reference kernel instead.  Both
backends implement the same stream and arithmetic, so campaign reports do
not depend on which one ran.
"""

import os

from . import _pykernel

_MASK64 = (1 << 64) - 1

if os.environ.get("CONFOUND_KIT_PURE") == "1":
    _impl = _pykernel
    BACKEND = "pure"
else:
    try:
        from . import _ckernel as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernel
        BACKEND = "pure"

EQ_NONE = _pykernel.EQ_NONE
EQ_H1 = _pykernel.EQ_H1
EQ_H5 = _pykernel.EQ_H5
IRRELEVANT = _pykernel.IRRELEVANT
NO_CONFOUNDING = _pykernel.NO_CONFOUNDING


def run_campaign(model, rep, eq, conclusion, start, count, seed, tol, budget):
    """Dispatch one campaign chunk to the selected backend."""
    return _impl.run_campaign(
        model, rep, eq, conclusion, start, count, seed & _MASK64, tol, budget
    )


def available_backends() -> dict:
    """Importable kernel modules by name, for benchmarks and parity tests."""
    backends = {"pure": _pykernel}
    try:
        from . import _ckernel

        backends["compiled"] = _ckernel
    except ImportError:
        pass
    return backends
