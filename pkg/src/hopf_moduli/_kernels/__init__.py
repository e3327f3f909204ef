"""Kernel backend selection: compiled extension when available, numpy fallback otherwise.

Set HOPF_MODULI_PURE=1 to force the fallback (used by the benchmark and the
parity tests).
"""

import os

if os.environ.get("HOPF_MODULI_PURE") == "1":
    from . import pure as _impl
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as _impl

BACKEND = _impl.BACKEND_NAME

polymul = _impl.polymul
sylvester_det = _impl.sylvester_det
disc_log_abs = _impl.disc_log_abs
wp_value = _impl.wp_value
branch_coeffs = _impl.branch_coeffs
margin_scan = _impl.margin_scan
