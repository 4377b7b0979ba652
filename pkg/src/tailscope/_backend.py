"""Select the compiled kernels when importable, else the numpy fallback.

Set ``TAILSCOPE_PURE=1`` to force the fallback.
"""

import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("TAILSCOPE_PURE", "").strip() not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl  # noqa: F811
    except ImportError:
        _impl = _fallback
    else:
        BACKEND = "cython"

z_profile = _impl.z_profile
kendall_trend = _impl.kendall_trend
