"""Kernel dispatch: the compiled ``_kernels`` extension when it is built,
else the pure-Python twin.  Set ``SECDOM_PURE_PYTHON=1`` to force the
fallback.
"""
import os

BACKEND = "python"

if not os.environ.get("SECDOM_PURE_PYTHON"):
    try:
        from ._kernels import (  # noqa: F401
            CONNECTED,
            DOMINATING,
            SECURE,
            SECURE_CONNECTED,
            coverage,
            first_undefended,
            has_property,
            is_connected_set,
            min_property_set,
            eta_btran,
            eta_ftran,
        )

        BACKEND = "compiled"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import (  # noqa: F401
        CONNECTED,
        DOMINATING,
        SECURE,
        SECURE_CONNECTED,
        coverage,
        first_undefended,
        has_property,
        is_connected_set,
        min_property_set,
        eta_btran,
        eta_ftran,
    )

__all__ = [
    "BACKEND",
    "DOMINATING",
    "SECURE",
    "CONNECTED",
    "SECURE_CONNECTED",
    "coverage",
    "first_undefended",
    "has_property",
    "is_connected_set",
    "min_property_set",
    "eta_ftran",
    "eta_btran",
]
