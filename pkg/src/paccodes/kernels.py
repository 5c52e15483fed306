"""Backend selection for the decoder inner-loop kernels.

The compiled extension (paccodes._ckernels, Cython) is used when it
imports; otherwise the pure-numpy twin (paccodes._kernels_py) takes over.
Force a backend with the PACCODES_KERNELS environment variable ("c" or
"py") or at runtime with set_backend(); the decoders look the functions up
through this module on every call, so switching takes effect immediately.
"""

from __future__ import annotations

import os

from . import _kernels_py

_FUNCTIONS = (
    "f_llr",
    "g_llr",
    "hard_rows",
    "penalty_rows",
    "leaf_penalty",
    "polar_rows",
    "zero_input_bit",
    "zero_input_rows",
    "conv_inverse_rows",
)

_BACKENDS = {"py": _kernels_py}
try:
    from . import _ckernels

    _BACKENDS["c"] = _ckernels
except ImportError:
    _ckernels = None

_active = None


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def active_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    """Route all kernel calls to the named backend ("c" or "py")."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(
            f"kernel backend {name!r} not available; built backends: {available_backends()}"
        )
    mod = _BACKENDS[name]
    for fn in _FUNCTIONS:
        globals()[fn] = getattr(mod, fn)
    _active = name


_env = os.environ.get("PACCODES_KERNELS", "").strip().lower()
if _env and _env not in _BACKENDS:
    raise ImportError(
        f"PACCODES_KERNELS={_env!r} requested but only {available_backends()} are available"
    )
set_backend(_env or ("c" if "c" in _BACKENDS else "py"))
