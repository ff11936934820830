"""Hot transform kernels with backend selection.

Two interchangeable implementations exist: a compiled Cython extension
(``_core``) and a NumPy reference (``_ref``).  The compiled one is picked at
import time when present; ``TAUH_KERNELS=python`` forces the fallback and
``TAUH_KERNELS=compiled`` makes a missing extension a hard error.
``set_backend`` switches at runtime (used by the benchmark and the tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _ref

_BACKENDS = {"python": _ref}
try:
    from . import _core  # type: ignore[attr-defined]

    _BACKENDS["compiled"] = _core
except ImportError:
    _core = None

_env = os.environ.get("TAUH_KERNELS", "auto").strip().lower() or "auto"
if _env == "auto":
    _active = "compiled" if "compiled" in _BACKENDS else "python"
elif _env in _BACKENDS:
    _active = _env
elif _env == "compiled":
    raise ImportError("TAUH_KERNELS=compiled but the extension is not built")
else:
    raise ValueError(f"unrecognized TAUH_KERNELS value: {_env!r}")


def backend_name() -> str:
    return _active


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str) -> None:
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; available: {available_backends()}")
    _active = name


def dft_last_axis(x, inverse=False):
    return _BACKENDS[_active].dft_last_axis(x, bool(inverse))


def batch_dft(table, divisors, inverse=False):
    """Row-wise DFT over the product group prod Z_{n_i}.

    ``table`` has shape (rows, N) with N = prod(divisors); element index is
    C-order over the divisor axes.  Forward: out[j] = sum_k v[k] exp(-2*pi*i
    sum j_i k_i / n_i).  Inverse additionally scales by 1/N.
    """
    impl = _BACKENDS[_active]
    table = np.asarray(table, dtype=np.complex128)
    squeeze = table.ndim == 1
    if squeeze:
        table = table[None, :]
    divisors = tuple(int(n) for n in divisors)
    total = 1
    for n in divisors:
        total *= n
    if table.shape[1] != total:
        raise ValueError(f"table width {table.shape[1]} != group order {total}")
    x = table.reshape((table.shape[0],) + divisors)
    for axis in range(1, x.ndim):
        x = np.moveaxis(x, axis, -1)
        shape = x.shape
        flat = impl.dft_last_axis(np.ascontiguousarray(x.reshape(-1, shape[-1])), bool(inverse))
        x = np.moveaxis(flat.reshape(shape), -1, axis)
    out = np.ascontiguousarray(x.reshape(table.shape[0], total))
    if inverse:
        out = out / total
    return out[0] if squeeze else out


def fourier_quadrature(rows, nodes, weights, freqs, sign):
    """Weighted Fourier sums over uniformly spaced nodes.

    out[i, l] = sum_j weights[j] * rows[i, j] * exp(sign*2*pi*i*freqs[i,l]*nodes[j])
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    return _BACKENDS[_active].fourier_quadrature(rows, nodes, weights, freqs, sign)
