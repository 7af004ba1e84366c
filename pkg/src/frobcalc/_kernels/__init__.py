"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled extension is used when it imported successfully; otherwise the
pure-Python module is active.  :func:`use_backend` switches explicitly, which
the benchmark and the backend-agreement tests rely on.
"""

from contextlib import contextmanager

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def available_backends():
    return sorted(_BACKENDS)


def current_backend():
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


@contextmanager
def use_backend(name):
    """Temporarily route every kernel call through backend ``name``."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} is not available; have {available_backends()}")
    previous = _active
    _active = _BACKENDS[name]
    try:
        yield
    finally:
        _active = previous


def mul(a, b, p):
    return _active.mul(a, b, p)


def mul_trunc(a, b, p, bound):
    return _active.mul_trunc(a, b, p, bound)


def frob_split(terms, q):
    return _active.frob_split(terms, q)


def frob_power(terms, q):
    return _active.frob_power(terms, q)
