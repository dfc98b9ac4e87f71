"""GF(2)[x] kernel dispatch.

The compiled extension is used when it imports; otherwise the pure-Python
kernels are.  Set ``BMDS_PURE_PYTHON=1`` to force the fallback.
"""
import contextlib
import os

from . import _gf2_py as pure

if os.environ.get("BMDS_PURE_PYTHON", "") not in ("", "0"):
    compiled = None
else:
    try:
        from . import _gf2_ext as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

clmul = _impl.clmul
cycmul = _impl.cycmul
polymod = _impl.polymod
polydivmod = _impl.polydivmod
polygcd = _impl.polygcd
polyinv = _impl.polyinv


def degree(a: int) -> int:
    """Degree of a polynomial; -1 for the zero polynomial."""
    return a.bit_length() - 1


_NAMES = ("clmul", "cycmul", "polymod", "polydivmod", "polygcd", "polyinv")


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily route the kernels through "python" or "compiled"."""
    impl = {"python": pure, "compiled": compiled}.get(name)
    if impl is None:
        raise ValueError(f"backend {name!r} is not available")
    g = globals()
    saved = {k: g[k] for k in _NAMES + ("BACKEND",)}
    g.update({k: getattr(impl, k) for k in _NAMES})
    g["BACKEND"] = name
    try:
        yield
    finally:
        g.update(saved)
