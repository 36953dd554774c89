"""Numeric kernel backends.

The compiled extension is preferred when importable; the pure-Python twin
is the fallback and the reference.  Both produce bit-identical results
(the extension is built with -ffp-contract=off and mirrors the pure code
statement for statement), so switching backends never changes a report.
"""

from . import pure as _pure

try:
    from . import _corekernels as _compiled
except ImportError:
    _compiled = None

_active = _compiled if _compiled is not None else _pure

AVAILABLE_BACKENDS = ("pure",) if _compiled is None else ("compiled", "pure")


def active_backend() -> str:
    """Name of the backend currently serving kernel calls."""
    return "pure" if _active is _pure else "compiled"


def available_backends() -> tuple:
    return AVAILABLE_BACKENDS


def use_backend(name: str) -> str:
    """Select 'compiled', 'pure', or 'auto'; returns the active name."""
    global _active
    if name == "pure":
        _active = _pure
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel backend is not available")
        _active = _compiled
    elif name == "auto":
        _active = _compiled if _compiled is not None else _pure
    else:
        raise ValueError(f"unknown backend {name!r}")
    return active_backend()


def psi_val(tau, lid, ca, p):
    return _active.psi_val(tau, lid, ca, p)


def quad_psi_negt(a, b, lid, ca, p, t, rel_tol):
    return _active.quad_psi_negt(a, b, lid, ca, p, t, rel_tol)


def pow_sums(n, e):
    return _active.pow_sums(n, e)


def bracket_sweep(m_max, p):
    return _active.bracket_sweep(m_max, p)


def choose_l_sweep(m_max, p, big_l):
    return _active.choose_l_sweep(m_max, p, big_l)


def radius_bound_sweep(m_max, p, lid, lia, big_l):
    return _active.radius_bound_sweep(m_max, p, lid, lia, big_l)


# canonical rule constants live in the pure module
GK_X = _pure.GK_X
GK_WK = _pure.GK_WK
GK_WG = _pure.GK_WG
