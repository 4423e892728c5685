"""Numerical kernel backends.

Two interchangeable implementations of the hot scalar/vector kernels live
here: ``_fast`` (compiled) and ``_pure`` (plain Python). The compiled one is
picked at import when available; set ``INERTIA_KERNELS=pure`` (or ``fast``)
to force a choice. ``BACKEND`` names whichever implementation won.
"""

import os

from inertia._kernels import _pure

_choice = os.environ.get("INERTIA_KERNELS", "auto").lower()

if _choice == "pure":
    impl = _pure
elif _choice == "fast":
    from inertia._kernels import _fast as impl
else:
    try:
        from inertia._kernels import _fast as impl
    except ImportError:
        impl = _pure

BACKEND = impl.BACKEND

norm_cdf = impl.norm_cdf
norm_sf = impl.norm_sf
norm_quantile = impl.norm_quantile
t_sf_two_sided = impl.t_sf_two_sided
ols_core = impl.ols_core
sf_wstat = impl.sf_wstat


def load_backend(name):
    """Return a specific backend module by name ("pure" or "fast").

    Raises ImportError when the compiled backend was requested but is not
    built in this environment.
    """
    if name == "pure":
        return _pure
    if name == "fast":
        from inertia._kernels import _fast
        return _fast
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends():
    """Names of the backends importable right now."""
    names = ["pure"]
    try:
        load_backend("fast")
    except ImportError:
        pass
    else:
        names.append("fast")
    return names
