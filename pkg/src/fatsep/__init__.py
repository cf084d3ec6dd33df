"""Exact computations for fat point schemes in projective space.

Hilbert functions, separators of fat points and their degrees, last syzygy
shifts via the socle of an artinian reduction, and closed forms for powers of
complete intersections.
"""

from __future__ import annotations

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memoized Hilbert function, ideal basis and separator set."""
    from . import polyring, resolution, scheme, separator

    for mod in (polyring, scheme, separator, resolution):
        for obj in vars(mod).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()
