"""Bessel-property analysis of normal-operator orbits.

The heavy lifting lives in the compiled ``_core`` extension; this package
re-exports it. When running from a build tree (no installed extension next to
this file), the ``BESSELORBIT_EXT_DIR`` environment variable points at the
directory holding the compiled module.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:
    import os
    import sys

    _ext_dir = os.environ.get("BESSELORBIT_EXT_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = _core_doc
