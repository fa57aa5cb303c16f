"""Sequential changepoint monitoring for random coefficient autoregressions."""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:  # build-tree layout: extension lives next to the build dir
    import os
    import sys

    _ext_dir = os.environ.get("RCAMON_EXT_DIR")
    if not _ext_dir:
        raise
    if _ext_dir not in sys.path:
        sys.path.insert(0, _ext_dir)
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
