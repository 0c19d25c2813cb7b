"""Python surface of the generalized Hartree laboratory.

The compiled extension carries the actual implementations; this package adds
import-path handling for in-tree builds (GHARTREE_EXT_DIR) so the module is
usable straight out of a CMake build as well as from an installed wheel.
"""

import os
import sys

_ext_dir = os.environ.get("GHARTREE_EXT_DIR")
if _ext_dir and _ext_dir not in sys.path:
    sys.path.insert(0, _ext_dir)

try:
    from _core import *  # type: ignore[import-not-found]  # noqa: F403
    from _core import __version__  # type: ignore[import-not-found]  # noqa: F401
except ImportError:
    from ghartree._core import *  # type: ignore[import-not-found]  # noqa: F403
    from ghartree._core import __version__  # type: ignore[import-not-found]  # noqa: F401
