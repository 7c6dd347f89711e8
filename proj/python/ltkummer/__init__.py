"""Exact Kummer-faithfulness certifier for Lubin-Tate extensions of p-adic fields."""

import os

if os.environ.get("LTK_CORE_FROM_BUILD"):
    # in-tree test runs put the compiled module directly on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
else:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
