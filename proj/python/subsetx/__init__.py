# SPDX-License-Identifier: Apache-2.0
"""Exact budget-constrained best subset selection for logistic regression."""

try:
    from subsetx._subsetx import *  # noqa: F401,F403
    from subsetx._subsetx import __doc__ as _core_doc
except ImportError:
    # Uninstalled tree: the extension lives on sys.path (e.g. the CMake
    # build directory) rather than inside the package.
    from _subsetx import *  # noqa: F401,F403
    from _subsetx import __doc__ as _core_doc

__version__ = "0.1.0"
