"""Encodings for range tau-majority queries.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Thresholds are exact (num, den) pairs end to end.
"""

try:
    from ._majscope import *  # noqa: F401,F403  (installed package layout)
    from ._majscope import __doc__ as _doc
except ImportError:  # build-tree layout: extension sits on PYTHONPATH
    from _majscope import *  # noqa: F401,F403
    from _majscope import __doc__ as _doc

__doc__ = _doc or __doc__
