"""Python access to the Dunkl transform toolkit.

The heavy lifting happens in the compiled ``_dunkl`` extension; this package
re-exports it and adds a helper that parses suite reports.
"""

import json

from ._dunkl import *  # noqa: F401,F403
from ._dunkl import DunklError, run_suite as _run_suite

__all__ = [name for name in dir() if not name.startswith("_")] + ["verify"]


def verify(suite, **settings):
    """Run one verification suite and return the parsed JSON report.

    Keyword arguments use the config-file keys, e.g. ``lam="0.5,1"`` is
    passed as ``lambda``.
    """
    opts = {"suite": suite}
    for key, value in settings.items():
        key = "lambda" if key == "lam" else key
        if isinstance(value, (list, tuple)):
            value = ",".join(str(v) for v in value)
        opts[key] = str(value)
    text, _csv = _run_suite(opts)
    return json.loads(text)
