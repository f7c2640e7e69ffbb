"""Radial spherical analysis and shifted heat-semigroup dynamics on hyperbolic spaces."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, certify_json


def certify(dims, p, c, seed, windowed=True):
    """Run the chaos-evidence pipeline; returns the certificate as a dict."""
    return _json.loads(certify_json(list(dims), p, c, seed, windowed))
