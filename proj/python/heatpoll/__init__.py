"""Personality-driven temperature negotiation on a social network.

Thin wrapper over the compiled core. The C++ CLI (`heatpoll`) drives full
experiments; this module exposes the main operations for scripting:
network construction, mock simulation runs, response parsing and the
regression toolkit (OLS, FE/RE, correlated random effects, Hausman).
"""

try:
    from ._heatpoll import *  # noqa: F401,F403
    from ._heatpoll import __version__  # noqa: F401
except ImportError:  # in-tree builds put the module on sys.path directly
    from _heatpoll import *  # noqa: F401,F403
    from _heatpoll import __version__  # noqa: F401
