"""SDP and spectral clustering of two-population mixtures.

Thin wrapper over the C++ core: mixture sampling, global centering,
the adjusted-objective SDP with sign rounding, spectral baselines,
recovery metrics, and the deterministic verification battery.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
