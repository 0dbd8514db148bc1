"""RIS-assisted near-field downlink energy-efficiency toolkit."""

from ._risee import *  # noqa: F401,F403
from ._risee import __version__  # noqa: F401
