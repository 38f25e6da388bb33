"""Adaptive-flow design of transportation networks.

Thin Python layer over the C++ core: spatial networks, the adaptive-flow
simulation, baseline generators, design indicators and the batch experiment
driver.
"""

from physnet._physnet import *  # noqa: F401,F403

__version__ = "0.1.0"
