"""
FrogLab - first-passage experiments for the frog model on Z^d
"""

from froglab.__version__ import __version__

__all__ = ["__version__"]
