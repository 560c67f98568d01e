"""
FrogLab Version
Version v1.2.1
20260928

Version History:
- v1.0.0: Walk field, frog engine, Dijkstra oracle
- v1.1.0: Percolation paths, animals and tessellation bounds
- v1.2.0: Experiment runner, verify battery, show
- v1.2.1: Censoring and scaling edge-case fixes
"""

__version__ = "1.2.1"
__version_info__ = (1, 2, 1)
__description__ = "First-passage experiments for the frog model on Z^d"
