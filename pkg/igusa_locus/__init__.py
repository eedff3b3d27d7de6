"""
igusa-locus
Exact computation of the quaternionic locus in Igusa's threefold.
"""

__version__ = "1.0.0"
