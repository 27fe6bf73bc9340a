"""Dijkgraaf-Witten style invariants of manifolds with a codimension-one defect."""

__version__ = "0.1.0"
