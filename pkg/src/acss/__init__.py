"""Algorithmic complexity of small 2-D objects via CTM/BDM, with baselines."""
__version__ = "0.1.0"
