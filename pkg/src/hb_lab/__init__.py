"""Numerical laboratory for de Branges-Rovnyak spaces of the family b/a = (1 - z)^(-alpha)."""
__version__ = "0.1.0"
