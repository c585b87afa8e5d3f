"""cadist - Cayley automatic structures, distance functions and corridor fillings."""

__version__ = "0.1.0"
