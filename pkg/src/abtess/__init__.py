"""Matrix calculus over commutative (alpha, beta)-tessarines."""

__version__ = "0.1.0"
