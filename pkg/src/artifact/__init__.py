"""Compatible maps of n-bit words: verification, generators, analysis and a toy cipher."""

__version__ = "0.1.0"
