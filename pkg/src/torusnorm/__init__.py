"""torusnorm: exact Weyl-group, discrete-torus and Quillen-category computations."""

__version__ = "0.1.0"
