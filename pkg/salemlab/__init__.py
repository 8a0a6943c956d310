"""Random Cantor measures with prescribed Hausdorff and Fourier dimension."""

__version__ = "0.1.0"
