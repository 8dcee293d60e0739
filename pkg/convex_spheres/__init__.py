"""convex-spheres - closed-set lattices of convex geometries and the spheres built from them."""

__version__ = "1.0.0"
