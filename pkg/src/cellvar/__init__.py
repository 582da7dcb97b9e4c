"""Discrete variational field theory on abstract cellular complexes.

Boundary/cochain calculus on cubic and Coxeter-Freudenthal-Kuhn lattices,
discrete Euler-Lagrange equations with Noether currents, a band-advancing
variational integrator, Karcher-mean simplicial interpolation of smooth
Lagrangians, and the Cosserat-rod instantiation with SO(3) geometry.
"""

from . import complexes, interp, rod, so3, variational

__all__ = ["complexes", "interp", "rod", "so3", "variational"]

__version__ = "0.1.0"
