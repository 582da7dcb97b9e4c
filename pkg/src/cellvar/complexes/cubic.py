"""The n-D cubic cellular complex on the half-integer lattice.

A cell with barycenter alpha in (Z/2)^n is encoded by the integer tuple
2*alpha (doubled coordinates), so half-integer entries become odd numbers
and all arithmetic stays exact.  The dimension of a cell is its number of
odd entries; vertices are the all-even tuples.

The incidence sign follows the orientation convention vol_alpha =
dx_{i_1} ^ ... ^ dx_{i_k} over the increasing half-integer positions, which
reduces to the explicit alternating boundary formula
(-1)^(j-1) * s for the facet obtained by moving the j-th odd coordinate
by s = +-1.
"""

from __future__ import annotations

import itertools
import math

from .core import CellComplex


class CubicComplex(CellComplex):
    """Cubic cellular complex on R^n, cells keyed by doubled coordinates."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self._n = int(n)

    @property
    def n(self):
        return self._n

    def _check(self, cell):
        if len(cell) != self._n:
            raise ValueError(f"cell {cell!r} has wrong length for n={self._n}")
        return cell

    def dim(self, cell):
        return sum(1 for c in self._check(cell) if c & 1)

    def incidence(self, beta, alpha):
        self._check(beta)
        self._check(alpha)
        moved = None
        for j, (b, a) in enumerate(zip(beta, alpha)):
            if a == b:
                continue
            if moved is not None or abs(a - b) != 1 or not (b & 1):
                return 0
            moved = (j, a - b)
        if moved is None:
            return 0
        j, step = moved
        position = sum(1 for c in beta[:j] if c & 1)
        return step * (-1) ** position

    def down_adjacent(self, beta):
        self._check(beta)
        out = []
        for j, c in enumerate(beta):
            if c & 1:
                out.append(beta[:j] + (c + 1,) + beta[j + 1 :])
                out.append(beta[:j] + (c - 1,) + beta[j + 1 :])
        return tuple(out)

    def up_adjacent(self, alpha):
        self._check(alpha)
        out = []
        for j, c in enumerate(alpha):
            if not (c & 1):
                out.append(alpha[:j] + (c + 1,) + alpha[j + 1 :])
                out.append(alpha[:j] + (c - 1,) + alpha[j + 1 :])
        return tuple(out)

    def adherent_vertices(self, cell):
        self._check(cell)
        axes = [(c - 1, c + 1) if c & 1 else (c,) for c in cell]
        return tuple(itertools.product(*axes))

    # -- lattice-specific helpers ------------------------------------------

    def vertex(self, coords):
        """Vertex cell at integer coordinates."""
        return tuple(2 * int(c) for c in coords)

    def coords(self, cell):
        """Barycenter of a cell as a float tuple (halves of the encoding)."""
        return tuple(c / 2.0 for c in self._check(cell))

    def locate(self, point):
        """Unique cell whose open hull contains the point.

        Coordinate i of the cell is the integer point[i] when that entry is
        an integer, else the half-integer floor(point[i]) + 1/2.
        """
        cell = []
        for x in point:
            f = math.floor(x)
            cell.append(2 * int(f) if x == f else 2 * int(f) + 1)
        return self._check(tuple(cell))

    def sphere_vertices(self, vertex):
        """The 3^n vertices adherent to the sphere centered at a vertex."""
        if self.dim(vertex) != 0:
            raise ValueError("sphere of a non-vertex cell")
        return tuple(
            tuple(v + 2 * e for v, e in zip(vertex, offs))
            for offs in itertools.product((-1, 0, 1), repeat=self._n)
        )

    def sphere_cells(self, vertex):
        """The 2^n top cells of the sphere centered at a vertex."""
        if self.dim(vertex) != 0:
            raise ValueError("sphere of a non-vertex cell")
        return tuple(
            tuple(v + e for v, e in zip(vertex, offs))
            for offs in itertools.product((-1, 1), repeat=self._n)
        )

    def window(self, extent, center=None):
        """All cells with barycenter coordinates within +-extent of center."""
        if center is None:
            center = (0,) * self._n
        shifted = self.vertex(center)
        span = [
            range(c - 2 * extent, c + 2 * extent + 1) for c in shifted
        ]
        return [cell for cell in itertools.product(*span)]
