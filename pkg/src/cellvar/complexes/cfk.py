"""Coxeter-Freudenthal-Kuhn simplicial complex on the integer lattice.

Vertices are plain integer coordinate tuples (the lattice Z^n itself).  A
k-cell with k >= 1 is encoded as ``(base, sets)`` where ``base`` is the
lowest-weight vertex and ``sets`` is an ordered sequence of
pairwise-disjoint nonempty subsets of {1, ..., n}, each stored as a sorted
tuple of 1-based indices.  The cell's vertices, in increasing weight order,
are

    v_0 = base,   v_i = base + e(S_1) + ... + e(S_i),

where e(S) is the 0/1 indicator vector of S.  Weight order coincides with
lexicographic order of the vertex tuples, which is the canonical vertex
order used throughout.

Incidence signs come from the conventional orientation form on the
supporting affine subspace (coordinates x_{min S_a} in increasing index
order) evaluated as exact integer determinants on spanning edge vectors.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .core import CellComplex

# Fractional parts closer than this are grouped onto a common subset during
# point location (exact-equality grouping is meaningless in floating point).
GROUP_TOL = 1e-13


def _indicator(n, subset):
    return tuple(1 if i + 1 in subset else 0 for i in range(n))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _int_det(rows):
    """Exact determinant of a small integer matrix (Bareiss elimination)."""
    size = len(rows)
    if size == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[size - 1][size - 1]


def _nonempty_subsets(indices):
    indices = tuple(sorted(indices))
    for size in range(1, len(indices) + 1):
        yield from itertools.combinations(indices, size)


def _is_pair(cell):
    # (base, sets) pairs have a tuple first entry; vertices are int tuples.
    return isinstance(cell[0], tuple)


def _split(cell):
    if _is_pair(cell):
        return cell[0], cell[1]
    return tuple(cell), ()


def _canon(base, sets):
    return base if not sets else (base, sets)


class CfkComplex(CellComplex):
    """CFK simplicial complex on Z^n."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self._n = int(n)

    @property
    def n(self):
        return self._n

    def validate(self, cell):
        base, sets = _split(cell)
        if len(base) != self._n:
            raise ValueError(f"base {base!r} has wrong length for n={self._n}")
        seen = set()
        for s in sets:
            if not s:
                raise ValueError("invalid cell: empty step set")
            for i in s:
                if not 1 <= i <= self._n or i in seen:
                    raise ValueError("invalid cell: overlapping or out-of-range sets")
                seen.add(i)
        return cell

    def dim(self, cell):
        return len(_split(cell)[1])

    def vertices(self, cell):
        """Adherent vertices in increasing weight (= lexicographic) order."""
        try:
            cache = self._vertices_cache
        except AttributeError:
            cache = self._vertices_cache = {}
        hit = cache.get(cell)
        if hit is None:
            base, sets = _split(self.validate(cell))
            out = [base]
            current = base
            for s in sets:
                current = _add(current, _indicator(self._n, s))
                out.append(current)
            hit = cache[cell] = tuple(out)
        return hit

    def adherent_vertices(self, cell):
        return self.vertices(cell)

    def vertex_cell(self, coords):
        return tuple(int(c) for c in coords)

    # -- incidence ----------------------------------------------------------

    def _facet_omitting(self, cell, index):
        base, sets = _split(cell)
        k = len(sets)
        if index == 0:
            return _canon(_add(base, _indicator(self._n, sets[0])), sets[1:])
        if index == k:
            return _canon(base, sets[:-1])
        merged = tuple(sorted(sets[index - 1] + sets[index]))
        return _canon(base, sets[: index - 1] + (merged,) + sets[index + 1 :])

    def down_adjacent(self, beta):
        k = self.dim(beta)
        if k == 0:
            return ()
        return tuple(self._facet_omitting(beta, i) for i in range(k + 1))

    def up_adjacent(self, alpha):
        base, sets = _split(self.validate(alpha))
        used = {i for s in sets for i in s}
        free = [i for i in range(1, self._n + 1) if i not in used]
        out = []
        for t in _nonempty_subsets(free):
            shifted = _sub(base, _indicator(self._n, t))
            out.append((shifted, (t,) + sets))
            out.append((base, sets + (t,)))
        for a, s in enumerate(sets):
            for first in _nonempty_subsets(s):
                if len(first) == len(s):
                    continue
                rest = tuple(sorted(set(s) - set(first)))
                out.append((base, sets[:a] + (first, rest) + sets[a + 1 :]))
        return tuple(out)

    def _orientation_rows(self, cell):
        # 0-based coordinate indices of the conventional orientation form.
        return sorted(min(s) - 1 for s in _split(cell)[1])

    def incidence(self, beta, alpha):
        k = self.dim(beta)
        if self.dim(alpha) != k - 1 or k == 0:
            return 0
        for i in range(k + 1):
            if self._facet_omitting(beta, i) == alpha:
                removed = self.vertices(beta)[i]
                break
        else:
            return 0
        verts_a = self.vertices(alpha)
        anchor = verts_a[0]
        basis = [_sub(u, anchor) for u in verts_a[1:]]
        rows_a = self._orientation_rows(alpha)
        det_a = _int_det([[vec[r] for vec in basis] for r in rows_a])
        rows_b = self._orientation_rows(beta)
        cols = [_sub(anchor, removed)] + basis
        det_b = _int_det([[vec[r] for vec in cols] for r in rows_b])
        if det_a == 0 or det_b == 0:
            raise ValueError(f"degenerate orientation between {beta!r} and {alpha!r}")
        return (1 if det_b > 0 else -1) * (1 if det_a > 0 else -1)

    # -- point location -----------------------------------------------------

    def locate(self, point):
        """Unique cell whose open convex hull contains the point.

        The base is the integer part of the point; the step sets group the
        indices of equal nonzero fractional parts, in strictly decreasing
        value order.  Fractional parts within GROUP_TOL are merged.
        """
        return self.locate_with_weights(point)[0]

    def locate_with_weights(self, point):
        """Located cell plus the barycentric weights of the point in it."""
        base = []
        fracs = []
        for x in point:
            f = math.floor(x)
            frac = float(x) - f
            if frac >= 1.0 - GROUP_TOL:
                f += 1
                frac = 0.0
            elif frac <= GROUP_TOL:
                frac = 0.0
            base.append(int(f))
            fracs.append(frac)
        order = sorted(
            (i for i in range(self._n) if fracs[i] > 0.0), key=lambda i: -fracs[i]
        )
        sets = []
        levels = []
        for i in order:
            if sets and levels[-1] - fracs[i] <= GROUP_TOL:
                sets[-1].append(i + 1)
            else:
                sets.append([i + 1])
                levels.append(fracs[i])
        cell = _canon(tuple(base), tuple(tuple(sorted(s)) for s in sets))
        weights = []
        previous = 1.0
        for level in levels:
            weights.append(previous - level)
            previous = level
        weights.append(previous)
        return cell, tuple(weights)

    # -- top cells and the map onto the cubic complex ------------------------

    def n_cell(self, base, perm):
        """Top simplex named by a base vertex and a permutation of 1..n."""
        if sorted(perm) != list(range(1, self._n + 1)):
            raise ValueError("perm must be a permutation of 1..n")
        return (tuple(int(c) for c in base), tuple((i,) for i in perm))

    def cube_of(self, ncell):
        """Doubled-coordinate cubic n-cell containing a CFK n-simplex."""
        base, sets = _split(self.validate(ncell))
        if len(sets) != self._n:
            raise ValueError("cube_of expects an n-cell")
        return tuple(2 * c + 1 for c in base)

    def simplices_of_cube(self, cube_cell):
        """The n! top simplices partitioning a cubic n-cell (doubled coords)."""
        if any(not (c & 1) for c in cube_cell):
            raise ValueError("not a top-dimensional cubic cell")
        base = tuple((c - 1) // 2 for c in cube_cell)
        return tuple(
            self.n_cell(base, perm)
            for perm in itertools.permutations(range(1, self._n + 1))
        )

    # -- windows -------------------------------------------------------------

    def window(self, extent, origin=None):
        """All cells whose vertices lie in the box origin + [0, extent]^n."""
        lo = tuple(origin) if origin is not None else (0,) * self._n
        hi = tuple(c + extent for c in lo)

        def in_box(v):
            return all(a <= x <= b for x, a, b in zip(v, lo, hi))

        cells = []
        all_indices = tuple(range(1, self._n + 1))
        for base in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            stack = [(base, all_indices, ())]
            while stack:
                vertex, free, sets = stack.pop()
                cells.append(_canon(base, sets))
                for t in _nonempty_subsets(free):
                    nxt = _add(vertex, _indicator(self._n, t))
                    if in_box(nxt):
                        remaining = tuple(i for i in free if i not in t)
                        stack.append((nxt, remaining, sets + (t,)))
        return cells


class PushedDensity:
    """Lagrangian density on cubic n-cells induced from a CFK density.

    The value on a hypercube configuration is the sum of the base density
    over the n! simplices partitioning the cube, each restricted to its own
    vertices; the differential scatters the per-simplex differentials back
    to the hypercube's corner slots.
    """

    def __init__(self, cfk, cubic, base_density):
        if cfk.n != cubic.n:
            raise ValueError("complex dimensions disagree")
        self._cfk = cfk
        self._cubic = cubic
        self._base = base_density
        self.fiber = base_density.fiber

    def _pieces(self, cube_cell):
        corners = self._cubic.adherent_vertices(cube_cell)
        index = {corner: i for i, corner in enumerate(corners)}
        for simplex in self._cfk.simplices_of_cube(cube_cell):
            slots = [
                index[tuple(2 * c for c in v)] for v in self._cfk.vertices(simplex)
            ]
            yield simplex, slots

    def value(self, cube_cell, configs):
        total = 0.0
        for simplex, slots in self._pieces(cube_cell):
            total += self._base.value(simplex, [configs[i] for i in slots])
        return total

    def differential(self, cube_cell, configs):
        m = self.fiber.tangent_dim
        out = [np.zeros(m) for _ in configs]
        for simplex, slots in self._pieces(cube_cell):
            parts = self._base.differential(simplex, [configs[i] for i in slots])
            for part, slot in zip(parts, slots):
                out[slot] = out[slot] + part
        return out


def push_lagrangian(cfk, cubic, density):
    """Density on cubic n-cells induced by summing CFK simplex terms."""
    return PushedDensity(cfk, cubic, density)
