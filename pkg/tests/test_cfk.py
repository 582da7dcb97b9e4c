import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellvar.complexes import CfkComplex, Chain, CubicComplex, boundary, push_lagrangian
from cellvar.variational import Euclidean, Fiber, LagrangianDensity


@pytest.fixture
def plane():
    return CfkComplex(2)


@pytest.fixture
def five():
    return CfkComplex(5)


# the worked 5-D tetrahedron: base (5,2,4,-2,6), steps {1}, {3,4}, {2}
TETRA = ((5, 2, 4, -2, 6), ((1,), (3, 4), (2,)))
TETRA_VERTICES = (
    (5, 2, 4, -2, 6),
    (6, 2, 4, -2, 6),
    (6, 2, 5, -1, 6),
    (6, 3, 5, -1, 6),
)


class TestVertices:
    def test_five_dimensional_tetrahedron(self, five):
        assert five.vertices(TETRA) == TETRA_VERTICES

    def test_vertex_cell_is_its_own_vertex(self, five):
        v = (1, 2, 3, 4, 5)
        assert five.vertices(v) == (v,)

    def test_plane_face(self, plane):
        cell = ((3, -1), ((1,), (2,)))
        assert plane.vertices(cell) == ((3, -1), (4, -1), (4, 0))

    def test_overlapping_sets_rejected(self, plane):
        with pytest.raises(ValueError, match="overlapping"):
            plane.vertices(((0, 0), ((1,), (1, 2))))

    def test_empty_set_rejected(self, plane):
        with pytest.raises(ValueError, match="empty"):
            plane.vertices(((0, 0), ((),)))


class TestLocate:
    def test_five_dimensional_point(self, five):
        assert five.locate((5.4, 2.1, 4.3, -1.7, 6.0)) == TETRA

    def test_integer_point_is_a_vertex(self, five):
        assert five.locate((5.0, 2.0, 4.0, -2.0, 6.0)) == (5, 2, 4, -2, 6)

    def test_equal_fractions_share_a_step(self, plane):
        assert plane.locate((0.5, 0.5)) == ((0, 0), ((1, 2),))

    def test_round_trip(self, five, rng):
        for _ in range(300):
            p = rng.uniform(-4.0, 4.0, size=5)
            cell, weights = five.locate_with_weights(p)
            verts = five.vertices(cell)
            rebuilt = sum(w * np.array(v, float) for w, v in zip(weights, verts))
            assert np.max(np.abs(rebuilt - p)) < 1e-12

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(st.floats(-4.0, 4.0, allow_nan=False), min_size=3, max_size=3)
    )
    def test_round_trip_property(self, coords):
        space = CfkComplex(3)
        cell, weights = space.locate_with_weights(coords)
        verts = space.vertices(cell)
        rebuilt = sum(w * np.array(v, float) for w, v in zip(weights, verts))
        assert np.max(np.abs(rebuilt - np.array(coords))) < 1e-12

    def test_open_hulls_are_disjoint(self, plane, rng):
        # barycenter of the located cell relocates to the same cell
        for _ in range(200):
            p = rng.uniform(-3.0, 3.0, size=2)
            cell = plane.locate(p)
            verts = np.array(plane.vertices(cell), dtype=float)
            assert plane.locate(verts.mean(axis=0)) == cell


class TestIncidence:
    def test_worked_tetrahedron_face(self, five):
        alpha = ((5, 2, 4, -2, 6), ((1, 3, 4), (2,)))
        assert five.incidence(TETRA, alpha) == 1

    def test_all_tetrahedron_facets_are_found(self, five):
        facets = five.down_adjacent(TETRA)
        assert len(facets) == 4
        for alpha in facets:
            assert five.incidence(TETRA, alpha) in (-1, 1)

    def test_non_facet_is_zero(self, five):
        assert five.incidence(TETRA, ((5, 2, 4, -2, 6), ((1,),))) == 0
        assert five.incidence(TETRA, (5, 2, 4, -2, 6)) == 0

    def test_edges_have_initial_and_final_vertices(self, plane):
        edge = ((2, 1), ((2,),))
        assert plane.incidence(edge, (2, 2)) == 1
        assert plane.incidence(edge, (2, 1)) == -1

    def test_composition_sum_vanishes_in_three_dimensions(self):
        space = CfkComplex(3)
        for beta in space.window(2):
            if space.dim(beta) != 2:
                continue
            assert boundary(space, boundary(space, Chain.unit(space, beta))).is_zero()


class TestSphere:
    def test_six_triangles_by_brute_force(self, plane):
        # enumerate every (base, permutation) top simplex near the origin
        # and keep those whose vertex set contains it
        origin = (0, 0)
        brute = set()
        for i in (-1, 0):
            for j in (-1, 0):
                for perm in ((1, 2), (2, 1)):
                    cell = plane.n_cell((i, j), perm)
                    if origin in plane.vertices(cell):
                        brute.add(cell)
        assert len(brute) == 6
        assert plane.sphere(origin) == frozenset(brute)


class TestCubeMap:
    def test_base_square(self, plane):
        plus = plane.n_cell((0, 0), (1, 2))
        minus = plane.n_cell((0, 0), (2, 1))
        assert plane.cube_of(plus) == (1, 1)
        assert plane.cube_of(minus) == (1, 1)

    def test_preimage_count_is_factorial(self):
        for n in (2, 3, 4):
            space = CfkComplex(n)
            cube = (1,) * n
            simplices = space.simplices_of_cube(cube)
            assert len(simplices) == math.factorial(n)
            assert len(set(simplices)) == math.factorial(n)
            for simplex in simplices:
                assert space.cube_of(simplex) == cube

    def test_simplices_partition_cube_corners(self, plane):
        cubic = CubicComplex(2)
        corners = set(cubic.adherent_vertices((1, 1)))
        for simplex in plane.simplices_of_cube((1, 1)):
            for v in plane.vertices(simplex):
                assert tuple(2 * c for c in v) in corners


class _Quadratic(LagrangianDensity):
    """Pairwise squared-distance toy density with analytic differential."""

    def __init__(self, cx):
        self.cx = cx
        self.fiber = Fiber((Euclidean(2),))

    def value(self, cell, configs):
        points = [np.asarray(c[0], float) for c in configs]
        return 0.5 * sum(
            float((a - b) @ (a - b)) for a, b in itertools.combinations(points, 2)
        )

    def differential(self, cell, configs):
        points = [np.asarray(c[0], float) for c in configs]
        out = []
        for i, p in enumerate(points):
            grad = sum((p - q) for j, q in enumerate(points) if j != i)
            out.append(np.asarray(grad, float))
        return out


class TestPushforward:
    def test_zero_density_pushes_to_zero(self, plane, rng):
        class Zero(LagrangianDensity):
            fiber = Fiber((Euclidean(2),))

            def value(self, cell, configs):
                return 0.0

        cubic = CubicComplex(2)
        pushed = push_lagrangian(plane, cubic, Zero())
        configs = [(rng.standard_normal(2),) for _ in range(4)]
        assert pushed.value((1, 1), configs) == 0.0

    def test_square_value_splits_into_two_triangles(self, plane, rng):
        cubic = CubicComplex(2)
        density = _Quadratic(plane)
        pushed = push_lagrangian(plane, cubic, density)
        configs = [(rng.standard_normal(2),) for _ in range(4)]
        # corners of the doubled cell (1,1) in lexicographic order:
        # (0,0), (0,1), (1,0), (1,1) with slot order y00, y01, y10, y11
        y00, y01, y10, y11 = configs
        plus = density.value(plane.n_cell((0, 0), (1, 2)), [y00, y10, y11])
        minus = density.value(plane.n_cell((0, 0), (2, 1)), [y00, y01, y11])
        assert abs(pushed.value((1, 1), configs) - (plus + minus)) < 1e-14

    def test_pushed_differential_scatters(self, plane, rng):
        cubic = CubicComplex(2)
        pushed = push_lagrangian(plane, cubic, _Quadratic(plane))
        configs = [(rng.standard_normal(2),) for _ in range(4)]
        parts = pushed.differential((1, 1), configs)
        h = 1e-6
        for slot in range(4):
            for comp in range(2):
                bumped = [list(c) for c in configs]
                plus = [tuple(c) for c in bumped]
                minus = [tuple(c) for c in bumped]
                e = np.zeros(2)
                e[comp] = h
                plus[slot] = (configs[slot][0] + e,)
                minus[slot] = (configs[slot][0] - e,)
                fd = (pushed.value((1, 1), plus) - pushed.value((1, 1), minus)) / (2 * h)
                assert abs(fd - parts[slot][comp]) < 1e-6 * (1 + abs(fd))
