"""Simplicial geodesic (Karcher) interpolation on product manifolds,
quadrature rules on barycentric simplices, and the discrete Lagrangian
induced from a smooth one.

The base space is affine R^n with nodes supplied per vertex; fibers are the
products described by ``variational.Fiber``.  The induced Lagrangian
evaluates the integrand only at quadrature nodes sitting on simplex
vertices, where geodesic tangents give the 1-jet in closed form; for
all-Euclidean fibers interior nodes are additionally supported through
exact affine interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import so3
from .variational import Euclidean, Fiber, LagrangianDensity, Rotations

WEIGHT_SUM_TOL = 1e-14


class InterpolationError(ValueError):
    """Configuration outside the well-posedness domain of the interpolator."""


class UnsupportedNodeError(ValueError):
    """Quadrature node off the simplex vertices for a curved fiber."""


# -- barycentric simplex and quadrature -----------------------------------------


@dataclass(frozen=True)
class BarycentricPoint:
    """Nonnegative weights over a simplex's vertices, summing to one."""

    weights: tuple

    def __post_init__(self):
        w = self.weights
        if any(x < 0.0 for x in w):
            raise ValueError("barycentric weights must be nonnegative")
        if abs(sum(w) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError("barycentric weights must sum to one")

    @classmethod
    def vertex(cls, num_vertices, index):
        w = [0.0] * num_vertices
        w[index] = 1.0
        return cls(tuple(w))

    @classmethod
    def barycenter(cls, num_vertices):
        return cls((1.0 / num_vertices,) * num_vertices)

    def vertex_index(self):
        """Index of the single unit weight, or None for interior points."""
        for i, w in enumerate(self.weights):
            if w == 1.0:
                return i
        return None


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights applied with the conventional 1/n! simplex factor."""

    nodes: tuple
    weights: tuple

    def __call__(self, h):
        n = len(self.nodes[0].weights) - 1
        return sum(c * h(u) for u, c in zip(self.nodes, self.weights)) / math.factorial(n)


def q_vertex(num_vertices, index=0):
    """Single-node rule at one vertex; exact on constants."""
    return QuadratureRule((BarycentricPoint.vertex(num_vertices, index),), (1.0,))


def q_sym(num_vertices):
    """All vertices with equal weight; exact on affine integrands."""
    nodes = tuple(BarycentricPoint.vertex(num_vertices, i) for i in range(num_vertices))
    return QuadratureRule(nodes, (1.0 / num_vertices,) * num_vertices)


def q_mid(num_vertices):
    """Barycenter node; exact on affine integrands."""
    return QuadratureRule((BarycentricPoint.barycenter(num_vertices),), (1.0,))


def integrate_affine(values):
    """Exact integral over the barycentric simplex of the affine function
    with the given vertex values (volume normalized to 1/n!)."""
    k = len(values)
    return sum(values) / k / math.factorial(k - 1)


# -- product-manifold geodesic toolkit -------------------------------------------


class MetricOps:
    """Per-factor geodesic operations for a product fiber."""

    def __init__(self, fiber: Fiber):
        self.fiber = fiber

    def log(self, p, q):
        """Flat tangent at p pointing to q (constant-speed geodesic)."""
        parts = []
        for factor, a, b in zip(self.fiber.factors, p, q):
            if isinstance(factor, Rotations):
                parts.append(so3.log(np.asarray(a).T @ b))
            else:
                parts.append(np.asarray(b, dtype=float) - np.asarray(a, dtype=float))
        return np.concatenate(parts)

    def exp(self, p, tangent):
        return self.fiber.perturb(p, tangent)

    def dist(self, p, q):
        return float(np.linalg.norm(self.log(p, q)))

    def geodesic(self, p, q, s):
        return self.exp(p, s * self.log(p, q))


# -- the weighted Karcher mean ---------------------------------------------------

KARCHER_TOL = 1e-12
KARCHER_MAX_ITER = 100

# Rotation factors must fit in a geodesic ball of radius below pi/2 (the
# sectional-curvature well-posedness bound); we require one of the input
# points to serve as a center within that radius.
BALL_RADIUS = np.pi / 2.0


def _rotation_ball_check(rotations):
    dists = {}
    for i, a in enumerate(rotations):
        for j in range(i + 1, len(rotations)):
            tr = float(np.trace(np.asarray(a).T @ rotations[j]))
            if tr <= -1.0 + so3.HALF_TURN_MARGIN:
                raise InterpolationError("points too spread")
            dists[i, j] = so3.distance(a, rotations[j])
    radius = min(
        (
            max(
                (dists.get((min(i, j), max(i, j)), 0.0) for j in range(len(rotations)) if j != i),
                default=0.0,
            )
            for i in range(len(rotations))
        ),
        default=0.0,
    )
    if radius >= BALL_RADIUS:
        raise InterpolationError("points too spread")


def karcher_mean(fiber, points, weights, tol=KARCHER_TOL, max_iter=KARCHER_MAX_ITER):
    """Weighted Riemannian barycenter arg min sum_i w_i dist(p_i, y)^2.

    Splits over the product factors: closed-form weighted average on
    Euclidean factors, fixed-point gradient iteration
    y <- exp_y(sum_i w_i log_y p_i) on rotation factors.  Zero-weight points
    are ignored entirely, so means on a shared facet agree across cells.
    """
    weights = np.asarray(weights, dtype=float)
    active = [i for i, w in enumerate(weights) if w != 0.0]
    out = []
    for k, factor in enumerate(fiber.factors):
        values = [points[i][k] for i in active]
        w = weights[active]
        if isinstance(factor, Rotations):
            _rotation_ball_check(values)
            y = np.asarray(values[int(np.argmax(w))], dtype=float)
            for _ in range(max_iter):
                pull = np.zeros(3)
                for wi, r in zip(w, values):
                    pull += wi * so3.log(y.T @ r)
                if np.linalg.norm(pull) <= tol:
                    break
                y = y @ so3.exp(pull)
            else:
                raise InterpolationError("Karcher iteration did not converge")
            out.append(y)
        else:
            out.append(sum(wi * np.asarray(v, dtype=float) for wi, v in zip(w, values)))
    return tuple(out)


def karcher_gradient_norm(fiber, points, weights, mean):
    """Norm of the weighted log-sum at a candidate mean (stationarity test)."""
    ops = MetricOps(fiber)
    total = np.zeros(fiber.tangent_dim)
    for w, p in zip(weights, points):
        if w != 0.0:
            total += w * ops.log(mean, p)
    return float(np.linalg.norm(total))


# -- vertex jets of the interpolating section -------------------------------------


def phi_at_vertex(fiber, configs, base_nodes, vertex_index):
    """1-jet of the interpolating section at one vertex, with its Jacobian.

    Returns the linear map (fiber-tangent columns over base tangents) that
    sends each base edge vector x(v) - x(u) to the corresponding geodesic
    tangent, together with |vol(base edge vectors)|, the Jacobian factor of
    the pulled-back volume at that vertex.
    """
    ops = MetricOps(fiber)
    others = [i for i in range(len(configs)) if i != vertex_index]
    base_u = np.asarray(base_nodes[vertex_index], dtype=float)
    t_base = np.column_stack(
        [np.asarray(base_nodes[i], dtype=float) - base_u for i in others]
    )
    t_fiber = np.column_stack(
        [ops.log(configs[vertex_index], configs[i]) for i in others]
    )
    det = float(np.linalg.det(t_base))
    if det == 0.0:
        raise InterpolationError("nodes not in general position")
    phi = t_fiber @ np.linalg.inv(t_base)
    return phi, abs(det)


def suitedness_check(fiber, configs, base_nodes):
    """Computable proxy for suitedness: the Karcher ball conditions hold and
    the projected vertex tangent matrices are nonsingular at every vertex."""
    for k, factor in enumerate(fiber.factors):
        if isinstance(factor, Rotations):
            try:
                _rotation_ball_check([c[k] for c in configs])
            except (InterpolationError, so3.CutLocusError):
                return False
    nodes = [np.asarray(x, dtype=float) for x in base_nodes]
    for u in range(len(configs)):
        t_base = np.column_stack(
            [nodes[i] - nodes[u] for i in range(len(configs)) if i != u]
        )
        if abs(np.linalg.det(t_base)) < 1e-12:
            return False
    return True


# -- affine bundles ----------------------------------------------------------------


@dataclass(frozen=True)
class AffineJet:
    """Affine 1-jet through n+1 node/value pairs: value at the barycenter,
    constant gradient, and the constant Jacobian factor |det(x_i^j)|."""

    barycenter: np.ndarray
    value: np.ndarray
    gradient: np.ndarray  # shape (n, m): row j is the partial along x_j
    jacobian: float

    def at(self, x):
        return self.value + (np.asarray(x, dtype=float) - self.barycenter) @ self.gradient


def affine_bary(base_nodes, values):
    """Affine interpolation through (node, value) pairs.

    Builds the (n+1)x(n+1) node matrix whose rows are (1, x(v_i)); the jet
    coefficients are [1 xbar; 0 Id] @ inv(node matrix) @ values and the
    Jacobian is |det(node matrix)|.  The reconstructed affine map passes
    through every (x(v_i), y_i) pair.
    """
    nodes = np.asarray(base_nodes, dtype=float)
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    count, n = nodes.shape
    if count != n + 1:
        raise ValueError("affine interpolation needs n+1 nodes in R^n")
    node_matrix = np.hstack([np.ones((count, 1)), nodes])
    det = float(np.linalg.det(node_matrix))
    if abs(det) < 1e-14:
        raise InterpolationError("nodes not in general position")
    xbar = nodes.mean(axis=0)
    lead = np.zeros((n + 1, n + 1))
    lead[0, 0] = 1.0
    lead[0, 1:] = xbar
    lead[1:, 1:] = np.eye(n)
    jet = lead @ np.linalg.solve(node_matrix, values)
    return AffineJet(xbar, jet[0], jet[1:], abs(det))


# -- the induced discrete Lagrangian ------------------------------------------------


class InducedDensity(LagrangianDensity):
    """Discrete density obtained from a smooth Lagrangian by simplicial
    geodesic interpolation and a quadrature rule.

    ``smooth_lagrangian(x, y, phi)`` evaluates the smooth integrand at base
    point x, fiber point y, and 1-jet phi (fiber-tangent columns over base
    tangents).  The differential defaults to finite differences; callers
    with closed forms supply their own density instead.
    """

    def __init__(self, cx, fiber, smooth_lagrangian, quadrature, node_fn):
        self.cx = cx
        self.fiber = fiber
        self.smooth_lagrangian = smooth_lagrangian
        self.quadrature = quadrature
        self.node_fn = node_fn

    def value(self, cell, configs):
        vertices = self.cx.adherent_vertices(cell)
        nodes = [np.asarray(self.node_fn(v), dtype=float) for v in vertices]
        n = len(vertices) - 1
        all_euclidean = all(isinstance(f, Euclidean) for f in self.fiber.factors)
        total = 0.0
        for node, weight in zip(self.quadrature.nodes, self.quadrature.weights):
            u = node.vertex_index()
            if u is not None:
                phi, jac = phi_at_vertex(self.fiber, configs, nodes, u)
                h = self.smooth_lagrangian(nodes[u], configs[u], phi) * jac
            elif all_euclidean:
                flat = [np.concatenate([np.asarray(p) for p in c]) for c in configs]
                jet = affine_bary(nodes, flat)
                lam = np.asarray(node.weights)
                x_here = lam @ np.asarray(nodes)
                stacked = jet.at(x_here)
                y_here = tuple(stacked[sl] for sl in self.fiber.slices())
                h = self.smooth_lagrangian(x_here, y_here, jet.gradient.T) * jet.jacobian
            else:
                raise UnsupportedNodeError(
                    "quadrature node off the simplex vertices needs an affine fiber"
                )
            total += weight * h
        return total / math.factorial(n)


def induced_lagrangian(cx, fiber, smooth_lagrangian, quadrature, node_fn):
    return InducedDensity(cx, fiber, smooth_lagrangian, quadrature, node_fn)
