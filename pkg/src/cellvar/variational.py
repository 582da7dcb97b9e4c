"""Discrete bundles and the variational machinery on a cellular complex:
action, Euler-Lagrange forms, Noether currents, the momentum/Legendre
decomposition and the band-advancing variational integrator.

Configurations at a vertex are tuples with one entry per fiber factor:
a length-m array for a Euclidean factor, a 3x3 rotation matrix for a
rotation factor.  Tangent vectors and covectors are flat real arrays in the
canonical charts (offsets on Euclidean factors, body-frame increments
R -> R exp(eps w) on rotation factors); covectors pair with tangents by the
plain dot product (Euclidean and halved-Frobenius identifications).
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from . import so3
from .complexes.core import classify_vertices


class MissingConfigurationError(KeyError):
    """A needed vertex has no stored configuration."""


class IntegratorError(RuntimeError):
    """The Legendre right-inverse solve failed."""


# -- fibers -------------------------------------------------------------------


@dataclass(frozen=True)
class Euclidean:
    """Flat factor R^m."""

    dim: int

    @property
    def tangent_dim(self):
        return self.dim


@dataclass(frozen=True)
class Rotations:
    """The rotation group SO(3) with the halved-Frobenius metric."""

    @property
    def tangent_dim(self):
        return 3


@dataclass(frozen=True)
class Fiber:
    """Ordered product of manifold factors shared by every vertex."""

    factors: tuple

    @property
    def tangent_dim(self):
        return sum(f.tangent_dim for f in self.factors)

    def slices(self):
        out = []
        start = 0
        for f in self.factors:
            out.append(slice(start, start + f.tangent_dim))
            start += f.tangent_dim
        return tuple(out)

    def perturb(self, point, tangent):
        """Move a point along a flat tangent in the canonical charts."""
        tangent = np.asarray(tangent, dtype=float)
        out = []
        for factor, sl, value in zip(self.factors, self.slices(), point):
            if isinstance(factor, Rotations):
                out.append(np.asarray(value) @ so3.exp(tangent[sl]))
            else:
                out.append(np.asarray(value, dtype=float) + tangent[sl])
        return tuple(out)

    def validate_point(self, point, tol=1e-10):
        if len(point) != len(self.factors):
            raise ValueError("configuration has the wrong number of factors")
        for factor, value in zip(self.factors, point):
            if isinstance(factor, Rotations):
                so3.require_rotation(value, tol)
            elif np.shape(value) != (factor.dim,):
                raise ValueError("Euclidean factor with wrong shape")
        return point

    def normalize_point(self, point, drift_tol=1e-12):
        """Re-orthonormalize rotation factors once drift exceeds the bound."""
        out = []
        for factor, value in zip(self.factors, point):
            if isinstance(factor, Rotations) and so3.orthonormality_defect(
                value
            ) > drift_tol:
                out.append(so3.project_rotation(value))
            else:
                out.append(value)
        return tuple(out)

    def random_point(self, rng, scale=1.0):
        out = []
        for factor in self.factors:
            if isinstance(factor, Rotations):
                out.append(so3.random_rotation(rng, max_angle=min(scale, 1.2)))
            else:
                out.append(scale * rng.standard_normal(factor.dim))
        return tuple(out)


def euclidean_fiber(m):
    return Fiber((Euclidean(m),))


def rod_fiber():
    """Position + orientation fiber R^3 x SO(3)."""
    return Fiber((Euclidean(3), Rotations()))


# -- fields -------------------------------------------------------------------


class DiscreteField(Mapping):
    """Finite map from vertices to fiber configurations.

    An optional vertex canonicalization is applied on lookup (used for
    periodic rods, where distinct lattice vertices carry one configuration).
    Iteration runs over the stored canonical vertices only.
    """

    def __init__(self, values, canonical=None):
        self._canonical = canonical
        if canonical is None:
            self._values = dict(values)
        else:
            self._values = {canonical(v): y for v, y in values.items()}

    def __getitem__(self, vertex):
        key = vertex if self._canonical is None else self._canonical(vertex)
        try:
            return self._values[key]
        except KeyError:
            raise MissingConfigurationError(
                f"no configuration at vertex {vertex}"
            ) from None

    def __contains__(self, vertex):
        key = vertex if self._canonical is None else self._canonical(vertex)
        return key in self._values

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def extended(self, updates):
        merged = dict(self._values)
        for v, y in updates.items():
            merged[v if self._canonical is None else self._canonical(v)] = y
        return DiscreteField(merged, canonical=None if self._canonical is None else self._canonical)


# -- Lagrangian densities -------------------------------------------------------


class LagrangianDensity:
    """Per-n-cell smooth function of the adherent configurations.

    Subclasses set ``fiber`` and implement ``value``; ``differential``
    defaults to central finite differences in the canonical charts, which
    analytic implementations should override.
    """

    fiber: Fiber
    fd_step = 1e-6

    def value(self, cell, configs):
        raise NotImplementedError

    def differential(self, cell, configs):
        h = self.fd_step
        m = self.fiber.tangent_dim
        out = []
        for a in range(len(configs)):
            grad = np.zeros(m)
            for b in range(m):
                tangent = np.zeros(m)
                tangent[b] = h
                plus = list(configs)
                plus[a] = self.fiber.perturb(configs[a], tangent)
                minus = list(configs)
                minus[a] = self.fiber.perturb(configs[a], -tangent)
                grad[b] = (self.value(cell, plus) - self.value(cell, minus)) / (2 * h)
            out.append(grad)
        return out


def cell_configs(cx, field, cell):
    return [field[v] for v in cx.adherent_vertices(cell)]


def action(cx, density, field, region):
    """Sum of the cell Lagrangians over a finite region of n-cells."""
    total = 0.0
    for beta in region:
        if cx.dim(beta) != cx.n:
            raise ValueError(f"region cell {beta!r} is not top-dimensional")
        total += density.value(beta, cell_configs(cx, field, beta))
    return total


def el_form(cx, density, field, vertex):
    """Euler-Lagrange covector at a vertex: the sphere sum of the
    vertex components of the cell differentials."""
    grad = np.zeros(density.fiber.tangent_dim)
    for beta in cx.sphere(vertex):
        verts = cx.adherent_vertices(beta)
        parts = density.differential(beta, [field[v] for v in verts])
        grad += parts[verts.index(vertex)]
    return grad


def el_residual(cx, density, field, vertex):
    return float(np.linalg.norm(el_form(cx, density, field, vertex)))


# -- symmetries and Noether currents -------------------------------------------


def check_symmetry(density, generator, samples, rtol=1e-9):
    """True when the generator annihilates the cell differentials on every
    sampled configuration, within rtol relative to the differential size."""
    for cell, configs in samples:
        parts = density.differential(cell, configs)
        scale = 1.0 + max(float(np.linalg.norm(p)) for p in parts)
        total = sum(float(p @ generator(y)) for p, y in zip(parts, configs))
        if abs(total) > rtol * scale:
            return False
    return True


def _region_vertices(cx, region):
    out = set()
    for beta in region:
        if cx.dim(beta) != cx.n:
            raise ValueError(f"region cell {beta!r} is not top-dimensional")
        out.update(cx.adherent_vertices(beta))
    return out


def noether_currents(cx, density, field, generators, region):
    """Frontier sums of cell differentials applied to several generators.

    Each current vanishes on critical fields when its generator is a
    symmetry; in general it satisfies the regrouping identity

        cell sum = interior EL sum + current

    (see ``symmetry_defect_sum`` and ``interior_el_sum``).  Every region
    cell's differential is evaluated once and shared by all generators.
    """
    region = frozenset(region)
    split = classify_vertices(cx, region, _region_vertices(cx, region))
    frontier = split.frontier
    totals = [0.0] * len(generators)
    for beta in region:
        verts = cx.adherent_vertices(beta)
        touched = [v for v in verts if v in frontier]
        if not touched:
            continue
        parts = density.differential(beta, [field[u] for u in verts])
        for v in touched:
            part = parts[verts.index(v)]
            for k, generator in enumerate(generators):
                totals[k] += float(part @ generator(field[v]))
    return totals


def noether_current(cx, density, field, generator, region):
    """Frontier sum of cell differentials applied to one generator."""
    return noether_currents(cx, density, field, (generator,), region)[0]


def interior_el_sum(cx, density, field, generator, region):
    """Sum over interior vertices of EL_v paired with the generator."""
    region = frozenset(region)
    split = classify_vertices(cx, region, _region_vertices(cx, region))
    return sum(
        float(el_form(cx, density, field, v) @ generator(field[v]))
        for v in split.interior
    )


def symmetry_defect_sum(cx, density, field, generator, region):
    """Sum over region cells of the differential applied to the generator
    at every slot; zero exactly when the generator is a symmetry there."""
    total = 0.0
    for beta in region:
        verts = cx.adherent_vertices(beta)
        configs = [field[v] for v in verts]
        parts = density.differential(beta, configs)
        total += sum(float(p @ generator(y)) for p, y in zip(parts, configs))
    return total


# -- incremental flow, momentum and Legendre ------------------------------------


@dataclass(frozen=True)
class IncrementalFlow:
    """First-order incremental flow v -> step(v), sharing an n-cell with v."""

    step: callable


def diagonal_flow(offset=1):
    """The flow v -> v + (offset, ..., offset) on tuple-encoded vertices."""
    return IncrementalFlow(lambda v: tuple(c + offset for c in v))


def flow_split(cx, vertex, flow):
    """Split the sphere of v into cells containing the flow target and the
    rest; errors when the flow target shares no n-cell with v."""
    target = flow.step(vertex)
    if target == vertex:
        raise ValueError("incremental flow fixes the vertex")
    ahead, behind = [], []
    for beta in cx.sphere(vertex):
        if target in cx.adherent_vertices(beta):
            ahead.append(beta)
        else:
            behind.append(beta)
    if not ahead:
        raise ValueError("flow target shares no n-cell with the vertex")
    return tuple(ahead), tuple(behind)


def context_vertices(cx, vertex, flow):
    """Vertices adherent to the forward sphere, excluding the flow target."""
    ahead, _ = flow_split(cx, vertex, flow)
    out = set()
    for beta in ahead:
        out.update(cx.adherent_vertices(beta))
    out.discard(flow.step(vertex))
    return out


@dataclass
class MomentumValue:
    """A covector at a vertex plus the forward-sphere context configurations
    (all vertices of the forward sphere's closure except the flow target)."""

    vertex: object
    covector: np.ndarray
    context: dict


def momentum(cx, density, field, vertex, flow):
    """Momentum mapping: minus the vertex components over cells of the
    sphere that do not contain the flow target."""
    _, behind = flow_split(cx, vertex, flow)
    cov = np.zeros(density.fiber.tangent_dim)
    for beta in behind:
        verts = cx.adherent_vertices(beta)
        parts = density.differential(beta, [field[v] for v in verts])
        cov -= parts[verts.index(vertex)]
    context = {v: field[v] for v in context_vertices(cx, vertex, flow)}
    return MomentumValue(vertex, cov, context)


def legendre(cx, density, field, vertex, flow):
    """Legendre transformation: the vertex components over cells of the
    sphere that contain both the vertex and the flow target."""
    ahead, _ = flow_split(cx, vertex, flow)
    cov = np.zeros(density.fiber.tangent_dim)
    for beta in ahead:
        verts = cx.adherent_vertices(beta)
        parts = density.differential(beta, [field[v] for v in verts])
        cov += parts[verts.index(vertex)]
    context = {v: field[v] for v in context_vertices(cx, vertex, flow)}
    return MomentumValue(vertex, cov, context)


@dataclass(frozen=True)
class SolverOptions:
    tol: float = 1e-12
    max_iter: int = 50
    jacobian_step: float = 1e-7


def integrator_step(cx, density, mu, flow, opts=None, initial_guess=None):
    """Solve Legendre = momentum for the configuration at the flow target.

    Newton iteration in the canonical chart anchored at the initial guess
    (the configuration at the source vertex unless supplied); the Jacobian
    is taken by central finite differences of the Legendre covector.
    Inserting the solution next to the momentum context zeroes the
    Euler-Lagrange form at the source vertex.
    """
    opts = opts or SolverOptions()
    vertex = mu.vertex
    target = flow.step(vertex)
    ahead, _ = flow_split(cx, vertex, flow)
    fiber = density.fiber
    guess = initial_guess if initial_guess is not None else mu.context[vertex]
    m = fiber.tangent_dim

    def leg_covector(candidate):
        cov = np.zeros(m)
        for beta in ahead:
            verts = cx.adherent_vertices(beta)
            configs = [
                candidate if v == target else mu.context[v] for v in verts
            ]
            parts = density.differential(beta, configs)
            cov += parts[verts.index(vertex)]
        return cov

    xi = np.zeros(m)
    for _ in range(opts.max_iter):
        residual = leg_covector(fiber.perturb(guess, xi)) - mu.covector
        norm = float(np.linalg.norm(residual))
        if norm <= opts.tol:
            return fiber.normalize_point(fiber.perturb(guess, xi))
        h = opts.jacobian_step
        jac = np.zeros((m, m))
        for b in range(m):
            step_vec = np.zeros(m)
            step_vec[b] = h
            plus = leg_covector(fiber.perturb(guess, xi + step_vec))
            minus = leg_covector(fiber.perturb(guess, xi - step_vec))
            jac[:, b] = (plus - minus) / (2 * h)
        try:
            delta = np.linalg.solve(jac, residual)
        except np.linalg.LinAlgError:
            raise IntegratorError("Legendre not regular here") from None
        if not np.all(np.isfinite(delta)):
            raise IntegratorError("Legendre not regular here")
        xi = xi - delta
    raise IntegratorError(
        f"Newton did not converge within {opts.max_iter} iterations: "
        f"residual norm {norm:.3e}"
    )


def advance_band(cx, density, field, front, flow, opts=None):
    """Extend a band field by one incremental-flow step at each front vertex.

    Every front vertex must have its backward and forward sphere covered
    except for the flow target; targets must be distinct so each new vertex
    is solved exactly once.
    """
    opts = opts or SolverOptions()
    targets = [flow.step(v) for v in front]
    if len(set(targets)) != len(targets):
        raise ValueError("incremental flow maps two front vertices to one target")
    updates = {}
    for v, target in zip(front, targets):
        mu = momentum(cx, density, field, v, flow)
        try:
            updates[target] = integrator_step(cx, density, mu, flow, opts)
        except IntegratorError as err:
            raise IntegratorError(f"at vertex {v}: {err}") from err
    return field.extended(updates)
