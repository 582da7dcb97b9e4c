"""Abstract cellular complexes: chains, cochains, boundary, differential,
Stokes pairing, vertex spheres and interior/frontier/exterior classification.

A concrete complex owns its cell encodings (hashable, totally ordered by the
encoding's natural lexicographic order) and reports dimension, incidence
numbers and finite (co)adjacency lists.  The complex itself may be infinite;
every operation here works on explicit finite windows or on the finite
support carried by its inputs.

Chains have exact integer coefficients, cochains double-precision values;
both are sparse maps defaulting to zero off their support.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass, field


class CellComplex(abc.ABC):
    """Dimension + incidence interface of an abstract cellular complex."""

    @property
    @abc.abstractmethod
    def n(self):
        """Top dimension."""

    @abc.abstractmethod
    def dim(self, cell):
        """Dimension of a cell."""

    @abc.abstractmethod
    def incidence(self, beta, alpha):
        """Incidence number [beta:alpha] in {-1, 0, +1}."""

    @abc.abstractmethod
    def down_adjacent(self, beta):
        """Cells alpha with [beta:alpha] != 0 (finite tuple)."""

    @abc.abstractmethod
    def up_adjacent(self, alpha):
        """Cells beta with [beta:alpha] != 0 (finite tuple)."""

    def down_closure(self, cell):
        """All cells adherent to ``cell`` (including itself)."""
        seen = {cell}
        frontier = [cell]
        while frontier:
            nxt = []
            for c in frontier:
                if self.dim(c) == 0:
                    continue
                for facet in self.down_adjacent(c):
                    if facet not in seen:
                        seen.add(facet)
                        nxt.append(facet)
            frontier = nxt
        return frozenset(seen)

    def adherent_vertices(self, cell):
        """Vertices adherent to ``cell``, sorted by their encoding."""
        return tuple(
            sorted(c for c in self.down_closure(cell) if self.dim(c) == 0)
        )

    def sphere(self, vertex):
        """All n-cells with ``vertex`` adherent (the star of the vertex)."""
        if self.dim(vertex) != 0:
            raise ValueError("sphere of a non-vertex cell")
        try:
            cache = self._sphere_cache
        except AttributeError:
            cache = self._sphere_cache = {}
        hit = cache.get(vertex)
        if hit is None:
            layer = {vertex}
            for _ in range(self.n):
                layer = {beta for cell in layer for beta in self.up_adjacent(cell)}
            hit = cache[vertex] = frozenset(layer)
        return hit


class Chain:
    """Finitely supported integer combination of k-cells."""

    __slots__ = ("degree", "coefficients")

    def __init__(self, degree, coefficients=()):
        self.degree = int(degree)
        items = coefficients.items() if isinstance(coefficients, dict) else coefficients
        self.coefficients = {c: int(v) for c, v in items if v != 0}

    @classmethod
    def unit(cls, cx, cell):
        return cls(cx.dim(cell), {cell: 1})

    def is_zero(self):
        return not self.coefficients

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.degree == other.degree
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return f"Chain(degree={self.degree}, support={len(self.coefficients)})"


class Cochain:
    """Real-valued k-form, stored sparsely (zero off the support)."""

    __slots__ = ("degree", "values")

    def __init__(self, degree, values=()):
        self.degree = int(degree)
        items = values.items() if isinstance(values, dict) else values
        self.values = {c: float(v) for c, v in items if v != 0.0}

    def __call__(self, cell):
        return self.values.get(cell, 0.0)

    def __repr__(self):
        return f"Cochain(degree={self.degree}, support={len(self.values)})"


def boundary(cx, chain):
    """(d c)(alpha) = sum over cofaces beta of [beta:alpha] c(beta)."""
    if chain.degree < 1:
        raise ValueError("no boundary of 0-chains")
    out = {}
    for beta, coeff in chain.coefficients.items():
        if cx.dim(beta) != chain.degree:
            raise ValueError(f"chain keyed by a cell of dimension {cx.dim(beta)}")
        for alpha in cx.down_adjacent(beta):
            out[alpha] = out.get(alpha, 0) + cx.incidence(beta, alpha) * coeff
    return Chain(chain.degree - 1, out)


def differential(cx, cochain, support_hint):
    """Coboundary evaluated on the (k+1)-cells of ``support_hint``.

    The complex is infinite, so the caller bounds the evaluation set; cells
    of other dimensions in the hint are ignored.
    """
    if cochain.degree >= cx.n:
        raise ValueError("top-degree cochain")
    out = {}
    target = cochain.degree + 1
    for beta in support_hint:
        if cx.dim(beta) != target:
            continue
        value = 0.0
        for alpha in cx.down_adjacent(beta):
            value += cx.incidence(beta, alpha) * cochain(alpha)
        if value != 0.0:
            out[beta] = value
    return Cochain(target, out)


def pair(chain, cochain):
    """Discrete integration <c, w> = sum c(alpha) w(alpha)."""
    if chain.degree != cochain.degree:
        raise ValueError("degree mismatch in chain/cochain pairing")
    return float(
        sum(coeff * cochain(cell) for cell, coeff in chain.coefficients.items())
    )


@dataclass(frozen=True)
class VertexClassification:
    interior: frozenset
    frontier: frozenset
    exterior: frozenset


def classify_vertices(cx, region, candidates):
    """Partition candidates into interior/frontier/exterior of a region.

    A vertex is interior when its whole sphere lies in the region, exterior
    when the sphere misses the region entirely, frontier otherwise.
    """
    region = frozenset(region)
    interior, frontier, exterior = set(), set(), set()
    for v in candidates:
        sphere = cx.sphere(v)
        inside = len(sphere & region)
        if inside == len(sphere):
            interior.add(v)
        elif inside == 0:
            exterior.add(v)
        else:
            frontier.add(v)
    return VertexClassification(
        frozenset(interior), frozenset(frontier), frozenset(exterior)
    )


# Guard against a broken implementation returning unbounded adjacency lists.
_ADJACENCY_BOUND = 100_000


@dataclass
class ComplexAuditReport:
    """Result of checking the cellular-complex axioms over a window."""

    cells_checked: int = 0
    boundary_squared_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def summary(self):
        status = "OK" if self.ok else f"{len(self.violations)} violation(s)"
        return (
            f"checked {self.cells_checked} cells, "
            f"{self.boundary_squared_checked} boundary-of-boundary chains: {status}"
        )


def verify_complex_axioms(cx, window):
    """Check the defining axioms on every cell of a finite window.

    Covers: incidence values in {-1,0,+1} linking only consecutive
    dimensions, mutual consistency of the up/down adjacency lists with the
    incidence map, finiteness of the lists, and vanishing of the boundary of
    the boundary (equivalent to the composition-sum axiom for all cell
    pairs).  Violations are report content, not exceptions.
    """
    report = ComplexAuditReport()
    for beta in window:
        report.cells_checked += 1
        k = cx.dim(beta)
        down = cx.down_adjacent(beta)
        up = cx.up_adjacent(beta)
        if len(down) > _ADJACENCY_BOUND or len(up) > _ADJACENCY_BOUND:
            report.violations.append(f"adjacency of {beta!r} exceeds finiteness bound")
            continue
        for alpha in down:
            inc = cx.incidence(beta, alpha)
            if inc not in (-1, 1):
                report.violations.append(
                    f"[{beta!r}:{alpha!r}] = {inc} on a listed facet"
                )
            if cx.dim(alpha) != k - 1:
                report.violations.append(
                    f"facet {alpha!r} of {beta!r} has dimension {cx.dim(alpha)},"
                    f" expected {k - 1}"
                )
            if beta not in cx.up_adjacent(alpha):
                report.violations.append(
                    f"{beta!r} missing from up-adjacency of its facet {alpha!r}"
                )
        for gamma in up:
            if cx.incidence(gamma, beta) == 0 or beta not in cx.down_adjacent(gamma):
                report.violations.append(
                    f"inconsistent up-adjacency {gamma!r} over {beta!r}"
                )
        if k >= 2:
            report.boundary_squared_checked += 1
            dd = boundary(cx, boundary(cx, Chain.unit(cx, beta)))
            for gamma, value in dd.coefficients.items():
                report.violations.append(
                    f"boundary of boundary of {beta!r} hits {gamma!r} "
                    f"with weight {value}"
                )
    return report


def stokes_suite(cx, window, rng, trials=3):
    """Numerical d*d = 0 and Stokes checks on random data over a window.

    Returns the worst absolute defect of each identity; used by the
    complex-verification command next to the combinatorial axiom audit.
    """
    by_dim = {}
    for cell in window:
        by_dim.setdefault(cx.dim(cell), []).append(cell)
    worst_dd = 0.0
    worst_stokes = 0.0
    for k in range(cx.n):
        k_cells = by_dim.get(k, [])
        up_cells = by_dim.get(k + 1, [])
        if not k_cells or not up_cells:
            continue
        for _ in range(trials):
            omega = Cochain(
                k, {c: rng.uniform(-1.0, 1.0) for c in k_cells}
            )
            chain = Chain(
                k + 1,
                {c: int(rng.integers(-3, 4)) for c in up_cells},
            )
            d_omega = differential(cx, omega, up_cells)
            lhs = pair(chain, d_omega)
            rhs = pair(boundary(cx, chain), omega)
            worst_stokes = max(
                worst_stokes, abs(lhs - rhs) / (1.0 + abs(rhs))
            )
            if k + 2 <= cx.n:
                dd_omega = differential(cx, d_omega, by_dim.get(k + 2, []))
                if dd_omega.values:
                    worst_dd = max(
                        worst_dd, max(abs(v) for v in dd_omega.values.values())
                    )
    return {"max_dd_defect": worst_dd, "max_stokes_defect": worst_stokes}
