"""Rotation-group geometry for the halved-Frobenius bi-invariant metric.

Rotations are plain 3x3 numpy arrays.  A tangent vector at R is identified
with a vector v in R^3 through left translation: v stands for the matrix
R @ hat(v), so perturbing R along v means R @ exp(eps * v).  All angle-like
quantities live in the open ball of radius pi; operations that would need
the cut locus raise ``CutLocusError``.
"""

from __future__ import annotations

import numpy as np

# Below this angle the closed-form coefficients switch to 6th-order series;
# the subtracted forms degrade in floating point there.
SMALL_ANGLE = 1e-4

# Trace(R) <= -1 + this margin is treated as a half-turn (log undefined).
HALF_TURN_MARGIN = 1e-9

# dlog is refused this close to the cut locus.
CUT_LOCUS_MARGIN = 1e-6

_EYE = np.eye(3)


class CutLocusError(ValueError):
    """Operation requested outside the domain of the group logarithm."""


def hat(v):
    """Skew matrix of v, i.e. hat(v) @ e == cross(v, e)."""
    v = np.asarray(v, dtype=float)
    return np.array(
        [
            [0.0, -v[2], v[1]],
            [v[2], 0.0, -v[0]],
            [-v[1], v[0], 0.0],
        ]
    )


def vee(a, tol=1e-12):
    """Inverse of ``hat``; the input must be skew within ``tol``."""
    a = np.asarray(a, dtype=float)
    if np.max(np.abs(a + a.T)) > tol:
        raise ValueError("vee of a non-skew matrix")
    return np.array([a[2, 1], a[0, 2], a[1, 0]])


def _sinc(alpha):
    # sin(a)/a
    if alpha < SMALL_ANGLE:
        a2 = alpha * alpha
        return 1.0 - a2 / 6.0 + a2 * a2 / 120.0 - a2 * a2 * a2 / 5040.0
    return np.sin(alpha) / alpha


def _versine(alpha):
    # (1 - cos(a))/a^2
    if alpha < SMALL_ANGLE:
        a2 = alpha * alpha
        return 0.5 - a2 / 24.0 + a2 * a2 / 720.0 - a2 * a2 * a2 / 40320.0
    return (1.0 - np.cos(alpha)) / (alpha * alpha)


def _cubic(alpha):
    # (a - sin(a))/a^3
    if alpha < SMALL_ANGLE:
        a2 = alpha * alpha
        return 1.0 / 6.0 - a2 / 120.0 + a2 * a2 / 5040.0 - a2 * a2 * a2 / 362880.0
    return (alpha - np.sin(alpha)) / alpha**3


def _dlog_coeff(alpha):
    # (2 - 2 cos a - a sin a) / (a^2 (2 - 2 cos a)), evaluated without the
    # ill-conditioned double subtraction: equals (1 - (a/2) cot(a/2)) / a^2.
    if alpha < SMALL_ANGLE:
        a2 = alpha * alpha
        return 1.0 / 12.0 + a2 / 720.0 + a2 * a2 / 30240.0 + a2 * a2 * a2 / 1209600.0
    half = 0.5 * alpha
    return (1.0 - half / np.tan(half)) / (alpha * alpha)


def _dlog_coeff_prime_over_alpha(alpha):
    # c'(a)/a, finite at a = 0.
    if alpha < SMALL_ANGLE:
        a2 = alpha * alpha
        return 1.0 / 360.0 + a2 / 7560.0 + a2 * a2 / 201600.0
    half = 0.5 * alpha
    cot = 1.0 / np.tan(half)
    g = half * cot
    g_prime = 0.5 * cot - 0.25 * alpha * (1.0 + cot * cot)
    c = (1.0 - g) / (alpha * alpha)
    return (-g_prime / (alpha * alpha) - 2.0 * c / alpha) / alpha


def exp(v):
    """Rodrigues exponential of an axis-angle vector."""
    v = np.asarray(v, dtype=float)
    alpha = float(np.linalg.norm(v))
    skew = hat(v)
    return _EYE + _sinc(alpha) * skew + _versine(alpha) * (skew @ skew)


def log(r):
    """Group logarithm with norm < pi; errors on half-turn rotations."""
    r = np.asarray(r, dtype=float)
    tr = float(np.trace(r))
    if tr <= -1.0 + HALF_TURN_MARGIN:
        raise CutLocusError("cut locus: half-turn rotation")
    cos_a = np.clip((tr - 1.0) / 2.0, -1.0, 1.0)
    alpha = float(np.arccos(cos_a))
    # R - R^T = 2 (sin a / a) hat(v)
    axis_raw = 0.5 * np.array(
        [r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]]
    )
    return axis_raw / _sinc(alpha)


def geodesic(r_i, r_j, s):
    """Point at parameter s on the shortest geodesic from r_i to r_j."""
    return np.asarray(r_i, dtype=float) @ exp(s * log(np.asarray(r_i).T @ r_j))


def distance(r_i, r_j):
    """Geodesic distance; satisfies 1 + 2 cos d = Trace(r_i^T r_j)."""
    return float(np.linalg.norm(log(np.asarray(r_i).T @ r_j)))


def dexp(v):
    """Left-trivialized differential of ``exp`` at v (a 3x3 matrix)."""
    v = np.asarray(v, dtype=float)
    alpha = float(np.linalg.norm(v))
    skew = hat(v)
    return _EYE - _versine(alpha) * skew + _cubic(alpha) * (skew @ skew)


def dlog(v):
    """Derivative of the group logarithm in axis-angle coordinates.

    This is the matrix inverse of ``dexp(v)``; it satisfies, for
    delta = log(R_i^T R_j),

        d(log R_i^T R_j)(e_i, e_j) = dlog(delta) e_j - dlog(delta)^T e_i.
    """
    v = np.asarray(v, dtype=float)
    alpha = float(np.linalg.norm(v))
    if alpha >= np.pi - CUT_LOCUS_MARGIN:
        raise CutLocusError("near cut locus")
    skew = hat(v)
    return (_dlog_coeff(alpha) * skew + 0.5 * _EYE) @ skew + _EYE


def dlog_directional(w, z):
    """Derivative matrix of the map w -> dlog(w) @ z for fixed z.

    Column b is the partial derivative of dlog(w) @ z with respect to w_b.
    Needed for exact Newton Jacobians of residuals built from dlog.
    """
    w = np.asarray(w, dtype=float)
    z = np.asarray(z, dtype=float)
    alpha = float(np.linalg.norm(w))
    if alpha >= np.pi - CUT_LOCUS_MARGIN:
        raise CutLocusError("near cut locus")
    skew_w = hat(w)
    skew_z = hat(z)
    wxz = skew_w @ z
    return (
        _dlog_coeff_prime_over_alpha(alpha) * np.outer(skew_w @ wxz, w)
        - _dlog_coeff(alpha) * (hat(wxz) + skew_w @ skew_z)
        - 0.5 * skew_z
    )


def orthonormality_defect(r):
    """Max-norm violation of R^T R = Id plus the determinant defect."""
    r = np.asarray(r, dtype=float)
    return max(
        float(np.max(np.abs(r.T @ r - _EYE))), abs(float(np.linalg.det(r)) - 1.0)
    )


def project_rotation(r):
    """Closest rotation in the Frobenius sense (polar factor)."""
    u, _, vt = np.linalg.svd(np.asarray(r, dtype=float))
    out = u @ vt
    if np.linalg.det(out) < 0.0:
        out = u @ np.diag([1.0, 1.0, -1.0]) @ vt
    return out


def require_rotation(r, tol=1e-10):
    """Validate the rotation invariants, returning the array unchanged."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise ValueError("rotation must be a 3x3 matrix")
    if orthonormality_defect(r) > tol:
        raise ValueError("matrix is not orthonormal with det +1")
    return r


def random_rotation(rng, max_angle=np.pi - 0.2):
    """Rotation with a uniform random axis and angle in [0, max_angle)."""
    axis = rng.standard_normal(3)
    axis /= np.linalg.norm(axis)
    return exp(axis * rng.uniform(0.0, max_angle))
