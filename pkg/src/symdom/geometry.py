"""Möbius transformations, invariant distances, flats and symmetries of D.

Distances are evaluated through the singular values of w = g_{-y}(x).
Near the boundary ``1 - ||w||`` cancels catastrophically, so each point
may carry its *defect root* R = (1 - x x*)^{1/2} per factor, and the
identity

    1 - w w* = G G*,   G = R_y (1 - x y*)^{-1} R_x

gives the large singular values of w without cancellation.  Points built
on flats or geodesic rays get R in closed form (sech of the flat
parameters), which keeps horofunction limits accurate far out along a
ray.  Small singular values are read off w directly.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .config import ATANH_CLAMP
from .triple import (
    ComplexLinearOperator,
    Element,
    NumericalInconsistency,
    OutsideDomainError,
    bergman_operator,
    bergman_sqrt,
    box_operator,
    herm_power,
    spectral_norm,
)
from .tripotents import joint_peirce_family, spectral_decompose


def _adj(m):
    return m.conj().T


def _require_ball(*xs):
    for x in xs:
        n = spectral_norm(x)
        if not n < 1.0:
            raise OutsideDomainError(f"point of norm {n!r} is not in the open unit ball")


def atanh_clamped(s):
    """tanh^{-1} with its argument clamped at 1 - 1e-15 (warns when it bites)."""
    if s > ATANH_CLAMP:
        warnings.warn(f"tanh^-1 argument {s!r} clamped to {ATANH_CLAMP!r}", RuntimeWarning, stacklevel=2)
        s = ATANH_CLAMP
    return float(np.arctanh(s))


# --- Möbius transformations -------------------------------------------------


def mobius(a, x):
    """g_a(x) = a + B(a,a)^{1/2} (id + x box a)^{-1} (x).

    The inverse is a dense solve on the vectorised space; the residual is
    checked against 1e-12.
    """
    if a.space != x.space:
        raise OutsideDomainError("mobius arguments live in different spaces")
    _require_ball(a, x)
    op = np.eye(a.space.dim) + box_operator(x, a).matrix
    rhs = x.vec()
    sol = np.linalg.solve(op, rhs)
    resid = np.linalg.norm(op @ sol - rhs)
    if resid > 1e-12 * max(1.0, np.linalg.norm(rhs)):
        raise NumericalInconsistency(
            f"linear solve residual {resid:.2e} (condition number {np.linalg.cond(op):.2e})"
        )
    return a + bergman_sqrt(a)(a.space.unvec(sol))


def mobius_type_one(a, x):
    """g_a(x) from the matrix-ball formula

    (1 - a a*)^{-1/2} (x + a) (1 + a* x)^{-1} (1 - a* a)^{1/2}.
    """
    blocks = []
    for (p, q), ab, xb in zip(a.space.factors, a.blocks, x.blocks):
        left = herm_power(np.eye(p) - ab @ _adj(ab), -0.5)
        right = herm_power(np.eye(q) - _adj(ab) @ ab, 0.5)
        blocks.append(left @ (xb + ab) @ np.linalg.solve(np.eye(q) + _adj(ab) @ xb, right))
    return Element(a.space, blocks)


def mobius_derivative(a, b):
    """g'_a(b) = B(a, a)^{1/2} B(b, -a)^{-1}."""
    inv = np.linalg.inv(bergman_operator(b, -a).matrix)
    return bergman_sqrt(a) @ ComplexLinearOperator(a.space, a.space, inv)


# --- points with defect roots -------------------------------------------------


@dataclass(frozen=True)
class BallPoint:
    """A point of D together with (1 - x x*)^{1/2} for each factor."""

    x: Element
    roots: tuple

    @property
    def space(self):
        return self.x.space


def ball_point(x):
    """Attach the defect root computed from the SVD of each block."""
    if isinstance(x, BallPoint):
        return x
    _require_ball(x)
    roots = []
    for (p, _), b in zip(x.space.factors, x.blocks):
        u, s, _vh = np.linalg.svd(b)
        d = np.ones(p)
        d[: len(s)] = np.sqrt((1.0 - s) * (1.0 + s))
        roots.append((u * d) @ _adj(u))
    return BallPoint(x, tuple(roots))


def _projectors(tripotents):
    """Per factor, list of e e* for the given tripotents."""
    space = tripotents[0].space
    return [[e.blocks[k] @ _adj(e.blocks[k]) for e in tripotents] for k in range(len(space.factors))]


def flat_ball_point(tripotents, coords):
    """sum_i c_i e_i for orthogonal tripotents, with exact defect root."""
    tripotents = list(tripotents)
    coords = [float(c) for c in coords]
    if any(not abs(c) < 1.0 for c in coords):
        raise OutsideDomainError(f"flat coordinates must lie in (-1, 1): {coords}")
    space = tripotents[0].space
    x = space.zeros()
    for c, e in zip(coords, tripotents):
        x = x + c * e
    defects = [np.sqrt((1.0 - c) * (1.0 + c)) for c in coords]
    return BallPoint(x, _roots_from(space, tripotents, defects))


def ray_ball_point(tripotents, params):
    """sum_i tanh(p_i) e_i with defect root built from sech(p_i)."""
    tripotents = list(tripotents)
    params = [float(t) for t in params]
    space = tripotents[0].space
    x = space.zeros()
    for t, e in zip(params, tripotents):
        x = x + float(np.tanh(t)) * e
    defects = [1.0 / np.cosh(t) for t in params]
    return BallPoint(x, _roots_from(space, tripotents, defects))


def _roots_from(space, tripotents, defects):
    projs = _projectors(tripotents)
    roots = []
    for k, (p, _) in enumerate(space.factors):
        r = np.eye(p, dtype=complex)
        for d, proj in zip(defects, projs[k]):
            r = r - (1.0 - d) * proj
        roots.append(r)
    return tuple(roots)


# --- distances ---------------------------------------------------------------


def _w_singular_atanh(x, y):
    """tanh^{-1} of the singular values of g_{-y}(x), all factors pooled."""
    x, y = ball_point(x), ball_point(y)
    if x.space != y.space:
        raise OutsideDomainError("distance between points of different spaces")
    out = []
    for (p, q), xb, yb, rx, ry in zip(x.space.factors, x.x.blocks, y.x.blocks, x.roots, y.roots):
        g = ry @ np.linalg.solve(np.eye(p) - xb @ _adj(yb), rx)
        sg = np.sort(np.linalg.svd(g, compute_uv=False))[: min(p, q)]
        s_from_g = np.sqrt(np.maximum(0.0, (1.0 - sg) * (1.0 + sg)))
        if np.any(s_from_g < 0.5):
            # small singular values lose half their digits through G; take them from
            # w = (1 - y y*)^{-1/2} (x - y) (1 - y* x)^{-1} (1 - y* y)^{1/2}
            right = herm_power(np.eye(q) - _adj(yb) @ yb, 0.5)
            w = np.linalg.solve(ry, xb - yb) @ np.linalg.solve(np.eye(q) - _adj(yb) @ xb, right)
            sw = np.sort(np.linalg.svd(w, compute_uv=False))[::-1][: min(p, q)]
        else:
            sw = s_from_g
        for s, sd, sgv in zip(s_from_g, sw, sg):
            if s < 0.5:
                out.append(float(np.arctanh(sd)))
            else:
                out.append(float(np.log1p(s) - np.log(sgv)))
    return np.array(out)


def caratheodory_distance(x, y):
    """d(x, y) = tanh^{-1} ||g_{-y}(x)||.

    Accepts Elements or BallPoints.
    """
    return float(np.max(_w_singular_atanh(x, y), initial=0.0))


def caratheodory_distance_direct(x, y):
    """tanh^{-1} ||g_{-y}(x)|| with g evaluated by :func:`mobius`.

    Straight transcription of the distance formula; kept as a cross-check
    for :func:`caratheodory_distance` on points well inside D.
    """
    return atanh_clamped(spectral_norm(mobius(-y, x)))


def bergman_distance(x, y):
    """(sum_i (tanh^{-1} s_i)^2)^{1/2}, s_i the singular values of g_{-x}(y)."""
    return float(np.sqrt(np.sum(_w_singular_atanh(y, x) ** 2)))


# --- flats and rays ------------------------------------------------------------


@dataclass(frozen=True)
class FlatChart:
    """Coordinates (-1,1)^r <-> flat through 0 spanned by a frame."""

    frame: object

    def point(self, coords):
        return flat_ball_point(self.frame.members, coords).x

    def ball_point(self, coords):
        return flat_ball_point(self.frame.members, coords)

    def exp0(self, params):
        """sum_i tanh(p_i) e_i; an isometry from (R^r, sup-norm) onto the flat."""
        return ray_ball_point(self.frame.members, params)

    def coords(self, x):
        """Real parts of <x, e_i> (trace inner product)."""
        return np.array([np.vdot(e.vec(), x.vec()).real for e in self.frame.members])


@dataclass(frozen=True)
class GeodesicRay:
    """gamma(t) = sum_i tanh(t - alpha_i) e_i."""

    tripotents: tuple
    offsets: tuple

    def __post_init__(self):
        if any(a < 0 for a in self.offsets):
            raise ValueError("ray offsets must be non-negative")

    @classmethod
    def from_lambdas(cls, tripotents, lambdas):
        return cls(tuple(tripotents), tuple(float(-np.log(lam)) for lam in lambdas))

    def __call__(self, t):
        return ray_ball_point(self.tripotents, [t - a for a in self.offsets])


@dataclass(frozen=True)
class ComposeRecord:
    c_coords: tuple
    residual: float
    n_samples: int


def flat_compose_mobius(frame, alpha, beta, rng=None, n_samples=8):
    """Check g_a o g_b = g_c on sampled points, c_i = tanh(alpha_i + beta_i)."""
    rng = np.random.default_rng(0) if rng is None else rng
    a = frame.point(np.tanh(alpha))
    b = frame.point(np.tanh(beta))
    c_coords = tuple(float(v) for v in np.tanh(np.asarray(alpha) + np.asarray(beta)))
    c = frame.point(c_coords)
    resid = 0.0
    for _ in range(n_samples):
        x = frame.space.random_in_ball(rng, 0.9)
        resid = max(resid, spectral_norm(mobius(a, mobius(b, x)) - mobius(c, x)))
    return ComposeRecord(c_coords, resid, n_samples)


def bergman_on_flat(frame, a_coords, b_coords):
    """sum_{0<=i<=j<=r} (1 - a_i b_i)(1 - a_j b_j) P_ij, with a_0 = b_0 = 0."""
    ab = np.concatenate([[0.0], np.asarray(a_coords, float) * np.asarray(b_coords, float)])
    space = frame.space
    out = np.zeros((space.dim, space.dim), dtype=complex)
    for (i, j), proj in joint_peirce_family(frame.members).items():
        out += (1.0 - ab[i]) * (1.0 - ab[j]) * proj.matrix
    return ComplexLinearOperator(space, space, out)


# --- symmetries -------------------------------------------------------------------


def geodesic_symmetry(x, y):
    """S_x(y) = g_x(-g_{-x}(y))."""
    return mobius(x, -mobius(-x, y))


def bergman_midpoint_from_origin(x):
    """Midpoint of 0 and x on their Bergman geodesic."""
    dec = spectral_decompose(x)
    out = x.space.zeros()
    for s, e in zip(dec.sigmas, dec.tripotents):
        out = out + float(np.tanh(0.5 * np.arctanh(s))) * e
    return out


# --- almost geodesics -------------------------------------------------------------


def _distance_matrix(points):
    n = len(points)
    pts = [ball_point(p) for p in points]
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = caratheodory_distance(pts[i], pts[j])
    return d


def is_almost_geodesic(points, eps, window=0):
    """d(z_0,z_j) >= d(z_0,z_i) + d(z_i,z_j) - eps for window <= i <= j."""
    if len(points) < 3:
        raise ValueError("need at least three points")
    d = _distance_matrix(points)
    n = len(points)
    for i in range(window, n):
        for j in range(i, n):
            if d[0, j] < d[0, i] + d[i, j] - eps:
                return False
    return True


def is_psi_almost_nonincreasing(points, eps, window=0, probes=()):
    """psi_j(x) <= psi_i(x) + eps for window <= i <= j.

    psi_n(x) = d(x, z_n) - d(z_0, z_n), base point z_0.  The probe set is
    the sequence itself plus any extra ``probes``; with the sequence
    included the test is equivalent to :func:`is_almost_geodesic`.
    """
    pts = [ball_point(p) for p in points]
    probe_pts = pts + [ball_point(p) for p in probes]
    n = len(pts)
    base = np.array([caratheodory_distance(pts[0], z) for z in pts])
    psi = np.array([[caratheodory_distance(x, z) - base[k] for k, z in enumerate(pts)] for x in probe_pts])
    for i in range(window, n):
        for j in range(i, n):
            if np.any(psi[:, j] > psi[:, i] + eps):
                return False
    return True
