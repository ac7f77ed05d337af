"""Horofunctions of (D, Carathéodory distance) and their boundary invariants.

A horofunction is specified by orthogonal minimal tripotents e_1..e_p and
weights 0 < lambda_i <= 1 with max lambda_i = 1.  It is the limit of
psi_t(z) = d(z, gamma(t)) - d(0, gamma(t)) along the ray

    gamma(t) = sum_i tanh(t - alpha_i) e_i,   alpha_i = -log lambda_i.

Singletons (p = 1) also have a closed form through the Bergman operator.
Detour costs and the detour metric are computed in coordinates of the
JB-algebra A(e) (Hermitian matrices) and cross-checked by limits along rays.
"""

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .config import DIVERGENCE_CUTOFF, GROMOV_ZERO, resolve_tol
from .geometry import (
    GeodesicRay,
    ball_point,
    caratheodory_distance,
    flat_ball_point,
    mobius,
)
from .triple import (
    Element,
    NumericalInconsistency,
    OutsideDomainError,
    ShapeError,
    bergman_inv_sqrt,
    bergman_operator,
    spectral_norm,
    triple_product,
)
from .tripotents import (
    frame_avoiding,
    is_minimal,
    is_orthogonal,
    is_tripotent,
    joint_peirce_projection,
    order_leq,
    peirce_projection,
)

INF = float("inf")


def _adj(m):
    return m.conj().T


# --- horofunction data ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HorofunctionSpec:
    """Tripotents e_1..e_p with weights lambda_1..lambda_p."""

    tripotents: tuple
    lambdas: tuple

    def __post_init__(self):
        object.__setattr__(self, "tripotents", tuple(self.tripotents))
        object.__setattr__(self, "lambdas", tuple(float(v) for v in self.lambdas))

    @classmethod
    def singleton(cls, e):
        return cls((e,), (1.0,))

    @property
    def space(self):
        return self.tripotents[0].space

    @property
    def tripotent(self):
        """e = e_1 + ... + e_p, the tripotent labelling the part."""
        out = self.space.zeros()
        for e in self.tripotents:
            out = out + e
        return out

    def validate(self, tol=None):
        if not self.tripotents or len(self.tripotents) != len(self.lambdas):
            raise ValueError("need matching, non-empty tripotents and lambdas")
        if len(self.tripotents) > self.space.rank:
            raise ValueError("more tripotents than the rank of the space")
        if not all(0.0 < lam <= 1.0 for lam in self.lambdas) or not np.isclose(max(self.lambdas), 1.0):
            raise ValueError(f"lambdas must lie in (0, 1] with maximum 1: {self.lambdas}")
        for a, e in enumerate(self.tripotents):
            if not (is_tripotent(e, tol) and is_minimal(e, tol)):
                raise ValueError(f"tripotent {a} is not minimal")
            for f in self.tripotents[a + 1 :]:
                if not is_orthogonal(e, f, tol):
                    raise ValueError("tripotents are not mutually orthogonal")
        return self

    def ray(self):
        return GeodesicRay.from_lambdas(self.tripotents, self.lambdas)

    def canonical_key(self, digits=9):
        """Sort pairs by lambda descending, then by the serialised tripotent."""

        def ser(e):
            v = np.round(e.vec(), digits) + 0.0
            return json.dumps([[float(z.real), float(z.imag)] for z in v])

        pairs = sorted(zip(self.lambdas, self.tripotents), key=lambda t: (-round(t[0], digits), ser(t[1])))
        return tuple((round(lam, digits), ser(e)) for lam, e in pairs)

    def same_as(self, other, digits=9):
        return self.canonical_key(digits) == other.canonical_key(digits)


@dataclass(frozen=True)
class LimitReport:
    """Value of a limit evaluated along a schedule."""

    value: float
    converged: bool
    divergent: bool
    trace: tuple
    diffs: tuple = field(default=())

    def as_dict(self):
        return {
            "value": self.value,
            "converged": self.converged,
            "divergent": self.divergent,
            "trace": [list(t) for t in self.trace],
        }


def _report(params, values, tol, extrapolated=None):
    values = [float(v) for v in values]
    diffs = tuple(abs(b - a) for a, b in zip(values, values[1:]))
    converged = bool(diffs) and diffs[-1] <= tol
    divergent = values[-1] > DIVERGENCE_CUTOFF
    value = values[-1] if extrapolated is None else float(extrapolated)
    return LimitReport(value, converged and not divergent, divergent, tuple(zip(params, values)), diffs)


# --- evaluation -------------------------------------------------------------------


def singleton_eval(e, z):
    """Xi_e(z) = 1/2 log ||B(z,z)^{-1/2} B(z,e) e||."""
    z = z.x if hasattr(z, "roots") else z
    if e.space != z.space:
        raise ShapeError("singleton and point live in different spaces")
    if not z.in_ball():
        raise OutsideDomainError(f"point of norm {spectral_norm(z)} is outside D")
    if not is_minimal(e):
        raise ValueError("singleton_eval needs a minimal tripotent")
    return 0.5 * float(np.log(spectral_norm(bergman_inv_sqrt(z)(bergman_operator(z, e)(e)))))


def horofunction_eval(spec, z, t_schedule=(10.0, 15.0, 20.0), tol=1e-6):
    """lim_t d(z, gamma(t)) - d(0, gamma(t)) along the ray of ``spec``."""
    zp = ball_point(z)
    origin = ball_point(zp.space.zeros())
    ray = spec.ray()
    values = []
    for t in t_schedule:
        g = ray(t)
        values.append(caratheodory_distance(zp, g) - caratheodory_distance(origin, g))
    return _report(tuple(float(t) for t in t_schedule), values, tol)


def horofunction_operator(spec, z):
    """sum_{i<=j} lambda_i lambda_j B(z,z)^{-1/2} B(z,e) P_ij on V."""
    e = spec.tripotent
    lam = (0.0,) + spec.lambdas
    core = bergman_inv_sqrt(z) @ bergman_operator(z, e)
    total = None
    p = len(spec.tripotents)
    for i in range(1, p + 1):
        for j in range(i, p + 1):
            term = (lam[i] * lam[j]) * (core @ joint_peirce_projection(spec.tripotents, i, j))
            total = term if total is None else total + term
    return total


def _polar(blocks):
    out = []
    for b in blocks:
        u, _s, vh = np.linalg.svd(b, full_matrices=False)
        out.append(u @ vh)
    return out


def horofunction_norm_lower_bound(spec, z, rng, n_starts=16, n_steps=30):
    """Lower bound for 1/2 log of the spectral-norm operator norm of
    :func:`horofunction_operator`, by projected ascent from random maximal
    tripotents (plus e itself).  Diagnostic only: never ground truth.
    """
    op = horofunction_operator(spec, z)
    space = z.space
    starts = [spec.tripotent] + [Element(space, _polar(space.random(rng).blocks)) for _ in range(n_starts)]
    best = 0.0
    for x in starts:
        val = spectral_norm(op(x)) / max(spectral_norm(x), 1e-300)
        for _ in range(n_steps):
            y = op(x)
            grad_dir = []
            for b in y.blocks:
                u, _s, vh = np.linalg.svd(b)
                grad_dir.append(np.outer(u[:, 0], vh[0]) if b.size else b)
            g = space.unvec(op.matrix.conj().T @ Element(space, grad_dir).vec())
            x_new = Element(space, _polar(g.blocks))
            new_val = spectral_norm(op(x_new))
            if new_val <= val + 1e-15:
                break
            x, val = x_new, new_val
        best = max(best, val)
    return 0.5 * float(np.log(best))


# --- Gromov products of singletons --------------------------------------------------


def _require_minimal(*es):
    for e in es:
        if not (is_tripotent(e) and is_minimal(e)):
            raise ValueError("expected a minimal tripotent")


def gromov_norm(u, v):
    """||P_2(u) B(u, v) v||."""
    return spectral_norm(peirce_projection(u, 2)(bergman_operator(u, v)(v)))


def gromov_singletons(u, v):
    """<Xi_u | Xi_v>_0 = 1/2 log (4 / ||P_2(u) B(u,v) v||), +inf when the norm vanishes."""
    _require_minimal(u, v)
    if u.space != v.space:
        raise ShapeError("tripotents live in different spaces")
    n = gromov_norm(u, v)
    if n < GROMOV_ZERO:
        return INF
    return 0.5 * float(np.log(4.0 / n))


def gromov_peirce_data(u, v):
    """(mu, lam) with P_2(u) v = mu u and {b, b, u} = lam u, b = P_1(u) v."""
    a = peirce_projection(u, 2)(v)
    b = peirce_projection(u, 1)(v)
    uu = np.vdot(u.vec(), u.vec()).real
    mu = np.vdot(u.vec(), a.vec()) / uu
    lam = np.vdot(u.vec(), triple_product(b, b, u).vec()) / uu
    return complex(mu), complex(lam)


def gromov_from_peirce(u, v):
    """1/2 log (2 / |Re mu - |mu|^2 - lam|)."""
    mu, lam = gromov_peirce_data(u, v)
    denom = abs(mu.real - abs(mu) ** 2 - lam)
    return INF if denom < GROMOV_ZERO / 2 else 0.5 * float(np.log(2.0 / denom))


def gromov_numeric(u, v, ks=(3, 4, 5, 6, 7, 8), tol=1e-6):
    """(tu | sv)_0 along t = s = 1 - 10^-k, Richardson-extrapolated in 1 - t."""
    origin = ball_point(u.space.zeros())
    params, values = [], []
    for k in ks:
        t = 1.0 - 10.0 ** (-k)
        x = flat_ball_point([u], [t])
        y = flat_ball_point([v], [t])
        values.append(caratheodory_distance(x, origin) + caratheodory_distance(origin, y) - caratheodory_distance(x, y))
        params.append(t)
    extrapolated = values[-1] + (values[-1] - values[-2]) / 9.0 if len(values) > 1 else values[-1]
    rep = _report(tuple(params), values, tol, extrapolated)
    if rep.divergent:
        return LimitReport(INF, False, True, rep.trace, rep.diffs)
    return rep


# --- cone of A(e) ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConePoint:
    """Hermitian coordinates of an element of A(e), one block per factor."""

    blocks: tuple
    reference: Element

    def __post_init__(self):
        for b in self.blocks:
            if not np.allclose(b, _adj(b), atol=1e-12, rtol=0):
                raise ValueError("cone coordinates must be Hermitian")

    @property
    def interior(self):
        return all(np.linalg.eigvalsh(b).min() > 0 for b in self.blocks)

    def dense(self):
        return scipy.linalg.block_diag(*self.blocks) if self.blocks else np.zeros((0, 0))


def cone_frame(e, tol=None):
    """Per factor, (U_s, V_s) with e_k = U_s V_s*."""
    tol = resolve_tol(tol)
    out = []
    for b in e.blocks:
        u, s, vh = np.linalg.svd(b)
        k = int(np.sum(s > 0.5))
        if np.any(np.abs(s[:k] - 1.0) > tol):
            raise ValueError("cone coordinates need a tripotent")
        out.append((u[:, :k], vh[:k].conj().T))
    return out


def to_cone(e, x, frame=None):
    """Phi(x) = U_s* x V_s, blockwise; maps A(e) onto Hermitian matrices, e to identity."""
    frame = cone_frame(e) if frame is None else frame
    blocks = []
    for (u, v), b in zip(frame, x.blocks):
        if u.shape[1]:
            m = _adj(u) @ b @ v
            blocks.append(0.5 * (m + _adj(m)) if np.allclose(m, _adj(m), atol=1e-10) else m)
    return ConePoint(tuple(blocks), e)


def cone_M(x, y):
    """M(x/y) = inf{lam > 0 : x <= lam y}: largest eigenvalue of y^{-1/2} x y^{-1/2}, max over blocks."""
    best = 0.0
    for xb, yb in zip(x.blocks, y.blocks):
        if np.linalg.eigvalsh(yb).min() <= 0:
            raise ValueError("M(x/y) needs y in the interior of the cone")
        best = max(best, float(scipy.linalg.eigh(xb, yb, eigvals_only=True).max()))
    return best


def thompson(x, y):
    return max(float(np.log(cone_M(x, y))), float(np.log(cone_M(y, x))))


def hilbert(x, y):
    return 0.5 * float(np.log(cone_M(x, y) * cone_M(y, x)))


def cone_inverse(x):
    return ConePoint(tuple(np.linalg.inv(b) for b in x.blocks), x.reference)


def _weighted(spec):
    out = spec.space.zeros()
    for lam, e in zip(spec.lambdas, spec.tripotents):
        out = out + lam**2 * e
    return out


# --- detour cost ----------------------------------------------------------------------


def detour_cost(xi, eta, tol=None):
    """H(xi, eta) = 1/2 log M(b/a) if c <= e, else +inf.

    a = sum lambda_i^2 e_i and b = sum mu_i^2 c_i, in A(e) coordinates.
    """
    if xi.space != eta.space:
        raise ShapeError("horofunctions of different spaces")
    e, c = xi.tripotent, eta.tripotent
    if not order_leq(c, e, tol):
        return INF
    frame = cone_frame(e, tol)
    a = to_cone(e, _weighted(xi), frame)
    b = to_cone(e, _weighted(eta), frame)
    return 0.5 * float(np.log(cone_M(b, a)))


def detour_metric(xi, eta, tol=None):
    """delta(xi, eta) = H(xi, eta) + H(eta, xi)."""
    return detour_cost(xi, eta, tol) + detour_cost(eta, xi, tol)


def part_of(xi):
    """Tripotent labelling the part of xi."""
    return xi.tripotent


def part_cross_section(eta, frame=None):
    """b = sum mu_i^2 c_i in A(c) coordinates; M(b/c) = 1.

    Cross-sections of different members of one part are only comparable in
    a shared chart: pass ``frame=cone_frame(c)`` for all of them.  The
    default chart comes from the SVD of c, whose basis is not unique.
    """
    c = eta.tripotent
    return to_cone(c, _weighted(eta), frame)


def detour_cost_numeric(xi, eta, t_schedule=None, inner_offsets=(8.0, 10.0, 12.0), tol=1e-6):
    """lim_t d(0, gamma_xi(t)) + eta(gamma_xi(t)), eta itself by ray limits.

    The default schedule is t = 4, 5, 6 past the largest ray offset of xi;
    both limits converge exponentially, while rounding grows like e^{2t}, so
    moderate t is more accurate than large t.  The inner horofunction limit
    runs at s = t + offset past the largest offset of eta.
    """
    origin = ball_point(xi.space.zeros())
    ray = xi.ray()
    if t_schedule is None:
        t_schedule = tuple(max(ray.offsets) + t for t in (4.0, 5.0, 6.0))
    shift = max(eta.ray().offsets)
    t_schedule = [float(t) for t in t_schedule]

    def value_at(t):
        z = ray(t)
        inner = horofunction_eval(eta, z, tuple(t + shift + o for o in inner_offsets))
        return caratheodory_distance(origin, z) + inner.value, inner.converged

    values, inner_ok = [], True
    for t in t_schedule:
        v, ok = value_at(t)
        values.append(v)
        inner_ok = inner_ok and ok
    # a trace still climbing linearly is followed until it crosses the divergence cutoff
    step = t_schedule[-1] - t_schedule[-2] if len(t_schedule) > 1 else 1.0
    while len(values) > 1 and values[-1] - values[-2] > 0.5 * step and values[-1] <= DIVERGENCE_CUTOFF:
        t_schedule.append(t_schedule[-1] + step)
        values.append(value_at(t_schedule[-1])[0])
    rep = _report(tuple(float(t) for t in t_schedule), values, tol)
    if rep.divergent:
        return LimitReport(INF, False, True, rep.trace, rep.diffs)
    return LimitReport(rep.value, rep.converged and inner_ok, False, rep.trace, rep.diffs)


# --- characterisations ------------------------------------------------------------------


def classify_pair(u, v, tol=1e-8):
    """Relation between minimal tripotents read off from Gromov products.

    Returns 'opposite', 'orthogonal', 'i-multiple', 'minus-i-multiple' or
    'generic'.
    """
    g_plus = gromov_singletons(u, v)
    g_minus = gromov_singletons(u, -v)
    if abs(g_plus) <= tol:
        return "opposite"
    if g_plus == INF and g_minus == INF:
        return "orthogonal"
    if frame_avoiding(u, v) is not None and abs(g_plus + g_minus - np.log(2.0)) <= tol:
        if spectral_norm(v - 1j * u) <= tol:
            return "i-multiple"
        if spectral_norm(v + 1j * u) <= tol:
            return "minus-i-multiple"
        raise NumericalInconsistency("Gromov data says v = +-iu but neither matches")
    return "generic"


@dataclass(frozen=True)
class FlatMembership:
    member: bool
    sums: tuple
    reconstruction_residual: float
    agree: bool


def flat_membership_test(frame, x, tol=1e-8):
    """x is in the flat of ``frame`` iff Xi_{e_i}(x) + Xi_{-e_i}(x) = 0 for all i.

    Cross-checked by rebuilding sum_i lambda_i e_i with
    lambda_i = -tanh(Xi_{e_i}(x)) and comparing with x.
    """
    sums, coords = [], []
    for e in frame.members:
        plus = singleton_eval(e, x)
        sums.append(plus + singleton_eval(-e, x))
        coords.append(-np.tanh(plus))
    member = all(abs(s) <= tol for s in sums)
    resid = spectral_norm(frame.point(coords) - x)
    return FlatMembership(member, tuple(sums), resid, member == (resid <= 1e-6))


def v0_membership_test(e, x, tol=1e-8):
    """Xi_e(x) = Xi_{-e}(x) = 0, which happens exactly when x is in V_0(e)."""
    return abs(singleton_eval(e, x)) <= tol and abs(singleton_eval(-e, x)) <= tol


def translation_action_check(frame, coords, y):
    """max_i |Xi_{e_i}(g_x(y)) - Xi_{e_i}(y) + tanh^{-1}(lambda_i)| for x = sum lambda_i e_i."""
    x = frame.point(coords)
    gy = mobius(x, y)
    return max(
        abs(singleton_eval(e, gy) - singleton_eval(e, y) + np.arctanh(lam))
        for e, lam in zip(frame.members, coords)
    )
