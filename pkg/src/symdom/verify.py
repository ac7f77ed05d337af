"""Registry of lemma checks behind ``symdom verify``.

Each entry quotes the statement it exercises, runs a seeded batch of cases
and reports the largest residual against a fixed tolerance.  Predicates that
return a verdict rather than a number report the count of wrong verdicts,
with tolerance 0.

Fault injection swaps one formula in the :class:`Implementations` table for
a perturbed copy.  Every slot in the table is consumed by exactly one entry,
so a fault must fail that entry and nothing else.
"""

import zlib
from dataclasses import dataclass, field, replace

import numpy as np

from . import boundary, geometry, maps
from .triple import (
    TripleSpace,
    bergman_operator,
    bergman_operator_expanded,
    box_operator,
    space_invariants,
    spectral_norm,
    triple_product,
)
from .tripotents import (
    Frame,
    factor_of,
    frame_completion,
    is_orthogonal,
    joint_peirce_family,
    order_leq,
    peirce2_dim,
    random_frame,
    random_minimal,
)

TYPE_SCOPE = "checked on type I only"

SPACES = (
    TripleSpace.of((2, 3)),
    TripleSpace.of((3, 4)),
    TripleSpace.of((2, 2), (1, 1)),
    TripleSpace.of((1, 1), (1, 1), (1, 1)),
    TripleSpace.of((2, 2), (1, 3)),
)
IRREDUCIBLE = (
    TripleSpace.of((1, 1)),
    TripleSpace.of((2, 2)),
    TripleSpace.of((2, 3)),
    TripleSpace.of((3, 4)),
    TripleSpace.of((1, 5)),
)


@dataclass(frozen=True)
class Implementations:
    """Formulas that fault injection may replace."""

    bergman_on_flat: object = geometry.bergman_on_flat
    gromov_singletons: object = boundary.gromov_singletons
    cone_M: object = boundary.cone_M
    singleton_eval: object = boundary.singleton_eval


def _perturbed_bergman_on_flat(frame, a, b):
    return 1.000001 * geometry.bergman_on_flat(frame, a, b)


def _perturbed_gromov(u, v):
    return boundary.gromov_singletons(u, v) + 1e-6


def _perturbed_cone_M(x, y):
    return boundary.cone_M(x, y) * (1.0 + 1e-6)


def _perturbed_singleton(e, z):
    return boundary.singleton_eval(e, z) + 1e-5


FAULTS = {
    "bergman_on_flat": ("bergman_on_flat", _perturbed_bergman_on_flat),
    "gromov_singletons": ("gromov_singletons", _perturbed_gromov),
    "cone_M": ("cone_M", _perturbed_cone_M),
    "singleton_eval": ("singleton_eval", _perturbed_singleton),
}


@dataclass(frozen=True)
class LemmaEntry:
    lemma_id: str
    suite: str
    paper_anchor: str
    tolerance: float
    check: object
    uses: tuple = ()


@dataclass(frozen=True)
class EntryResult:
    lemma_id: str
    paper_anchor: str
    suite: str
    n_cases: int
    max_residual: float
    tolerance: float
    verdict: str
    seed: int
    scope: str = TYPE_SCOPE

    def as_dict(self):
        return {
            "lemma_id": self.lemma_id,
            "paper_anchor": self.paper_anchor,
            "suite": self.suite,
            "n_cases": self.n_cases,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "seed": self.seed,
            "scope": self.scope,
        }


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    suite: str
    entries: tuple
    fault: str | None = None
    timestamp: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(e.verdict == "pass" for e in self.entries)

    @property
    def failing(self):
        return [e.lemma_id for e in self.entries if e.verdict != "pass"]

    def as_dict(self):
        out = {
            "seed": self.seed,
            "suite": self.suite,
            "fault": self.fault,
            "passed": self.passed,
            "n_entries": len(self.entries),
            "entries": [e.as_dict() for e in self.entries],
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out


# --- sampling helpers ----------------------------------------------------------------


def _space(rng, pool=SPACES):
    return pool[int(rng.integers(len(pool)))]


def _coords(rng, n, bound=0.95):
    return rng.uniform(-bound, bound, n)


def _frame(rng, space=None):
    space = _space(rng) if space is None else space
    return random_frame(space, rng)


def _spec(rng, members):
    lam = rng.uniform(0.1, 1.0, len(members))
    lam[int(rng.integers(len(members)))] = 1.0
    return boundary.HorofunctionSpec(members, lam)


def _same_part_pair(rng):
    """Two specs whose tripotents sum to the same e, built from unrelated frames of A(e)."""
    frame = _frame(rng)
    p = int(rng.integers(1, len(frame) + 1))
    first = list(frame.members[:p])
    e = first[0]
    for m in first[1:]:
        e = e + m
    second = []
    for k, (u, v) in enumerate(boundary.cone_frame(e)):
        s = u.shape[1]
        if s == 0:
            continue
        q, _ = np.linalg.qr(rng.normal(size=(s, s)) + 1j * rng.normal(size=(s, s)))
        uq, vq = u @ q, v @ q
        second += [e.space.embed(k, np.outer(uq[:, i], vq[:, i].conj())) for i in range(s)]
    return _spec(rng, first), _spec(rng, second)


# --- core checks ---------------------------------------------------------------------


def _jordan(rng, impl, n=100):
    worst = 0.0
    for _ in range(n):
        sp = _space(rng)
        a, b, x, y, z = (sp.random(rng, norm=1.0) for _ in range(5))
        t = triple_product
        lhs = t(a, b, t(x, y, z))
        rhs = t(t(a, b, x), y, z) - t(x, t(b, a, y), z) + t(x, y, t(a, b, z))
        worst = max(worst, spectral_norm(lhs - rhs))
    return n, worst


def _norm_axiom(rng, impl, n=100):
    worst = 0.0
    for _ in range(n):
        a = _space(rng).random(rng)
        worst = max(worst, abs(box_operator(a, a).op_norm - spectral_norm(a) ** 2) / max(1.0, spectral_norm(a) ** 2))
    return n, worst


def _bergman_definition(rng, impl, n=100):
    worst = 0.0
    for _ in range(n):
        sp = _space(rng)
        a, b = sp.random_in_ball(rng), sp.random_in_ball(rng)
        worst = max(worst, np.abs(bergman_operator(a, b).matrix - bergman_operator_expanded(a, b).matrix).max())
    return n, worst


def _orthogonality(rng, impl, n=60):
    wrong = 0
    for k in range(n):
        frame = _frame(rng)
        a = frame[0]
        b = frame[1] if len(frame) > 1 and k % 2 == 0 else random_minimal(frame.space, rng, factor_of(a))
        truth = k % 2 == 0 and len(frame) > 1
        box_ab = box_operator(a, b).op_norm <= 1e-10
        box_ba = box_operator(b, a).op_norm <= 1e-10
        prod = spectral_norm(triple_product(a, a, b)) <= 1e-10
        wrong += not (box_ab == box_ba == prod == truth)
    return n, float(wrong)


def _orthogonal_norm(rng, impl, n=100):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        c = rng.uniform(-2, 2, len(frame))
        split = int(rng.integers(1, len(frame))) if len(frame) > 1 else 1
        x = Frame(frame.members[:split]).point(c[:split]) if split else frame.space.zeros()
        y = frame.space.zeros()
        for ci, e in zip(c[split:], frame.members[split:]):
            y = y + ci * e
        worst = max(worst, abs(spectral_norm(x + y) - max(spectral_norm(x), spectral_norm(y))))
    return n, worst


def _peirce_rules(rng, impl, n=40):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        fam = joint_peirce_family(frame.members)
        r = len(frame)
        i, j, k, l = (int(v) for v in rng.integers(0, r + 1, 4))

        def proj(s, t):
            return fam[tuple(sorted((s, t)))]

        x, y, z = (frame.space.random(rng, norm=1.0) for _ in range(3))
        prod = triple_product(proj(i, j)(x), proj(j, k)(y), proj(k, l)(z))
        worst = max(worst, spectral_norm(prod - proj(i, l)(prod)))
        total = sum(p.matrix for p in fam.values())
        worst = max(worst, np.abs(total - np.eye(frame.space.dim)).max())
    return n, worst


def _rank_genus(rng, impl, n=None):
    worst = 0.0
    for sp in IRREDUCIBLE:
        inv = space_invariants(sp)
        e = frame_completion([], sp).members
        emax = e[0]
        for m in e[1:]:
            emax = emax + m
        genus = 2.0 / inv.rank * np.trace(box_operator(emax, emax).matrix).real
        worst = max(worst, abs(inv.rank * genus - peirce2_dim(emax) - inv.dim), abs(genus - inv.genus))
    return len(IRREDUCIBLE), worst


def _distance_invariance(rng, impl, n=40):
    worst = 0.0
    for _ in range(n):
        sp = _space(rng)
        a, x, y = (sp.random_in_ball(rng, 0.9) for _ in range(3))
        gx, gy = geometry.mobius(a, x), geometry.mobius(a, y)
        worst = max(
            worst,
            abs(geometry.caratheodory_distance(gx, gy) - geometry.caratheodory_distance(x, y)),
            abs(geometry.bergman_distance(gx, gy) - geometry.bergman_distance(x, y)),
        )
    return n, worst


def _distance_from_origin(rng, impl, n=100):
    worst = 0.0
    for _ in range(n):
        sp = _space(rng)
        u = random_minimal(sp, rng)
        t = float(rng.uniform(0.0, 0.999))
        worst = max(worst, abs(geometry.caratheodory_distance(sp.zeros(), t * u) - np.arctanh(t)))
    return n, worst


def _flat_linf(rng, impl, n=60):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        a, b = _coords(rng, len(frame)), _coords(rng, len(frame))
        d = geometry.caratheodory_distance(frame.point(a), frame.point(b))
        worst = max(worst, abs(d - np.max(np.abs(np.arctanh(a) - np.arctanh(b)))))
    return n, worst


def _flat_bergman(rng, impl, n=40):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        a, b = rng.uniform(-2, 2, len(frame)), rng.uniform(-2, 2, len(frame))
        closed = impl.bergman_on_flat(frame, a, b).matrix
        direct = bergman_operator(frame.point(a), frame.point(b)).matrix
        worst = max(worst, np.abs(closed - direct).max())
    return n, worst


def _flat_compose(rng, impl, n=30):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        alpha, beta = rng.uniform(-1.5, 1.5, len(frame)), rng.uniform(-1.5, 1.5, len(frame))
        worst = max(worst, geometry.flat_compose_mobius(frame, alpha, beta, rng, n_samples=3).residual)
    return n, worst


def _geodesic_symmetry(rng, impl, n=40):
    worst = 0.0
    for _ in range(n):
        sp = _space(rng)
        x, y = sp.random_in_ball(rng, 0.8), sp.random_in_ball(rng, 0.8)
        s = geometry.geodesic_symmetry(x, y)
        worst = max(
            worst,
            abs(geometry.bergman_distance(y, x) - geometry.bergman_distance(x, s)),
            abs(geometry.bergman_distance(y, s) - 2 * geometry.bergman_distance(x, y)),
            spectral_norm(geometry.geodesic_symmetry(x, s) - y),
        )
    return n, worst


def _mobius_flip(rng, impl, n=40):
    worst = 0.0
    for _ in range(n):
        sp = _space(rng)
        w, y = sp.random_in_ball(rng, 0.7), sp.random_in_ball(rng, 0.9)
        z = geometry.geodesic_symmetry(w, sp.zeros())
        worst = max(worst, spectral_norm(geometry.mobius(z, y) - geometry.geodesic_symmetry(w, -y)))
    return n, worst


def _mobius_derivative(rng, impl, n=30):
    worst = 0.0
    h = 1e-6
    for _ in range(n):
        sp = _space(rng)
        a, b = sp.random_in_ball(rng, 0.8), sp.random_in_ball(rng, 0.8)
        d = sp.random(rng, norm=1.0)
        fd = (geometry.mobius(a, b + h * d) - geometry.mobius(a, b - h * d)) / (2 * h)
        worst = max(worst, spectral_norm(fd - geometry.mobius_derivative(a, b)(d)))
    return n, worst


# --- boundary checks --------------------------------------------------------------------


def _singleton_on_flat(rng, impl, n=60):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        lam = _coords(rng, len(frame))
        x = frame.point(lam)
        for e, l in zip(frame, lam):
            worst = max(worst, abs(boundary.singleton_eval(e, x) + np.arctanh(l)))
    return n, worst


def _translation(rng, impl, n=40):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        y = frame.space.random_in_ball(rng, 0.9)
        worst = max(worst, boundary.translation_action_check(frame, _coords(rng, len(frame), 0.9), y))
    return n, worst


def _singleton_limit(rng, impl, n=20):
    worst = 0.0
    for _ in range(n):
        sp = _space(rng)
        e = random_minimal(sp, rng)
        z = sp.random_in_ball(rng, 0.9)
        lim = boundary.horofunction_eval(boundary.HorofunctionSpec.singleton(e), z)
        worst = max(worst, abs(lim.value - impl.singleton_eval(e, z)))
    return n, worst


def _pair(rng):
    sp = _space(rng)
    k = int(rng.integers(len(sp.factors)))
    return random_minimal(sp, rng, k), random_minimal(sp, rng, k)


def _gromov_decomposition(rng, impl, n=100):
    worst = 0.0
    for _ in range(n):
        u, v = _pair(rng)
        worst = max(worst, abs(impl.gromov_singletons(u, v) - boundary.gromov_from_peirce(u, v)))
        worst = max(worst, abs(boundary.gromov_singletons(u, v) - boundary.gromov_singletons(v, u)))
    return n, worst


def _gromov_numeric(rng, impl, n=20):
    worst = 0.0
    for _ in range(n):
        u, v = _pair(rng)
        worst = max(worst, abs(boundary.gromov_numeric(u, v).value - boundary.gromov_singletons(u, v)))
    return n, worst


def _complex_multiple(rng, impl, n=60):
    worst = 0.0
    for _ in range(n):
        u = random_minimal(_space(rng), rng)
        mu = np.exp(1j * rng.uniform(0.01, 2 * np.pi - 0.01))
        worst = max(worst, abs(boundary.gromov_singletons(u, mu * u) - 0.5 * np.log(2 / (1 - mu.real))))
    return n, worst


def _opposite(rng, impl, n=60):
    worst = 0.0
    for k in range(n):
        u, v = _pair(rng)
        if k % 2 == 0:
            worst = max(worst, boundary.gromov_singletons(u, -u))
        elif boundary.gromov_singletons(u, v) <= 1e-8:
            worst = max(worst, 1.0)
    return n, worst


def _orthogonal(rng, impl, n=60):
    wrong = 0
    for k in range(n):
        frame = _frame(rng)
        u = frame[0]
        v = frame[-1] if k % 2 == 0 and len(frame) > 1 else random_minimal(frame.space, rng, factor_of(u))
        both_inf = boundary.gromov_singletons(u, v) == np.inf and boundary.gromov_singletons(u, -v) == np.inf
        wrong += both_inf != is_orthogonal(u, v)
    return n, float(wrong)


def _multiplication_by_i(rng, impl, n=60):
    worst = 0.0
    for k in range(n):
        u = random_minimal(_space(rng), rng)
        v = (1j if k % 2 == 0 else -1j) * u
        total = boundary.gromov_singletons(u, v) + boundary.gromov_singletons(u, -v)
        label = boundary.classify_pair(u, v)
        expected = "i-multiple" if k % 2 == 0 else "minus-i-multiple"
        worst = max(worst, abs(total - np.log(2.0)), 0.0 if label == expected else 1.0)
    return n, worst


def _flat_membership(rng, impl, n=40):
    wrong = 0
    for k in range(n):
        frame = _frame(rng)
        x = frame.point(_coords(rng, len(frame), 0.8))
        on_flat = k % 2 == 0
        if not on_flat:
            x = x + 0.1 * frame.space.random(rng, norm=1.0)
            flat = frame.point([np.real(np.vdot(e.vec(), x.vec())) for e in frame])
            on_flat = spectral_norm(x - flat) <= 1e-12
        wrong += boundary.flat_membership_test(frame, x).member != on_flat
    return n, float(wrong)


def _v0_membership(rng, impl, n=40):
    wrong = 0
    for k in range(n):
        frame = _frame(rng)
        e = frame[0]
        if len(frame) > 1 and k % 2 == 0:
            x = Frame(frame.members[1:]).point(_coords(rng, len(frame) - 1, 0.9))
            truth = True
        else:
            x = frame.space.random_in_ball(rng, 0.9)
            truth = False
        wrong += boundary.v0_membership_test(e, x) != truth
    return n, float(wrong)


def _detour_finiteness(rng, impl, n=60):
    wrong = 0
    for _ in range(n):
        frame = _frame(rng)
        r = len(frame)
        pick = lambda: [m for m in frame.members if rng.random() < 0.5] or [frame[int(rng.integers(r))]]
        xi, eta = _spec(rng, pick()), _spec(rng, pick())
        finite = boundary.detour_cost(xi, eta) < np.inf
        wrong += finite != order_leq(eta.tripotent, xi.tripotent)
    return n, float(wrong)


def _busemann(rng, impl, n=10):
    worst = 0.0
    for _ in range(n):
        frame = _frame(rng)
        xi = _spec(rng, frame.members[: int(rng.integers(1, len(frame) + 1))])
        worst = max(worst, abs(boundary.detour_cost(xi, xi)), abs(boundary.detour_cost_numeric(xi, xi).value))
    return n, worst


def _detour_numeric(rng, impl, n=10):
    worst = 0.0
    for _ in range(n):
        xi, eta = _same_part_pair(rng)
        worst = max(worst, abs(boundary.detour_cost(xi, eta) - boundary.detour_cost_numeric(xi, eta).value))
    return n, worst


def _hilbert_part(rng, impl, n=60):
    worst = 0.0
    for _ in range(n):
        xi, eta = _same_part_pair(rng)
        chart = boundary.cone_frame(xi.tripotent)
        a, b = boundary.part_cross_section(xi, chart), boundary.part_cross_section(eta, chart)
        dh = 0.5 * np.log(impl.cone_M(a, b) * impl.cone_M(b, a))
        worst = max(worst, abs(boundary.detour_metric(xi, eta) - dh))
    return n, worst


def _cone_inverse(rng, impl, n=60):
    worst = 0.0
    for _ in range(n):
        s = int(rng.integers(1, 5))
        pts = []
        for _ in range(2):
            g = rng.normal(size=(s, s)) + 1j * rng.normal(size=(s, s))
            pts.append(boundary.ConePoint((g @ g.conj().T + 0.1 * np.eye(s),), None))
        x, y = pts
        lhs = boundary.cone_M(x, y)
        rhs = boundary.cone_M(boundary.cone_inverse(y), boundary.cone_inverse(x))
        worst = max(worst, abs(lhs - rhs) / lhs)
    return n, worst


# --- map checks ---------------------------------------------------------------------------


def _stock_linear_maps(rng):
    m22, m23 = TripleSpace.of((2, 2)), TripleSpace.of((2, 3))
    prod, prod_big = TripleSpace.of((2, 2), (1, 1)), TripleSpace.of((2, 3), (1, 2))
    return [
        maps.block_embedding(m22, m23),
        maps.block_embedding(prod, prod_big),
        maps.random_unitary_map(_space(rng), rng),
    ]


def _homomorphism_isometry(rng, impl, n=None):
    worst = 0.0
    cases = 0
    for phi in _stock_linear_maps(rng):
        hom = maps.is_triple_homomorphism(phi, samples=20, seed=int(rng.integers(2**31)))
        iso = maps.is_isometry_sampled(phi, samples=30, seed=int(rng.integers(2**31)))
        worst = max(worst, *hom.residuals.values(), *iso.residuals.values())
        cases += hom.samples + iso.samples
    return cases, worst


def _bergman_isometry(rng, impl, n=None):
    worst, cases = 0.0, 0
    for phi in _stock_linear_maps(rng) + [maps.conjugation(TripleSpace.of((2, 2)))]:
        rep = maps.is_isometry_sampled(phi, "bergman", samples=30, seed=int(rng.integers(2**31)))
        worst, cases = max(worst, rep.residuals["bergman"]), cases + rep.samples
    return cases, worst


def _orthogonality_preserved(rng, impl, n=30):
    wrong = 0
    stock = _stock_linear_maps(rng) + [maps.conjugation(TripleSpace.of((2, 3)))]
    for k in range(n):
        phi = stock[k % len(stock)]
        frame = random_frame(phi.domain, rng)
        u = frame[0]
        v = frame[-1] if k % 2 == 0 else random_minimal(phi.domain, rng, factor_of(u))
        fu, fv = maps.induced_tripotent_map(phi, u), maps.induced_tripotent_map(phi, v)
        wrong += is_orthogonal(u, v) != is_orthogonal(fu, fv)
    return n, float(wrong)


def _singletons_to_singletons(rng, impl, n=30):
    worst = 0.0
    stock = _stock_linear_maps(rng)
    for k in range(n):
        phi = stock[k % len(stock)]
        e = random_minimal(phi.domain, rng)
        fe = maps.induced_tripotent_map(phi, e)
        worst = max(worst, spectral_norm(phi(0.25 * e) / 0.25 - fe))
    return n, worst


def _rank_inequality(rng, impl, n=None):
    wrong, cases = 0, 0
    for p in range(1, 4):
        for q in range(p, 5):
            for pp in range(p, 4):
                for qq in range(q, 5):
                    dom, cod = TripleSpace.of((p, q)), TripleSpace.of((pp, qq))
                    if dom.rank != cod.rank:
                        continue
                    cases += 1
                    wrong += not maps.rank_genus_report(dom, cod).verdicts["not_excluded"]
    excluded = maps.rank_genus_report(TripleSpace.of((2, 2)), TripleSpace.of((1, 5)))
    wrong += excluded.verdicts["not_excluded"]
    return cases + 1, float(wrong)


def _reflection(rng, impl, n=None):
    worst, cases = 0.0, 0
    for phi in _stock_linear_maps(rng):
        rep = maps.mobius_invariance_check(phi, samples=10, seed=int(rng.integers(2**31)))
        worst = max(worst, rep.residuals["reflection"], rep.residuals["factorization"])
        cases += rep.samples
    return cases, worst


def _chu_mackey(rng, impl, n=None):
    wrong, cases = 0, 0
    for phi in _stock_linear_maps(rng) + [maps.diagonal_counterexample()]:
        rep = maps.mobius_invariance_check(phi, samples=10, seed=int(rng.integers(2**31)))
        wrong += not rep.verdicts["agree"]
        cases += 1
    return cases, float(wrong)


def _components(rng, impl, n=None):
    wrong = 0
    for sp in SPACES + IRREDUCIBLE:
        part = maps.irreducible_components(sp, maps.factor_aligned_sample(sp, rng, 10))
        wrong += not part.matches_factors
    return len(SPACES) + len(IRREDUCIBLE), float(wrong)


def _holomorphy(rng, impl, n=None):
    m22, prod = TripleSpace.of((2, 2)), TripleSpace.of((2, 2), (1, 1))
    cases = [
        (maps.block_embedding(m22, TripleSpace.of((2, 3))), m22, "holomorphic"),
        (maps.random_unitary_map(m22, rng), m22, "holomorphic"),
        (maps.conjugation(m22), m22, "antiholomorphic"),
        (maps.factorwise_conjugation(prod, [1]), prod, "mixed/unknown"),
    ]
    wrong = 0
    for phi, sp, expected in cases:
        wrong += maps.holomorphy_classifier(phi, maps.factor_aligned_sample(sp, rng, 4)) != expected
    return len(cases), float(wrong)


# --- registry -----------------------------------------------------------------------------

REGISTRY = (
    LemmaEntry("core.jordan_identity", "core", r"$\bigl\{a,b,\{x,y,z\}\bigr\}", 1e-10, _jordan),
    LemmaEntry("core.norm_axiom", "core", r"$\|a \smallsquare a\| = \| a \|^2$.", 1e-10, _norm_axiom),
    LemmaEntry(
        "core.bergman_definition",
        "core",
        r"B(a,b)(x) := x - 2(a\smallsquare b)(x) + \big\{ a,\{b,x,b\},a \big\},",
        1e-12,
        _bergman_definition,
    ),
    LemmaEntry(
        "core.orthogonality",
        "core",
        r"we have $a \smallsquare b =0$ if and only if $b \smallsquare a =0$.",
        0.0,
        _orthogonality,
    ),
    LemmaEntry("core.orthogonal_norm", "core", r"\|x + y\| = \max \big( \|x\|, \|y\| \big);", 1e-12, _orthogonal_norm),
    LemmaEntry("core.joint_peirce_rules", "core", r"\{ V_{ij}, V_{jk}, V_{kl}\} &\subset V_{il},", 1e-10, _peirce_rules),
    LemmaEntry("core.rank_genus", "core", r"rp = \dim V_2(e) + \dim V,", 1e-9, _rank_genus),
    LemmaEntry(
        "core.mobius_isometry",
        "core",
        r"is a biholomorphic map, and hence an isometry of the Kobayashi/Carath\'eodory",
        1e-9,
        _distance_invariance,
    ),
    LemmaEntry(
        "core.distance_from_origin",
        "core",
        r"The Carath\'eodory distance between $0$ and $tu$ is $d(0, tu) = \tanh^{-1}t$.",
        1e-12,
        _distance_from_origin,
    ),
    LemmaEntry("core.flat_linf", "core", r"with the $\ell_\infty$-norm, $\|\cdot\|_\infty$.", 1e-9, _flat_linf),
    LemmaEntry(
        "core.flat_bergman",
        "core",
        r"Let $e_1,\dots, e_r$ be a frame, and let $a := a_1 e_1 + \dots + a_r e_r$",
        1e-12,
        _flat_bergman,
        ("bergman_on_flat",),
    ),
    LemmaEntry("core.flat_compose_mobius", "core", r"Then, $g_a \after g_b = g_c$.", 1e-9, _flat_compose),
    LemmaEntry(
        "core.geodesic_symmetry",
        "core",
        r"lie on a Bergman geodesic, and $d_B(y, x) = d_B(x, S_x (y))$,",
        1e-8,
        _geodesic_symmetry,
    ),
    LemmaEntry("core.mobius_flip", "core", r"then $g_z = S_w \after  S_0$.", 1e-10, _mobius_flip),
    LemmaEntry(
        "core.mobius_derivative", "core", r"$g'_a(b) = B(a, a)^{1/2} B(b, -a)^{-1}$;", 1e-6, _mobius_derivative
    ),
    LemmaEntry(
        "boundary.singleton_on_flat",
        "boundary",
        r"Then $\Xi_{e_i}(x) = -\tanh^{-1} \lambda_i$, for all $i$.",
        1e-10,
        _singleton_on_flat,
    ),
    LemmaEntry(
        "boundary.translation_action",
        "boundary",
        r"\Xi_{e_i}\big(g_x(y)\big) = \Xi_{e_i}(y) - \tanh^{-1}\lambda_i,",
        1e-8,
        _translation,
    ),
    LemmaEntry(
        "boundary.singleton_limit",
        "boundary",
        r"\xi(z) = \frac {1} {2} \log \big\| B(z, z)^{-1/2} B(z, e) e \big\|,",
        1e-6,
        _singleton_limit,
        ("singleton_eval",),
    ),
    LemmaEntry(
        "boundary.gromov_decomposition",
        "boundary",
        r"= \frac {1} {2} \log \frac {2} {\big|\real \mu - |\mu|^2 - \lambda \big|}.",
        1e-10,
        _gromov_decomposition,
        ("gromov_singletons",),
    ),
    LemmaEntry(
        "boundary.gromov_numeric",
        "boundary",
        r"= \frac {1} {2} \log \frac {4} {\|P_2(u) B(u, v) v\|}.",
        1e-3,
        _gromov_numeric,
    ),
    LemmaEntry(
        "boundary.complex_multiple", "boundary", r"= \frac {1} {2} \log \frac {2} {1 - \real \mu}.", 1e-10, _complex_multiple
    ),
    LemmaEntry(
        "boundary.opposite",
        "boundary",
        r"$v = -u$ if and only if $\gromprod {\Xi_u} {\Xi_v} {0} = 0$.",
        1e-10,
        _opposite,
    ),
    LemmaEntry(
        "boundary.orthogonal",
        "boundary",
        r"$\gromprod {\Xi_u} {\Xi_v} {0} = \gromprod {\Xi_u} {\Xi_{-v}} {0} = \infty$.",
        0.0,
        _orthogonal,
    ),
    LemmaEntry("boundary.multiplication_by_i", "boundary", r"Then, $v = \pm \mathrm{i} u$", 1e-8, _multiplication_by_i),
    LemmaEntry(
        "boundary.flat_membership",
        "boundary",
        r"and let $x\in D$. Then $\Xi_{e_i}(x) + \Xi_{-e_i}(x) = 0$, for all $i$,",
        0.0,
        _flat_membership,
    ),
    LemmaEntry("boundary.v0_membership", "boundary", r"if and only if $x \in V_0(e)$.", 0.0, _v0_membership),
    LemmaEntry(
        "boundary.detour_finiteness",
        "boundary",
        r"Then, $H(\xi, \eta) < \infty$ if and only if $c \le e$.",
        0.0,
        _detour_finiteness,
    ),
    LemmaEntry(
        "boundary.busemann",
        "boundary",
        r"a horofunction $\xi$ is Busemann if and only if $H(\xi,\xi)=0$.",
        1e-6,
        _busemann,
    ),
    LemmaEntry("boundary.detour_formula", "boundary", r"H(\xi,\eta) = \frac{1}{2}\log M(b/a),", 1e-4, _detour_numeric),
    LemmaEntry(
        "boundary.hilbert_part",
        "boundary",
        r"then $(\mathcal{P}_\xi,\delta)$ is isometric to $(\Sigma_e, d_H)$.",
        1e-10,
        _hilbert_part,
        ("cone_M",),
    ),
    LemmaEntry(
        "boundary.cone_inverse",
        "boundary",
        r"Here, we are using the fact that $M(x/y) = M(y^{-1}/x^{-1})$,",
        1e-9,
        _cone_inverse,
    ),
    LemmaEntry(
        "maps.homomorphism_isometry",
        "maps",
        r"A \emph{triple homomorphism} between JB*-triples is a complex-linear map",
        1e-9,
        _homomorphism_isometry,
    ),
    LemmaEntry(
        "maps.bergman_isometry",
        "maps",
        r"Then, $\phi$ is also distance-preserving for the Bergman distance.",
        1e-9,
        _bergman_isometry,
    ),
    LemmaEntry(
        "maps.orthogonality_preserved",
        "maps",
        r"Then, two tripotents $u$ and $v$ in $D$ are orthogonal if and only if",
        0.0,
        _orthogonality_preserved,
    ),
    LemmaEntry("maps.singletons_to_singletons", "maps", r"takes singletons to singletons.", 1e-8, _singletons_to_singletons),
    LemmaEntry(
        "maps.rank_inequality",
        "maps",
        r"r \le r'\mbox{\qquad and\qquad } rp -\dim D \leq r'p'-\dim D'.",
        0.0,
        _rank_inequality,
    ),
    LemmaEntry(
        "maps.reflection",
        "maps",
        r"Then, $\phi(S_x (y)) = S_{\phi(x)} (\phi(y))$, for all $x$ and $y$ in $D$.",
        1e-9,
        _reflection,
    ),
    LemmaEntry(
        "maps.chu_mackey",
        "maps",
        r"if and only if $\phi(D)$ is invariant under the M\"obius transformation",
        0.0,
        _chu_mackey,
    ),
    LemmaEntry(
        "maps.components", "maps", r"and such that no two consecutive elements are orthogonal.", 0.0, _components
    ),
    LemmaEntry(
        "maps.holomorphy",
        "maps",
        r"Assume that $D$ is irreducible. Then, $\phi$ is either holomorphic",
        0.0,
        _holomorphy,
    ),
)

SUITES = ("all", "core", "boundary", "maps")


def entry_seed(master, lemma_id):
    """Per-entry seed derived from the master seed and the entry id."""
    return int(np.random.SeedSequence([int(master), zlib.crc32(lemma_id.encode())]).generate_state(1)[0])


def run_entry(entry, master_seed, impl):
    seed = entry_seed(master_seed, entry.lemma_id)
    n, resid = entry.check(np.random.default_rng(seed), impl)
    resid = float(resid)
    verdict = "pass" if resid <= entry.tolerance else "fail"
    return EntryResult(entry.lemma_id, entry.paper_anchor, entry.suite, int(n), resid, entry.tolerance, verdict, seed)


def run(suite="all", seed=42, fault=None, tol_scale=None, timestamp=None):
    """Run the selected entries and collect a :class:`VerificationReport`.

    ``tol_scale`` multiplies every non-zero tolerance.
    """
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    impl = Implementations()
    if fault is not None:
        try:
            slot, fn = FAULTS[fault]
        except KeyError:
            raise ValueError(f"unknown fault {fault!r}; choose from {sorted(FAULTS)}") from None
        impl = replace(impl, **{slot: fn})
    entries = [e for e in REGISTRY if suite in ("all", e.suite)]
    if tol_scale is not None:
        entries = [replace(e, tolerance=e.tolerance * tol_scale) for e in entries]
    results = tuple(run_entry(e, seed, impl) for e in entries)
    return VerificationReport(seed, suite, results, fault, timestamp)
