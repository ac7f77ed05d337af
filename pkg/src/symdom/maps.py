"""Linear triple maps and sampled analysis of distance-preserving maps.

Distance-preserving maps are treated as black boxes: anything callable on
Elements with ``domain`` and ``codomain`` attributes will do.  Linearity is
only assumed for :class:`LinearTripleMap`.
"""

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    bergman_distance,
    bergman_midpoint_from_origin,
    caratheodory_distance,
    geodesic_symmetry,
    mobius,
)
from .triple import (
    Element,
    NumericalInconsistency,
    OutsideDomainError,
    ShapeError,
    TripleSpace,
    space_invariants,
    spectral_norm,
    triple_product,
)
from .tripotents import factor_of, is_minimal, is_orthogonal, is_tripotent, random_minimal

HOMOMORPHISM_TOL = 1e-10
ISOMETRY_TOL = 1e-9


@dataclass(frozen=True)
class MapReport:
    """Residuals, the thresholds they were judged against, and the verdicts."""

    name: str
    residuals: dict
    thresholds: dict
    verdicts: dict
    samples: int = 0
    seed: int | None = None
    values: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.verdicts.values())

    def as_dict(self):
        return {
            "name": self.name,
            "samples": self.samples,
            "seed": self.seed,
            "residuals": dict(self.residuals),
            "thresholds": dict(self.thresholds),
            "values": dict(self.values),
            "verdicts": dict(self.verdicts),
        }


# --- maps -------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearTripleMap:
    """x -> M vec(x), or x -> M conj(vec(x)) when ``conjugate_linear``."""

    domain: TripleSpace
    codomain: TripleSpace
    matrix: np.ndarray
    conjugate_linear: bool = False
    name: str = "linear"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (self.codomain.dim, self.domain.dim):
            raise ShapeError(f"matrix of shape {m.shape} does not map {self.domain} to {self.codomain}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_function(cls, domain, codomain, fn, conjugate_linear=False, name="linear"):
        # the monomial basis is real, so conj(basis) = basis in both cases
        cols = [fn(b).vec() for b in domain.basis()]
        return cls(domain, codomain, np.column_stack(cols), conjugate_linear, name)

    def __call__(self, x):
        if x.space != self.domain:
            raise ShapeError(f"map expects {self.domain}, got {x.space}")
        v = x.vec().conj() if self.conjugate_linear else x.vec()
        return self.codomain.unvec(self.matrix @ v)

    def range_residual(self, y):
        """Euclidean distance from vec(y) to the column span of the matrix."""
        coef, *_ = np.linalg.lstsq(self.matrix, y.vec(), rcond=None)
        return float(np.linalg.norm(self.matrix @ coef - y.vec()))


@dataclass(frozen=True, eq=False)
class FunctionMap:
    """A black-box map D -> D' with its spaces attached."""

    domain: TripleSpace
    codomain: TripleSpace
    fn: object
    name: str = "map"

    def __call__(self, x):
        return self.fn(x)


def block_embedding(domain, codomain):
    """x -> [x 0] per factor, zero padding on the right and bottom."""
    if len(domain.factors) != len(codomain.factors):
        raise ShapeError("block embedding needs the same number of factors")
    for (p, q), (pp, qq) in zip(domain.factors, codomain.factors):
        if p > pp or q > qq:
            raise ShapeError(f"cannot embed M_{p},{q} in M_{pp},{qq}")

    def fn(x):
        blocks = []
        for b, (pp, qq) in zip(x.blocks, codomain.factors):
            out = np.zeros((pp, qq), dtype=complex)
            out[: b.shape[0], : b.shape[1]] = b
            blocks.append(out)
        return Element(codomain, blocks)

    return LinearTripleMap.from_function(domain, codomain, fn, name="block_embedding")


def conjugation(space):
    """Entrywise complex conjugation: a conjugate-linear isometry."""
    return LinearTripleMap(space, space, np.eye(space.dim), True, "conjugation")


def unitary_map(space, lefts, rights):
    """x -> U x W* per factor."""

    def fn(x):
        return Element(space, [u @ b @ w.conj().T for u, b, w in zip(lefts, x.blocks, rights)])

    return LinearTripleMap.from_function(space, space, fn, name="unitary")


def random_unitary_map(space, rng):
    def haar(n):
        q, r = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        return q * (np.diag(r) / np.abs(np.diag(r)))

    return unitary_map(space, [haar(p) for p, _ in space.factors], [haar(q) for _, q in space.factors])


def factorwise_conjugation(space, conjugated):
    """Conjugate the factors listed in ``conjugated``, leave the rest alone.

    With some but not all factors conjugated the result is an isometry that
    is neither holomorphic nor antiholomorphic.
    """
    conjugated = set(conjugated)

    def fn(x):
        return Element(space, [b.conj() if k in conjugated else b for k, b in enumerate(x.blocks)])

    return FunctionMap(space, space, fn, "factorwise_conjugation")


def diagonal_counterexample():
    """(x1, x2) -> (x1, x2, (x1 + x2)/2) from the bidisc into the tridisc.

    Norm-preserving, since |x1 + x2|/2 <= max(|x1|, |x2|), but not a triple
    homomorphism: the image is not closed under the Möbius maps of the
    tridisc centred at its own points.
    """
    bidisc, tridisc = TripleSpace.of((1, 1), (1, 1)), TripleSpace.of((1, 1), (1, 1), (1, 1))
    m = np.array([[1, 0], [0, 1], [0.5, 0.5]], dtype=complex)
    return LinearTripleMap(bidisc, tridisc, m, name="diagonal_counterexample")


def mobius_map(space, a):
    return FunctionMap(space, space, lambda x: mobius(a, x), "mobius")


def compose(outer, inner, name=None):
    """outer o inner."""
    if inner.codomain != outer.domain:
        raise ShapeError("maps do not compose")
    return FunctionMap(inner.domain, outer.codomain, lambda x: outer(inner(x)), name or f"{outer.name}.{inner.name}")


def normalize_origin(phi):
    """g_{-phi(0)} o phi, which sends 0 to 0."""
    shift = phi(phi.domain.zeros())
    return FunctionMap(phi.domain, phi.codomain, lambda x: mobius(-shift, phi(x)), f"normalized({phi.name})")


# --- homomorphisms and isometries -------------------------------------------------


def _homomorphism_residual(phi, a, b, c):
    lhs = phi(triple_product(a, b, c))
    rhs = triple_product(phi(a), phi(b), phi(c))
    return spectral_norm(lhs - rhs)


def is_triple_homomorphism(phi, samples=200, seed=0, tol=HOMOMORPHISM_TOL):
    """phi{a,b,c} = {phi a, phi b, phi c} on seeded random triples and on all basis triples."""
    if not isinstance(phi, LinearTripleMap):
        raise TypeError("is_triple_homomorphism needs a LinearTripleMap")
    if phi.conjugate_linear:
        raise ValueError("is_triple_homomorphism expects a complex-linear map")
    rng = np.random.default_rng(seed)
    dom = phi.domain
    sampled = 0.0
    for _ in range(samples):
        a, b, c = (dom.random(rng, norm=1.0) for _ in range(3))
        sampled = max(sampled, _homomorphism_residual(phi, a, b, c))
    basis = dom.basis()
    on_basis = max(_homomorphism_residual(phi, a, b, c) for a in basis for b in basis for c in basis)
    return MapReport(
        "triple_homomorphism",
        {"sampled": sampled, "basis": on_basis},
        {"sampled": tol, "basis": tol},
        {"homomorphism": sampled <= tol and on_basis <= tol},
        samples,
        seed,
    )


_METRICS = {"caratheodory": caratheodory_distance, "bergman": bergman_distance}


def is_isometry_sampled(phi, metric="caratheodory", samples=200, seed=0, tol=ISOMETRY_TOL, max_norm=0.95):
    """max |d'(phi x, phi y) - d(x, y)| over seeded pairs in D."""
    try:
        dist = _METRICS[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}; use one of {sorted(_METRICS)}") from None
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = phi.domain.random_in_ball(rng, max_norm)
        y = phi.domain.random_in_ball(rng, max_norm)
        fx, fy = phi(x), phi(y)
        for f in (fx, fy):
            if not f.in_ball():
                raise OutsideDomainError(f"{phi.name} leaves the domain: norm {spectral_norm(f)}")
        worst = max(worst, abs(dist(fx, fy) - dist(x, y)))
    return MapReport(
        f"isometry_{metric}",
        {metric: worst},
        {metric: tol},
        {"isometry": worst <= tol},
        samples,
        seed,
    )


# --- induced maps on tripotents ------------------------------------------------------


def induced_tripotent_map(phi, e, tol=1e-8):
    """phi(t e)/t at t = 1/2, confirmed at t = 1/4; the image must be minimal."""
    if not spectral_norm(phi(phi.domain.zeros())) <= 1e-12:
        raise ValueError("induced_tripotent_map needs phi(0) = 0; use normalize_origin")
    half = phi(0.5 * e) / 0.5
    quarter = phi(0.25 * e) / 0.25
    gap = spectral_norm(half - quarter)
    if gap > tol:
        raise NumericalInconsistency(f"phi(te)/t differs by {gap:.3e} between t = 1/2 and t = 1/4")
    if not (is_tripotent(half, tol) and is_minimal(half, tol)):
        raise NumericalInconsistency("image of a minimal tripotent is not a minimal tripotent")
    return half


def holomorphy_signs(phi, sample_tripotents, tol=1e-8):
    """c(e) in {+1j, -1j}: phi(ie) = c(e) phi(e) for induced images."""
    signs = []
    for e in sample_tripotents:
        fe = induced_tripotent_map(phi, e, tol)
        fie = induced_tripotent_map(phi, 1j * e, tol)
        plus, minus = spectral_norm(fie - 1j * fe), spectral_norm(fie + 1j * fe)
        if min(plus, minus) > tol:
            raise NumericalInconsistency(f"phi(ie) matches neither +i phi(e) nor -i phi(e): {plus:.3e}, {minus:.3e}")
        signs.append(1j if plus <= minus else -1j)
    return signs


def holomorphy_classifier(phi, sample_tripotents, tol=1e-8):
    """'holomorphic', 'antiholomorphic' or 'mixed/unknown'."""
    signs = holomorphy_signs(phi, sample_tripotents, tol)
    if signs and all(s == 1j for s in signs):
        return "holomorphic"
    if signs and all(s == -1j for s in signs):
        return "antiholomorphic"
    return "mixed/unknown"


def factor_aligned_sample(space, rng, extra=0):
    """One random minimal tripotent per factor, then ``extra`` in random factors."""
    out = [random_minimal(space, rng, k) for k in range(len(space.factors))]
    out += [random_minimal(space, rng) for _ in range(extra)]
    return out


# --- invariants and components ----------------------------------------------------------


def rank_genus_report(domain, codomain):
    """Is an isometric embedding D -> D' excluded by r <= r' and rp - dim <= r'p' - dim'?"""
    a, b = space_invariants(domain), space_invariants(codomain)
    rank_ok = a.rank <= b.rank
    rp_ok = a.rp_minus_dim <= b.rp_minus_dim
    return MapReport(
        "rank_genus",
        {},
        {},
        {"rank": rank_ok, "rp_minus_dim": rp_ok, "not_excluded": rank_ok and rp_ok},
        values={
            "rank": a.rank,
            "rank_codomain": b.rank,
            "rp_minus_dim": a.rp_minus_dim,
            "rp_minus_dim_codomain": b.rp_minus_dim,
        },
    )


@dataclass(frozen=True)
class ComponentPartition:
    """Groups of sample indices connected by chains of non-orthogonal pairs."""

    groups: tuple
    factors: tuple
    coverage_ok: bool
    matches_factors: bool


def irreducible_components(space, tripotents, tol=None):
    """Union-find over the non-orthogonality graph of sampled minimal tripotents."""
    tripotents = list(tripotents)
    n = len(tripotents)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if not is_orthogonal(tripotents[i], tripotents[j], tol):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    ordered = sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])
    factors = tuple(tuple(sorted({factor_of(tripotents[i]) for i in g})) for g in ordered)
    covered = {k for fs in factors for k in fs}
    coverage_ok = covered == set(range(len(space.factors)))
    matches = coverage_ok and all(len(fs) == 1 for fs in factors) and len(factors) == len(space.factors)
    return ComponentPartition(tuple(ordered), factors, coverage_ok, matches)


# --- Möbius invariance of the image ----------------------------------------------------


def mobius_invariance_check(phi, samples=50, seed=0, tol=ISOMETRY_TOL, max_norm=0.9):
    """Is phi(D) invariant under g_{phi(x)}?  Compared against the homomorphism test.

    (a) collects the residuals of: g_{phi x}(phi y) lying in the range of phi;
    phi(S_x(y)) = S_{phi x}(phi y); phi(mid(x)) = mid(phi x), mid the
    midpoint of 0 and x; and g_z = S_w o S_0 with w = mid(z) in D'.
    (b) is the triple-homomorphism verdict.
    """
    if not isinstance(phi, LinearTripleMap) or phi.conjugate_linear:
        raise TypeError("mobius_invariance_check needs a complex-linear LinearTripleMap")
    rng = np.random.default_rng(seed)
    res = {"range": 0.0, "reflection": 0.0, "midpoint": 0.0, "factorization": 0.0, "norm": 0.0}
    for _ in range(samples):
        x = phi.domain.random_in_ball(rng, max_norm)
        y = phi.domain.random_in_ball(rng, max_norm)
        fx, fy = phi(x), phi(y)
        res["norm"] = max(res["norm"], abs(spectral_norm(fx) - spectral_norm(x)))
        moved = mobius(fx, fy)
        res["range"] = max(res["range"], phi.range_residual(moved))
        res["reflection"] = max(res["reflection"], spectral_norm(phi(geodesic_symmetry(x, y)) - geodesic_symmetry(fx, fy)))
        w = bergman_midpoint_from_origin(fx)
        res["midpoint"] = max(res["midpoint"], spectral_norm(phi(bergman_midpoint_from_origin(x)) - w))
        res["factorization"] = max(res["factorization"], spectral_norm(moved - geodesic_symmetry(w, -fy)))
    invariant = all(v <= tol for v in res.values())
    hom = is_triple_homomorphism(phi, samples=samples, seed=seed)
    return MapReport(
        "mobius_invariance",
        {**res, **{f"homomorphism_{k}": v for k, v in hom.residuals.items()}},
        {**{k: tol for k in res}, **{f"homomorphism_{k}": v for k, v in hom.thresholds.items()}},
        {"invariant": invariant, "homomorphism": hom.passed, "agree": invariant == hom.passed},
        samples,
        seed,
    )


def frame_image(phi, frame, tol=1e-8):
    """Induced images of the frame members, checked pairwise orthogonal."""
    images = [induced_tripotent_map(phi, e, tol) for e in frame]
    for a in range(len(images)):
        for b in range(a + 1, len(images)):
            if not is_orthogonal(images[a], images[b], tol):
                raise NumericalInconsistency("images of orthogonal tripotents are not orthogonal")
    return images

