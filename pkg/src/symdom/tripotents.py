"""Tripotents, frames, spectral decompositions and Peirce projections.

In a type-I factor the tripotents are exactly the partial isometries, the
minimal ones are the rank-one partial isometries ``u v*`` with unit vectors
``u`` and ``v``, and two tripotents are orthogonal when both their column
spaces and their row spaces are orthogonal.  All decisions here are made
numerically, through the triple product, so they carry a tolerance.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space

from .config import SVD_CUTOFF, resolve_tol
from .triple import (
    ComplexLinearOperator,
    Element,
    NumericalInconsistency,
    ShapeError,
    bergman_operator,
    box_operator,
    quadratic_op,
    spectral_norm,
    triple_product,
)


def is_tripotent(x, tol=None):
    """True iff ||{x,x,x} - x|| <= tol * max(1, ||x||)."""
    tol = resolve_tol(tol)
    return spectral_norm(triple_product(x, x, x) - x) <= tol * max(1.0, spectral_norm(x))


def tripotent_rank(e):
    """Sum over factors of the matrix rank of the block."""
    return int(sum(np.sum(np.linalg.svd(b, compute_uv=False) > 0.5) for b in e.blocks if b.size))


def peirce2_dim(e):
    """dim V_2(e), read off as the trace of the Peirce 2-projection."""
    return int(round(np.trace(peirce_projection(e, 2).matrix).real))


def is_minimal(e, tol=None):
    """Minimality of a non-zero tripotent.

    Both the matrix rank and dim V_2(e) are computed; they must agree on
    whether ``e`` is minimal, otherwise NumericalInconsistency is raised.
    """
    tol = resolve_tol(tol)
    if spectral_norm(e) <= tol:
        raise ValueError("the zero tripotent is not minimal")
    if not is_tripotent(e, tol):
        raise ValueError("is_minimal expects a tripotent")
    by_rank = tripotent_rank(e) == 1
    by_peirce = peirce2_dim(e) == 1
    if by_rank != by_peirce:
        raise NumericalInconsistency(
            f"rank test says {by_rank} but dim V_2(e) test says {by_peirce}"
        )
    return by_rank


def is_orthogonal(a, b, tol=None):
    """a box b = 0, confirmed by {a, a, b} = 0."""
    tol = resolve_tol(tol)
    if a.space != b.space:
        raise ShapeError(f"elements of {a.space} and {b.space}")
    na, nb = spectral_norm(a), spectral_norm(b)
    by_box = box_operator(a, b).op_norm <= tol * max(1.0, na * nb)
    by_product = spectral_norm(triple_product(a, a, b)) <= tol * max(1.0, na * na * nb)
    if by_box != by_product:
        raise NumericalInconsistency("a box b and {a,a,b} disagree on orthogonality")
    return by_box


def order_leq(c, e, tol=None):
    """c <= e: e - c is a tripotent orthogonal to c."""
    d = e - c
    return is_tripotent(d, tol) and is_orthogonal(d, c, tol)


@dataclass(frozen=True)
class SpectralDecomposition:
    """x = sum_i sigmas[i] * tripotents[i], sigmas non-increasing."""

    sigmas: tuple
    tripotents: tuple

    def reconstruct(self, space):
        out = space.zeros()
        for s, e in zip(self.sigmas, self.tripotents):
            out = out + s * e
        return out


def spectral_decompose(x):
    """Per-factor SVD, merged over factors and sorted by singular value.

    Each term is a rank-one partial isometry ``u v*`` living in a single
    factor.  Singular values below 1e-12 are dropped.
    """
    space = x.space
    terms = []
    for k, b in enumerate(x.blocks):
        u, s, vh = np.linalg.svd(b)
        for i, sigma in enumerate(s):
            if sigma > SVD_CUTOFF:
                terms.append((float(sigma), k, np.outer(u[:, i], vh[i])))
    terms.sort(key=lambda t: -t[0])
    return SpectralDecomposition(
        tuple(t[0] for t in terms),
        tuple(space.embed(k, block) for _, k, block in terms),
    )


def minimal_parts(e, tol=None):
    """Split a tripotent into mutually orthogonal minimal tripotents."""
    tol = resolve_tol(tol)
    dec = spectral_decompose(e)
    if any(abs(s - 1.0) > tol for s in dec.sigmas):
        raise ValueError("minimal_parts expects a tripotent")
    return dec.tripotents


def peirce_projection(e, k):
    """Peirce k-projection from its defining formula.

    P_2 = Q_e^2, P_1 = 2(e box e - Q_e^2), P_0 = B(e, e).
    """
    if not is_tripotent(e):
        raise ValueError("Peirce projections need a tripotent")
    space = e.space
    if k == 2:
        return ComplexLinearOperator.from_function(space, space, lambda x: quadratic_op(e, quadratic_op(e, x)))
    if k == 1:
        return 2.0 * (box_operator(e, e) - peirce_projection(e, 2))
    if k == 0:
        return bergman_operator(e, e)
    raise ValueError(f"Peirce index must be 0, 1 or 2, not {k}")


_PEIRCE_EIGS = (0.0, 0.5, 1.0)


def _spectral_projector(h, target):
    """Projector onto the ``target`` eigenspace of h (spectrum in {0, 1/2, 1})."""
    n = h.shape[0]
    out = np.eye(n, dtype=complex)
    for mu in _PEIRCE_EIGS:
        if mu != target:
            out = out @ (h - mu * np.eye(n)) / (target - mu)
    return out


def joint_peirce_projection(es, i, j, tol=None):
    """Joint Peirce projection P_ij for orthogonal tripotents es[0..n-1].

    Indices run over 0..n; index 0 is the annihilator slot, index k >= 1
    refers to ``es[k-1]``.  Swapped indices are normalised.
    """
    es = list(es)
    n = len(es)
    i, j = sorted((int(i), int(j)))
    if not (0 <= i <= j <= n):
        raise ValueError(f"joint Peirce indices must satisfy 0 <= i <= j <= {n}")
    for a in range(n):
        for b in range(a + 1, n):
            if not is_orthogonal(es[a], es[b], tol):
                raise ValueError(f"tripotents {a} and {b} are not orthogonal")
    space = es[0].space if es else None
    if space is None:
        raise ValueError("need at least one tripotent")
    out = np.eye(space.dim, dtype=complex)
    for k, e in enumerate(es, start=1):
        target = 0.5 * ((i == k) + (j == k))
        out = out @ _spectral_projector(box_operator(e, e).matrix, target)
    return ComplexLinearOperator(space, space, out)


def joint_peirce_family(es, tol=None):
    """All P_ij, i <= j, as a dict keyed by (i, j)."""
    n = len(es)
    return {(i, j): joint_peirce_projection(es, i, j, tol) for i in range(n + 1) for j in range(i, n + 1)}


@dataclass(frozen=True)
class Frame:
    """Maximal orthogonal family of minimal tripotents."""

    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, k):
        return self.members[k]

    @property
    def space(self):
        return self.members[0].space

    def point(self, coords):
        """sum_i coords[i] * e_i."""
        out = self.space.zeros()
        for c, e in zip(coords, self.members):
            out = out + c * e
        return out

    def validate(self, tol=None):
        space = self.space
        if len(self.members) != space.rank:
            raise ValueError(f"frame has {len(self.members)} members, rank is {space.rank}")
        for a, e in enumerate(self.members):
            if not (is_tripotent(e, tol) and is_minimal(e, tol)):
                raise ValueError(f"frame member {a} is not a minimal tripotent")
            for f in self.members[a + 1 :]:
                if not is_orthogonal(e, f, tol):
                    raise ValueError("frame members are not orthogonal")
        return self


def factor_of(e):
    """Index of the single factor carrying a minimal tripotent."""
    nonzero = [k for k, b in enumerate(e.blocks) if np.linalg.norm(b) > 0.5]
    if len(nonzero) != 1:
        raise ValueError("a minimal tripotent lives in exactly one factor")
    return nonzero[0]


def _rank_one_vectors(block):
    u, s, vh = np.linalg.svd(block)
    return u[:, 0], vh[0].conj()


def frame_completion(partial, space=None, tol=None):
    """Extend orthogonal minimal tripotents to a frame.

    Per factor, the column and row vectors of the given members are
    extended to orthonormal systems and the new vectors are paired.  The
    input members come first, in their original order.
    """
    partial = list(partial)
    if space is None:
        if not partial:
            raise ValueError("need a space to complete an empty family")
        space = partial[0].space
    for a, e in enumerate(partial):
        if not is_minimal(e, tol):
            raise ValueError(f"member {a} is not minimal")
        for f in partial[a + 1 :]:
            if not is_orthogonal(e, f, tol):
                raise ValueError("members are not mutually orthogonal")
    members = list(partial)
    for k, (p, q) in enumerate(space.factors):
        lefts, rights = [], []
        for e in partial:
            if factor_of(e) == k:
                u, v = _rank_one_vectors(e.blocks[k])
                lefts.append(u)
                rights.append(v)
        free_left = null_space(np.array(lefts).conj()) if lefts else np.eye(p)
        free_right = null_space(np.array(rights).conj()) if rights else np.eye(q)
        missing = min(p, q) - len(lefts)
        assert free_left.shape[1] >= missing and free_right.shape[1] >= missing
        for m in range(missing):
            members.append(space.embed(k, np.outer(free_left[:, m], free_right[:, m].conj())))
    return Frame(members)


def maximal_chain_through(e, tol=None):
    """Ascending chain e_1 < ... < e_r with e at position rank(e)."""
    if spectral_norm(e) <= resolve_tol(tol):
        raise ValueError("chain needs a non-zero tripotent")
    parts = minimal_parts(e, tol)
    frame = frame_completion(parts, e.space, tol)
    chain, acc = [], e.space.zeros()
    for member in frame:
        acc = acc + member
        chain.append(acc)
    return chain


def random_minimal(space, rng, factor=None):
    """Random rank-one partial isometry u v* in one factor."""
    if factor is None:
        factor = int(rng.integers(len(space.factors)))
    p, q = space.factors[factor]
    u = rng.normal(size=p) + 1j * rng.normal(size=p)
    v = rng.normal(size=q) + 1j * rng.normal(size=q)
    return space.embed(factor, np.outer(u / np.linalg.norm(u), (v / np.linalg.norm(v)).conj()))


def random_frame(space, rng):
    """Frame built from Haar-like random unitaries in every factor."""
    members = []
    for k, (p, q) in enumerate(space.factors):
        u, _ = np.linalg.qr(rng.normal(size=(p, p)) + 1j * rng.normal(size=(p, p)))
        v, _ = np.linalg.qr(rng.normal(size=(q, q)) + 1j * rng.normal(size=(q, q)))
        for i in range(min(p, q)):
            members.append(space.embed(k, np.outer(u[:, i], v[:, i].conj())))
    order = rng.permutation(len(members))
    return Frame([members[i] for i in order])


def frame_avoiding(u, v, tol=None):
    """A frame containing u whose other members are all orthogonal to v.

    Such a frame exists iff the subtriple V_0(u) ∩ V_0(v) has rank r - 1;
    returns the frame, or None when no such frame exists.  The members of
    the returned frame are re-checked with :func:`is_orthogonal`.
    """
    space = u.space
    members = [u]
    for k, (p, q) in enumerate(space.factors):
        cols = [b for b in (u.blocks[k], v.blocks[k]) if np.linalg.norm(b) > SVD_CUTOFF]
        if cols:
            left = null_space(np.hstack(cols).conj().T, rcond=1e-10)
            right = null_space(np.vstack(cols), rcond=1e-10)
        else:
            left, right = np.eye(p), np.eye(q)
        for m in range(min(left.shape[1], right.shape[1])):
            members.append(space.embed(k, np.outer(left[:, m], right[:, m].conj())))
    if len(members) != space.rank:
        return None
    frame = Frame(members)
    if not all(is_orthogonal(m, v, tol) for m in frame.members[1:]):
        raise NumericalInconsistency("constructed frame members are not orthogonal to v")
    return frame
