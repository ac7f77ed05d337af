"""JB*-triple arithmetic on finite products of type-I Cartan factors.

A space is a product M_{p1,q1} x ... x M_{pn,qn} of complex rectangular
matrix spaces with the triple product

    {a, b, c} = (a b* c + c b* a) / 2

taken factor by factor.  The norm is the spectral norm (largest singular
value), maximised over the factors, so the open unit ball is a bounded
symmetric domain.

Linear operators on a space are stored as dense complex matrices acting on
the row-major vectorisation of the blocks, factor after factor.  With that
convention ``vec(A X B) = kron(A, B.T) vec(X)``.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.linalg import block_diag

from .config import EIG_CLAMP_LIMIT, EIG_FLOOR


class ShapeError(ValueError):
    """Arguments live in different spaces or have the wrong block shapes."""


class OutsideDomainError(ValueError):
    """A point that must lie in the open unit ball does not."""


class NumericalInconsistency(ArithmeticError):
    """Two independent numerical routes disagree beyond tolerance."""


@dataclass(frozen=True)
class TripleSpace:
    """Product of type-I factors, given as a tuple of ``(p, q)`` shapes."""

    factors: tuple

    def __post_init__(self):
        factors = tuple((int(p), int(q)) for p, q in self.factors)
        if not factors:
            raise ValueError("a TripleSpace needs at least one factor")
        if any(p < 1 or q < 1 for p, q in factors):
            raise ValueError(f"factor dimensions must be positive: {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def of(cls, *shapes):
        return cls(tuple(shapes))

    @property
    def rank(self):
        return sum(min(p, q) for p, q in self.factors)

    @property
    def dim(self):
        return sum(p * q for p, q in self.factors)

    @property
    def genus(self):
        """Genus of each factor (``p + q`` for M_{p,q})."""
        return tuple(p + q for p, q in self.factors)

    @property
    def offsets(self):
        out, start = [], 0
        for p, q in self.factors:
            out.append((start, start + p * q))
            start += p * q
        return tuple(out)

    def zeros(self):
        return Element(self, [np.zeros((p, q), complex) for p, q in self.factors])

    def unvec(self, v):
        v = np.asarray(v)
        if v.shape != (self.dim,):
            raise ShapeError(f"expected vector of length {self.dim}, got {v.shape}")
        blocks = [v[a:b].reshape(p, q) for (a, b), (p, q) in zip(self.offsets, self.factors)]
        return Element(self, blocks)

    def basis(self):
        """Matrix units, in vectorisation order."""
        eye = np.eye(self.dim, dtype=complex)
        return [self.unvec(eye[k]) for k in range(self.dim)]

    def embed(self, factor, block):
        """Element equal to ``block`` in one factor and zero elsewhere."""
        blocks = [np.zeros((p, q), complex) for p, q in self.factors]
        blocks[factor] = np.asarray(block, dtype=complex)
        return Element(self, blocks)

    def unit(self, factor, i, j):
        """Matrix unit E_ij (0-based) in the given factor."""
        p, q = self.factors[factor]
        block = np.zeros((p, q), complex)
        block[i, j] = 1.0
        return self.embed(factor, block)

    def random(self, rng, norm=None):
        """Gaussian element; rescaled to spectral norm ``norm`` if given."""
        blocks = [rng.normal(size=(p, q)) + 1j * rng.normal(size=(p, q)) for p, q in self.factors]
        x = Element(self, blocks)
        if norm is not None:
            x = x * (norm / spectral_norm(x))
        return x

    def random_in_ball(self, rng, max_norm=0.95):
        """Point of D with spectral norm uniform in (0, max_norm)."""
        return self.random(rng, norm=rng.uniform(0.0, max_norm))

    def identity(self):
        return ComplexLinearOperator(self, self, np.eye(self.dim, dtype=complex))

    def __str__(self):
        return " x ".join(f"M{p},{q}" for p, q in self.factors)


class Element:
    """Point of V: one complex p x q block per factor (immutable)."""

    __slots__ = ("space", "blocks")

    def __init__(self, space, blocks):
        blocks = tuple(np.array(b, dtype=complex) for b in blocks)
        if len(blocks) != len(space.factors):
            raise ShapeError(f"{len(blocks)} blocks for a space with {len(space.factors)} factors")
        for b, shape in zip(blocks, space.factors):
            if b.shape != shape:
                raise ShapeError(f"block of shape {b.shape}, expected {shape}")
            b.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    def vec(self):
        return np.concatenate([b.ravel() for b in self.blocks])

    def _check(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if other.space != self.space:
            raise ShapeError(f"elements of {self.space} and {other.space}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Element(self.space, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Element(self.space, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return Element(self.space, [-b for b in self.blocks])

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return Element(self.space, [scalar * b for b in self.blocks])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def conj(self):
        return Element(self.space, [b.conj() for b in self.blocks])

    @property
    def norm(self):
        return spectral_norm(self)

    def in_ball(self):
        return spectral_norm(self) < 1.0

    def allclose(self, other, atol=1e-10):
        return self.space == other.space and (self - other).norm <= atol

    def __repr__(self):
        return f"Element({self.space}, {[b.tolist() for b in self.blocks]})"


class ComplexLinearOperator:
    """Complex-linear map between spaces, held as a dense matrix."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain, codomain, matrix):
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (codomain.dim, domain.dim):
            raise ShapeError(f"matrix {matrix.shape} for {domain} -> {codomain}")
        matrix.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexLinearOperator is immutable")

    def __call__(self, x):
        if x.space != self.domain:
            raise ShapeError(f"operator on {self.domain} applied to element of {x.space}")
        return self.codomain.unvec(self.matrix @ x.vec())

    def __matmul__(self, other):
        if other.codomain != self.domain:
            raise ShapeError("operators do not compose")
        return ComplexLinearOperator(other.domain, self.codomain, self.matrix @ other.matrix)

    def _same(self, other):
        if (other.domain, other.codomain) != (self.domain, self.codomain):
            raise ShapeError("operators act between different spaces")

    def __add__(self, other):
        self._same(other)
        return ComplexLinearOperator(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other):
        self._same(other)
        return ComplexLinearOperator(self.domain, self.codomain, self.matrix - other.matrix)

    def __mul__(self, scalar):
        return ComplexLinearOperator(self.domain, self.codomain, scalar * self.matrix)

    __rmul__ = __mul__

    @property
    def op_norm(self):
        """Operator norm for the trace inner product (largest singular value)."""
        return float(np.linalg.norm(self.matrix, 2))

    def is_hermitian(self, atol=1e-12):
        return np.allclose(self.matrix, self.matrix.conj().T, atol=atol, rtol=0)

    def eigvalsh(self):
        return np.linalg.eigvalsh(self.matrix)

    @classmethod
    def from_function(cls, domain, codomain, fn):
        """Matrix of a complex-linear ``fn`` by evaluation on the basis."""
        cols = [fn(b).vec() for b in domain.basis()]
        return cls(domain, codomain, np.column_stack(cols))


def _same_space(*xs):
    space = xs[0].space
    for x in xs[1:]:
        if x.space != space:
            raise ShapeError(f"elements of {space} and {x.space}")
    return space


def _adj(m):
    return m.conj().T


def _per_factor(space, left, right):
    """Operator x -> L_k x R_k on every factor k."""
    mats = [np.kron(L, R.T) for L, R in zip(left, right)]
    return ComplexLinearOperator(space, space, block_diag(*mats))


def triple_product(a, b, c):
    """{a, b, c} = (a b* c + c b* a) / 2, factor by factor."""
    space = _same_space(a, b, c)
    return Element(
        space,
        [0.5 * (x @ _adj(y) @ z + z @ _adj(y) @ x) for x, y, z in zip(a.blocks, b.blocks, c.blocks)],
    )


def box_operator(a, b):
    """Matrix of the box operator x -> {a, b, x}."""
    space = _same_space(a, b)
    mats = []
    for (p, q), x, y in zip(space.factors, a.blocks, b.blocks):
        mats.append(0.5 * (np.kron(x @ _adj(y), np.eye(q)) + np.kron(np.eye(p), (_adj(y) @ x).T)))
    return ComplexLinearOperator(space, space, block_diag(*mats))


def quadratic_op(a, x):
    """Q_a(x) = {a, x, a} = a x* a.  Conjugate-linear in x."""
    space = _same_space(a, x)
    return Element(space, [s @ _adj(t) @ s for s, t in zip(a.blocks, x.blocks)])


def bergman_operator(a, b):
    """B(a, b) via the type-I closed form x -> (1 - a b*) x (1 - b* a)."""
    space = _same_space(a, b)
    left = [np.eye(p) - x @ _adj(y) for (p, _), x, y in zip(space.factors, a.blocks, b.blocks)]
    right = [np.eye(q) - _adj(y) @ x for (_, q), x, y in zip(space.factors, a.blocks, b.blocks)]
    return _per_factor(space, left, right)


def bergman_operator_expanded(a, b):
    """B(a, b) built from its defining expansion x - 2{a,b,x} + {a,{b,x,b},a}.

    Independent of :func:`bergman_operator`; used to cross-check it.
    """
    space = _same_space(a, b)

    def apply(x):
        return x - 2.0 * triple_product(a, b, x) + triple_product(a, triple_product(b, x, b), a)

    return ComplexLinearOperator.from_function(space, space, apply)


def herm_power(h, power):
    """Power of a Hermitian positive semidefinite matrix via eigh.

    Eigenvalues are floored at ``EIG_FLOOR``; if the floor moves any
    eigenvalue by more than ``EIG_CLAMP_LIMIT`` the matrix is not
    positive definite and an error is raised.
    """
    h = 0.5 * (h + _adj(h))
    w, v = np.linalg.eigh(h)
    clamped = np.maximum(w, EIG_FLOOR)
    if power < 0 and np.max(clamped - w) > EIG_CLAMP_LIMIT:
        raise NumericalInconsistency(f"matrix not positive definite (min eigenvalue {w.min():.3e})")
    if power >= 0 and w.min() < -EIG_CLAMP_LIMIT:
        raise NumericalInconsistency(f"matrix not positive semidefinite (min eigenvalue {w.min():.3e})")
    if power >= 0:
        clamped = np.maximum(w, 0.0)
    return (v * clamped**power) @ _adj(v)


def _bergman_power(a, power):
    space = a.space
    if power < 0 and spectral_norm(a) >= 1.0:
        raise OutsideDomainError(f"B(a,a)^{power} needs ||a|| < 1, got {spectral_norm(a)}")
    left = [herm_power(np.eye(p) - x @ _adj(x), power) for (p, _), x in zip(space.factors, a.blocks)]
    right = [herm_power(np.eye(q) - _adj(x) @ x, power) for (_, q), x in zip(space.factors, a.blocks)]
    return _per_factor(space, left, right)


def bergman_inv_sqrt(a):
    """B(a, a)^{-1/2} as x -> (1 - a a*)^{-1/2} x (1 - a* a)^{-1/2}."""
    return _bergman_power(a, -0.5)


def bergman_sqrt(a):
    """B(a, a)^{1/2}; requires ||a|| <= 1."""
    if spectral_norm(a) > 1.0 + 1e-12:
        raise OutsideDomainError(f"B(a,a)^(1/2) needs ||a|| <= 1, got {spectral_norm(a)}")
    return _bergman_power(a, 0.5)


def spectral_norm(x):
    """Largest singular value over all factors."""
    return max(float(np.linalg.norm(b, 2)) if b.size else 0.0 for b in x.blocks)


class SpaceInvariants(NamedTuple):
    rank: int
    dim: int
    genus: tuple
    rp_minus_dim: int
    rp_minus_dim_per_factor: tuple


def space_invariants(space):
    """Rank, dimension, genus per factor and ``rp - dim`` (= dim V_2(e), e maximal).

    For one factor M_{p,q}: r = min(p,q), genus p+q and rp - dim = min(p,q)^2.
    For a product, rank and dimension add and ``rp - dim`` is summed over
    the irreducible factors.
    """
    per_factor = tuple(min(p, q) * (p + q) - p * q for p, q in space.factors)
    return SpaceInvariants(space.rank, space.dim, space.genus, sum(per_factor), per_factor)


def element(space, *blocks):
    """Convenience constructor: ``element(space, block0, block1, ...)``."""
    return Element(space, [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks])
