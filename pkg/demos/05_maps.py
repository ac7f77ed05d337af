"""Sampled analysis of maps between balls: homomorphisms, isometries, holomorphy."""

import numpy as np

from symdom import (
    TripleSpace,
    holomorphy_classifier,
    is_isometry_sampled,
    is_triple_homomorphism,
    mobius_invariance_check,
    rank_genus_report,
)
from symdom.maps import block_embedding, conjugation, diagonal_counterexample
from symdom.tripotents import random_minimal

m22, m23, m15 = TripleSpace.of((2, 2)), TripleSpace.of((2, 3)), TripleSpace.of((1, 5))
phi = block_embedding(m22, m23)
print("block embedding homomorphism:", is_triple_homomorphism(phi, 50).residuals)
print("carathéodory isometry:", is_isometry_sampled(phi, "caratheodory", 50).residuals)

rng = np.random.default_rng(3)
sample = [random_minimal(m22, rng) for _ in range(5)]
print("classifier:", holomorphy_classifier(phi, sample), "/", holomorphy_classifier(conjugation(m22), sample))

print("M22 -> M15:", rank_genus_report(m22, m15).verdicts)
print("M22 -> M23:", rank_genus_report(m22, m23).values)

# norm-preserving but not a homomorphism: its image is not Möbius invariant
rep = mobius_invariance_check(diagonal_counterexample(), samples=20)
print("bidisc -> tridisc diagonal:", rep.verdicts, f"range residual {rep.residuals['range']:.3e}")
