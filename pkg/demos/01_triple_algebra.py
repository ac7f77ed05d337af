"""The triple product on matrices, Peirce spaces and spectral decomposition.

Run with ``python3 demos/01_triple_algebra.py``.
"""

import numpy as np

from symdom import (
    TripleSpace,
    box_operator,
    is_minimal,
    is_tripotent,
    peirce_projection,
    space_invariants,
    spectral_decompose,
    spectral_norm,
    triple_product,
)

space = TripleSpace.of((2, 3))
rng = np.random.default_rng(0)
print(f"space {space}: {space_invariants(space)}")

# {x,x,x} has norm ||x||^3; that is the C*-axiom of the triple
x = space.random(rng, norm=0.7)
print(f"||x|| = {spectral_norm(x):.4f}, ||{{x,x,x}}||^(1/3) = {spectral_norm(triple_product(x, x, x)) ** (1 / 3):.4f}")

# x = sum sigma_i e_i with e_i orthogonal minimal tripotents
dec = spectral_decompose(x)
print("singular values:", np.round(dec.sigmas, 4))
e = dec.tripotents[0]
print(f"e_1 tripotent: {is_tripotent(e)}, minimal: {is_minimal(e)}")

# Peirce spaces of e are the eigenspaces of e box e at 0, 1/2, 1
eig = np.round(box_operator(e, e).eigvalsh(), 6)
dims = [int(round(np.trace(peirce_projection(e, k).matrix).real)) for k in range(3)]
print("spectrum of e box e:", eig, "-> dims V_0, V_1, V_2 =", dims)
