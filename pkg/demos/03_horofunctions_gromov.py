"""Busemann points, their values by ray limits, and Gromov products."""

import numpy as np

from symdom import (
    HorofunctionSpec,
    TripleSpace,
    classify_pair,
    gromov_numeric,
    gromov_singletons,
    horofunction_eval,
    singleton_eval,
)
from symdom.tripotents import random_minimal

space = TripleSpace.of((2, 2))
rng = np.random.default_rng(2)
e = random_minimal(space, rng)
z = space.random_in_ball(rng, 0.8)

rep = horofunction_eval(HorofunctionSpec.singleton(e), z)
print(f"closed form {singleton_eval(e, z):.9f}, ray limit {rep.value:.9f} (converged={rep.converged})")
for t, v in rep.trace:
    print(f"   t={t:5.1f}  {v:.12f}")

u = random_minimal(space, rng)
for label, v in [("-u", -u), ("i u", 1j * u), ("random", random_minimal(space, rng))]:
    closed = gromov_singletons(u, v)
    numeric = gromov_numeric(u, v).value
    print(f"<u|{label:6s}> closed {closed:.8f}  numeric {numeric:.8f}  class {classify_pair(u, v)}")
print("<E11|E22> =", gromov_singletons(space.unit(0, 0, 0), space.unit(0, 1, 1)))
