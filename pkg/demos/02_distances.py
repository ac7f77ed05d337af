"""Möbius maps and the Carathéodory and Bergman distances on a matrix ball."""

import numpy as np

from symdom import (
    FlatChart,
    TripleSpace,
    bergman_distance,
    caratheodory_distance,
    mobius,
)
from symdom.tripotents import random_frame

space = TripleSpace.of((2, 3))
rng = np.random.default_rng(1)
x, y, a = (space.random_in_ball(rng, 0.9) for _ in range(3))

d, db = caratheodory_distance(x, y), bergman_distance(x, y)
print(f"d(x,y) = {d:.12f}   d_B(x,y) = {db:.12f}")

# both distances are invariant under every Möbius map g_a
gx, gy = mobius(a, x), mobius(a, y)
print(f"after g_a:  {caratheodory_distance(gx, gy):.12f}   {bergman_distance(gx, gy):.12f}")

# a flat through 0 is an isometric copy of R^r with the sup norm
chart = FlatChart(random_frame(space, rng))
p, q = np.array([0.3, -1.2]), np.array([2.0, 0.4])
print(f"flat: d = {caratheodory_distance(chart.exp0(p), chart.exp0(q)):.12f}, sup|p-q| = {np.max(np.abs(p - q)):.12f}")
