"""Detour costs between Busemann points, and a part as a Hilbert-metric cone."""

import numpy as np

from symdom import (
    HorofunctionSpec,
    TripleSpace,
    detour_cost,
    detour_cost_numeric,
    detour_metric,
    hilbert,
    part_cross_section,
)
from symdom.boundary import cone_frame

bidisc = TripleSpace.of((1, 1), (1, 1))
e1, e2 = bidisc.unit(0, 0, 0), bidisc.unit(1, 0, 0)
xi = HorofunctionSpec((e1, e2), (1.0, 1.0))
eta = HorofunctionSpec((e1, e2), (1.0, 0.5))

for name, a, b in [("H(xi,eta)", xi, eta), ("H(eta,xi)", eta, xi)]:
    num = detour_cost_numeric(a, b)
    print(f"{name}: closed {detour_cost(a, b):.10f}  numeric {num.value:.10f}")
print(f"delta(xi,eta) = {detour_metric(xi, eta):.10f} (log 2 = {np.log(2):.10f})")

# in one chart of A(e) the part is a cone with its Hilbert metric
chart = cone_frame(xi.tripotent)
a, b = part_cross_section(xi, chart), part_cross_section(eta, chart)
print("cross-sections:", np.diag(a.dense()).real, np.diag(b.dense()).real, "d_H =", hilbert(a, b))

# different parts are infinitely far apart
print("delta to a singleton:", detour_metric(xi, HorofunctionSpec.singleton(e1)))
