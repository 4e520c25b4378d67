"""
The rotation chart
------------------

Parameters (u1, ..., un) with un > 0 map onto the graph of f(|x'|) through a
scaled inverse stereographic projection. The radius of the first n
coordinates always equals un.
"""

import numpy as np

from tzitzeica import ChartParams, evaluate, new_hypersurface, parse_field, profile_field, rotation_chart

n = 3
t = parse_field("x1")
graph = profile_field(n, t ** -n)
print("implicit form:", graph)

rng = np.random.default_rng(0)
spec = new_hypersurface(n)
for _ in range(5):
    u = np.append(rng.uniform(-2, 2, n - 1), rng.uniform(0.3, 3))
    p = rotation_chart(ChartParams(tuple(u), t ** -n))
    print(
        f"u={np.round(u, 3)}  |x'|^2 - un^2 = {p[:n] @ p[:n] - u[-1] ** 2:+.1e}  "
        f"graph(p) = {evaluate(graph, p):+.1e}  new(p) = {evaluate(spec.field, p):+.1e}"
    )
