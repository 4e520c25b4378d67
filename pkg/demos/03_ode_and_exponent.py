"""
Where the exponent -n comes from
--------------------------------

For a rotation graph x_(n+1) = f(t), constancy of the invariant is the ODE
f''(f')^(n-1) = -T t^(n-1) |t f' - f|^(n+2). Trying f = t^a and matching
powers of t forces a = -n; plugging back gives T = (-n)^n/(n+1)^(n+1).
"""

import numpy as np

from tzitzeica import ode_residual, parse_field, solve_exponent, tz_closed_form

t = parse_field("x1")

for n in range(1, 6):
    a = solve_exponent(n)
    T = tz_closed_form(n)
    worst = max(ode_residual(n, t ** int(a), float(s), T) for s in np.linspace(0.5, 5, 10))
    print(f"n={n}: a={a}, T={T}, max ODE residual {worst:.1e}")

###############################################################################
# Any other power leaves a residual that does not vanish.

print("f = t^2, n = 2:", ode_residual(2, t**2, 1.0, tz_closed_form(2)))
