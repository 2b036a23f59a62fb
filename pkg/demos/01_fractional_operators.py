"""Right Caputo derivative, Riemann-Liouville integrals and the Taylor formula.

Evaluates each operator on ``f(t) = (1 - t)**2.5`` over ``[0, 1]`` twice, once
through the closed form available for power terms and once through product
integration, and prints the two side by side with the quadrature error estimate.
"""

import numpy as np

from caputo_ostrowski import (
    DomainError,
    FractionalSetup,
    Interval,
    caputo_right,
    make_power_at_b,
    rl_integral_left,
    rl_integral_right,
    taylor_reconstruct,
)
from caputo_ostrowski.functions import format_function_spec

iv = Interval(0.0, 1.0)
f = make_power_at_b(1.0, 2.5, iv)
xs = np.linspace(0.0, 0.9, 4)

# {{{ derivatives of several orders

print(f"f = {format_function_spec(f)}")
print(f"{'alpha':>6} {'x':>5} {'closed form':>20} {'quadrature':>20} {'err est':>10}")
for alpha in (0.3, 0.5, 1.5, 1.8):
    setup = FractionalSetup(alpha)
    for x in xs:
        exact = caputo_right(f, setup, x)
        approx = caputo_right(f, setup, x, method="quadrature")
        print(f"{alpha:6.2f} {x:5.2f} {exact.value:20.15f} {approx.value:20.15f} {approx.err_estimate:10.2e}")

# an integer order needs no quadrature: D^1 f = -f'
print("D^1 f(0.5) =", caputo_right(f, FractionalSetup(1.0), 0.5).value, "and -f'(0.5) =", -f.deriv(1)(0.5))

# }}}

# {{{ fractional integrals

print()
for name, op in (("J_{a+}", rl_integral_left), ("J_{b-}", rl_integral_right)):
    x = 0.4
    q = op(f, 0.75, x, method="quadrature")
    try:
        ref = f"{op(f, 0.75, x, method='closed_form').value:.15f}"
    except DomainError:
        ref = "none"
    print(f"{name}^0.75 f({x}) = {q.value:.15f} (err est {q.err_estimate:.1e}, closed form {ref})")

# the left integral has a closed form only for integer powers such as (1 - t)^3
g = make_power_at_b(1.0, 3.0, iv)
print("J_{a+}^0.75 (1 - t)^3 at 0.4:",
      rl_integral_left(g, 0.75, 0.4).value, "vs", rl_integral_left(g, 0.75, 0.4, method="quadrature").value)

# }}}

# {{{ Taylor reconstruction

print()
print("Taylor formula: the series at b plus the fractional remainder gives f back")
for alpha in (0.5, 1.5, 2.5):
    setup = FractionalSetup(alpha)
    for x in (0.0, 0.5):
        r = taylor_reconstruct(f, setup, x)
        print(f"  alpha={alpha}: x={x}  reconstructed {r.value:.10f}  f(x) {float(f(x)):.10f}  err est {r.err_estimate:.1e}")

# }}}
