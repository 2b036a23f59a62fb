"""Empirical convergence order of the product-integration rule.

Reproduces the ``converge`` subcommand in-process: the right Caputo derivative
of ``(1 - t)**2.5`` with ``alpha = 1/2`` at ``x = 0`` is computed on panel
counts 64 ... 1024 and compared with the Beta-integral closed form.  The
piecewise-linear rule on a graded mesh converges at second order.
"""

import math

from caputo_ostrowski import FractionalSetup, Interval, caputo_oracle_power, caputo_right, make_power_at_b
from caputo_ostrowski.cli import main

iv = Interval(0.0, 1.0)
setup = FractionalSetup(0.5)
f = make_power_at_b(1.0, 2.5, iv)
exact = caputo_oracle_power(1.0, 2.5, 0.5, iv, 0.0)

print(f"{'n':>5} {'error':>10} {'estimate':>10} {'order':>6}")
prev = None
for n in (16, 32, 64, 128, 256, 512, 1024, 2048):
    r = caputo_right(f, setup, 0.0, n_panels=n, method="quadrature")
    err = abs(r.value - exact)
    order = "" if prev is None else f"{math.log2(prev / err):6.3f}"
    print(f"{n:5d} {err:10.3e} {r.err_estimate:10.3e} {order:>6}")
    prev = err

print()
print("the same table from the command line front end:")
main(["converge", "caputo-right", "--f", "powb:c=1,beta=2.5", "--alpha", "0.5"])
