"""Checking Ostrowski-type bounds on explicit functions and on a random corpus.

The worked instance ``f = g = 1 - t`` with ``alpha = 1/2`` has a closed-form
right-hand side ``2 (2 / sqrt(pi)) (0.4 / Gamma(3/2))``; the classical bound is
attained by ``f(t) = t`` at ``x = 1``.
"""

from caputo_ostrowski import (
    FractionalSetup,
    Interval,
    PowerTerm,
    eval_classical_ostrowski,
    eval_product_theorem,
    eval_z_bound,
    from_terms,
    make_constant,
    make_power_at_b,
    run_campaign,
)
from caputo_ostrowski.inequalities import SOUND_THEOREMS

iv = Interval(0.0, 1.0)


def show(r):
    ratio = "-" if r.ratio is None else f"{r.ratio:.4f}"
    print(f"  {r.theorem.value:<13} lhs {r.lhs:.10f}  rhs {r.rhs:.10f}  ratio {ratio:>6}  {r.verdict.value}")


print("classical bound, f(t) = t at x = 1 (equality):")
show(eval_classical_ostrowski(from_terms(iv, [PowerTerm(1.0, 0.0), PowerTerm(-1.0, 1.0)]), 1.0))

f = make_power_at_b(1.0, 1.0, iv)
print("f = g = 1 - t, alpha = 0.5:")
show(eval_z_bound(f, FractionalSetup(0.5), "Z1"))
show(eval_product_theorem(f, f, FractionalSetup(0.5), "A"))

# with g = 1 every product bound collapses onto the matching endpoint bound
print("g = 1 reduces A, A1 and A2_CORRECTED to (b - a) times Z1, Z2, Z3:")
h = make_power_at_b(-0.7, 2.4, iv) + make_power_at_b(1.3, 3.1, iv)
setup = FractionalSetup(1.5, p=3.0)
one = make_constant(1.0, iv)
for prod, z in (("A", "Z1"), ("A1", "Z2"), ("A2_CORRECTED", "Z3")):
    rp, rz = eval_product_theorem(h, one, setup, prod), eval_z_bound(h, setup, z)
    print(f"  {prod:<13} rhs {rp.rhs:.15f}   {z} rhs x (b - a) {rz.rhs * iv.length:.15f}")

print()
print("random corpus, 50 functions per order:")
campaign = run_campaign([0.5, 1.5, 2.5], SOUND_THEOREMS, corpus_size=50, seed=0, ps=[2.0, 3.0])
for name, row in campaign.summary["theorems"].items():
    ratio = "-" if row["max_ratio"] is None else f"{row['max_ratio']:.3f}"
    print(f"  {name:<13} count {row['count']:4d}  holds {row['holds']:4d}  violated {row['violated']}"
          f"  skipped {row['skipped']:3d}  max ratio {ratio}")
print("violations among sound bounds:", campaign.sound_violations)
