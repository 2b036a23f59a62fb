"""The Lq product bound in its printed form and in the form Hoelder's inequality gives.

The two right-hand sides differ by the constant factor
``Gamma(alpha) (p (alpha - 1) + 1)**(1/p)``, which is below 1 for
``1 - 1/p < alpha < 1``.  There the printed bound is the smaller, i.e. the
stronger, of the two.  This script measures the factor and then searches random
pairs ``(f, g)`` for an instance where the printed form actually fails.
"""

import numpy as np

from caputo_ostrowski import FractionalSetup, Interval, PowerTerm, eval_product_theorem, from_terms, run_campaign
from caputo_ostrowski.inequalities import a2_correction_factor

iv = Interval(0.0, 1.0)

print("stated / corrected factor:")
for p in (1.5, 2.0, 3.0):
    for alpha in (1 - 1 / p + 0.01, 0.6, 0.8, 1.0, 1.5):
        if alpha <= 1 - 1 / p:
            continue
        print(f"  p={p:<4} alpha={alpha:.3f}  {a2_correction_factor(FractionalSetup(alpha, p)):.6f}")

campaign = run_campaign([0.6], ["A2_STATED", "A2_CORRECTED"], corpus_size=200, seed=1, ps=[2.0])
block = campaign.summary["a2_discrepancy"]
ratios = np.array([pair["stated_over_corrected"] for pair in block["pairs"]])
print()
print(f"alpha=0.6, p=2 campaign: {len(ratios)} pairs, ratio range [{ratios.min():.15f}, {ratios.max():.15f}]")
print(f"stated-form violations: {block['stated_violations']}")

# a wider random search close to the admissibility edge alpha = 1 - 1/p
rng = np.random.default_rng(12)


def random_function():
    terms = [PowerTerm(rng.uniform(-2, 2), 0.0)]
    terms += [PowerTerm(rng.uniform(-2, 2), rng.uniform(1.0, 6.0)) for _ in range(rng.integers(1, 3))]
    return from_terms(iv, terms)


worst = None
for _ in range(1000):
    p = float(rng.choice([1.5, 2.0, 3.0, 5.0]))
    alpha = rng.uniform(1 - 1 / p + 0.005, 0.999)
    setup = FractionalSetup(alpha, p)
    r = eval_product_theorem(random_function(), random_function(), setup, "A2_STATED", n_panels=128)
    if r.ratio is not None and (worst is None or r.ratio > worst.ratio):
        worst = r
print()
print(f"largest lhs / stated rhs over 1000 random pairs: {worst.ratio:.4f} "
      f"(alpha={worst.setup.alpha:.3f}, p={worst.setup.p}) -> {worst.verdict.value}")
