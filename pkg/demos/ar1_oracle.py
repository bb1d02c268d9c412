"""AR(1) chains have a closed-form IACT, which makes them the ground truth for
every estimator in the package.

This script picks the coefficient for a target IACT, simulates a few long
chains and compares the empirical variance of the chain mean with the
asymptotic formula Var(mean) = IACT * Var(X) / N.

    python3 demos/ar1_oracle.py
"""

import numpy as np

from essbench import (Ar1Params, ar1_coeff_for_iact, ar1_exact_iact, ar1_mean_variance,
                      ar1_simulate, ar1_stationary_moments)

TARGET_IACT = 50.0
N = 100_000
REPLICATES = 200

a = ar1_coeff_for_iact(TARGET_IACT)
params = Ar1Params(a)
mean, var = ar1_stationary_moments(params)
print(f"a = {a:.6f}  exact IACT = {ar1_exact_iact(a):.3f}")
print(f"stationary mean {mean:.3f}, variance {var:.3f}")

# One chain per replicate stream; each stream is independent of the others.
means = np.array([ar1_simulate(params, N, seed=11, replicate=k).samples.mean()
                  for k in range(REPLICATES)])

predicted = ar1_mean_variance(params, N)
print(f"variance of the chain mean over {REPLICATES} replicates: {means.var(ddof=1):.5f}")
print(f"large-N prediction sigma^2 / (N (1-a)^2):             {predicted:.5f}")
print(f"equivalently IACT * Var(X) / N:                        {TARGET_IACT * var / N:.5f}")
