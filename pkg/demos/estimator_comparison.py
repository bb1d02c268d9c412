"""Every IACT estimator on the same AR(1) chain.

Windowed spectral estimators, batch means, Geyer's initial sequences, an
AR(p) fit and single-chain ESS-Bulk are run on one chain with a known IACT
of 100. Each line shows the estimate, the implied ESS and the relative
error. Re-run with another seed to see how much each one moves.

    python3 demos/estimator_comparison.py [seed]
"""

import sys

from essbench import (Ar1Params, BatchSpec, WindowSpec, ar1_coeff_for_iact, ar1_simulate,
                      bulk_variant, chain_geyer_iact, chain_window_iact, ess_bulk, fit_ar_iact,
                      iact_bm, iact_obm)

TAU = 100.0
N = 200_000
seed = int(sys.argv[1]) if len(sys.argv) > 1 else 3

x = ar1_simulate(Ar1Params(ar1_coeff_for_iact(TAU)), N, seed).samples

estimates = {
    "Bartlett, M = sqrt(N)": chain_window_iact(x, WindowSpec("bartlett")).iact,
    "Bartlett, M = 2 sqrt(N)": chain_window_iact(x, WindowSpec("bartlett", width_param=2)).iact,
    "Tukey, M = 2 sqrt(N)": chain_window_iact(x, WindowSpec("tukey", width_param=2)).iact,
    "truncated, Sokal window": chain_window_iact(
        x, WindowSpec("truncated", "sokal_adaptive")).iact,
    "batch means, N^(1/3) batches": iact_bm(x, BatchSpec(size_policy="count_cuberoot"))[1].iact,
    "overlapping batch means": iact_obm(
        x, BatchSpec("overlapping", "count_cuberoot"))[1].iact,
    "Geyer initial positive": chain_geyer_iact(x, "initial_positive").iact,
    "Geyer initial monotone": chain_geyer_iact(x, "initial_monotone").iact,
    "AR(p), AIC order": fit_ar_iact(x)[1].iact,
    "ESS-Bulk, one chain": ess_bulk(x[None], bulk_variant("ess_bulk_2")).iact.iact,
}

print(f"exact IACT {TAU:.0f}, N = {N}, seed {seed}\n")
print(f"{'estimator':32s} {'IACT':>9s} {'ESS':>9s} {'error':>8s}")
for name, tau in estimates.items():
    print(f"{name:32s} {tau:9.2f} {N / tau:9.1f} {tau / TAU - 1:+8.1%}")
