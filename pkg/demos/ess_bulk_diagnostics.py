"""ESS-Bulk rewards agreement between chains and punishes disagreement.

Four chains from the same AR(1) process agree, so R-hat is close to 1 and
ESS-Bulk is roughly what Geyer's estimator gives per chain, times four. Shift
one chain and R-hat grows; the combined autocorrelation then sits near
1 - 1/R-hat at every lag and the ESS collapses even though each chain on
its own mixes well.

    python3 demos/ess_bulk_diagnostics.py
"""

import numpy as np

from essbench import Ar1Params, ar1_coeff_for_iact, ar1_simulate, chain_geyer_iact, ess_bulk

N = 20_000
params = Ar1Params(ar1_coeff_for_iact(20.0))
chains = np.stack([ar1_simulate(params, N, seed=5, replicate=k).samples for k in range(4)])
per_chain = np.mean([chain_geyer_iact(c).iact for c in chains])
print(f"mean single-chain Geyer IACT: {per_chain:.1f}  (exact 20)\n")

print(f"{'shift of chain 0':>17s} {'R-hat':>8s} {'IACT':>9s} {'ESS':>9s} {'rho(50)':>8s}")
for shift in (0.0, 0.5, 2.0, 10.0):
    x = chains.copy()
    x[0] += shift
    rep = ess_bulk(x)
    print(f"{shift:17.1f} {rep.psrf.rhat:8.3f} {rep.iact.iact:9.1f} {rep.ess:9.1f} "
          f"{rep.rho_hat[50]:8.3f}")
