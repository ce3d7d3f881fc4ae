"""
How often is NOMA the fairer choice?
====================================

Sweep the transmit power over randomly paired cell users and compare the
exact threshold rule, its high-SNR approximation and direct Jain's index
comparison. Pass a smaller trial count for a quick look.
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from nomafair import SimConfig, run_fairness_sweep

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 10_000
res = run_fairness_sweep(SimConfig(trials=trials), threads=4)

for row in zip(res.p0_grid, res.prob_metric, res.prob_metric_hsnr, res.prob_actual):
    print("P0={:4.0f} dBm  metric={:.3f}  high-SNR={:.3f}  simulated={:.3f}".format(*row))

fig, ax = plt.subplots()
ax.plot(res.p0_grid, res.prob_metric, "o-", label="threshold rule")
ax.plot(res.p0_grid, res.prob_metric_hsnr, "s--", label="high-SNR rule")
ax.plot(res.p0_grid, res.prob_actual, "x:", label="Jain comparison")
ax.set_xlabel("P0 (dBm)")
ax.set_ylabel("Pr[NOMA at least as fair]")
ax.legend()
fig.savefig("fairness_sweep.png", dpi=120, bbox_inches="tight")
