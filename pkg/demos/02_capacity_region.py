"""
Capacity region of a two-user pair
==================================

Trace the NOMA pentagon and the OMA curve for a fixed pair and mark the
corner points. The OMA curve touches the dominant face at a single point.
"""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from nomafair import make_channels, noma_boundary, oma_boundary

ch = make_channels([10**1.8 * 1e-9, 10**2.8 * 1e-9], 100.0, 1e-9)
noma = noma_boundary(ch)
oma = oma_boundary(ch, 200)

fig, ax = plt.subplots(figsize=(5, 5))
ax.plot(*zip(*((p.r1, p.r2) for p in noma.samples)), label="NOMA")
ax.plot(*zip(*((p.r1, p.r2) for p in oma.samples)), "--", label="OMA")
for name, p in {**noma.corner_points, "C": oma.corner_points["C"]}.items():
    ax.plot(p.r1, p.r2, "ko")
    ax.annotate(name, (p.r1, p.r2), textcoords="offset points", xytext=(5, 5))
ax.set_xlabel("R1 (bit/s/Hz)")
ax.set_ylabel("R2 (bit/s/Hz)")
ax.legend()
fig.savefig("capacity_region.png", dpi=120, bbox_inches="tight")
print("sum rate", round(noma.sum_rate, 4), "-> capacity_region.png")
