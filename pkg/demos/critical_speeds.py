"""The four critical speeds and their dependence on the threshold.

Prints the speed table at a few thresholds, then sweeps the bistable speed
over alpha to show the sign change at alpha = 1/3: expansion below, standstill
at 1/3, extinction above.  Outputs: demos/output/c_bistable_sweep.csv and .png
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from alleefront import critical_speeds
from alleefront.serialize import write_csv

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

print(f"{'alpha':>7} {'c_kpp':>9} {'c_bistable':>11} {'c_pushed_min':>13} {'c_monotone_min':>15}")
for alpha in (0.2, 0.3, 1 / 3, 0.5, 0.7):
    cs = critical_speeds(alpha, tol=1e-8, monotone_tol=1e-3)
    print(f"{alpha:7.4f} {cs.c_kpp:9.5f} {cs.c_bistable.value:11.6f} "
          f"{cs.c_pushed_min.value:13.6f} {cs.c_monotone_min.value:15.5f}")

print("\nsweeping c_bistable over alpha; the root at 1/3 separates spreading "
      "populations from retreating ones")
alphas = np.linspace(0.08, 0.72, 33)
from alleefront import bistable_speed  # cached, so the sweep is cheap to rerun

values = np.array([bistable_speed(float(a), 1e-6).value for a in alphas])
write_csv(OUT / "c_bistable_sweep.csv", ["alpha", "c_bistable"], [alphas, values])

fig, ax = plt.subplots(figsize=(6.5, 4))
ax.axhline(0.0, color="0.7", lw=0.8)
ax.axvline(1 / 3, color="0.7", lw=0.8, linestyle="dashed")
ax.plot(alphas, values, "o-", ms=3, color="navy")
ax.annotate("standstill at alpha = 1/3", (1 / 3, 0.0),
            textcoords="offset points", xytext=(8, 10), fontsize=8)
ax.set_xlabel("alpha")
ax.set_ylabel("bistable wave speed")
ax.set_title("Speed of the wave connecting the filled and extinct states")
fig.tight_layout()
fig.savefig(OUT / "c_bistable_sweep.png", dpi=150)
print(f"wrote {OUT / 'c_bistable_sweep.csv'} and .png")
