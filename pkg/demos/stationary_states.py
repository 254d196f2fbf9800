"""Stationary solutions: bump, dip, glued pairs, and periodic orbits.

The compactly supported bump (alpha < 1/3) is the threshold state between
extinction and invasion; the dip (alpha > 1/3) is its dual. At alpha = 1/3 the
touching profile can be glued to its reflection across arbitrary zero gaps.
Periodic orbits fill the energy well; their period grows from the linear
limit 2*pi/sqrt(1-alpha) toward the homoclinic.  Output: stationary_states.png
"""

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from alleefront import orbit_period, stationary_profile

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

h = 5e-3
bump = stationary_profile(0.25, "bump", h)
dip = stationary_profile(0.5, "dip", h)
glued = stationary_profile(1 / 3, "glued", h, L=8.0)
periodic = stationary_profile(0.25, "periodic", h, u0=0.08)

print(f"bump  (alpha=0.25): max u = {bump.u.max():.6f}, support "
      f"[{bump.free_boundaries[0]:.3f}, {bump.free_boundaries[1]:.3f}]")
print(f"dip   (alpha=0.50): min u = {dip.u.min():.6f}")
print(f"glued (alpha=1/3):  zero gap {glued.plateau_length:g} between mirrored pieces")
print(f"periodic orbit through u0=0.08: period {orbit_period(0.25, 0.08):.4f}")

fig, axes = plt.subplots(2, 2, figsize=(10, 6))
for ax, prof, title in zip(
        axes.ravel(),
        (bump, dip, glued, periodic),
        ("compact bump, alpha = 0.25", "dip, alpha = 0.5",
         "glued pair with zero gap, alpha = 1/3", "periodic orbit, alpha = 0.25")):
    ax.plot(prof.xi, prof.u, lw=1.2, color="navy")
    ax.axhline(prof.alpha, color="0.8", lw=0.7)
    ax.set_title(title, fontsize=9)
    ax.set_ylim(-0.05, 1.1)

fig.tight_layout()
fig.savefig(OUT / "stationary_states.png", dpi=150)

# period of the closed orbits as the anchor approaches the two ends
alpha = 0.25
lin = 2.0 * math.pi / math.sqrt(1.0 - alpha)
u0s = np.linspace(-0.36, 0.2499, 40)
u0s = u0s[u0s > (3 * alpha - 1) / 2]
periods = [orbit_period(alpha, float(u)) for u in u0s]
fig2, ax = plt.subplots(figsize=(6, 4))
ax.plot(u0s, periods, "o-", ms=3, color="navy")
ax.axhline(lin, color="crimson", lw=0.8, linestyle="dashed",
           label=f"linear limit 2 pi / sqrt(1 - a) = {lin:.3f}")
ax.set_xlabel("orbit anchor u0")
ax.set_ylabel("period")
ax.set_title(f"Orbit period at alpha = {alpha}: homoclinic blow-up to linear limit")
ax.legend(fontsize=8)
fig2.tight_layout()
fig2.savefig(OUT / "orbit_periods.png", dpi=150)
print(f"wrote {OUT / 'stationary_states.png'} and {OUT / 'orbit_periods.png'}")
