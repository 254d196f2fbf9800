"""Phase portrait of the traveling-wave system.

Draws the energy level sets of the c = 0 system for alpha = 1/4, the
homoclinic loop E = 0 through the saddle (1, 0), a periodic orbit through the
origin, and the c > 0 heteroclinic that exits the saddle and spirals into
(alpha, 0).  Output: demos/output/phase_portrait.png
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from alleefront import (EventSpec, ModelParams, PhaseState, bistable_speed, energy,
                        integrate, manifold_seed)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

alpha = 0.25
print(f"alpha = {alpha}: the zero level set of E crosses the u-axis at "
      f"(3a-1)/2 = {(3 * alpha - 1) / 2:+.3f}, so the origin lies inside the loop")

uu, ww = np.meshgrid(np.linspace(-0.4, 1.15, 400), np.linspace(-0.45, 0.45, 400))
EE = energy(uu, ww, alpha)

fig, ax = plt.subplots(figsize=(7.5, 5))
ax.contour(uu, ww, EE, levels=np.linspace(-0.04, 0.06, 11), colors="0.8", linewidths=0.7)
ax.contour(uu, ww, EE, levels=[0.0], colors="crimson", linewidths=1.8,
           linestyles="dashed")

# periodic orbit of the c = 0 system through the origin region
loop = integrate(PhaseState(0.0, 0.05, 0.0), ModelParams(alpha, 0.0), "forward",
                 [EventSpec.xi_exceeds(25.0)], sample_step=0.01)
ax.plot(loop.u, loop.w, color="navy", lw=1.2, label="periodic orbit (c = 0)")

# heteroclinic at the bistable speed: saddle -> origin, then glued to u = 0
c_b = bistable_speed(alpha, 1e-10).value
print(f"bistable speed c_* = {c_b:.6f}; the unstable manifold of (1,0) lands on (0,0)")
params = ModelParams(alpha, c_b)
het = integrate(manifold_seed(params, "unstable-below"), params, "forward",
                [EventSpec.u_crosses(0.0, "any"), EventSpec.w_crosses(0.0, "any")],
                sample_step=0.01)
ax.plot(het.u, het.w, color="black", lw=1.8, label=f"saddle orbit at c_* = {c_b:.4f}")

# the same manifold at a faster speed spirals into (alpha, 0)
params2 = ModelParams(alpha, 0.8)
spiral = integrate(manifold_seed(params2, "unstable-below"), params2, "forward",
                   [EventSpec.near_point(alpha, 0.0, 1e-6)], sample_step=0.01)
ax.plot(spiral.u, spiral.w, color="seagreen", lw=1.2,
        label="saddle orbit at c = 0.8 (spirals into (a, 0))")

ax.plot([alpha, 1.0], [0.0, 0.0], "o", color="k", ms=5)
ax.annotate("(a, 0)", (alpha, 0.0), textcoords="offset points", xytext=(4, 6))
ax.annotate("(1, 0)", (1.0, 0.0), textcoords="offset points", xytext=(4, 6))
ax.set_xlabel("u")
ax.set_ylabel("w = du/dxi")
ax.set_title(f"Phase plane at alpha = {alpha}: level sets of E and shooting orbits")
ax.legend(loc="lower left", fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "phase_portrait.png", dpi=150)
print(f"wrote {OUT / 'phase_portrait.png'}")
