#!/usr/bin/env python3
"""Uncertainty surface of the asymmetric Penning trap.

Coherent states of the ideal trap (epsilon = 0) saturate the Heisenberg
bound Delta X Delta P_x = 1/2.  Breaking the axial symmetry pushes the
radial products above 1/2 while the axial sector stays minimal.  This
script sweeps (delta, epsilon), writes the surface as CSV and, when
matplotlib is available, renders it as a contour plot.
"""

import numpy as np

from quadcoherent import uncertainty_surface

deltas = np.linspace(0.05, 0.95, 61)
epsilons = np.linspace(-0.95, 0.95, 61)
surface = uncertainty_surface(deltas, epsilons)[..., 0]

print(f"surface over delta in ({deltas[0]}, {deltas[-1]}), "
      f"epsilon in ({epsilons[0]}, {epsilons[-1]})")
print("min Delta X Delta P_x =", surface.min(), " (at epsilon = 0)")
print("max Delta X Delta P_x =", surface.max(),
      " (largest asymmetry, shallow trap)")

mid = np.argmin(np.abs(epsilons))
print("\nslice at delta = 0.5:")
row = surface[np.argmin(np.abs(deltas - 0.5))]
for j in range(0, len(epsilons), 10):
    print(f"  epsilon = {epsilons[j]:+.3f}  ->  {row[j]:.6f}")
print("symmetric under epsilon -> -epsilon:",
      np.allclose(surface, surface[:, ::-1], atol=1e-10))

out = "penning_uncertainty_surface.csv"
with open(out, "w", encoding="utf-8") as fh:
    fh.write("delta,epsilon,dx_dpx\n")
    for i, d in enumerate(deltas):
        for j, e in enumerate(epsilons):
            fh.write(f"{d:.17g},{e:.17g},{surface[i, j]:.17g}\n")
print("\nwrote", out)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 5))
    cs = ax.contourf(epsilons, deltas, surface, levels=30, cmap="viridis")
    fig.colorbar(cs, label=r"$\Delta X\, \Delta P_x$")
    ax.set_xlabel(r"asymmetry $\varepsilon$")
    ax.set_ylabel(r"$\delta = 2\omega_z^2/\omega_c^2$")
    ax.set_title("Radial uncertainty product of trap coherent states")
    fig.tight_layout()
    fig.savefig("penning_uncertainty_surface.png", dpi=150)
    print("wrote penning_uncertainty_surface.png")
except ImportError:
    print("matplotlib not installed, skipping the plot")
