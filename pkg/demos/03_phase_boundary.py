#!/usr/bin/env python3
"""Radius of convergence of the length series as a function of q.

The boundary is the first positive zero of the alternating series H(t);
it falls from 1 at q = 0 to the Catalan radius 1/4 at q = 1.
"""

from dyckarea.datasets import scan_phase_boundary, write_dataset

dataset = scan_phase_boundary(q_min=0.3, q_max=0.99, steps=15)

print(" q        t_inf(q)")
for q, t in zip(dataset.columns["q"], dataset.columns["t_infinity"]):
    bar = "#" * int(80 * (t - 0.25))
    print(f" {q:.4f}   {t:.8f}  {bar}")

write_dataset(dataset, "phase_boundary.csv", "csv")
print("\nwrote phase_boundary.csv")
