#!/usr/bin/env python3
"""The numeric oracle: random group elements, the trace-projection identity,
and the lattice functional-derivative check.

Identities quantified over connections are tested by quantifying over
arbitrary arc-matrix assignments; the lattice check discretizes a
connection on a circle or interval and compares finite differences of the
holonomy with the closed-form derivative, including the boundary factor of
one half that appears when the variation sits at an endpoint.
"""

import numpy as np

from loopstar import (
    GroupSpec,
    lattice_derivative_check,
    projection_pi,
    sample,
    verify_gram_identity,
)
from loopstar.holonomy import gram_pairing

rng = np.random.default_rng(2024)

print("Group samplers (membership checked to 1e-12):")
for kind, n in (("su2", 2), ("sl2r", 2), ("sl2c", 2), ("un", 3), ("gln", 3)):
    g = GroupSpec(kind, n)
    u = sample(g, rng)
    print(f"  {g}: det = {np.linalg.det(u):.6f}")
print()

print("Trace-projection identity   sum (g^-1)_ab tr(U e_a) tr(V e_b) = tr(pi(U) pi(V)):")
for kind, n in (("gln", 2), ("gln", 4), ("un", 3), ("su2", 2), ("sl2r", 2)):
    g = GroupSpec(kind, n)
    worst = max(
        verify_gram_identity(g, sample(g, rng), sample(g, rng)) for _ in range(200)
    )
    print(f"  {g}: worst residual over 200 pairs = {worst:.2e}")
print()

print("For u(n) the real basis complex-spans gl(n), so the pairing is tr(UV):")
un = GroupSpec("un", 3)
u, v = sample(un, rng), sample(un, rng)
print(f"  |pairing - tr(UV)| = {abs(gram_pairing(un, u, v) - np.trace(u @ v)):.2e}")
print()

print("Rank-2 trace identity tr(UV) + tr(UV^-1) = tr U tr V:")
for kind in ("su2", "sl2r"):
    g = GroupSpec(kind)
    u, v = sample(g, rng), sample(g, rng)
    gap = abs(np.trace(u @ v) + np.trace(u @ np.linalg.inv(v)) - np.trace(u) * np.trace(v))
    print(f"  {g}: residual {gap:.2e}")
print()

print("pi on the rank-2 groups: (U - U^-1)/2 equals U - tr(U)/2 * I on the group:")
su2 = GroupSpec("su2")
u = sample(su2, rng)
gap = np.max(np.abs(projection_pi(su2, u) - (u - 0.5 * np.trace(u) * np.eye(2))))
print(f"  max entry gap: {gap:.2e}")
print()

print("Lattice functional-derivative check, N = 64 segments:")
print("  (interior: insertion at a lattice point of a circle; endpoint: a")
print("   symmetric bump straddling t=0, so only half its mass counts)")
for g in (GroupSpec("gln", 2), GroupSpec("su2")):
    for direction in ("interior", "endpoint"):
        rows = []
        for step in (1e-3, 1e-4, 1e-5):
            rows.append(lattice_derivative_check(g, 64, direction, step, np.random.default_rng(7)))
        print(f"  {g} {direction:9s}: residuals {rows[0]:.2e} -> {rows[1]:.2e} -> {rows[2]:.2e}"
              f"   (steps 1e-3, 1e-4, 1e-5; first-order decay)")
