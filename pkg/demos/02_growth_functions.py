"""The growth hierarchy: from iterated logs to inverse-Ackermann scale.

g_0 is the successor; each next level iterates the previous one.  Values pass
any fixed tower almost immediately, which is why every evaluation runs
against a cap and reports EXCEEDS_CAP instead of materializing the number.
"""

import math

from banach_gauge import (
    ackermann_g,
    alpha,
    alpha_diag,
    delta_bound,
    fit_tower_constant,
    log_star,
)

print("=== the fast-growing functions g_k ===")
for k in range(5):
    row = []
    for n in range(5):
        row.append(str(ackermann_g(k, n, cap=10**40)))
    print(f"  g_{k}(0..4) = {row}")

print()
print("=== log* counts log applications down to 1 ===")
for x in [1, math.e, 16, 10**6, 10**300]:
    print(f"  log*({x:g}) = {log_star(x)}")

print()
print("=== two inverse-Ackermann flavors agree up to a bounded shift ===")
ns = [2, 8, 9, 100, 2048, 2049, 10**6]
print("  n        :", ns)
print("  alpha    :", [alpha(n) for n in ns])
print("  alphadiag:", [alpha_diag(n) for n in ns])

print()
print("=== the recursive distortion bound vs the sqrt baseline ===")
print("  bound(t) = sqrt(t) once 4K ln(t+1) >= t, else min(sqrt t, 4 D^2 bound(4K ln(t+1))^2)")
for n in [10, 10**3, 10**6, 10**9]:
    b = delta_bound(n, 1, 1)
    print(f"  n = 10^{int(math.log10(n))}: bound = {b:10.3f}   sqrt(n) = {math.sqrt(n):10.1f}")

grid = [10**j for j in range(1, 10)]
c = fit_tower_constant(grid)
print(f"  smallest c with 2^(2^(c log* n)) dominating the bound on the grid: {c:.3f}")
