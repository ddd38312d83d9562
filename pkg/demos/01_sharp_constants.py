#!/usr/bin/env python3
"""Where does the curl-free constraint improve the Rellich-Hardy constant?

Walks through the closed-form constants at a few landmark parameter
points, all in exact rational arithmetic: the low dimensions where the
constraint changes nothing, the N >= 5 family where it strictly helps,
and the degenerate weight gamma = 2 - N/2 where the two-dimensional
constant jumps from 0 to 1.
"""

from fractions import Fraction as F

from curlsharp import (Params, hardy_leray, improvement_report,
                       rellich_hardy_A, rellich_hardy_C,
                       rellich_leray_curlfree, rellich_leray_unconstrained)


def show(p: Params) -> None:
    rep = improvement_report(p)
    tag = "equal" if rep.equal else ("improved" if rep.strict_improvement else "?")
    print(f"N={p.N:2d} gamma={str(p.gamma):>5}:  "
          f"A = {str(rep.A.value):>9} (nu={rep.A.argmin_nu})   "
          f"C = {str(rep.C.value):>9} (nu={rep.C.argmin_nu})   [{tag}]")


print("Unconstrained vs curl-free Rellich-Hardy constants")
print("=" * 72)
for n in (2, 3, 4):
    show(Params(n, F(0)))
print("-" * 72)
print("From dimension five on (gamma = 0) the constraint strictly helps:")
for n in (5, 6, 8, 12):
    show(Params(n, F(0)))
print("-" * 72)
print("The degenerate weight gamma = 2 - N/2 (the nu = 1 quadratic form")
print("loses its constant term); the 2-D constant improves from 0 to 1:")
for n in (2, 3, 4, 7):
    show(Params(n, F(4 - n, 2)))

print()
print("Mode-by-mode table at (N, gamma) = (3, 0): the minimum over the")
print("spherical-harmonic index is what the inequalities see.")
p = Params(3, F(0))
print(" nu |        A(nu) |        C(nu)")
for nu in range(5):
    print(f"  {nu} | {str(rellich_hardy_A(p, nu)):>12} |"
          f" {str(rellich_hardy_C(p, nu)):>12}")

print()
print("The companion constants at (3, 0):")
print("  Hardy-Leray (curl-free):       ", hardy_leray(p))
print("  Rellich-Leray (unconstrained): ", rellich_leray_unconstrained(p).value)
print("  Rellich-Leray (curl-free):     ", rellich_leray_curlfree(p).value)
