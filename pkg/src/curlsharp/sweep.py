"""Float64 mirror of the sharp-constant formulas, for parameter sweeps.

Every formula from `constants` is re-stated here in plain floating point
(same branch logic, same scan windows) so gamma grids can be swept
quickly.  The exact path is authoritative; the mirror is tested against
it to 1e-12 relative on rational grid points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def lam_of(N: int, gamma: float) -> float:
    return 2.0 - N / 2.0 - gamma


def alpha_f(s: float, N: int) -> float:
    return s * (s + N - 2)


def hardy_leray_f(N: int, gamma: float) -> float:
    base = (gamma + N / 2.0 - 1.0) ** 2
    if (gamma + N / 2.0) ** 2 <= N + 1:
        shift = (gamma + N / 2.0 - 2.0) ** 2
        return base * (3.0 * (N - 1) + shift) / (N - 1 + shift)
    return base + N - 1


def rellich_hardy_A_f(N: int, gamma: float, nu: int) -> float:
    if nu == 0:
        return (gamma - N / 2.0) ** 2
    anu = alpha_f(nu, N)
    return ((gamma - 1.0) ** 2 - (nu + N / 2.0 - 1.0) ** 2) ** 2 \
        / ((gamma + N / 2.0 - 2.0) ** 2 + anu)


def rellich_hardy_C_f(N: int, gamma: float, nu: int) -> float:
    if nu == 0:
        return ((gamma - 1.0) ** 2 - N * N / 4.0) ** 2 \
            / ((gamma + N / 2.0 - 2.0) ** 2 + N - 1)
    if nu == 1:
        return (gamma - N / 2.0 - 2.0) ** 2 \
            * ((gamma + N / 2.0 - 1.0) ** 2 + N - 1) \
            / ((gamma + N / 2.0 - 3.0) ** 2 + 3.0 * (N - 1))
    anu = alpha_f(nu, N)
    quart = ((gamma - 2.0) ** 2 - (nu + N / 2.0 - 1.0) ** 2) ** 2
    den = quart + 2.0 * (gamma - 1.0) * ((2.0 * gamma + N - 5.0) * anu
                                         + (N - 1) * (gamma + N / 2.0 - 3.0) ** 2)
    return quart * ((gamma + N / 2.0 - 1.0) ** 2 + anu) / den


def _nu_max(N: int, gamma: float) -> int:
    return int(math.ceil(abs(gamma))) + N + 16


def rellich_hardy_A_min_f(N: int, gamma: float) -> tuple[float, int]:
    hi = _nu_max(N, gamma)
    vals = [rellich_hardy_A_f(N, gamma, nu) for nu in range(hi + 1)]
    v = min(vals)
    return v, vals.index(v)


def rellich_hardy_C_min_f(N: int, gamma: float) -> tuple[float, int]:
    hi = _nu_max(N, gamma)
    vals = [rellich_hardy_C_f(N, gamma, nu) for nu in range(hi + 1)]
    v = min(vals)
    return v, vals.index(v)


def in_improvement_region_f(N: int, gamma: float) -> bool:
    return (6.0 * gamma - (N + 4.0)) ** 2 < 4.0 * (N * N - N + 1)


@dataclass(frozen=True)
class SweepRow:
    N: int
    gamma: float
    A_min: float
    A_argmin: int
    C_min: float
    C_argmin: int
    equal: bool
    in_improvement_region: bool


def sweep_gamma(N: int, gammas, rel_tol: float = 1e-12) -> list[SweepRow]:
    """C/A minima over a gamma grid at fixed N (float path).

    `equal` means the float values agree to rel_tol relative, which on
    rational grid points coincides with exact equality.
    """
    rows = []
    for g in gammas:
        a, na = rellich_hardy_A_min_f(N, g)
        c, nc = rellich_hardy_C_min_f(N, g)
        scale = max(abs(a), abs(c), 1.0)
        rows.append(SweepRow(
            N=N, gamma=float(g), A_min=a, A_argmin=na, C_min=c, C_argmin=nc,
            equal=abs(c - a) <= rel_tol * scale,
            in_improvement_region=in_improvement_region_f(N, g),
        ))
    return rows
