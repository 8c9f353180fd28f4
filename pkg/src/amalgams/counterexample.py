"""Sparse unions of shrinking balls separating the fractional-mean
space from weak Lorentz.

For exponents q < alpha < p, level n carries floor(2^(rho(n+1))) + 1
balls of radius 2^(-n-1) whose centers keep a same-level spacing above
gamma(1 + gamma + 2 gamma^2) 2^((n+1)q/(alpha-q)).  The indicator of
the truncated union has weak Lorentz norm lambda(E_N)^(1/alpha), which
grows without bound in N, while its weighted ball norms stay below an
explicit geometric-series constant at every truncation depth.

Centers are placed on the positive half line by greedy cumulative
offsets: consecutive gaps exceed the separation bound of the level
being placed (levels are placed in increasing order and the bound is
increasing in the level, so every same-level pair is separated), and
any cross-level pair is then far beyond the ball-disjointness threshold
gamma 2^(-min(n, m)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groups import GroupDescriptor, REAL_LINE
from .simplefn import SimpleFunction, lorentz_norm, simple_function

INF = math.inf


@dataclass(frozen=True)
class SparseUnionSpec:
    q: float
    alpha: float
    levels: int
    radii: tuple[float, ...]  # per level, 2^(-n-1)
    counts: tuple[int, ...]  # per level, floor(2^(rho(n+1))) + 1
    separations: tuple[float, ...]  # per level separation bound s_n
    centers: tuple[tuple[float, ...], ...]  # per level center coordinates


def separation_bound(g: GroupDescriptor, q: float, alpha: float, n: int) -> float:
    gam = g.gamma
    return gam * (1.0 + gam + 2.0 * gam**2) * 2.0 ** ((n + 1) * q / (alpha - q))


def level_count(g: GroupDescriptor, n: int) -> int:
    return math.floor(2.0 ** (g.rho * (n + 1))) + 1


def build_sparse_union(
    g: GroupDescriptor = REAL_LINE,
    q: float = 1.0,
    alpha: float = 2.0,
    N: int = 4,
) -> tuple[SparseUnionSpec, SimpleFunction]:
    """Construct the N-level truncation and its indicator function."""
    if g.name != "real-line":
        raise ValueError("the construction ships on the real line only")
    if not q < alpha:
        raise ValueError("need q < alpha")
    if N < 0:
        raise ValueError("level count must be >= 0")
    radii, counts, seps, centers = [], [], [], []
    cursor = 0.0
    for n in range(1, N + 1):
        rad = 2.0 ** (-n - 1)
        m = level_count(g, n)
        s = separation_bound(g, q, alpha, n)
        level_centers = []
        for _ in range(m):
            cursor += s * (1.0 + 1e-6)
            level_centers.append(cursor)
        radii.append(rad)
        counts.append(m)
        seps.append(s)
        centers.append(tuple(level_centers))
    spec = SparseUnionSpec(q, alpha, N, tuple(radii), tuple(counts), tuple(seps), tuple(centers))
    check_separations(spec, g)
    cells = [
        ((c - rad,), (c + rad,), 1.0)
        for rad, level in zip(radii, centers)
        for c in level
    ]
    return spec, simple_function(g, cells)


def check_separations(spec: SparseUnionSpec, g: GroupDescriptor) -> None:
    """Assert the same-level bounds, cross-level thresholds and ball
    disjointness on the constructed centers."""
    flat = [
        (n + 1, c, spec.radii[n])
        for n in range(spec.levels)
        for c in spec.centers[n]
    ]
    for i in range(len(flat)):
        for j in range(i + 1, len(flat)):
            ni, ci, ri = flat[i]
            nj, cj, rj = flat[j]
            dist = g.hom_norm((cj - ci,))
            if ni == nj and dist <= spec.separations[ni - 1]:
                raise ValueError(
                    f"same-level separation violated at level {ni}: {dist}"
                )
            if ni != nj and dist <= g.gamma * 2.0 ** (-min(ni, nj)):
                raise ValueError("cross-level separation threshold violated")
            if dist <= g.gamma * (ri + rj):
                raise ValueError("balls are not disjoint")


def union_measure(spec: SparseUnionSpec) -> float:
    """lambda(E_N): sum over levels of count * radius^rho (rho = 1 here)."""
    return sum(m * rad for m, rad in zip(spec.counts, spec.radii))


def weak_lorentz_of_union(f: SimpleFunction, alpha: float) -> float:
    """lambda(E_N)^(1/alpha); agrees exactly with the (alpha, inf) Lorentz norm."""
    if any(c.value != 1.0 for c in f.cells):
        raise ValueError("expected an indicator function")
    if not alpha >= 1.0 or math.isinf(alpha):
        raise ValueError("alpha must be finite and >= 1")
    lam = f.support_measure()
    value = lam ** (1.0 / alpha)
    cross = lorentz_norm(f, alpha, INF)
    if abs(cross - value) > 1e-12 * max(1.0, value):
        raise AssertionError("weak Lorentz norm mismatch against rearrangement path")
    return value


@dataclass(frozen=True)
class BoundConstants:
    c1: float
    c2: float
    c3: float
    c4: float
    decay: float  # 2^(-rho(1/alpha - 1/p)) < 1
    bound: float  # c4 * decay / (1 - decay)


def fractional_bound_constant(
    q: float, p: float, alpha: float, g: GroupDescriptor = REAL_LINE
) -> BoundConstants:
    """Exact evaluation of the geometric-series bound on the weighted
    ball norms of the truncated unions."""
    if not (1.0 <= q < alpha < p):
        raise ValueError("need 1 <= q < alpha < p")
    if math.isinf(p) or math.isinf(alpha):
        raise ValueError("p and alpha must be finite here")
    rho, gam = g.rho, g.gamma
    c1 = 2.0 ** ((1.0 + rho) / p + rho / p - rho / alpha) * gam ** (rho / p)
    c2 = max(
        gam ** (rho / p) * 2.0 ** ((rho + 1.0) / p + 1.0 / q - rho * (1.0 / alpha - 1.0 / p)),
        2.0 ** ((rho + 1.0) / p + rho / p - rho / alpha) * gam ** (rho / p),
    )
    c3 = max(c1, c2)
    c4 = 2.0 ** (-rho * (1.0 / alpha - 1.0 / q - 1.0 / p)) * c3
    decay = 2.0 ** (-rho * (1.0 / alpha - 1.0 / p))
    if decay >= 1.0:
        raise ValueError("series diverges unless alpha < p")
    return BoundConstants(c1, c2, c3, c4, decay, c4 * decay / (1.0 - decay))
