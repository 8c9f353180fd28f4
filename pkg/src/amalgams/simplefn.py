"""Simple (finitely-valued, piecewise-constant) functions and their
exact Lebesgue, distribution, rearrangement and Lorentz computations.

A :class:`SimpleFunction` stores nonnegative values on pairwise-disjoint
half-open coordinate boxes; every norm in this package then reduces to a
finite closed-form sum, so there is no quadrature error in this module.
Only the modulus |f| matters for any norm in scope, hence values are
kept nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import Box, GroupDescriptor

INF = math.inf


def _check_exponent(q: float) -> float:
    q = float(q)
    if not (q >= 1.0):
        raise ValueError(f"exponent must lie in [1, inf], got {q}")
    return q


@dataclass(frozen=True)
class Cell:
    lo: tuple[float, ...]
    hi: tuple[float, ...]
    value: float
    measure: float


@dataclass(frozen=True)
class SimpleFunction:
    group: GroupDescriptor
    cells: tuple[Cell, ...]

    def support_measure(self) -> float:
        return sum(c.measure for c in self.cells if c.value > 0.0)

    def bounding_box(self) -> Box | None:
        cells = [c for c in self.cells if c.value > 0.0]
        if not cells:
            return None
        lo = [min(c.lo[i] for c in cells) for i in range(self.group.d)]
        hi = [max(c.hi[i] for c in cells) for i in range(self.group.d)]
        return tuple(zip(lo, hi))

    def is_zero(self) -> bool:
        return all(c.value == 0.0 for c in self.cells)


def boxes_overlap(lo1, hi1, lo2, hi2) -> bool:
    return all(a1 < b2 and a2 < b1 for a1, b1, a2, b2 in zip(lo1, hi1, lo2, hi2))


def box_intersection(lo1, hi1, lo2, hi2):
    lo = tuple(max(a, b) for a, b in zip(lo1, lo2))
    hi = tuple(min(a, b) for a, b in zip(hi1, hi2))
    if all(a < b for a, b in zip(lo, hi)):
        return lo, hi
    return None


def box_subtract(lo, hi, lo2, hi2) -> list[tuple[tuple, tuple]]:
    """Decompose [lo,hi) minus [lo2,hi2) into disjoint half-open boxes."""
    if not boxes_overlap(lo, hi, lo2, hi2):
        return [(tuple(lo), tuple(hi))]
    out = []
    cur_lo, cur_hi = list(lo), list(hi)
    for ax in range(len(lo)):
        if lo2[ax] > cur_lo[ax]:
            piece_hi = list(cur_hi)
            piece_hi[ax] = lo2[ax]
            out.append((tuple(cur_lo), tuple(piece_hi)))
            cur_lo[ax] = lo2[ax]
        if hi2[ax] < cur_hi[ax]:
            piece_lo = list(cur_lo)
            piece_lo[ax] = hi2[ax]
            out.append((tuple(piece_lo), tuple(cur_hi)))
            cur_hi[ax] = hi2[ax]
    return out


def simple_function(
    group: GroupDescriptor,
    cells: Iterable[tuple[Sequence[float], Sequence[float], float]],
) -> SimpleFunction:
    """Build a validated SimpleFunction from (lo, hi, value) triples."""
    built: list[Cell] = []
    for lo, hi, value in cells:
        lo = tuple(float(a) for a in lo)
        hi = tuple(float(b) for b in hi)
        if len(lo) != group.d or len(hi) != group.d:
            raise ValueError(f"cell dimension mismatch for group {group.name}")
        if not all(a < b for a, b in zip(lo, hi)):
            raise ValueError(f"degenerate cell [{lo}, {hi})")
        if not all(math.isfinite(v) for v in lo + hi):
            raise ValueError("cell bounds must be finite (bounded support)")
        value = float(value)
        if value < 0.0 or not math.isfinite(value):
            raise ValueError("cell values must be finite and >= 0")
        built.append(Cell(lo, hi, value, group.box_measure(lo, hi)))
    for i in range(len(built)):
        for j in range(i + 1, len(built)):
            if boxes_overlap(built[i].lo, built[i].hi, built[j].lo, built[j].hi):
                raise ValueError(f"cells {i} and {j} overlap")
    return SimpleFunction(group, tuple(built))


def zero_function(group: GroupDescriptor) -> SimpleFunction:
    return SimpleFunction(group, ())


def indicator(group: GroupDescriptor, lo, hi, value: float = 1.0) -> SimpleFunction:
    return simple_function(group, [(lo, hi, value)])


def lebesgue_norm(f: SimpleFunction, q: float) -> float:
    """Exact L^q norm: closed-form sum for q < inf, max value at q = inf."""
    q = _check_exponent(q)
    if math.isinf(q):
        return max((c.value for c in f.cells), default=0.0)
    total = sum(c.measure * c.value**q for c in f.cells)
    return total ** (1.0 / q)


def distribution_at(f: SimpleFunction, s: float) -> float:
    """Haar measure of the superlevel set {|f| > s}."""
    if s < 0:
        raise ValueError("distribution argument must be >= 0")
    return sum(c.measure for c in f.cells if c.value > s)


@dataclass(frozen=True)
class StepProfile:
    """A decreasing step function on [0, inf).

    ``values[i]`` is taken on [breakpoints[i], breakpoints[i+1]); the
    profile is zero past the last breakpoint.  Values are strictly
    decreasing after canonicalization, which makes the profile the
    unique decreasing rearrangement of its equivalence class.
    """

    breakpoints: tuple[float, ...]  # t_0 = 0 < t_1 < ... < t_k
    values: tuple[float, ...]  # v_1 > v_2 > ... > v_k > 0

    def distribution(self, s: float) -> float:
        t = 0.0
        for i, v in enumerate(self.values):
            if v > s:
                t = self.breakpoints[i + 1]
        return t

    def total_measure(self) -> float:
        return self.breakpoints[-1] if self.values else 0.0

    def sup(self) -> float:
        return self.values[0] if self.values else 0.0


def rearrangement(f: SimpleFunction) -> StepProfile:
    """Decreasing rearrangement f*, canonicalized (equal values merged)."""
    weighted = sorted(
        ((c.value, c.measure) for c in f.cells if c.value > 0.0), reverse=True
    )
    breakpoints = [0.0]
    values: list[float] = []
    for v, m in weighted:
        if values and v == values[-1]:
            breakpoints[-1] += m
        else:
            values.append(v)
            breakpoints.append(breakpoints[-1] + m)
    return StepProfile(tuple(breakpoints), tuple(values))


def lorentz_norm(f: SimpleFunction, q: float, p: float) -> float:
    """Lorentz functional of f computed from its rearrangement.

    Finite q, p: ((p/q) * integral of (t^(1/q) f*(t))^p dt/t)^(1/p),
    evaluated per step in closed form.  q < p = inf: sup of t^(1/q)
    f*(t).  q = p = inf: sup of f*.  The combination q = inf, p < inf is
    rejected (undefined).
    """
    q = _check_exponent(q)
    p = _check_exponent(p)
    if math.isinf(q) and not math.isinf(p):
        raise ValueError("lorentz_norm is undefined for q = inf, p < inf")
    prof = rearrangement(f)
    if not prof.values:
        return 0.0
    if math.isinf(p):
        if math.isinf(q):
            return prof.sup()
        return max(
            v * prof.breakpoints[i + 1] ** (1.0 / q)
            for i, v in enumerate(prof.values)
        )
    s = p / q
    total = 0.0
    for i, v in enumerate(prof.values):
        t0, t1 = prof.breakpoints[i], prof.breakpoints[i + 1]
        total += v**p * (t1**s - t0**s)
    return total ** (1.0 / p)


def scale(f: SimpleFunction, factor: float) -> SimpleFunction:
    """|factor| * f (values are moduli, so the sign is dropped)."""
    a = abs(float(factor))
    return SimpleFunction(
        f.group, tuple(Cell(c.lo, c.hi, a * c.value, c.measure) for c in f.cells)
    )


def pointwise_combine(
    f: SimpleFunction,
    g: SimpleFunction | None = None,
    *,
    op: str,
    factor: float | None = None,
) -> SimpleFunction:
    """Exact pointwise product / sum / scalar multiple on the common refinement."""
    if op == "scale":
        if factor is None:
            raise ValueError("op='scale' requires factor")
        return scale(f, factor)
    if g is None:
        raise ValueError(f"op={op!r} requires a second function")
    if f.group is not g.group and f.group.name != g.group.name:
        raise ValueError("functions live on different groups")
    group = f.group
    out: list[tuple[tuple, tuple, float]] = []
    if op == "product":
        for cf in f.cells:
            for cg in g.cells:
                inter = box_intersection(cf.lo, cf.hi, cg.lo, cg.hi)
                if inter is not None:
                    v = cf.value * cg.value
                    if v > 0.0:
                        out.append((inter[0], inter[1], v))
        return simple_function(group, out)
    if op == "sum":
        for cf in f.cells:
            for cg in g.cells:
                inter = box_intersection(cf.lo, cf.hi, cg.lo, cg.hi)
                if inter is not None:
                    out.append((inter[0], inter[1], cf.value + cg.value))
        for a, b in ((f, g), (g, f)):
            for ca in a.cells:
                pieces = [(ca.lo, ca.hi)]
                for cb in b.cells:
                    pieces = [
                        sub
                        for lo, hi in pieces
                        for sub in box_subtract(lo, hi, cb.lo, cb.hi)
                    ]
                out.extend((lo, hi, ca.value) for lo, hi in pieces)
        return simple_function(group, out)
    raise ValueError(f"unknown op {op!r}")


def restrict_to_box(f: SimpleFunction, lo, hi) -> SimpleFunction:
    out = []
    for c in f.cells:
        inter = box_intersection(c.lo, c.hi, tuple(lo), tuple(hi))
        if inter is not None:
            out.append((inter[0], inter[1], c.value))
    return simple_function(f.group, out)
