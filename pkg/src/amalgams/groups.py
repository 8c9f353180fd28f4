"""Concrete homogeneous groups.

Each instance bundles a group law, a homogeneous (quasi-)norm compatible
with its dilations, and a Haar normalization chosen so that the ball
B(e, r) has measure exactly r**rho, where rho is the homogeneous
dimension (the sum of the dilation exponents).  Three instances ship:

* ``real-line``   -- (R, +), norm |x|, rho = 1.
* ``aniso-plane`` -- (R^2, +) with dilations (r, r^2) and norm
  max(|x1|, |x2|^(1/2)), rho = 3.
* ``heisenberg``  -- R^3 with the step-2 nilpotent law and the gauge
  ((x^2 + y^2)^2 + 16 t^2)^(1/4), rho = 4.

All three norms satisfy the plain triangle inequality (gamma = 1); the
stored gamma is still carried through every constant so that the code
remains correct for gamma > 1 instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

Point = tuple[float, ...]
Box = tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class GroupDescriptor:
    """A concrete homogeneous group with normalized Haar measure.

    ``measure_scale`` multiplies d-dimensional Lebesgue volume; it is
    fixed per instance so that ``ball_measure(r) == r**rho`` exactly.
    Instances are immutable and all operations are pure.
    """

    name: str
    d: int
    dilation_exponents: tuple[float, ...]
    gamma: float
    measure_scale: float
    compose_fn: Callable[[Point, Point], Point]
    invert_fn: Callable[[Point], Point]
    norm_fn: Callable[[Point], float]

    @property
    def rho(self) -> float:
        return float(sum(self.dilation_exponents))

    def identity(self) -> Point:
        return (0.0,) * self.d

    def _check_point(self, x: Point) -> Point:
        if len(x) != self.d:
            raise ValueError(
                f"{self.name}: expected {self.d} coordinates, got {len(x)}"
            )
        if not all(math.isfinite(c) for c in x):
            raise ValueError(f"{self.name}: non-finite coordinate in {x}")
        return tuple(float(c) for c in x)

    def compose(self, x: Point, y: Point) -> Point:
        return self.compose_fn(self._check_point(x), self._check_point(y))

    def invert(self, x: Point) -> Point:
        return self.invert_fn(self._check_point(x))

    def hom_norm(self, x: Point) -> float:
        return self.norm_fn(self._check_point(x))

    def dilate(self, r: float, x: Point) -> Point:
        if r <= 0:
            raise ValueError("dilation parameter must be positive")
        x = self._check_point(x)
        return tuple(c * r**a for c, a in zip(x, self.dilation_exponents))

    def ball_measure(self, r: float) -> float:
        """Haar measure of B(e, r); equals r**rho by normalization."""
        if r <= 0:
            raise ValueError("ball radius must be positive")
        return float(r) ** self.rho

    def box_measure(self, lo: Iterable[float], hi: Iterable[float]) -> float:
        """Haar measure of the half-open coordinate box [lo, hi)."""
        vol = 1.0
        for a, b in zip(lo, hi):
            vol *= max(0.0, b - a)
        return self.measure_scale * vol

    def distance(self, x: Point, y: Point) -> float:
        return self.hom_norm(self.compose(self.invert(x), y))


def _line_compose(x: Point, y: Point) -> Point:
    return (x[0] + y[0],)


def _line_invert(x: Point) -> Point:
    return (-x[0],)


def _line_norm(x: Point) -> float:
    return abs(x[0])


def _plane_compose(x: Point, y: Point) -> Point:
    return (x[0] + y[0], x[1] + y[1])


def _plane_invert(x: Point) -> Point:
    return (-x[0], -x[1])


def _plane_norm(x: Point) -> float:
    return max(abs(x[0]), math.sqrt(abs(x[1])))


def _heis_compose(x: Point, y: Point) -> Point:
    return (
        x[0] + y[0],
        x[1] + y[1],
        x[2] + y[2] + 0.5 * (x[0] * y[1] - x[1] * y[0]),
    )


def _heis_invert(x: Point) -> Point:
    return (-x[0], -x[1], -x[2])


def _heis_norm(x: Point) -> float:
    return ((x[0] ** 2 + x[1] ** 2) ** 2 + 16.0 * x[2] ** 2) ** 0.25


REAL_LINE = GroupDescriptor(
    name="real-line",
    d=1,
    dilation_exponents=(1.0,),
    gamma=1.0,
    # Lebesgue length of (-r, r) is 2r; scale 1/2 gives ball measure r.
    measure_scale=0.5,
    compose_fn=_line_compose,
    invert_fn=_line_invert,
    norm_fn=_line_norm,
)

ANISO_PLANE = GroupDescriptor(
    name="aniso-plane",
    d=2,
    dilation_exponents=(1.0, 2.0),
    # Subadditivity of max(|.|, sqrt|.|) gives gamma = 1; confirmed by
    # the sampled estimate in the test suite.
    gamma=1.0,
    # B(e,1) is the box (-1,1) x (-1,1) of volume 4.
    measure_scale=0.25,
    compose_fn=_plane_compose,
    invert_fn=_plane_invert,
    norm_fn=_plane_norm,
)

HEISENBERG = GroupDescriptor(
    name="heisenberg",
    d=3,
    dilation_exponents=(1.0, 1.0, 2.0),
    gamma=1.0,
    # B(e,1) has volume pi^2/8 under this gauge.
    measure_scale=8.0 / math.pi**2,
    compose_fn=_heis_compose,
    invert_fn=_heis_invert,
    norm_fn=_heis_norm,
)

GROUPS: dict[str, GroupDescriptor] = {
    g.name: g for g in (REAL_LINE, ANISO_PLANE, HEISENBERG)
}


def get_group(name: str) -> GroupDescriptor:
    try:
        return GROUPS[name]
    except KeyError:
        raise ValueError(
            f"unknown group {name!r}; choose from {sorted(GROUPS)}"
        ) from None


def sample_points(g: GroupDescriptor, n: int, extent: float, seed: int) -> np.ndarray:
    """Deterministic batch of points in [-extent, extent]^d, shape (n, d)."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-extent, extent, size=(n, g.d))


def estimate_gamma(g: GroupDescriptor, n_pairs: int = 10_000, seed: int = 7) -> float:
    """Sampled sup of |xy| / (|x| + |y|); a lower estimate of gamma."""
    xs = sample_points(g, n_pairs, 5.0, seed)
    ys = sample_points(g, n_pairs, 5.0, seed + 1)
    worst = 0.0
    for x, y in zip(xs, ys):
        xt, yt = tuple(x), tuple(y)
        denom = g.hom_norm(xt) + g.hom_norm(yt)
        if denom > 0:
            worst = max(worst, g.hom_norm(g.compose(xt, yt)) / denom)
    return worst


def ball_measure_quadrature(
    g: GroupDescriptor, r: float, center: Point | None = None, mesh: int = 256
) -> float:
    """Midpoint-quadrature Haar measure of the ball center.B(e, r).

    The last coordinate is integrated in closed form (the section length
    of the ball does not depend on the group twist), the remaining
    coordinates by midpoint rule with ``mesh`` points per axis.
    """
    if r <= 0:
        raise ValueError("ball radius must be positive")
    if center is None:
        center = g.identity()
    if g.d == 1:
        h = 2.0 * r / mesh
        xs = center[0] - r + (np.arange(mesh) + 0.5) * h
        inside = np.abs(xs - center[0]) < r
        return float(g.measure_scale * h * inside.sum())
    if g.name == "aniso-plane":
        h = 2.0 * r / mesh
        xs = center[0] - r + (np.arange(mesh) + 0.5) * h
        sect = np.where(np.abs(xs - center[0]) < r, 2.0 * r * r, 0.0)
        return float(g.measure_scale * h * sect.sum())
    if g.name == "heisenberg":
        h = 2.0 * r / mesh
        w = -r + (np.arange(mesh) + 0.5) * h
        W1, W2 = np.meshgrid(w, w, indexing="ij")
        s = W1**2 + W2**2
        sect = np.where(s < r * r, 0.5 * np.sqrt(np.maximum(r**4 - s**2, 0.0)), 0.0)
        return float(g.measure_scale * h * h * sect.sum())
    raise ValueError(f"no quadrature rule for group {g.name!r}")
