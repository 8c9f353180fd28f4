import math

import numpy as np
import pytest

from amalgams.amalgam import ball_norm, compute_norm, conv_q_indicator, partition_norm
from amalgams.fracmean import partition_for
from amalgams.groups import ANISO_PLANE, HEISENBERG, REAL_LINE
from amalgams.partitions import build_pi_r
from amalgams.simplefn import lebesgue_norm, simple_function, zero_function
from amalgams.verify import gen_random_simple

INF = math.inf


def line_fn(*cells):
    return simple_function(REAL_LINE, [((lo,), (hi,), v) for lo, hi, v in cells])


def test_partition_norm_two_aligned_cells():
    # unit-measure cells need r = 4 (cell Euclidean length 2)
    f = line_fn((0.0, 4.0, 1.0))
    part = build_pi_r(REAL_LINE, 4.0, ((-4.0, 8.0),))
    for q in (1.0, 2.0, INF):
        for p in (1.0, 2.0, 4.0):
            assert partition_norm(f, part, q, p) == pytest.approx(
                2.0 ** (1.0 / p), rel=1e-12
            )
        assert partition_norm(f, part, q, INF) == pytest.approx(1.0, rel=1e-12)


def test_partition_norm_single_cell_support():
    f = line_fn((0.1, 0.4, 2.0))
    part = build_pi_r(REAL_LINE, 1.0, ((-2.0, 2.0),))
    for p in (1.0, 3.0, INF):
        assert partition_norm(f, part, 2.0, p) == pytest.approx(
            lebesgue_norm(f, 2.0), rel=1e-12
        )


@pytest.mark.parametrize("g", [REAL_LINE, ANISO_PLANE, HEISENBERG], ids=lambda g: g.name)
def test_diagonal_identity_all_groups(g):
    window = tuple((-2.0, 2.0) for _ in range(g.d))
    for i in range(10):
        f = gen_random_simple(50 + i, 1 + i % 6, window, g)
        r = 2.0 ** (i % 4 - 1)
        part = partition_for(f, g, r)
        for p in (1.0, 1.5, 2.0, INF):
            assert partition_norm(f, part, p, p) == pytest.approx(
                lebesgue_norm(f, p), rel=1e-11
            )


def test_partition_norm_window_guard():
    f = line_fn((0.0, 4.0, 1.0))
    part = build_pi_r(REAL_LINE, 1.0, ((-1.0, 1.0),))
    with pytest.raises(ValueError):
        partition_norm(f, part, 1.0, 1.0)


def test_conv_q_indicator_examples():
    f = line_fn((0.0, 1.0, 1.0))  # lambda-measure 1/2
    # ball covering the support
    assert conv_q_indicator(f, 1.0, 10.0, (0.5,)) == pytest.approx(0.5)
    # far away: distance beyond gamma (r + diam)
    assert conv_q_indicator(f, 1.0, 1.0, (5.0,)) == 0.0
    # overlap [0,1) ^ (-1,1) has lambda-measure 1/2
    assert conv_q_indicator(f, 1.0, 1.0, (0.0,)) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        conv_q_indicator(f, INF, 1.0, (0.0,))
    with pytest.raises(ValueError):
        conv_q_indicator(f, 1.0, -1.0, (0.0,))


def test_conv_q_indicator_continuity_modulus():
    f = line_fn((0.0, 1.0, 2.0), (1.5, 2.0, 1.0))
    q = 2.0
    lip = sum(c.value**q for c in f.cells)  # |phi'| <= sum v^q * scale * 2
    for h in (0.05, 0.01):
        xs = np.arange(-2.0, 4.0, h)
        vals = [conv_q_indicator(f, q, 0.8, (float(x),)) for x in xs]
        jumps = np.abs(np.diff(vals))
        assert jumps.max() <= lip * h * (1 + 1e-9)


def test_ball_norm_fubini_line():
    for i in range(20):
        f = gen_random_simple(900 + i, 1 + i % 8, ((-4.0, 4.0),), REAL_LINE)
        for q in (1.0, 2.0, 3.0):
            r = 2.0 ** (i % 5 - 2)
            bn = ball_norm(f, REAL_LINE, r, q, q)
            assert bn == pytest.approx(
                r ** (1.0 / q) * lebesgue_norm(f, q), rel=1e-9
            )


def test_ball_norm_sup_example():
    # chi of lambda-measure 1/2 on [0,1); window of lambda-measure 1/4
    f = line_fn((0.0, 1.0, 1.0))
    assert ball_norm(f, REAL_LINE, 0.25, 1.0, INF) == pytest.approx(0.25, rel=1e-12)


def test_ball_norm_zero_and_guards():
    assert ball_norm(zero_function(REAL_LINE), REAL_LINE, 1.0, 2.0, 2.0) == 0.0
    f = line_fn((0.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        ball_norm(f, REAL_LINE, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        ball_norm(f, HEISENBERG, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        ball_norm(f, REAL_LINE, 1.0, 1.0, 1.0, mesh=-0.5)


def test_ball_norm_infinite_q_line():
    f = line_fn((0.0, 1.0, 2.0), (3.0, 4.0, 5.0))
    # p = inf: global sup; p finite: integrates the step max-profile
    assert ball_norm(f, REAL_LINE, 0.5, INF, INF) == 5.0
    v = ball_norm(f, REAL_LINE, 0.5, INF, 1.0)
    # profile: 2 on (-.5, 1.5), 5 on (2.5, 4.5): lambda-integral = 2 + 5
    assert v == pytest.approx(2.0 * 1.0 + 5.0 * 1.0, rel=1e-12)


def test_ball_norm_doubling_radius_bounded():
    for i in range(10):
        f = gen_random_simple(700 + i, 1 + i % 6, ((-4.0, 4.0),), REAL_LINE)
        for q, p in ((1.0, 2.0), (2.0, INF)):
            r = 0.7
            ratio = ball_norm(f, REAL_LINE, 2 * r, q, p) / ball_norm(
                f, REAL_LINE, r, q, p
            )
            assert ratio <= 3.0 * (1 + 1e-9)


@pytest.mark.parametrize("g", [ANISO_PLANE, HEISENBERG], ids=lambda g: g.name)
def test_ball_norm_quadrature_fubini(g):
    window = tuple((-1.0, 1.0) for _ in range(g.d))
    f = gen_random_simple(41, 2, window, g)
    for r in (1.0, 3.0):
        bn = ball_norm(f, g, r, 2.0, 2.0, mesh=r / 8.0)
        exact = g.ball_measure(r) ** 0.5 * lebesgue_norm(f, 2.0)
        assert bn == pytest.approx(exact, rel=0.02)


def test_compute_norm_method_labels():
    f = line_fn((0.0, 1.0, 1.0))
    res = compute_norm(f, REAL_LINE, "partition", 1.0, 2.0, 1.0)
    assert res.method == "exact" and res.mesh is None
    res = compute_norm(f, REAL_LINE, "ball", 1.0, 2.0, 1.0)
    assert res.method == "exact"
    g = HEISENBERG
    fh = gen_random_simple(3, 1, tuple((-1.0, 1.0) for _ in range(3)), g)
    assert compute_norm(fh, g, "partition", 1.0, 2.0, 1.0).method == "cellsum"
    resb = compute_norm(fh, g, "ball", 1.0, 2.0, 1.0)
    assert resb.method == "quadrature" and resb.mesh == pytest.approx(1.0 / 3.0)
    assert resb.note is None
    noted = compute_norm(fh, g, "ball", 1.0, INF, 1.0)
    assert noted.note is not None  # mesh max stands in for the essential sup
    with pytest.raises(ValueError):
        compute_norm(f, REAL_LINE, "spectral", 1.0, 1.0, 1.0)


def test_conv_q_indicator_heisenberg_quadrature():
    g = HEISENBERG
    fh = gen_random_simple(21, 2, tuple((-0.5, 0.5) for _ in range(3)), g)
    # a huge ball swallows the support: integral = ||f||_q^q
    total = conv_q_indicator(fh, 2.0, 50.0, g.identity(), mesh=64)
    assert total == pytest.approx(lebesgue_norm(fh, 2.0) ** 2, rel=0.01)
