"""Pole census, threshold ladder, and trajectory tracking.

The heavy cross-check here is an independent oracle for the full pole set:
``M22(k) * sin(k) * z**(2N+1)`` with ``z = exp(ik)`` is a polynomial in z of
degree <= 4N+2, so its coefficients can be recovered exactly (to rounding) by
FFT on the unit circle and its roots enumerated by ``numpy.roots`` — no grids,
no Newton, no winding numbers shared with the implementation under test.
"""

import cmath
import math

import numpy as np
import pytest

from ptchain import (
    ChainSpec,
    OutOfRange,
    PoleClass,
    SearchRegion,
    critical_size,
    find_poles,
    first_quadrant_region,
    imaginary_branch_excluded,
    pole_residual,
    tgbs_count,
    threshold_ladder,
    trace_trajectories,
)

PI = math.pi


def _zpoly_roots(spec: ChainSpec) -> list[complex]:
    """All strip poles of the scattering denominator via the z-polynomial."""
    n = spec.n_cells
    deg = 4 * n + 2
    m = 1 << (deg + 4).bit_length()
    # half-bin shift keeps the sample points away from sin k = 0
    delta = PI / m
    k = 2.0 * PI * np.arange(m) / m + delta
    vals = pole_residual(spec, k) * np.sin(k) * np.exp(1j * k * (2 * n + 1))
    coeffs = np.fft.fft(vals) / m * np.exp(-1j * delta * np.arange(m))
    # trim the aliasing tail: everything above deg must be noise
    tail = np.max(np.abs(coeffs[deg + 1 :]))
    assert tail < 1e-8, f"z-polynomial degree bound violated (tail {tail:.2e})"
    poly = coeffs[: deg + 1][::-1]  # numpy.roots wants highest power first
    roots = np.roots(poly)
    out = []
    for z in roots:
        if abs(z) < 1e-6:  # z**(2N) factor
            continue
        if abs(z * z - 1.0) < 1e-6:  # sin k factor (k = 0, pi)
            continue
        kk = -1j * np.log(z)  # Re in (-pi, pi], Im = -ln|z|
        out.append(complex(kk))
    return out


@pytest.mark.parametrize(
    "n, gamma",
    [(1, 0.5), (2, 1.3), (3, 0.7), (5, 1.7), (8, 0.4)],
)
def test_find_poles_matches_z_polynomial_oracle(n, gamma):
    spec = ChainSpec(n, gamma)
    region = SearchRegion(-PI + 1e-4, PI - 1e-4, -1.2, 1.2)
    found = [r.k.as_complex() for r in find_poles(spec, region, grid_density=60)]

    expected = [
        z
        for z in _zpoly_roots(spec)
        if abs(z.imag) <= 1.2 - 1e-3
        and min(abs(z.real), abs(abs(z.real) - PI)) > 2e-4
    ]
    assert len(found) == len(expected)
    for z in expected:
        assert min(abs(z - f) for f in found) < 1e-6


@pytest.mark.parametrize("gamma", [1.5, 2.0, 2.9])
def test_imaginary_depth_bound(gamma):
    """No pole sits above Im k = acosh(gamma^2/2 + 1)/2 (oracle-enumerated)."""
    bound = 0.5 * math.acosh(gamma**2 / 2.0 + 1.0)
    for n in (1, 2, 4):
        roots = _zpoly_roots(ChainSpec(n, gamma))
        top = max(z.imag for z in roots)
        assert top <= bound + 1e-9
        assert first_quadrant_region(gamma).im_max >= bound


def test_find_poles_census_is_sorted_and_converged():
    recs = find_poles(ChainSpec(3, 0.3))
    keys = [(r.k.re, r.k.im) for r in recs]
    assert keys == sorted(keys)
    assert all(r.residual < 1e-10 for r in recs)


def test_tgbs_pole_location_n3():
    """The first growing state of N=3, gamma=0.7 sits at pi/2 + 0.1395i."""
    recs = find_poles(ChainSpec(3, 0.7), first_quadrant_region(0.7))
    assert len(recs) == 1
    (rec,) = recs
    assert rec.classification is PoleClass.TGBS
    assert rec.k.re == pytest.approx(0.5 * PI, abs=1e-9)
    assert rec.k.im == pytest.approx(0.13953928457328146, abs=1e-9)
    assert rec.growth_rate == pytest.approx(0.27998511760441513, abs=1e-9)
    assert rec.energy.real == pytest.approx(0.0, abs=1e-9)


def test_three_growing_states_at_gamma_two():
    recs = find_poles(ChainSpec(3, 2.0), first_quadrant_region(2.0))
    assert len(recs) == 3
    assert all(r.classification is PoleClass.TGBS for r in recs)
    assert all(r.k.re == pytest.approx(0.5 * PI, abs=1e-9) for r in recs)
    kappas = sorted(r.k.im for r in recs)
    for got, want in zip(kappas, (0.2463, 0.6140, 0.8171)):
        assert got == pytest.approx(want, abs=1e-3)


def test_grid_density_floor():
    with pytest.raises(OutOfRange):
        find_poles(ChainSpec(2, 0.5), grid_density=40)


def test_search_region_validation():
    with pytest.raises(OutOfRange):
        SearchRegion(1.0, 1.0, -1.0, 1.0)
    with pytest.raises(OutOfRange):
        SearchRegion(-4.0, 1.0, -1.0, 1.0)  # leaves the strip
    r = SearchRegion(0.1, 1.0, -1.0, 1.0)
    assert r.contains(0.5 + 0.5j)
    assert not r.contains(2.0 + 0.5j)


# ---- threshold ladder --------------------------------------------------------

def test_ladder_matches_chebyshev_root_derivation():
    """gamma_n from the T_N zeros x = cos((2n+1)pi/2N): gamma = sqrt(2+2x)."""
    for n_cells in range(1, 12):
        ladder = threshold_ladder(n_cells)
        for idx, g in enumerate(ladder.gamma_values):
            x = math.cos((2 * idx + 1) * PI / (2 * n_cells))
            assert g == pytest.approx(math.sqrt(2.0 + 2.0 * x), abs=1e-12)
        assert ladder.gamma_critical == pytest.approx(min(ladder.gamma_values), abs=1e-15)
        assert ladder.gamma_critical == pytest.approx(
            2.0 * math.sin(PI / (4 * n_cells)), abs=1e-15
        )


def test_ladder_is_strictly_descending():
    values = threshold_ladder(9).gamma_values
    assert all(a > b for a, b in zip(values, values[1:]))


def test_ladder_numeric_verification_runs():
    threshold_ladder(2, verify_numeric=True)  # raises MissedRoots on failure


def test_ladder_residual_vanishes_at_pi_over_2():
    for n_cells in (1, 3, 5):
        for g in threshold_ladder(n_cells).gamma_values:
            residual = pole_residual(ChainSpec(n_cells, g), 0.5 * PI)
            assert abs(residual) < 1e-12


@pytest.mark.parametrize(
    "gamma, expected",
    [(1.5, 1), (2.0, 1), (2.5, 1), (1.0, 2), (0.3, 6), (0.05, 32)],
)
def test_critical_size(gamma, expected):
    assert critical_size(gamma) == expected
    if gamma < 2.0:
        # the returned size is the first one whose threshold lies below gamma
        assert threshold_ladder(expected).gamma_critical < gamma
        if expected > 1:
            assert threshold_ladder(expected - 1).gamma_critical >= gamma


def test_critical_size_exact_threshold_is_not_yet_growing():
    g4 = threshold_ladder(4).gamma_critical
    assert critical_size(g4) == 5


def test_critical_size_rejects_nonpositive():
    with pytest.raises(OutOfRange):
        critical_size(0.0)
    with pytest.raises(OutOfRange):
        critical_size(-0.5)


@pytest.mark.parametrize(
    "gamma, expected", [(0.3, 0), (0.7, 1), (1.5, 2), (2.0, 3)]
)
def test_tgbs_count_closed_form(gamma, expected):
    assert tgbs_count(ChainSpec(3, gamma)) == expected


def test_tgbs_count_numeric_verification():
    assert tgbs_count(ChainSpec(3, 0.7), verify=True) == 1


# ---- trajectories -------------------------------------------------------------

def test_single_cell_trajectory_crosses_at_sqrt2():
    region = SearchRegion(1e-4, PI - 1e-4, -1.2, 1.2)
    traj = trace_trajectories(
        ChainSpec(1, 0.0), 0.0, 2.0, steps=25, region=region, grid_density=50
    )
    live = [b for b in traj.branches if len(b.points) >= 2]
    assert len(live) == 1
    (branch,) = live
    assert not branch.lost
    # the single right-half branch rides Re k = pi/2 upward
    assert all(p.k.re == pytest.approx(0.5 * PI, abs=1e-7) for _, p in branch.points)
    kappas = [p.k.im for _, p in branch.points]
    assert all(b >= a - 1e-12 for a, b in zip(kappas, kappas[1:]))

    assert len(traj.crossings) == 1
    crossing = traj.crossings[0]
    assert crossing.gamma == pytest.approx(math.sqrt(2.0), abs=1e-6)
    assert crossing.k.real == pytest.approx(0.5 * PI, abs=1e-7)


def test_degenerate_sweep_emits_single_sample():
    traj = trace_trajectories(ChainSpec(3, 0.0), 0.0, 0.0, steps=0)
    assert traj.gamma_samples == [0.0]
    assert traj.branches == []  # gamma = 0: no poles anywhere
    assert traj.crossings == []


def test_trajectory_validation():
    with pytest.raises(OutOfRange):
        trace_trajectories(ChainSpec(2, 0.0), -0.1, 1.0, steps=20)
    with pytest.raises(OutOfRange):
        trace_trajectories(ChainSpec(2, 0.0), 0.0, 1.0, steps=5)
    with pytest.raises(OutOfRange):
        trace_trajectories(ChainSpec(2, 0.0), 1.0, 0.5, steps=20)


# ---- imaginary-axis exclusion --------------------------------------------------

def test_imaginary_branch_excluded_everywhere():
    for gamma in (0.4, 1.0, 2.2):
        spec = ChainSpec(3, gamma)
        for phi in np.linspace(0.05, 3.0, 25):
            assert imaginary_branch_excluded(spec, float(phi))


def test_imaginary_branch_requires_positive_phi():
    with pytest.raises(OutOfRange):
        imaginary_branch_excluded(ChainSpec(2, 0.5), 0.0)
