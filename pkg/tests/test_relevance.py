"""Physicality verdicts, special scattering points, and size scans."""

import math

import pytest

from ptchain import (
    BlochRegime,
    ChainSpec,
    OutOfRange,
    RelevanceRegime,
    SpecialPointKind,
    band_edge_points,
    cpa_laser_points,
    evanescent_decay_reference,
    fabry_perot_points,
    scatter,
    threshold_ladder,
    transmission_vs_size,
    verdict,
)


def test_verdict_regimes():
    assert verdict(ChainSpec(3, 0.3)).regime is RelevanceRegime.RELEVANT
    assert verdict(ChainSpec(3, 0.7)).regime is RelevanceRegime.UNPHYSICAL
    assert verdict(ChainSpec(10, 0.1)).regime is RelevanceRegime.RELEVANT
    gc = threshold_ladder(3).gamma_critical
    assert verdict(ChainSpec(3, gc)).regime is RelevanceRegime.CRITICAL_SINGULARITY


def test_verdict_counts_and_margin():
    v = verdict(ChainSpec(3, 1.5))
    assert v.regime is RelevanceRegime.UNPHYSICAL
    assert v.tgbs_count == 2
    assert v.margin == pytest.approx(threshold_ladder(3).gamma_critical - 1.5)
    assert verdict(ChainSpec(3, 0.3)).tgbs_count == 0


def test_band_edge_points_predictions():
    spec = ChainSpec(1, 1.0)
    points = band_edge_points(spec)
    assert len(points) == 2
    energies = sorted(p.energy for p in points)
    assert energies == pytest.approx([-math.sqrt(3.0), math.sqrt(3.0)], abs=1e-12)
    for p in points:
        assert p.kind is SpecialPointKind.BAND_EDGE_ATR
        assert p.physical  # gamma = 1 < gamma_c(1) = sqrt(2)
        res = scatter(spec, p.k)
        assert res.T == pytest.approx(1.0, abs=1e-9)
        assert res.R_right <= 1e-18
        # one-sided reflection 4 N^2 gamma^2
        assert res.R_left == pytest.approx(4.0, abs=1e-6)


def test_band_edge_gamma_window():
    with pytest.raises(OutOfRange):
        band_edge_points(ChainSpec(2, 2.0))
    with pytest.warns(UserWarning):
        assert band_edge_points(ChainSpec(2, 0.0)) == []


def test_fabry_perot_points_joint_zeros():
    spec = ChainSpec(2, 1.0)
    points = fabry_perot_points(spec)
    assert sorted(p.energy for p in points) == pytest.approx([-1.0, 1.0], abs=1e-12)
    for p in points:
        assert p.kind is SpecialPointKind.FABRY_PEROT
        assert p.n_index == 1
        assert not p.physical  # gamma = 1 > gamma_c(2) ~ 0.765
        res = scatter(spec, p.k)
        assert res.T == pytest.approx(1.0, abs=1e-9)
        assert res.R_left <= 1e-18 and res.R_right <= 1e-18


def test_fabry_perot_count_drops_in_evanescent_window():
    # N=4: m = 1..3 exist at gamma = 0.2; large gamma removes outer ones
    assert len(fabry_perot_points(ChainSpec(4, 0.2))) == 6
    points = fabry_perot_points(ChainSpec(4, 1.6))
    ms = sorted({p.n_index for p in points})
    assert ms == [1]  # 4 cos^2(m pi/8) < gamma^2 already for m = 2
    assert fabry_perot_points(ChainSpec(1, 0.5)) == []


def test_cpa_laser_points_ladder():
    points = cpa_laser_points(3)
    assert len(points) == 3
    assert all(p.k == pytest.approx(0.5 * math.pi) for p in points)
    assert all(p.energy == 0.0 for p in points)
    gammas = [p.gamma for p in points]
    assert gammas == pytest.approx(list(threshold_ladder(3).gamma_values))
    physical = [p for p in points if p.physical]
    assert len(physical) == 1
    assert physical[0].gamma == pytest.approx(threshold_ladder(3).gamma_critical)


def test_transmission_vs_size_propagating_quasiperiod():
    scan = transmission_vs_size(0.3, 1.93, 60)
    assert scan.rows[0].regime is BlochRegime.PROPAGATING
    assert scan.log_slope is None
    assert scan.quasiperiod == pytest.approx(7.26, abs=0.15)
    # physicality flips once N reaches the critical size 6
    flags = [r.physical for r in scan.rows]
    assert flags[:5] == [True] * 5
    assert not any(flags[5:])


def test_transmission_vs_size_evanescent_slope():
    scan = transmission_vs_size(0.3, 1.98, 80)
    assert scan.rows[0].regime is BlochRegime.EVANESCENT
    assert scan.quasiperiod is None
    reference = evanescent_decay_reference(0.3, 1.98)
    assert reference == pytest.approx(4 * 0.0509682, abs=1e-5)
    assert scan.log_slope == pytest.approx(-reference, rel=0.01)


def test_transmission_vs_size_validation():
    with pytest.raises(OutOfRange):
        transmission_vs_size(0.0, 1.5, 10)
    with pytest.raises(OutOfRange):
        transmission_vs_size(0.3, 2.5, 10)
    with pytest.raises(OutOfRange):
        transmission_vs_size(0.3, 1.5, 0)
