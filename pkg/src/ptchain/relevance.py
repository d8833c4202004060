"""Physical relevance of stationary results, and special scattering points.

A chain with at least one first-quadrant pole hosts a time-growing bound
state: every time-independent scattering coefficient is then formally
computable but physically meaningless. This module packages that verdict and
the derived analyses: band-edge anisotropic transmission resonances,
Fabry-Perot (bidirectional reflectionless) resonances, CPA-laser points, and
transmission-vs-size regime scans.

Formulas are always evaluated; results carry a ``physical`` flag rather than
being suppressed.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange
from .model import (
    BlochRegime,
    ChainSpec,
    bloch_index,
    classify_bloch_regime,
    energy_to_wavenumber,
)
from .poles import threshold_ladder
from .scattering import transmission_closed_form

__all__ = [
    "RelevanceRegime",
    "RelevanceVerdict",
    "SpecialPointKind",
    "SpecialPoint",
    "SizeScanRow",
    "SizeScan",
    "verdict",
    "band_edge_points",
    "fabry_perot_points",
    "cpa_laser_points",
    "transmission_vs_size",
    "evanescent_decay_reference",
]

#: Relative tolerance on gamma vs gamma_c for the regime boundary.
VERDICT_TOL = 1e-9


class RelevanceRegime(enum.Enum):
    RELEVANT = "Relevant"
    CRITICAL_SINGULARITY = "CriticalSingularity"
    UNPHYSICAL = "Unphysical"


@dataclass(frozen=True)
class RelevanceVerdict:
    """Whether stationary scattering results are physically meaningful."""

    spec: ChainSpec
    regime: RelevanceRegime
    gamma_critical: float
    tgbs_count: int
    margin: float  # gamma_critical - gamma


def verdict(spec: ChainSpec) -> RelevanceVerdict:
    """Classify ``gamma`` against the critical threshold of this chain size."""
    ladder = threshold_ladder(spec.n_cells)
    gc = ladder.gamma_critical
    tol = VERDICT_TOL * gc
    if spec.gamma < gc - tol:
        regime = RelevanceRegime.RELEVANT
    elif spec.gamma > gc + tol:
        regime = RelevanceRegime.UNPHYSICAL
    else:
        regime = RelevanceRegime.CRITICAL_SINGULARITY
    count = sum(1 for g in ladder.gamma_values if g < spec.gamma)
    return RelevanceVerdict(
        spec=spec,
        regime=regime,
        gamma_critical=gc,
        tgbs_count=count,
        margin=gc - spec.gamma,
    )


class SpecialPointKind(enum.Enum):
    BAND_EDGE_ATR = "BandEdgeATR"
    FABRY_PEROT = "FabryPerot"
    CPA_LASER = "CpaLaser"


@dataclass(frozen=True)
class SpecialPoint:
    """A distinguished scattering point with its physicality flag.

    ``energy``/``k`` locate the point on the real axis; ``gamma`` is the
    gain/loss strength it belongs to (the chain's own for band-edge and
    Fabry-Perot points, the ladder value for CPA-laser points);
    ``n_index`` is the resonance/ladder index where applicable.
    """

    kind: SpecialPointKind
    energy: float
    k: float
    gamma: float
    physical: bool
    n_index: int | None = None


def band_edge_points(spec: ChainSpec) -> list[SpecialPoint]:
    """Anisotropic transmission resonances at the band edges ``E = ±sqrt(4-g^2)``.

    At these points ``T = 1`` with right reflection exactly zero and left
    reflection ``4 N^2 gamma^2``. For ``gamma = 0`` the points degenerate
    onto the lead band edges ``k in {0, pi}`` outside the open scattering
    interval: an empty list is returned with a warning.
    """
    g = spec.gamma
    if g >= 2.0:
        raise OutOfRange(f"band edges leave the real energy axis for gamma >= 2 (got {g!r})")
    if g == 0.0:
        warnings.warn(
            "gamma = 0: band-edge points sit at k in {0, pi}, outside the open "
            "scattering interval; returning no points",
            stacklevel=2,
        )
        return []
    physical = verdict(spec).regime is RelevanceRegime.RELEVANT
    out = []
    for sign in (+1.0, -1.0):
        e = sign * math.sqrt(4.0 - g * g)
        out.append(
            SpecialPoint(
                kind=SpecialPointKind.BAND_EDGE_ATR,
                energy=e,
                k=energy_to_wavenumber(e),
                gamma=g,
                physical=physical,
            )
        )
    return out


def fabry_perot_points(spec: ChainSpec) -> list[SpecialPoint]:
    """Bidirectional reflectionless resonances ``E = ±sqrt(4 cos^2(m pi/2N) - g^2)``.

    Exist for ``m = 1..N-1`` whenever the radicand is positive; both
    reflections vanish identically and ``T = 1``. ``N = 1`` has none.
    """
    n, g = spec.n_cells, spec.gamma
    if n < 2:
        return []
    physical = verdict(spec).regime is RelevanceRegime.RELEVANT
    out = []
    for m in range(1, n):
        c = 4.0 * math.cos(m * math.pi / (2 * n)) ** 2
        if c <= g * g:
            continue  # evanescent: no real resonance energy
        for sign in (+1.0, -1.0):
            e = sign * math.sqrt(c - g * g)
            out.append(
                SpecialPoint(
                    kind=SpecialPointKind.FABRY_PEROT,
                    energy=e,
                    k=energy_to_wavenumber(e),
                    gamma=g,
                    physical=physical,
                    n_index=m,
                )
            )
    return out


def cpa_laser_points(n_cells: int) -> list[SpecialPoint]:
    """The N simultaneous coherent-perfect-absorber/laser points at ``k = pi/2``.

    One per ladder value; only the lowest (``gamma = gamma_c``, the last
    index) is physically reachable — all others are masked by time-growing
    bound states.
    """
    ladder = threshold_ladder(n_cells)
    return [
        SpecialPoint(
            kind=SpecialPointKind.CPA_LASER,
            energy=0.0,
            k=0.5 * math.pi,
            gamma=g,
            physical=(n == n_cells - 1),
            n_index=n,
        )
        for n, g in enumerate(ladder.gamma_values)
    ]


@dataclass(frozen=True)
class SizeScanRow:
    n_cells: int
    transmission: float
    regime: BlochRegime
    physical: bool


@dataclass(frozen=True)
class SizeScan:
    """Transmission vs chain size at fixed (gamma, energy).

    ``quasiperiod`` is the mean spacing (in cells) of the T(N) minima in the
    propagating regime; ``log_slope`` is the fitted asymptotic slope of
    ``ln T(N)`` in the evanescent regime (approaches ``-4 Im mu``). Either is
    None when not applicable or not measurable from the scanned range.
    """

    gamma: float
    energy: float
    rows: list[SizeScanRow]
    quasiperiod: float | None
    log_slope: float | None


def _oscillation_quasiperiod(t_values: np.ndarray) -> float | None:
    """Mean spacing of local minima, refined by parabolic interpolation."""
    positions = []
    for i in range(1, len(t_values) - 1):
        if t_values[i] < t_values[i - 1] and t_values[i] <= t_values[i + 1]:
            a, b, c = t_values[i - 1], t_values[i], t_values[i + 1]
            denom = a - 2 * b + c
            shift = 0.5 * (a - c) / denom if denom != 0 else 0.0
            positions.append(i + shift)
    if len(positions) < 2:
        return None
    return float(np.mean(np.diff(positions)))


def transmission_vs_size(gamma: float, energy: float, n_max: int) -> SizeScan:
    """Scan ``T(N)`` for ``N = 1..n_max`` at fixed gamma and energy.

    The Bloch regime (shared by all N) decides which summary statistic is
    computed: the oscillation quasiperiod when propagating, the asymptotic
    log-slope (fitted on the upper 60% of sizes) when evanescent.
    """
    if not 0.0 < gamma:
        raise OutOfRange(f"gamma must be positive, got {gamma!r}")
    if not -2.0 < energy < 2.0:
        raise OutOfRange(f"energy must lie in (-2, 2), got {energy!r}")
    if n_max < 1:
        raise OutOfRange(f"n_max must be >= 1, got {n_max}")
    k = energy_to_wavenumber(energy)
    regime = classify_bloch_regime(energy, ChainSpec(1, gamma))
    rows = []
    for n in range(1, n_max + 1):
        spec = ChainSpec(n, gamma)
        rows.append(
            SizeScanRow(
                n_cells=n,
                transmission=transmission_closed_form(spec, k),
                regime=regime,
                physical=verdict(spec).regime is RelevanceRegime.RELEVANT,
            )
        )
    t_values = np.array([r.transmission for r in rows])

    quasiperiod = None
    log_slope = None
    if regime is BlochRegime.PROPAGATING:
        quasiperiod = _oscillation_quasiperiod(t_values)
    elif regime is BlochRegime.EVANESCENT and n_max >= 10:
        start = max(int(0.4 * n_max), 1)
        ns = np.arange(start, n_max + 1, dtype=float)
        log_slope = float(np.polyfit(ns, np.log(t_values[start - 1 :]), 1)[0])
    return SizeScan(
        gamma=gamma,
        energy=energy,
        rows=rows,
        quasiperiod=quasiperiod,
        log_slope=log_slope,
    )


def evanescent_decay_reference(gamma: float, energy: float) -> float:
    """The predicted asymptotic decay ``4 Im mu`` of ``ln T`` per unit cell."""
    mu = bloch_index(energy_to_wavenumber(energy), ChainSpec(1, gamma)).mu
    return 4.0 * mu.imag
