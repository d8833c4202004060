"""Finite-lattice wave-packet dynamics: the time-dependent oracle.

A hard-wall tight-binding lattice of ``L`` sites embeds the gain/loss region
in its center. The non-Hermitian Hamiltonian is diagonalized densely; time
evolution expands the state in right eigenmodes with left-eigenmode
coefficients (biorthogonal expansion) and multiplies by ``exp(-i E t)``.
Near-defective spectra (mode-overlap conditioning above a threshold) fall
back to a fixed-step RK4 integration of the Schrödinger equation.

Site indexing: ``j`` is relative to the first gain site, so the scattering
region occupies ``j = 0 .. 2N-1``, the left lead has ``j < 0``, and
"transmitted" means everything at ``j >= 2N``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DecompositionFailed, InsufficientGrowth, OutOfRange
from .model import ChainSpec

__all__ = [
    "LatticeLayout",
    "WaveState",
    "PropagatorBundle",
    "IntensitySplit",
    "build_hamiltonian",
    "gaussian_packet",
    "prepare_propagator",
    "evolve",
    "transmitted_intensity",
    "intensity_split",
    "growth_rate_fit",
    "validity_horizon",
]


@dataclass(frozen=True)
class LatticeLayout:
    """Geometry of the finite lattice hosting the scattering region."""

    total_sites: int
    n_cells: int
    scatter_start: int  # global array index of site j = 0

    def __post_init__(self) -> None:
        if self.lead_left_len < 0 or self.lead_right_len < 0:
            raise OutOfRange(f"scattering region does not fit: {self!r}")

    @property
    def lead_left_len(self) -> int:
        return self.scatter_start

    @property
    def lead_right_len(self) -> int:
        return self.total_sites - self.scatter_start - 2 * self.n_cells

    @classmethod
    def centered(cls, total_sites: int, n_cells: int) -> "LatticeLayout":
        """Default layout: leads as equal as possible (1200/3 -> 597 + 6 + 597)."""
        return cls(total_sites, n_cells, (total_sites - 2 * n_cells) // 2)

    def global_index(self, j: int) -> int:
        return self.scatter_start + j

    def site_offsets(self) -> np.ndarray:
        """Relative index j for every lattice site."""
        return np.arange(self.total_sites) - self.scatter_start


@dataclass(frozen=True)
class WaveState:
    """Snapshot of the lattice wavefunction at one time (immutable by convention)."""

    amplitudes: np.ndarray
    time: float


def build_hamiltonian(layout: LatticeLayout, spec: ChainSpec) -> np.ndarray:
    """Dense complex tridiagonal Hamiltonian with hard-wall boundaries.

    Hopping -1 on both off-diagonals; diagonal zero in the leads and
    alternating ``+i gamma, -i gamma`` on the ``2N`` scattering sites (gain
    first). The trace vanishes for every (N, gamma).
    """
    if layout.n_cells != spec.n_cells:
        raise OutOfRange(
            f"layout is for N={layout.n_cells} but spec has N={spec.n_cells}"
        )
    size = layout.total_sites
    h = np.zeros((size, size), dtype=complex)
    idx = np.arange(size - 1)
    h[idx, idx + 1] = -1.0
    h[idx + 1, idx] = -1.0
    for j in range(2 * spec.n_cells):
        h[layout.global_index(j), layout.global_index(j)] = (-1) ** j * 1j * spec.gamma
    return h


def gaussian_packet(layout: LatticeLayout, j0: int, sigma: float, k0: float) -> WaveState:
    """Normalized Gaussian wave packet ``exp(-(j-j0)^2/2 sigma^2) exp(i k0 j)``.

    ``j0`` should sit well inside a lead: a warning is emitted when it is
    within 3 sigma of a lattice edge or of the scattering region.
    """
    if sigma <= 0:
        raise OutOfRange(f"sigma must be positive, got {sigma!r}")
    left_edge_j = -layout.lead_left_len
    right_edge_j = 2 * layout.n_cells + layout.lead_right_len - 1
    clearance = min(
        j0 - left_edge_j,
        right_edge_j - j0,
        abs(j0) if j0 < 0 else abs(j0 - (2 * layout.n_cells - 1)),
    )
    if clearance < 3 * sigma:
        warnings.warn(
            f"packet center j0={j0} is within 3 sigma of an edge or the "
            f"scattering region (clearance {clearance}, sigma {sigma})",
            stacklevel=2,
        )
    j = layout.site_offsets()
    psi = np.exp(-((j - j0) ** 2) / (2.0 * sigma**2) + 1j * k0 * j)
    psi /= np.linalg.norm(psi)
    return WaveState(amplitudes=psi, time=0.0)


@dataclass(frozen=True)
class PropagatorBundle:
    """Spectral decomposition of a finite non-Hermitian Hamiltonian.

    ``left_modes`` are normalized so that ``left_modes.conj().T @ right_modes``
    is the identity (biorthogonal pairs); ``condition_estimate`` is the
    inverse of the smallest raw left-right overlap and flags near-defective
    spectra. ``spectral_residual`` records ``||H R - R diag(E)|| / ||H||``.
    """

    eigenvalues: np.ndarray
    right_modes: np.ndarray
    left_modes: np.ndarray
    condition_estimate: float
    spectral_residual: float
    near_defective: bool
    hamiltonian: np.ndarray


def _tridiagonal_bands(h: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
    """(lower, diag, upper) bands when ``h`` is tridiagonal, else None."""
    diag = np.diag(h).copy()
    upper = np.diag(h, 1).copy()
    lower = np.diag(h, -1).copy()
    rebuilt = np.diag(diag) + np.diag(upper, 1) + np.diag(lower, -1)
    if np.array_equal(rebuilt, h):
        return lower, diag, upper
    return None


def _matvec_factory(h: np.ndarray):
    bands = _tridiagonal_bands(h)
    if bands is None:
        return lambda v: h @ v
    lower, diag, upper = bands

    def matvec(v: np.ndarray) -> np.ndarray:
        out = diag * v
        out[:-1] += upper * v[1:]
        out[1:] += lower * v[:-1]
        return out

    return matvec


def prepare_propagator(h: np.ndarray, flag_threshold: float = 1e8) -> PropagatorBundle:
    """Full spectral decomposition with biorthogonal left/right mode pairs.

    Parameters
    ----------
    h : ndarray
        Square complex matrix.
    flag_threshold : float
        Overlap-conditioning level above which the bundle is flagged
        near-defective and :func:`evolve` uses direct RK4 stepping instead of
        the spectral path. Set to 0 to force the stepping path (useful for
        cross-validating the two).

    Raises
    ------
    DecompositionFailed
        If the dense eigensolver does not converge or the spectral assembly
        residual is out of tolerance.
    """
    try:
        w, vl, vr = scipy.linalg.eig(h, left=True, right=True)
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - solver hiccup
        raise DecompositionFailed(f"dense eigensolver failed: {exc}") from exc
    if not np.all(np.isfinite(w)):
        raise DecompositionFailed("eigensolver returned non-finite eigenvalues")

    matvec = _matvec_factory(h)
    h_norm = np.linalg.norm(h)
    residual = float(
        np.linalg.norm(np.column_stack([matvec(vr[:, i]) for i in range(len(w))]) - vr * w)
        / h_norm
    )
    if residual > 1e-8:
        raise DecompositionFailed(f"spectral assembly residual {residual:.3e} > 1e-8")

    overlaps = np.einsum("ij,ij->j", vl.conj(), vr)
    min_overlap = float(np.min(np.abs(overlaps)))
    condition = math.inf if min_overlap == 0.0 else 1.0 / min_overlap
    near_defective = condition > flag_threshold
    if not near_defective:
        vl = vl / overlaps.conj()[None, :]
    return PropagatorBundle(
        eigenvalues=w,
        right_modes=vr,
        left_modes=vl,
        condition_estimate=condition,
        spectral_residual=residual,
        near_defective=near_defective,
        hamiltonian=h,
    )


def _evolve_rk4(h: np.ndarray, psi0: np.ndarray, t: float) -> np.ndarray:
    """Fixed-step RK4 on ``d psi/dt = -i H psi``.

    The step is sized so the local truncation error stays below
    ``1e-10 * ||psi||``: ``(||H|| dt)^5 / 120 <= 1e-10``.
    """
    if t == 0.0:
        return psi0.copy()
    matvec = _matvec_factory(h)
    h_inf = float(np.max(np.sum(np.abs(h), axis=1)))
    dt_max = (120.0 * 1e-10) ** 0.2 / max(h_inf, 1e-12)
    n_steps = max(1, int(math.ceil(t / dt_max)))
    dt = t / n_steps
    psi = psi0.astype(complex, copy=True)
    for _ in range(n_steps):
        k1 = -1j * matvec(psi)
        k2 = -1j * matvec(psi + 0.5 * dt * k1)
        k3 = -1j * matvec(psi + 0.5 * dt * k2)
        k4 = -1j * matvec(psi + dt * k3)
        psi += (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


def evolve(bundle: PropagatorBundle, psi0: WaveState, t: float) -> WaveState:
    """Propagate a state by time ``t`` under ``exp(-i H t)``.

    Spectral path: expand in right modes with left-mode coefficients and
    multiply by ``exp(-i E_n t)``. Near-defective bundles route to the direct
    RK4 integrator automatically.
    """
    if t < 0:
        raise OutOfRange(f"t must be nonnegative, got {t!r}")
    if bundle.near_defective:
        psi_t = _evolve_rk4(bundle.hamiltonian, psi0.amplitudes, t)
    else:
        coeff = bundle.left_modes.conj().T @ psi0.amplitudes
        psi_t = bundle.right_modes @ (coeff * np.exp(-1j * bundle.eigenvalues * t))
    return WaveState(amplitudes=psi_t, time=psi0.time + t)


@dataclass(frozen=True)
class IntensitySplit:
    """Intensity partitioned by region; the three parts sum to the total."""

    reflected: float  # left lead, j < 0
    central: float    # scattering region, 0 <= j < 2N
    transmitted: float  # right lead, j >= 2N

    @property
    def total(self) -> float:
        return self.reflected + self.central + self.transmitted


def intensity_split(state: WaveState, layout: LatticeLayout) -> IntensitySplit:
    """Intensity in the left lead / scattering region / right lead."""
    density = np.abs(state.amplitudes) ** 2
    lo = layout.scatter_start
    hi = layout.scatter_start + 2 * layout.n_cells
    return IntensitySplit(
        reflected=float(np.sum(density[:lo])),
        central=float(np.sum(density[lo:hi])),
        transmitted=float(np.sum(density[hi:])),
    )


def transmitted_intensity(state: WaveState, layout: LatticeLayout) -> float:
    """Total intensity strictly right of the scattering region (``j >= 2N``)."""
    return intensity_split(state, layout).transmitted


def growth_rate_fit(
    intensity_series: list[tuple[float, float]], min_decades: float = 2.0
) -> float:
    """Amplitude growth rate from a total-intensity time series.

    Least-squares slope of ``ln I(t)`` divided by 2 (amplitude = sqrt of
    intensity), comparable to ``Im E`` of the dominant growing mode.

    Parameters
    ----------
    intensity_series : list of (t, intensity)
    min_decades : float
        Required dynamic range of the series; the default 2 decades rejects
        fits on noise. Pass 0 to fit flat series (e.g. marginal lasing at
        threshold).

    Raises
    ------
    InsufficientGrowth
        When the series spans fewer than ``min_decades`` decades.
    """
    if len(intensity_series) < 2:
        raise OutOfRange("need at least two samples to fit a growth rate")
    times = np.array([t for t, _ in intensity_series], dtype=float)
    values = np.array([v for _, v in intensity_series], dtype=float)
    if np.any(values <= 0):
        raise OutOfRange("intensity series must be strictly positive")
    decades = math.log10(float(np.max(values) / np.min(values)))
    if decades < min_decades:
        raise InsufficientGrowth(
            f"series spans {decades:.2f} decades < required {min_decades}"
        )
    slope = np.polyfit(times, np.log(values), 1)[0]
    return float(0.5 * slope)


def validity_horizon(layout: LatticeLayout, j0: int, k0: float) -> float:
    """Time before hard-wall reflections can contaminate observables.

    The packet moves right at ``v_g = 2 sin k0``; the horizon is the earlier
    of (a) the transmitted front reaching the right wall and (b) the
    reflected front (packet -> scatterer -> left wall) reaching the left
    wall, both measured from the packet center.
    """
    v_g = 2.0 * math.sin(k0)
    if v_g <= 0:
        return math.inf
    g0 = layout.global_index(j0)
    right_path = (layout.total_sites - 1) - g0
    reflect_path = 2 * layout.scatter_start - g0
    return min(right_path, reflect_path) / v_g
