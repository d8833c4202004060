"""Lattice conventions, dispersion relation, and the gain/loss profile.

The physical system is a one-dimensional tight-binding chain with hopping
``J = 1`` (and ``hbar = a = 1``, never configurable) whose central region is a
periodic arrangement of ``n_cells`` two-site unit cells: a gain site with
on-site potential ``+i*gamma`` followed by a loss site with ``-i*gamma``.
The profile is PT symmetric, ``eps_j == conj(eps_{2N-1-j})``.

Everything downstream (transfer matrices, pole finding, wave-packet dynamics)
consumes the conventions fixed here:

* lead dispersion ``E = -2 cos k`` with real scattering states at
  ``k in (0, pi)``;
* complex wavenumbers canonicalized to the strip ``Re k in (-pi, pi]``;
* the effective band index ``mu`` of the periodic region, whose primitive
  invariant is ``cos 2mu = (E**2 + gamma**2 - 2)/2``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .errors import OutOfRange

__all__ = [
    "ChainSpec",
    "OnsitePotential",
    "ComplexWavenumber",
    "BlochIndex",
    "BlochRegime",
    "REGIME_TOL",
    "dispersion_energy",
    "energy_to_wavenumber",
    "bloch_index",
    "classify_bloch_regime",
    "onsite_profile",
]

#: Absolute tolerance on ``E**2 + gamma**2 - 4`` separating the propagating,
#: band-edge, and evanescent regimes of the Bloch index.
REGIME_TOL = 1e-12


@dataclass(frozen=True)
class ChainSpec:
    """Immutable description of the scattering region.

    Parameters
    ----------
    n_cells : int
        Number of two-site unit cells (``N >= 1``).
    gamma : float
        Gain/loss strength ``gamma >= 0`` in units of the hopping.
    """

    n_cells: int
    gamma: float

    def __post_init__(self) -> None:
        if not (isinstance(self.n_cells, int) and self.n_cells >= 1):
            raise OutOfRange(f"n_cells must be a positive integer, got {self.n_cells!r}")
        if not (self.gamma >= 0.0):
            raise OutOfRange(f"gamma must be nonnegative, got {self.gamma!r}")

    @property
    def n_sites(self) -> int:
        """Number of sites in the scattering region (``2 N``)."""
        return 2 * self.n_cells


@dataclass(frozen=True)
class OnsitePotential:
    """On-site potential of one scattering-region site.

    ``value`` is ``(-1)**site_index * 1j * gamma``: gain on even sites, loss
    on odd sites.
    """

    site_index: int
    value: complex


def onsite_profile(spec: ChainSpec) -> list[OnsitePotential]:
    """Return the full gain/loss profile ``eps_j`` for ``j = 0 .. 2N-1``."""
    return [
        OnsitePotential(j, (-1) ** j * 1j * spec.gamma)
        for j in range(spec.n_sites)
    ]


def _canonical_strip(re: float) -> float:
    """Map a real part into the physical strip ``(-pi, pi]``."""
    re = math.remainder(re, 2.0 * math.pi)  # (-pi, pi], except -pi maps to -pi
    if re <= -math.pi:
        re += 2.0 * math.pi
    return re


@dataclass(frozen=True)
class ComplexWavenumber:
    """A complex wavenumber ``k = re + i*im`` canonicalized to ``Re k in (-pi, pi]``."""

    re: float
    im: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", _canonical_strip(float(self.re)))
        object.__setattr__(self, "im", float(self.im))

    @classmethod
    def from_complex(cls, k: complex) -> "ComplexWavenumber":
        return cls(k.real, k.imag)

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


class BlochRegime(enum.Enum):
    """Reality class of the effective band index at real energy."""

    PROPAGATING = "Propagating"
    BAND_EDGE = "BandEdge"
    EVANESCENT = "Evanescent"


@dataclass(frozen=True)
class BlochIndex:
    """Effective band index of the periodic scattering region.

    ``cos2mu`` is the primitive, branch-free quantity; ``mu`` is one
    representative branch value (principal ``arccos``, with the imaginary part
    normalized to be >= 0). Callers must never rely on which branch is
    returned: every downstream formula is invariant under ``mu -> -mu`` and
    ``mu -> mu + pi``.
    """

    cos2mu: complex
    mu: complex = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.mu is None:
            mu = 0.5 * cmath.acos(self.cos2mu)
            # acos maps arguments > 1 to negative-imaginary values; pick the
            # +Im representative (allowed by the mu -> -mu invariance).
            if mu.imag < 0.0:
                mu = -mu
            object.__setattr__(self, "mu", mu)


def dispersion_energy(k: complex | ComplexWavenumber) -> complex:
    """Lead dispersion ``E = -2 cos k``.

    For real ``k`` in ``(0, pi)`` the result is real and increases strictly
    from -2 to 2. For complex ``k`` the imaginary part obeys the identity
    ``Im E = 2 sin(Re k) sinh(Im k)``, the growth rate of the state attached
    to a pole at ``k``.
    """
    if isinstance(k, ComplexWavenumber):
        k = k.as_complex()
    return -2.0 * cmath.cos(k)


def energy_to_wavenumber(energy: float) -> float:
    """Inverse dispersion for real energies: ``k = arccos(-E/2) in (0, pi)``.

    Raises
    ------
    OutOfRange
        If ``|energy| >= 2`` (outside the open lead band).
    """
    if not -2.0 < energy < 2.0:
        raise OutOfRange(f"energy must lie in (-2, 2), got {energy!r}")
    return math.acos(-0.5 * energy)


def bloch_index(k: complex | ComplexWavenumber, spec: ChainSpec) -> BlochIndex:
    """Effective band index at wavenumber ``k``.

    Computes ``cos 2mu = (E**2 + gamma**2 - 2)/2`` with ``E = -2 cos k``
    (half the trace of the unit-cell transfer matrix) and one representative
    branch value of ``mu``.
    """
    e = dispersion_energy(k)
    cos2mu = 0.5 * (e * e + spec.gamma**2 - 2.0)
    return BlochIndex(cos2mu=cos2mu)


def classify_bloch_regime(energy: float, spec: ChainSpec, tol: float = REGIME_TOL) -> BlochRegime:
    """Classify a real energy by the reality of the band index.

    ``Propagating`` (``mu`` real) for ``E**2 + gamma**2 < 4 - tol``,
    ``BandEdge`` within ``tol`` of the boundary, ``Evanescent`` (``mu``
    imaginary) above it.
    """
    s = energy * energy + spec.gamma**2 - 4.0
    if abs(s) <= tol:
        return BlochRegime.BAND_EDGE
    return BlochRegime.PROPAGATING if s < 0 else BlochRegime.EVANESCENT
