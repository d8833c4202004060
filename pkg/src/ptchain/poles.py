"""S-matrix poles in the complex wavenumber strip.

Poles are the zeros of the common scattering denominator ``M22(k)``. This
module locates them numerically (grid scan + damped Newton, audited by the
argument principle), evaluates the closed-form threshold ladder at which they
cross the real axis, classifies them physically, and tracks their motion as
the gain/loss strength varies.

Conventions: the physical strip is ``Re k in (-pi, pi]``; a thin margin
around the singular verticals ``Re k in {-pi, 0, pi}`` (where ``cot k``
blows up on the real axis) is excluded from every search and audit.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BranchLost,
    MissedRoots,
    NonConvergence,
    OutOfRange,
    SingularBasis,
)
from .model import ChainSpec, ComplexWavenumber, dispersion_energy
from .scattering import chebyshev_tu

__all__ = [
    "PoleClass",
    "PoleRecord",
    "SearchRegion",
    "ThresholdLadder",
    "Trajectory",
    "BranchPath",
    "AxisCrossing",
    "DEFAULT_REGION",
    "pole_residual",
    "find_poles",
    "threshold_ladder",
    "critical_size",
    "tgbs_count",
    "first_quadrant_region",
    "trace_trajectories",
    "imaginary_branch_excluded",
]

#: Sign tolerance for classifying a pole's quadrant / axis proximity.
CLASS_TOL = 1e-8
#: Converged roots must reach this residual.
RESIDUAL_TOL = 1e-10
#: Roots closer than this (in k) are considered duplicates.
DEDUP_TOL = 1e-8
#: Exclusion margin around the singular verticals Re k in {-pi, 0, pi}.
EDGE_MARGIN = 1e-4


class PoleClass(enum.Enum):
    """Physical classification of a pole by its strip position."""

    TGBS = "TGBS"
    DECAYING_BOUND = "DecayingBound"
    SPECTRAL_SINGULARITY = "SpectralSingularity"
    LASING_SINGULARITY = "LasingSingularity"
    ABSORBING_SINGULARITY = "AbsorbingSingularity"
    RESONANCE = "Resonance"


def _classify(k: complex, tol: float = CLASS_TOL) -> PoleClass:
    if k.imag < -tol:
        return PoleClass.RESONANCE
    if abs(k.imag) <= tol:
        if k.real > tol:
            return PoleClass.LASING_SINGULARITY
        if k.real < -tol:
            return PoleClass.ABSORBING_SINGULARITY
        return PoleClass.SPECTRAL_SINGULARITY
    # upper half plane: time-growing for Re k > 0, decaying bound otherwise
    if k.real > tol:
        return PoleClass.TGBS
    if k.real < -tol:
        return PoleClass.DECAYING_BOUND
    return PoleClass.SPECTRAL_SINGULARITY


@dataclass(frozen=True)
class PoleRecord:
    """One located pole of the scattering denominator.

    ``growth_rate`` is ``Im E`` of the attached outgoing (Siegert) state,
    which equals ``2 sin(Re k) sinh(Im k)`` identically; first-quadrant poles
    have positive growth rate and invalidate stationary scattering results.
    """

    k: ComplexWavenumber
    energy: complex
    growth_rate: float
    classification: PoleClass
    residual: float


def _record(spec: ChainSpec, k: complex) -> PoleRecord:
    e = dispersion_energy(k)
    return PoleRecord(
        k=ComplexWavenumber.from_complex(k),
        energy=e,
        growth_rate=e.imag,
        classification=_classify(k),
        residual=abs(_residual_scalar(spec, k)),
    )


@dataclass(frozen=True)
class SearchRegion:
    """Axis-aligned rectangle in the complex k strip."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self) -> None:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise OutOfRange(f"degenerate search region {self!r}")
        if self.re_min < -math.pi - 1e-12 or self.re_max > math.pi + 1e-12:
            raise OutOfRange(f"region must lie within Re k in (-pi, pi], got {self!r}")

    def contains(self, k: complex, pad: float = 1e-9) -> bool:
        return (
            self.re_min - pad <= k.real <= self.re_max + pad
            and self.im_min - pad <= k.imag <= self.im_max + pad
        )


DEFAULT_REGION = SearchRegion(
    -math.pi + EDGE_MARGIN, math.pi - EDGE_MARGIN, -1.5, 1.5
)


# ---------------------------------------------------------------------------
# residual evaluation
# ---------------------------------------------------------------------------

def _residual_scalar(spec: ChainSpec, k: complex) -> complex:
    sink = cmath.sin(k)
    if abs(sink) < 1e-12:
        raise SingularBasis(f"pole residual undefined at k = {k!r} (sin k ~ 0)")
    x = cmath.cos(2 * k) + 0.5 * spec.gamma**2
    t_n, u_nm1 = chebyshev_tu(spec.n_cells, x)
    return t_n - 1j * (cmath.cos(k) / sink) * (1.0 - x) * u_nm1


def _residual_and_scale(spec: ChainSpec, k: complex) -> tuple[complex, float]:
    """Residual plus the magnitude of its constituent terms.

    Deep in the strip the two terms grow like cosh(2N Im k) and cancel at a
    root, so the achievable residual floor is the term scale times machine
    epsilon; convergence acceptance must account for that.
    """
    sink = cmath.sin(k)
    if abs(sink) < 1e-12:
        raise SingularBasis(f"pole residual undefined at k = {k!r} (sin k ~ 0)")
    x = cmath.cos(2 * k) + 0.5 * spec.gamma**2
    t_n, u_nm1 = chebyshev_tu(spec.n_cells, x)
    second = 1j * (cmath.cos(k) / sink) * (1.0 - x) * u_nm1
    return t_n - second, abs(t_n) + abs(second)


def pole_residual(spec: ChainSpec, k):
    """The pole condition residual ``M22(k)`` (zero exactly at poles).

    Evaluates ``cos(2N mu) - i cot(k) tan(mu) sin(2N mu)`` in its branch-free
    Chebyshev form; agrees with the ``M22`` entry of the scattering module to
    rounding. Accepts a scalar (raising :class:`SingularBasis` at
    ``sin k = 0``) or a numpy array (singular entries become non-finite).
    """
    if isinstance(k, (complex, float, int)):
        return _residual_scalar(spec, complex(k))
    k = np.asarray(k, dtype=complex)
    x = np.cos(2 * k) + 0.5 * spec.gamma**2
    t_n, u_nm1 = chebyshev_tu(spec.n_cells, x)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return t_n - 1j * (np.cos(k) / np.sin(k)) * (1.0 - x) * u_nm1


def _residual_derivative(spec: ChainSpec, k: complex, step: float = 1e-6) -> complex:
    """Central-difference derivative of the analytic residual."""
    return (_residual_scalar(spec, k + step) - _residual_scalar(spec, k - step)) / (2 * step)


def _newton(spec: ChainSpec, seed: complex, max_iter: int = 60) -> complex | None:
    """Damped Newton iteration on the residual; None when not converged.

    Acceptance is ``|f| <= max(1e-10, 5e-15 * scale)`` where ``scale`` is the
    magnitude of the cancelling terms — the rounding floor for poles deep in
    the strip at large N.
    """
    k = complex(seed)
    for _ in range(max_iter):
        try:
            f, scale = _residual_and_scale(spec, k)
        except SingularBasis:
            return None
        if abs(f) <= max(1e-13, 1e-15 * scale):
            break
        df = _residual_derivative(spec, k)
        if df == 0 or not cmath.isfinite(df):
            return None
        step = f / df
        if abs(step) > 0.5:  # damping: never jump across the strip
            step *= 0.5 / abs(step)
        k -= step
    try:
        f, scale = _residual_and_scale(spec, k)
    except SingularBasis:
        return None
    return k if abs(f) <= max(RESIDUAL_TOL, 5e-15 * scale) else None


# ---------------------------------------------------------------------------
# argument-principle audit
# ---------------------------------------------------------------------------

def _winding_number(spec: ChainSpec, region: SearchRegion, max_depth: int = 44) -> int:
    """Winding number of the residual along the region boundary.

    The boundary is walked counterclockwise; each segment is bisected until
    the phase step is below pi/2, which guarantees the correct branch of the
    argument increment. Raises :class:`MissedRoots` if refinement cannot
    stabilize (e.g. a zero sits on the boundary).
    """
    corners = [
        complex(region.re_min, region.im_min),
        complex(region.re_max, region.im_min),
        complex(region.re_max, region.im_max),
        complex(region.re_min, region.im_max),
    ]
    total = 0.0
    for a, b in zip(corners, corners[1:] + corners[:1]):
        # initial sampling proportional to segment length
        n0 = max(8, int(16 * abs(b - a)))
        ts = [i / n0 for i in range(n0 + 1)]
        vals = [_residual_scalar(spec, a + (b - a) * t) for t in ts]
        stack = list(zip(ts[:-1], ts[1:], vals[:-1], vals[1:], [0] * n0))
        while stack:
            t0, t1, f0, f1, depth = stack.pop()
            if f0 == 0 or f1 == 0:
                raise MissedRoots("winding audit: zero on the region boundary")
            dphi = cmath.phase(f1 / f0)
            if abs(dphi) < 0.5 * math.pi:
                total += dphi
                continue
            if depth >= max_depth:
                raise MissedRoots(
                    f"winding audit failed to stabilize on segment [{a}, {b}]"
                )
            tm = 0.5 * (t0 + t1)
            fm = _residual_scalar(spec, a + (b - a) * tm)
            stack.append((t0, tm, f0, fm, depth + 1))
            stack.append((tm, t1, fm, f1, depth + 1))
    w = total / (2 * math.pi)
    wi = round(w)
    if abs(w - wi) > 1e-3:
        raise MissedRoots(f"winding audit returned a non-integer count {w!r}")
    return int(wi)


def _audit_slabs(region: SearchRegion) -> list[SearchRegion]:
    """Split a region into slabs avoiding the singular verticals.

    Bands of half-width :data:`EDGE_MARGIN` around ``Re k in {-pi, 0, pi}``
    are removed; the scattering denominator has its only non-zero
    singularities (simple poles from ``cot k``) at ``k = 0, ±pi``, which
    would corrupt the argument-principle count.
    """
    cuts: list[float] = [region.re_min, region.re_max]
    for s in (-math.pi, 0.0, math.pi):
        for edge in (s - EDGE_MARGIN, s + EDGE_MARGIN):
            if region.re_min < edge < region.re_max:
                cuts.append(edge)
    cuts = sorted(set(cuts))
    slabs = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        center = 0.5 * (lo + hi)
        if any(abs(center - s) <= EDGE_MARGIN for s in (-math.pi, 0.0, math.pi)):
            continue  # the excluded thin band itself
        slabs.append(SearchRegion(lo, hi, region.im_min, region.im_max))
    return slabs


# ---------------------------------------------------------------------------
# the finder
# ---------------------------------------------------------------------------

def _grid_seeds(spec: ChainSpec, region: SearchRegion, grid_density: int) -> list[complex]:
    nr = max(4, int(math.ceil((region.re_max - region.re_min) * grid_density)) + 1)
    ni = max(4, int(math.ceil((region.im_max - region.im_min) * grid_density)) + 1)
    re = np.linspace(region.re_min, region.re_max, nr)
    im = np.linspace(region.im_min, region.im_max, ni)
    kk = re[None, :] + 1j * im[:, None]
    a = np.abs(pole_residual(spec, kk))
    a[~np.isfinite(a)] = np.inf
    inner = a[1:-1, 1:-1]
    is_min = np.ones_like(inner, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            is_min &= inner <= a[1 + di : a.shape[0] - 1 + di, 1 + dj : a.shape[1] - 1 + dj]
    ii, jj = np.where(is_min)
    order = np.argsort(inner[ii, jj])
    return [complex(kk[1 + i, 1 + j]) for i, j in zip(ii[order], jj[order])]


def _near_singular_vertical(k: complex) -> bool:
    return any(abs(k.real - s) < EDGE_MARGIN for s in (-math.pi, 0.0, math.pi))


def _collect_roots(
    spec: ChainSpec, region: SearchRegion, grid_density: int
) -> list[complex]:
    roots: list[complex] = []
    for seed in _grid_seeds(spec, region, grid_density):
        if _near_singular_vertical(seed):
            continue
        root = _newton(spec, seed)
        if root is None:
            # A deep minimum with no converged root nearby is a genuine
            # failure; shallow minima are grid artifacts and are dropped.
            try:
                deep = abs(_residual_scalar(spec, seed)) < 1e-6
            except SingularBasis:
                deep = False
            if deep:
                for jitter in (1e-4, -1e-4, 1e-4j, -1e-4j):
                    root = _newton(spec, seed + jitter)
                    if root is not None:
                        break
                else:
                    raise NonConvergence(
                        f"Newton failed from deep seed {seed!r} (N={spec.n_cells}, "
                        f"gamma={spec.gamma})"
                    )
            else:
                continue
        if not region.contains(root) or _near_singular_vertical(root):
            continue
        if all(abs(root - r) > DEDUP_TOL for r in roots):
            roots.append(root)
    return roots


def find_poles(
    spec: ChainSpec,
    region: SearchRegion | None = None,
    grid_density: int = 60,
    audit: bool = True,
) -> list[PoleRecord]:
    """Locate every pole of the scattering denominator inside ``region``.

    Grid minima of ``|M22|`` seed a damped Newton iteration (derivative by
    central difference, step 1e-6, residual target 1e-10, deduplication at
    1e-8). When ``audit`` is on, the found count inside each singularity-free
    slab of the region is checked against the argument-principle winding
    number of ``M22`` along the slab boundary; on a deficit the slab is
    rescanned at increasing density before :class:`MissedRoots` is raised.

    Parameters
    ----------
    spec : ChainSpec
    region : SearchRegion, optional
        Defaults to the full strip with ``Im k in [-1.5, 1.5]`` (minus the
        singular-vertical margins).
    grid_density : int
        Seed-grid points per unit k length (minimum 50).
    audit : bool
        Disable only when an enclosing caller performs its own audit.
    """
    if region is None:
        region = DEFAULT_REGION
    if grid_density < 50:
        raise OutOfRange(f"grid_density must be at least 50 per unit length, got {grid_density}")

    roots = _collect_roots(spec, region, grid_density)

    if audit:
        for slab in _audit_slabs(region):
            in_slab = [r for r in roots if slab.contains(r, pad=0.0)]
            expected = _winding_number(spec, slab)
            density = grid_density
            attempts = 0
            while expected != len(in_slab) and attempts < 2:
                # densify only the deficient slab
                density *= 3
                attempts += 1
                extra = _collect_roots(spec, slab, density)
                for r in extra:
                    if all(abs(r - q) > DEDUP_TOL for q in roots):
                        roots.append(r)
                in_slab = [r for r in roots if slab.contains(r, pad=0.0)]
            if expected != len(in_slab):
                raise MissedRoots(
                    f"winding number {expected} != {len(in_slab)} roots found in "
                    f"{slab!r} (N={spec.n_cells}, gamma={spec.gamma})"
                )

    records = [_record(spec, r) for r in roots]
    records.sort(key=lambda p: (p.k.re, p.k.im))
    return records


# ---------------------------------------------------------------------------
# closed-form threshold ladder
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdLadder:
    """Gain/loss values at which successive poles reach the real axis.

    ``gamma_values[n] = 2 cos((2n+1) pi / (4N))`` for ``n = 0..N-1``
    (strictly descending); the smallest one, ``gamma_critical =
    2 sin(pi/(4N))``, is the onset of the first time-growing bound state.
    All real-axis crossings happen at ``k = pi/2``.
    """

    n_cells: int
    gamma_values: tuple[float, ...]
    gamma_critical: float
    mu_values: tuple[float, ...]


def threshold_ladder(n_cells: int, verify_numeric: bool = False) -> ThresholdLadder:
    """Evaluate the closed-form threshold ladder for an ``n_cells`` chain.

    With ``verify_numeric=True``, additionally runs :func:`find_poles` in a
    tight window around ``k = pi/2`` at every ladder value and requires a
    real-axis root at ``pi/2`` within 1e-7 (slower; the closed form itself is
    microseconds).
    """
    if n_cells < 1:
        raise OutOfRange(f"n_cells must be >= 1, got {n_cells}")
    mu = tuple((2 * n + 1) * math.pi / (4 * n_cells) for n in range(n_cells))
    gammas = tuple(2.0 * math.cos(m) for m in mu)
    ladder = ThresholdLadder(
        n_cells=n_cells,
        gamma_values=gammas,
        gamma_critical=2.0 * math.sin(math.pi / (4 * n_cells)),
        mu_values=mu,
    )
    if verify_numeric:
        window = SearchRegion(
            0.5 * math.pi - 0.3, 0.5 * math.pi + 0.3, -0.05, 0.05
        )
        for g in gammas:
            recs = find_poles(ChainSpec(n_cells, g), window, grid_density=200)
            hits = [
                r
                for r in recs
                if abs(r.k.re - 0.5 * math.pi) <= 1e-7 and abs(r.k.im) <= 1e-8
            ]
            if not hits:
                raise MissedRoots(
                    f"no real-axis root at k=pi/2 for N={n_cells}, gamma={g!r}"
                )
    return ladder


def critical_size(gamma: float) -> int:
    """Smallest chain length at which a time-growing bound state exists.

    Returns the least ``N`` with ``2 sin(pi/(4N)) < gamma`` (strict: at
    equality the pole sits exactly on the real axis and is a spectral
    singularity, not yet a growing state). For ``gamma >= 2`` every ``N``
    qualifies and 1 is returned.

    Raises
    ------
    OutOfRange
        For ``gamma <= 0`` (no threshold is ever crossed).
    """
    if gamma <= 0.0:
        raise OutOfRange(f"gamma must be positive, got {gamma!r}")
    if gamma >= 2.0:
        return 1
    # N > pi / (4 asin(gamma/2)); the epsilon keeps exact-equality cases
    # (gamma == gamma_c(m) to rounding) on the strict side.
    x = math.pi / (4.0 * math.asin(0.5 * gamma))
    return int(math.floor(x + 1e-12)) + 1


def first_quadrant_region(gamma: float) -> SearchRegion:
    """First-quadrant census window guaranteed to contain all growing poles.

    On the crossing line ``Re k = pi/2`` the residual has no roots once
    ``cos 2mu < -1``, which bounds ``Im k`` by ``acosh(gamma**2/2 + 1)/2``;
    a margin is added and a floor of 1.5 keeps the window generous.
    """
    im_max = 1.5
    if gamma > 0:
        im_max = max(im_max, 0.5 * math.acosh(0.5 * gamma * gamma + 1.0) + 0.25)
    return SearchRegion(EDGE_MARGIN, math.pi - EDGE_MARGIN, CLASS_TOL, im_max)


def tgbs_count(spec: ChainSpec, verify: bool = False) -> int:
    """Number of time-growing bound states: ladder values below ``gamma``.

    The closed form counts ``#{n : gamma_n < gamma}``. With ``verify=True``
    the count is cross-checked against the number of first-quadrant poles
    located by :func:`find_poles`; a mismatch raises :class:`MissedRoots`.
    """
    ladder = threshold_ladder(spec.n_cells)
    count = sum(1 for g in ladder.gamma_values if g < spec.gamma)
    if verify:
        recs = find_poles(spec, first_quadrant_region(spec.gamma), grid_density=60)
        numeric = sum(1 for r in recs if r.classification is PoleClass.TGBS)
        if numeric != count:
            raise MissedRoots(
                f"closed-form TGBS count {count} != first-quadrant pole count "
                f"{numeric} (N={spec.n_cells}, gamma={spec.gamma})"
            )
    return count


# ---------------------------------------------------------------------------
# trajectories over gamma
# ---------------------------------------------------------------------------

@dataclass
class BranchPath:
    """One continuously tracked root: (gamma, record) pairs in sweep order."""

    branch_id: int
    points: list[tuple[float, PoleRecord]] = field(default_factory=list)
    lost: bool = False

    @property
    def last_k(self) -> complex:
        return self.points[-1][1].k.as_complex()


@dataclass(frozen=True)
class AxisCrossing:
    """A branch crossing the real k axis (a spectral singularity)."""

    branch_id: int
    gamma: float
    k: complex


@dataclass
class Trajectory:
    """Pole trajectories over an ascending gamma sweep."""

    gamma_samples: list[float]
    branches: list[BranchPath]
    crossings: list[AxisCrossing]

    #: Maximum |Delta k| accepted between consecutive points of one branch.
    continuation_step_bound: float = 0.3


def _refine_crossing(
    spec_base: ChainSpec,
    g_lo: float,
    k_lo: complex,
    g_hi: float,
    k_hi: complex,
) -> tuple[float, complex] | None:
    """Bisection in gamma for the Im k = 0 crossing of a tracked root."""
    hi_sign = k_hi.imag > 0
    g_mid, root = g_lo, k_lo
    for _ in range(80):
        g_mid = 0.5 * (g_lo + g_hi)
        seed = k_lo + (k_hi - k_lo) * ((g_mid - g_lo) / (g_hi - g_lo) if g_hi > g_lo else 0.5)
        root = _newton(ChainSpec(spec_base.n_cells, g_mid), seed)
        if root is None:
            return None
        if abs(root.imag) <= 1e-9 or (g_hi - g_lo) <= 1e-12:
            return g_mid, root
        if (root.imag > 0) == hi_sign:
            g_hi, k_hi = g_mid, root
        else:
            g_lo, k_lo = g_mid, root
    return g_mid, root


def trace_trajectories(
    spec_base: ChainSpec,
    gamma_min: float,
    gamma_max: float,
    steps: int,
    region: SearchRegion | None = None,
    grid_density: int = 60,
    strict: bool = True,
) -> Trajectory:
    """Track every pole inside ``region`` while gamma sweeps upward.

    At each gamma sample the poles are re-found from scratch and matched to
    existing branches by nearest-neighbor distance in k (rejection beyond
    0.3); unmatched poles start new branches (poles rise into the window
    from below as gamma grows — at gamma = 0 the window is empty), and
    branches whose pole left the window are closed. A branch whose root
    cannot be re-converged after three step halvings is marked lost
    (``strict=True`` raises :class:`BranchLost` instead).

    Real-axis crossings of every branch are refined in gamma by bisection
    and reported; they land on ``Re k = ±pi/2`` at the ladder values.
    """
    if not (0.0 <= gamma_min <= gamma_max):
        raise OutOfRange(f"need 0 <= gamma_min <= gamma_max, got {gamma_min!r}, {gamma_max!r}")
    if gamma_min < gamma_max and steps < 10:
        raise OutOfRange(f"steps must be >= 10, got {steps}")
    if region is None:
        region = DEFAULT_REGION

    if gamma_min == gamma_max:
        # degenerate sweep: emit the pole set of the single gamma
        gammas = [gamma_min]
    else:
        gammas = [gamma_min + (gamma_max - gamma_min) * i / steps for i in range(steps + 1)]
    branches: list[BranchPath] = []
    next_id = 0

    for g in gammas:
        spec = ChainSpec(spec_base.n_cells, g)
        found = [] if g == 0.0 else [
            r.k.as_complex() for r in find_poles(spec, region, grid_density)
        ]
        live = [b for b in branches if not b.lost and b.points]
        prev_pts = {id(b): b.last_k for b in live}

        # greedy nearest-neighbor matching, closest pairs first
        pairs: list[tuple[float, int, int]] = []
        for bi, b in enumerate(live):
            for ri, r in enumerate(found):
                d = abs(r - prev_pts[id(b)])
                if d <= 0.3:
                    pairs.append((d, bi, ri))
        pairs.sort()
        matched_b: set[int] = set()
        matched_r: set[int] = set()
        taken: list[complex] = []  # roots adopted by some branch this sample
        for d, bi, ri in pairs:
            if bi in matched_b or ri in matched_r:
                continue
            matched_b.add(bi)
            matched_r.add(ri)
            live[bi].points.append((g, _record(spec, found[ri])))
            taken.append(found[ri])

        # unmatched live branches: direct continuation with step halving
        for bi, b in enumerate(live):
            if bi in matched_b or not b.points:
                continue
            g_prev = b.points[-1][0]
            if g_prev == g:
                continue
            root = None
            sub = 1
            for _ in range(4):  # 1, 2, 4, 8 sub-steps (three halvings)
                seed = b.last_k
                ok = True
                for s in range(1, sub + 1):
                    gs = g_prev + (g - g_prev) * s / sub
                    root = _newton(ChainSpec(spec_base.n_cells, gs), seed)
                    if root is None or abs(root - seed) > 0.3:
                        ok = False
                        break
                    seed = root
                if ok:
                    break
                sub *= 2
                root = None
            if root is None:
                if strict:
                    raise BranchLost(
                        f"branch {b.branch_id} lost near gamma={g!r} "
                        f"(last k = {b.last_k!r})"
                    )
                b.lost = True
            elif region.contains(root):
                # the continuation may land on a root the fresh search also
                # produced (a fast-moving pole beyond the matching radius);
                # claim it so the birth loop below does not duplicate it
                for ri, r in enumerate(found):
                    if ri not in matched_r and abs(r - root) <= 1e-6:
                        matched_r.add(ri)
                if any(abs(root - q) <= 1e-8 for q in taken):
                    # collided with a pole another branch already tracks;
                    # stop following this branch rather than double-count
                    b.lost = True
                else:
                    b.points.append((g, _record(spec, root)))
                    taken.append(root)
            # else: the pole left the window; branch simply ends.

        # unmatched found roots: new branches are born
        for ri, r in enumerate(found):
            if ri in matched_r:
                continue
            b = BranchPath(branch_id=next_id)
            next_id += 1
            b.points.append((g, _record(spec, r)))
            branches.append(b)

    # refine real-axis crossings
    crossings: list[AxisCrossing] = []
    for b in branches:
        for (g0, p0), (g1, p1) in zip(b.points[:-1], b.points[1:]):
            k0, k1 = p0.k.as_complex(), p1.k.as_complex()
            if k0.imag == 0.0:
                crossings.append(AxisCrossing(b.branch_id, g0, k0))
                continue
            if (k0.imag < 0) and (k1.imag >= 0):
                ref = _refine_crossing(spec_base, g0, k0, g1, k1)
                if ref is not None:
                    crossings.append(AxisCrossing(b.branch_id, ref[0], ref[1]))

    n_positive = sum(
        1 for b in branches if b.points and b.points[-1][1].k.re > 0
    )
    expected = 2 * spec_base.n_cells - 1
    if gamma_max >= 2.0 and n_positive != expected and spec_base.n_cells != 3:
        warnings.warn(
            f"observed {n_positive} branches with Re k > 0, expected {expected} "
            f"(soft structural check for N={spec_base.n_cells})",
            stacklevel=2,
        )
    return Trajectory(gamma_samples=gammas, branches=branches, crossings=crossings)


# ---------------------------------------------------------------------------
# derivation check
# ---------------------------------------------------------------------------

def imaginary_branch_excluded(spec: ChainSpec, phi: float, k: float = 0.5 * math.pi) -> bool:
    """Executable check that an imaginary band index admits no real-axis pole.

    For ``mu = i*phi`` (``phi > 0``) at real ``k``, the real part of the
    residual is ``cosh(2N phi)``, which is strictly positive — so the
    denominator cannot vanish on the real axis in the evanescent regime.
    Returns True when the evaluated real part matches ``cosh(2N phi)`` and is
    positive.
    """
    if phi <= 0:
        raise OutOfRange(f"phi must be positive, got {phi!r}")
    if abs(math.sin(k)) < 1e-12:
        raise SingularBasis(f"check undefined at k = {k!r} (sin k ~ 0)")
    mu = 1j * phi
    n = spec.n_cells
    cotk = math.cos(k) / math.sin(k)
    m22 = cmath.cos(2 * n * mu) - 1j * cotk * cmath.tan(mu) * cmath.sin(2 * n * mu)
    expected = math.cosh(2 * n * phi)
    return abs(m22.real - expected) <= 1e-12 * expected and m22.real > 0.0
