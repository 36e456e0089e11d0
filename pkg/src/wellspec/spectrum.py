"""Spectrum solvers: dispersion relations, nodal enumeration, asymptotics.

Positive-energy roots come from the entire-function residual

    g(kL) = f * kL * sin(kL) - 2 * sin(kL*rho) * sin(kL*(1-rho)),

which is pole-free, so sign-change bracketing is sound everywhere.  The
pole-ridden ratio form is kept only for emitting dispersion-curve data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SolverFailure
from .model import DimensionlessConfig, RationalPosition

NODAL = "nodal"
ORDINARY_POSITIVE = "ordinary_positive"
ORDINARY_NEGATIVE = "ordinary_negative"

DEFAULT_K_MAX = 20.0 * math.pi

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class EigenState:
    """One spectrum entry.

    ``k`` is kL for the positive kinds and kappa*L for the negative kind.
    ``residual`` is the absolute dispersion residual at the accepted root;
    nodal states carry 0.0 because their residual vanishes identically.
    The marginal zero-energy state (f exactly at the binding threshold) is
    reported as ordinary_positive with k = 0.
    """

    kind: str
    k: float
    energy: float
    residual: float
    n: int | None = None
    j: int | None = None


@dataclass(frozen=True)
class SolverOptions:
    samples_per_pi: int = 64
    refine_factor: int = 64
    refine_window: float = math.pi / 16.0
    residual_tol: float = 1e-10
    nodal_match_tol: float = 1e-9
    vanish_tol: float = 1e-6
    max_bisect: int = 240


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class Spectrum:
    config: DimensionlessConfig
    entries: list[EigenState]
    k_max: float

    @property
    def energies(self) -> list[float]:
        return [s.energy for s in self.entries]


class PoleMarker:
    """Sentinel for a genuine pole of the ratio form of the dispersion."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover
        return "POLE"


POLE = PoleMarker()


def dispersion_residual(kL, config: DimensionlessConfig):
    """g(kL); zero exactly at nodal and ordinary positive-energy roots."""
    rho = config.rho
    return config.f * kL * np.sin(kL) - 2.0 * np.sin(kL * rho) * np.sin(kL * (1.0 - rho))


def _g_scalar(kL: float, rho: float, f: float) -> float:
    return f * kL * math.sin(kL) - 2.0 * math.sin(kL * rho) * math.sin(kL * (1.0 - rho))


def rhs_positive(kL: float, rho: float, pole_eps: float = 1e-9):
    """Ratio form 2 sin(kL rho) sin(kL (1-rho)) / sin(kL).

    Returns POLE where sin(kL) vanishes without the numerator; removable
    singularities (shared zeros) are filled with the l'Hopital limit.
    """
    s = math.sin(kL)
    num = 2.0 * math.sin(kL * rho) * math.sin(kL * (1.0 - rho))
    if abs(s) < pole_eps:
        if abs(num) < pole_eps:
            dnum = 2.0 * (
                rho * math.cos(kL * rho) * math.sin(kL * (1.0 - rho))
                + (1.0 - rho) * math.sin(kL * rho) * math.cos(kL * (1.0 - rho))
            )
            return dnum / math.cos(kL)
        return POLE
    return num / s


def rhs_negative(kappaL: float, rho: float) -> float:
    """2 sinh(kL rho) sinh(kL (1-rho)) / sinh(kL) = (cosh t - cosh(t mu)) / sinh t.

    Monotone increasing from 0 to 1; evaluated overflow-free for any t.
    """
    t = float(kappaL)
    if t <= 0.0:
        return 0.0
    m = abs(2.0 * rho - 1.0)
    if t < 0.01:
        m2 = m * m
        num = t * t * (1.0 - m2) / 2.0 + t**4 * (1.0 - m2 * m2) / 24.0 + t**6 * (1.0 - m2 * m2 * m2) / 720.0
        return num / math.sinh(t)
    if t < 350.0:
        return (math.cosh(t) - math.cosh(t * m)) / math.sinh(t)
    # exp form: factor e^t out of numerator and denominator
    return (1.0 + math.exp(-2.0 * t) - math.exp(-t * (1.0 - m)) - math.exp(-t * (1.0 + m))) / (
        1.0 - math.exp(-2.0 * t)
    )


def negative_residual(kappaL: float, config: DimensionlessConfig) -> float:
    """Scaled negative-energy residual f*kappaL - rhs_negative; zero at the bound root."""
    return config.f * kappaL - rhs_negative(kappaL, config.rho)


def _bisect(fn, lo: float, hi: float, flo: float, fhi: float, max_iter: int) -> float:
    """Bisection inside a certified bracket down to machine-relative width."""
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise SolverFailure(f"bracket [{lo}, {hi}] does not straddle a root", (lo, hi))
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = fn(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if hi - lo <= 4.0 * _EPS * max(1.0, abs(hi)):
            break
    return 0.5 * (lo + hi)


def _scan_grid(k_max: float, opts: SolverOptions) -> np.ndarray:
    h = math.pi / opts.samples_per_pi
    base = np.arange(h, k_max + 0.5 * h, h)
    fine = [base]
    hf = h / opts.refine_factor
    for m in range(0, int(k_max / math.pi) + 2):
        c = m * math.pi
        lo = max(hf, c - opts.refine_window)
        hi = min(k_max, c + opts.refine_window)
        if hi > lo:
            fine.append(np.arange(lo, hi + 0.5 * hf, hf))
    grid = np.unique(np.concatenate(fine))
    return grid[(grid > 0.0) & (grid <= k_max * (1.0 + 1e-12))]


def _threshold_coupling(rho: float) -> float:
    """Binding threshold 2*rho*(1-rho); a negative root exists iff 0 < f below it."""
    return 2.0 * rho * (1.0 - rho)


def _quartic_coeff(rho: float, f: float) -> float:
    """Coefficient c4 in g(t) = (f - fc) t^2 - c4 t^4 + O(t^6) near t = 0."""
    return f / 6.0 - rho * (1.0 - rho) * (rho * rho + (1.0 - rho) * (1.0 - rho)) / 3.0


def _small_positive_root(config: DimensionlessConfig, opts: SolverOptions) -> EigenState | None:
    """Ground root just above zero energy when f exceeds the binding threshold.

    The scan grid can miss this root arbitrarily close to the threshold, so it
    is bracketed from the small-k series estimate t^2 ~ (f - fc)/c4.
    """
    f, rho = config.f, config.rho
    fc = _threshold_coupling(rho)
    if not (f > 0.0 and f > fc):
        return None
    c4 = _quartic_coeff(rho, f)
    if c4 <= 0.0:
        return None
    t_est = math.sqrt((f - fc) / c4)
    if t_est >= 0.5:
        return None  # far from threshold; the ordinary scan resolves it
    if f - fc <= 1e-10:
        # below the cancellation floor of g; the series root is sharper
        return EigenState(ORDINARY_POSITIVE, t_est, t_est * t_est, abs(_g_scalar(t_est, rho, f)))
    lo, hi = 0.25 * t_est, min(4.0 * t_est, 0.9 * math.pi)
    fn = lambda t: _g_scalar(t, rho, f)
    flo, fhi = fn(lo), fn(hi)
    tries = 0
    while flo * fhi > 0.0 and tries < 40:
        lo *= 0.5
        flo = fn(lo)
        tries += 1
    root = _bisect(fn, lo, hi, flo, fhi, opts.max_bisect)
    res = abs(_g_scalar(root, rho, f))
    return EigenState(ORDINARY_POSITIVE, root, root * root, res)


def _keep_as_ordinary(root: float, config: DimensionlessConfig, opts: SolverOptions) -> bool:
    """Drop residual roots that duplicate a nodal entry or carry no wave.

    At a multiple of pi, g vanishes either at a nodal value (enumerated
    separately for exact positions) or at a coincidence where both segment
    amplitudes vanish; neither is a reportable ordinary state.
    """
    m = round(root / math.pi)
    if m <= 0 or abs(root - m * math.pi) >= opts.nodal_match_tol:
        return True
    if config.is_exact and m % config.rational.n == 0:
        return False
    sl = abs(math.sin(root * config.rho))
    sr = abs(math.sin(root * (1.0 - config.rho)))
    if sl < opts.vanish_tol and sr < opts.vanish_tol:
        return False
    return True


def find_ordinary_positive(
    config: DimensionlessConfig,
    k_max: float = DEFAULT_K_MAX,
    opts: SolverOptions = DEFAULT_OPTIONS,
) -> list[EigenState]:
    """All ordinary positive-energy roots of the dispersion in (0, k_max)."""
    rho, f = config.rho, config.f
    grid = _scan_grid(k_max, opts)
    vals = np.asarray(dispersion_residual(grid, config))
    fn = lambda t: _g_scalar(t, rho, f)

    roots: list[float] = []
    sign_change = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]
    for i in sign_change:
        roots.append(_bisect(fn, float(grid[i]), float(grid[i + 1]), float(vals[i]), float(vals[i + 1]), opts.max_bisect))
    for i in np.nonzero(vals == 0.0)[0]:
        roots.append(float(grid[i]))

    states: list[EigenState] = []
    small = _small_positive_root(config, opts)
    if small is not None and small.k <= k_max:
        roots.append(small.k)
    for root in sorted(roots):
        if states and abs(root - states[-1].k) < opts.nodal_match_tol:
            continue
        if not _keep_as_ordinary(root, config, opts):
            continue
        res = abs(_g_scalar(root, rho, f))
        if res > opts.residual_tol * max(1.0, abs(f) * root):
            raise SolverFailure(f"root polish left residual {res:.3e} at kL={root}", (root, root))
        states.append(EigenState(ORDINARY_POSITIVE, root, root * root, res))
    return states


def enumerate_nodal(pos: RationalPosition, k_max: float) -> list[EigenState]:
    """Nodal states kL = j*n*pi up to the ceiling; empty when n*pi exceeds it."""
    out = []
    j = 1
    while j * pos.n * math.pi <= k_max:
        k = j * pos.n * math.pi
        out.append(EigenState(NODAL, k, k * k, 0.0, n=pos.n, j=j))
        j += 1
    return out


def find_negative_root(
    config: DimensionlessConfig, opts: SolverOptions = DEFAULT_OPTIONS
) -> EigenState | None:
    """The unique bound (negative-energy) root, present iff 0 < f < 2 rho (1-rho)."""
    f, rho = config.f, config.rho
    fc = _threshold_coupling(rho)
    if not (0.0 < f < fc):
        return None
    if fc - f <= 1e-10:
        c4 = _quartic_coeff(rho, f)
        t = math.sqrt((fc - f) / c4)
        return EigenState(ORDINARY_NEGATIVE, t, -t * t, abs(negative_residual(t, config)))
    fn = lambda t: negative_residual(t, config)
    lo = 1e-9
    hi = 4.0 * max(1.0, 1.0 / f)
    flo, fhi = fn(lo), fn(hi)
    if flo >= 0.0 or fhi <= 0.0:
        raise SolverFailure(f"negative-root bracket invalid for f={f}, rho={rho}", (lo, hi))
    root = _bisect(fn, lo, hi, flo, fhi, opts.max_bisect)
    res = abs(negative_residual(root, config))
    if res > opts.residual_tol:
        raise SolverFailure(f"negative root residual {res:.3e}", (lo, hi))
    return EigenState(ORDINARY_NEGATIVE, root, -root * root, res)


def ground_state(
    config: DimensionlessConfig, opts: SolverOptions = DEFAULT_OPTIONS
) -> EigenState:
    """Lowest-energy state; continuous in f across the zero-energy crossing."""
    neg = find_negative_root(config, opts)
    if neg is not None:
        return neg
    f, rho = config.f, config.rho
    fc = _threshold_coupling(rho)
    if f > 0.0 and abs(f - fc) <= 1e-10:
        return EigenState(ORDINARY_POSITIVE, 0.0, 0.0, 0.0)
    spec = full_spectrum(config, 4.0 * math.pi, opts)
    if not spec.entries:
        raise SolverFailure("no state below 4*pi ceiling", None)
    return spec.entries[0]


def full_spectrum(
    config: DimensionlessConfig,
    k_max: float = DEFAULT_K_MAX,
    opts: SolverOptions = DEFAULT_OPTIONS,
) -> Spectrum:
    """Merged, energy-sorted spectrum below the stated ceiling."""
    entries: list[EigenState] = []
    if config.is_exact:
        entries.extend(enumerate_nodal(config.rational, k_max))
    entries.extend(find_ordinary_positive(config, k_max, opts))
    neg = find_negative_root(config, opts)
    if neg is not None:
        entries.append(neg)
    entries.sort(key=lambda s: s.energy)
    return Spectrum(config, entries, k_max)


def weak_coupling_estimate(N: int, config: DimensionlessConfig) -> float:
    """Leading weak-coupling root N pi - 2 sin^2(N pi rho)/(N pi f)."""
    s = math.sin(N * math.pi * config.rho)
    return N * math.pi - 2.0 * s * s / (N * math.pi * config.f)


def strong_coupling_estimates(config: DimensionlessConfig, count: int) -> list[float]:
    """Split-well ladders n1*pi/rho and n2*pi/(1-rho), coincidences removed.

    A coincidence (both families at once) has a vanishing wave function; for
    exact positions it is detected in integer arithmetic, otherwise at 1e-9
    in kL/pi.
    """
    rho = config.rho
    out: list[float] = []
    n1, n2 = 1, 1
    exact = config.is_exact
    if exact:
        p, n = config.rational.p, config.rational.n
    while len(out) < count and (n1 + n2) < 100 * (count + 2):
        a = n1 * math.pi / rho
        b = n2 * math.pi / (1.0 - rho)
        if exact:
            coincide = n1 * (n - p) == n2 * p
        else:
            coincide = abs(a - b) < 1e-9 * math.pi
        if coincide:
            n1 += 1
            n2 += 1
        elif a < b:
            out.append(a)
            n1 += 1
        else:
            out.append(b)
            n2 += 1
    return out[:count]


def zero_energy_positions(f: float) -> list[float]:
    """Positions where the ground-state energy crosses zero, for 0 < f <= 1/2."""
    if not 0.0 < f <= 0.5:
        return []
    if f == 0.5:
        return [0.5]
    d = math.sqrt(1.0 - 2.0 * f)
    return [0.5 * (1.0 - d), 0.5 * (1.0 + d)]


def near_wall_energy(N: int, eps: float, f: float) -> float:
    """Parabolic near-wall level (N pi)^2 (1 - 4 eps^2 / f)."""
    return (N * math.pi) ** 2 * (1.0 - 4.0 * eps * eps / f)
