"""Independent spectral cross-check in the free-well sine basis.

The Hamiltonian is diagonal plus rank one in this basis:

    H[m][n] = (m pi)^2 delta_mn - (4/f) sin(m pi rho) sin(n pi rho),

so rows whose sine factor vanishes decouple exactly (the nodal sector for
rational positions).  Eigenvalues of the coupled sector are roots of the
rank-one secular function, solved here by monotone bisection between
interlacing poles; a cyclic Jacobi sweep is provided as a second, dense
eigensolver used to verify the secular path.  Both are in-repo: the oracle
never leans on an external eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ConvergenceFailure
from .model import DimensionlessConfig

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SineBasisMatrix:
    """Truncated Hamiltonian, stored in its diagonal-plus-rank-one form."""

    m: int
    diag: np.ndarray  # free-well energies (i*pi)^2, i = 1..m
    coupling: np.ndarray  # sin(i*pi*rho); exact zeros in the nodal sector
    sigma: float  # rank-one strength -4/f

    @cached_property
    def entries(self) -> np.ndarray:
        """Dense symmetric matrix; materialized on demand."""
        return np.diag(self.diag) + self.sigma * np.outer(self.coupling, self.coupling)


def build_matrix(config: DimensionlessConfig, m: int) -> SineBasisMatrix:
    if m < 2:
        raise ValueError("truncation order must be at least 2")
    idx = np.arange(1, m + 1)
    diag = (idx * np.pi) ** 2
    if config.is_exact:
        p, n = config.rational.p, config.rational.n
        r = (idx * p) % (2 * n)
        u = np.sin(np.pi * r / n)
        u[r % n == 0] = 0.0
    else:
        u = np.sin(idx * np.pi * config.rho)
    sigma = 0.0 if math.isinf(config.f) else -4.0 / config.f
    return SineBasisMatrix(m, diag, u, sigma)


def _secular_root(d: np.ndarray, u2: np.ndarray, sigma: float, lo: float, hi: float, w_lo_pos: bool) -> float:
    """Bisect 1 + sigma * sum(u2/(d - lam)) on (lo, hi); endpoint signs are known.

    ``w_lo_pos`` states whether the secular function is positive just inside
    the left end, so the poles themselves are never evaluated.
    """
    for _ in range(220):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        w = 1.0 + sigma * np.sum(u2 / (d - mid))
        if w == 0.0:
            return mid
        if (w > 0.0) == w_lo_pos:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 8.0 * _EPS * max(1.0, abs(lo), abs(hi)):
            break
    return 0.5 * (lo + hi)


def lowest_eigenvalues(matrix: SineBasisMatrix, count: int) -> list[float]:
    """The ``count`` smallest eigenvalues, ascending.

    Decoupled (zero-coupling) rows contribute their diagonal values exactly;
    the rest interlace the coupled diagonal and come from the secular
    equation.
    """
    if count < 1 or count > matrix.m:
        raise ValueError("count must lie in [1, m]")
    mask = matrix.coupling != 0.0
    deflated = sorted(matrix.diag[~mask].tolist())
    sigma = matrix.sigma
    if sigma == 0.0 or not mask.any():
        return sorted(matrix.diag.tolist())[:count]

    d = matrix.diag[mask]
    u2 = matrix.coupling[mask] ** 2
    n_coupled = len(d)
    n_secular = min(count, n_coupled)
    roots: list[float] = []
    if sigma < 0.0:
        # roots sit below each coupled diagonal entry; w decreases across each gap
        lo0 = d[0] + sigma * float(np.sum(u2))
        roots.append(_secular_root(d, u2, sigma, lo0, d[0], True))
        for i in range(1, n_secular):
            roots.append(_secular_root(d, u2, sigma, d[i - 1], d[i], True))
    else:
        # roots sit above each coupled diagonal entry; w increases across each gap
        for i in range(n_secular):
            hi = d[i + 1] if i + 1 < n_coupled else d[i] + sigma * float(np.sum(u2))
            roots.append(_secular_root(d, u2, sigma, d[i], hi, False))
    merged = sorted(roots + deflated[:count])
    if len(merged) < count:
        raise ConvergenceFailure(f"only {len(merged)} eigenvalues available below request {count}")
    return merged[:count]


def oracle_spectrum(config: DimensionlessConfig, count: int, m: int) -> list[float]:
    """Lowest ``count`` eigenvalues of the truncated sine-basis Hamiltonian."""
    return lowest_eigenvalues(build_matrix(config, m), count)


def richardson(coarse, fine, ratio: float = 2.0):
    """Eliminate the leading 1/M truncation term from results at M and ratio*M."""
    coarse = np.asarray(coarse, dtype=float)
    fine = np.asarray(fine, dtype=float)
    return (ratio * fine - coarse) / (ratio - 1.0)


def extrapolated_oracle_spectrum(config: DimensionlessConfig, count: int, m: int) -> np.ndarray:
    """Richardson-extrapolated oracle eigenvalues from truncations m and 2m."""
    return richardson(oracle_spectrum(config, count, m), oracle_spectrum(config, count, 2 * m))


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-13, max_sweeps: int = 60) -> np.ndarray:
    """All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.

    Slow but simple; retained as the independent check of the secular solver.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n) or not np.allclose(a, a.T, atol=1e-12 * max(1.0, float(np.abs(a).max()))):
        raise ValueError("matrix must be square symmetric")
    scale = float(np.linalg.norm(a))
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * max(scale, 1.0):
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise ConvergenceFailure(f"Jacobi sweeps did not reduce off-diagonal norm below {tol}")
