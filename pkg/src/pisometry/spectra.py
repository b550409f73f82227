"""Eigenvalue computation and the two spectral experiments.

The lens experiment draws random l^p isometries, assembles mu_1, and checks
that every eigenvalue stays inside B(0,1) n {|Im z| <= theta}.  The Kesten
experiment tracks the Perron value of truncated balls converging from below
to sqrt(2r-1)/r.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .errors import NumericError
from .exponents import as_exponent, theta
from .freegroup import CayleyBall, GeneratorFamily, mu1_of_representation, \
    mu1_truncated_sparse, random_lp_isometry

__all__ = [
    "Spectrum",
    "LensTrial",
    "LensReport",
    "eigenvalues",
    "spectral_radius_sparse",
    "kesten_radius",
    "lens_experiment",
]

DENSE_CAP = 2000


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicity, sorted by (Re, Im), plus the worst
    eigenpair residual max ||Mv - lambda v||_2 over unit v."""

    eigenvalues: np.ndarray
    residual: float


def _sort_eigenvalues(w: np.ndarray) -> np.ndarray:
    # round at 1e-12 so ties are broken identically across runs
    key_re = np.round(w.real, 12)
    key_im = np.round(w.imag, 12)
    return w[np.lexsort((key_im, key_re))]


def eigenvalues(M, tol: float = 1e-8) -> Spectrum:
    """Full dense spectrum with a residual certificate.

    Residual above tol, or a LAPACK convergence failure, raises NumericError
    with the partial diagnostics that are available.
    """
    m = np.asarray(M, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"need a square matrix, got shape {m.shape}")
    if m.shape[0] > DENSE_CAP:
        raise ValueError(f"dense solver capped at {DENSE_CAP}, got {m.shape[0]}; "
                         "use spectral_radius_sparse for large balls")
    try:
        w, v = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver did not converge on {m.shape}: {exc}") from exc
    norms = np.linalg.norm(v, axis=0)
    norms[norms == 0.0] = 1.0
    resid_cols = np.linalg.norm(m @ v - v * w[None, :], axis=0) / norms
    residual = float(resid_cols.max())
    if residual > tol:
        raise NumericError(
            f"eigenpair residual {residual:.3e} exceeds tol {tol:.3e} "
            f"on a {m.shape[0]}x{m.shape[0]} matrix")
    return Spectrum(eigenvalues=_sort_eigenvalues(w), residual=residual)


def kesten_radius(r: int) -> float:
    """sqrt(2r-1)/r, the l^2 spectral radius of the simple random walk on F_r."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    return math.sqrt(2 * r - 1) / r


def spectral_radius_sparse(b: CayleyBall, tol: float = 1e-10,
                           max_iter: int = 500_000) -> float:
    """Perron value of the truncated mu_1 by shifted power iteration.

    The ball operator is nonnegative symmetric, so iterating on A + I with a
    positive start vector converges to the Perron pair without the +-lambda
    oscillation a bipartite adjacency would otherwise cause.  Terminates when
    the symmetric residual bound certifies relative error <= tol.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    A = mu1_truncated_sparse(b)
    n = A.shape[0]
    if n == 1:
        return 0.0
    x = np.ones(n) / math.sqrt(n)
    for it in range(1, max_iter + 1):
        y = A @ x + x
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return 0.0
        x = y / ny
        if it % 10 == 0 or it == max_iter:
            rho = float(x @ (A @ x))
            res = float(np.linalg.norm(A @ x - rho * x))
            # |lambda_max - rho| <= res for symmetric A
            if res <= tol * max(rho, 1e-300):
                return rho
    raise NumericError(f"power iteration did not reach tol={tol} in {max_iter} steps "
                       f"(last residual {res:.3e})")


@dataclass(frozen=True)
class LensTrial:
    trial: int
    seed: int
    max_abs: float
    max_im: float
    margin_abs: float
    margin_im: float


@dataclass
class LensReport:
    """Per-trial extremes of |lambda| and |Im lambda| for random-isometry mu_1."""

    p: float
    r: int
    d: int
    theta: float
    trials: list[LensTrial] = field(default_factory=list)
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def worst_margin_abs(self) -> float:
        return min(t.margin_abs for t in self.trials)

    @property
    def worst_margin_im(self) -> float:
        return min(t.margin_im for t in self.trials)

    def violations(self, tol: float = 1e-8) -> int:
        return sum(1 for t in self.trials if t.margin_abs < -tol or t.margin_im < -tol)

    def write_csv(self, fh: IO[str]) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["trial", "seed", "p", "r", "d",
                         "max_abs", "max_im", "margin_abs", "margin_im"])
        for t in self.trials:
            writer.writerow([t.trial, t.seed, f"{self.p:.17g}", self.r, self.d,
                             f"{t.max_abs:.17g}", f"{t.max_im:.17g}",
                             f"{t.margin_abs:.17g}", f"{t.margin_im:.17g}"])


def lens_experiment(p, r: int, d: int, trials: int, seed: int,
                    eig_tol: float = 1e-8) -> LensReport:
    """Sample isometric generator families and test spectral lens containment.

    Trial k draws r isometries with seeds seed + k*r + j, forms mu_1, and
    records max |lambda| and max |Im lambda| together with the margins
    1 - max|lambda| and theta - max|Im lambda|.  An eigensolver failure
    aborts only that trial; the diagnostic is kept in the report.
    """
    ex = as_exponent(p)
    if r < 1 or d < 1 or trials < 1:
        raise ValueError("need r >= 1, d >= 1, trials >= 1")
    th = theta(ex)
    report = LensReport(p=ex.p, r=r, d=d, theta=th)
    for k in range(trials):
        trial_seed = seed + k * r
        fam = GeneratorFamily([random_lp_isometry(d, trial_seed + j) for j in range(r)])
        mu1 = mu1_of_representation(fam)
        try:
            spec = eigenvalues(mu1, tol=eig_tol)
        except NumericError as exc:
            report.failures.append((k, str(exc)))
            continue
        max_abs = float(np.abs(spec.eigenvalues).max())
        max_im = float(np.abs(spec.eigenvalues.imag).max())
        report.trials.append(LensTrial(
            trial=k, seed=trial_seed, max_abs=max_abs, max_im=max_im,
            margin_abs=1.0 - max_abs, margin_im=th - max_im))
    return report
