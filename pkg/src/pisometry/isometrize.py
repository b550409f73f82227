"""Window-averaged p-norms that turn bounded representations into isometries.

The invariant mean behind the averaging argument is not computable, so it is
replaced by uniform averages over Folner windows: the whole group for finite
groups, symmetric integer intervals [-N, N] for the integers.  The averaged
norm is realized concretely as x -> ||Bx||_p for a stacked matrix B, which
exhibits it as a subspace-of-l^p norm; the isometry defect measures how far
the window average still is from exact invariance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exponents import PExponent, as_exponent
from .groups import FiniteGroup
from .pnorm import opnorm_boyd, vector_pnorm

__all__ = [
    "AmenableRep",
    "AveragedNorm",
    "SupNorm",
    "finite_group_rep",
    "integers_rep",
    "folner_norm",
    "sup_norm",
    "isometry_defect",
    "uniform_bound",
]

_HOM_TOL = 1e-9


@dataclass
class AmenableRep:
    """A uniformly bounded representation of a finite group or of the integers.

    kind "finite-group": one matrix per element, validated against the
    multiplication table.  kind "integers": a single invertible matrix T with
    pi(n) = T^n; powers are cached as windows grow.  bound_estimate records
    the max Boyd lower bound of ||pi(g)|| over a probe window.
    """

    kind: str
    p: PExponent
    dim: int
    group: FiniteGroup | None = None
    matrices: list[np.ndarray] | None = None
    generator: np.ndarray | None = None
    bound_estimate: float = field(init=False, default=0.0)
    _powers: dict[int, np.ndarray] = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.kind == "finite-group":
            probe = self.default_window()
        elif self.kind == "integers":
            inv = np.linalg.inv(self.generator)
            if np.abs(self.generator @ inv - np.eye(self.dim)).max() > 1e-10:
                raise ValueError("integers generator is singular or too ill-conditioned")
            self._powers = {0: np.eye(self.dim, dtype=complex),
                            1: np.asarray(self.generator, dtype=complex), -1: inv}
            probe = list(range(-16, 17))
        else:
            raise ValueError(f"unknown representation kind {self.kind!r}")
        self.bound_estimate = uniform_bound(self, probe, self.p)

    def matrix(self, g) -> np.ndarray:
        if self.kind == "finite-group":
            return self.matrices[int(g)]
        k = int(g)
        if k not in self._powers:
            # walk out from the largest cached power of the same sign
            step = 1 if k > 0 else -1
            base = max((j for j in self._powers if j * step > 0), key=abs, default=0)
            acc = self._powers[base]
            for j in range(base + step, k + step, step):
                acc = acc @ self._powers[step]
                self._powers[j] = acc
        return self._powers[k]

    def default_window(self) -> list[int]:
        if self.kind == "finite-group":
            return list(range(self.group.order))
        raise ValueError("integer representations need an explicit window radius")

    def generators(self) -> list[int]:
        """Elements whose action the defect is measured against."""
        if self.kind == "finite-group":
            return [g for g in range(self.group.order) if g != 0]
        return [1, -1]


def finite_group_rep(group: FiniteGroup, matrices: Sequence[np.ndarray], p) -> AmenableRep:
    """Validate pi(g)pi(h) = pi(gh) elementwise to 1e-9 and wrap."""
    mats = [np.asarray(m, dtype=complex) for m in matrices]
    if len(mats) != group.order:
        raise ValueError(f"need {group.order} matrices, got {len(mats)}")
    d = mats[0].shape[0]
    for m in mats:
        if m.shape != (d, d):
            raise ValueError("all representation matrices must share one square shape")
    for i in range(group.order):
        for j in range(group.order):
            err = np.abs(mats[i] @ mats[j] - mats[group.table[i, j]]).max()
            if err > _HOM_TOL:
                raise ValueError(
                    f"not a homomorphism: pi({i})pi({j}) misses pi({i}*{j}) by {err:.3e}")
    return AmenableRep(kind="finite-group", p=as_exponent(p), dim=d,
                       group=group, matrices=mats)


def integers_rep(T: np.ndarray, p) -> AmenableRep:
    """Representation of the integers generated by one invertible matrix."""
    T = np.asarray(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValueError("generator must be a square matrix")
    return AmenableRep(kind="integers", p=as_exponent(p), dim=T.shape[0], generator=T)


@dataclass
class AveragedNorm:
    """||x||_new = ||stack x||_p with stack rows |F|^(-1/p) pi(g), g in window.

    By construction ||stack x||_p^p equals the uniform window average of
    ||pi(g) x||_p^p, and full column rank makes it a genuine norm.
    """

    stack: np.ndarray
    window: list
    p: PExponent

    def evaluate(self, x: np.ndarray) -> float:
        return vector_pnorm(self.stack @ np.asarray(x, dtype=complex), self.p)


@dataclass
class SupNorm:
    """||x||_new = max_{g in window} ||pi(g) x||_p, the (p,1) route.

    Not a p-norm in general, but invariant whenever the window is the whole
    group, and always equivalent to the original norm.
    """

    matrices: list[np.ndarray]
    window: list
    p: PExponent

    def evaluate(self, x: np.ndarray) -> float:
        x = np.asarray(x, dtype=complex)
        return max(vector_pnorm(m @ x, self.p) for m in self.matrices)


def _window_matrices(rep: AmenableRep, window: Sequence) -> list[np.ndarray]:
    if len(window) == 0:
        raise ValueError("window must be nonempty")
    return [rep.matrix(g) for g in window]


def folner_norm(rep: AmenableRep, window: Sequence) -> AveragedNorm:
    """Stack the window average into a single (|F| d) x d matrix."""
    mats = _window_matrices(rep, window)
    scale = len(mats) ** (-1.0 / rep.p.p)
    stack = np.vstack([scale * m for m in mats])
    if np.linalg.matrix_rank(stack) < rep.dim:
        raise ValueError("averaged norm is degenerate: stack lost column rank")
    return AveragedNorm(stack=stack, window=list(window), p=rep.p)


def sup_norm(rep: AmenableRep, window: Sequence) -> SupNorm:
    return SupNorm(matrices=_window_matrices(rep, window), window=list(window), p=rep.p)


def _ascend_defect(norm: AveragedNorm, mg: np.ndarray, x: np.ndarray,
                   steps: int = 6) -> float:
    """Refine one sample by subgradient ascent on |log ratio|.

    ratio(x) = ||B pi(g) x||_p / ||B x||_p; the Wirtinger gradient of each
    log-term is B^H psi_p(Bx) / ||Bx||_p^p up to positive scale, so the ascent
    direction only needs the signed-power dual vectors.  Backtracking keeps
    every accepted step an improvement, so the refined defect dominates the
    raw sample.
    """
    B = norm.stack
    p = norm.p.p

    def psi(v):
        a = np.abs(v)
        out = np.zeros_like(v)
        nz = a > 0
        out[nz] = v[nz] / a[nz] * a[nz] ** (p - 1.0)
        return out

    def ratio(x):
        return norm.evaluate(mg @ x) / norm.evaluate(x)

    best = abs(ratio(x) - 1.0)
    for _ in range(steps):
        num = B @ (mg @ x)
        den = B @ x
        nn = vector_pnorm(num, p)
        nd = vector_pnorm(den, p)
        if nn == 0.0 or nd == 0.0:
            break
        grad = (mg.conj().T @ (B.conj().T @ psi(num))) / nn ** p \
            - (B.conj().T @ psi(den)) / nd ** p
        if ratio(x) < 1.0:
            grad = -grad
        gn = np.linalg.norm(grad)
        if gn == 0.0:
            break
        grad /= gn
        step = 0.5
        improved = False
        while step > 1e-4:
            cand = x + step * grad
            cn = np.linalg.norm(cand)
            if cn > 0:
                cand /= cn
                val = abs(ratio(cand) - 1.0)
                if val > best:
                    best, x, improved = val, cand, True
                    break
            step /= 2.0
        if not improved:
            break
    return best


def isometry_defect(rep: AmenableRep, norm, samples: int, seed: int) -> float:
    """Worst relative change of the averaged norm under the generators.

    max over generators g and sampled unit vectors x of
    |new(pi(g)x) - new(x)| / new(x), with the top random samples refined by a
    few ascent steps when the norm carries a stack (gradients are available).
    Zero exactly when the representation is isometric in the new norm.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    xs = rng.standard_normal((samples, rep.dim)) + 1j * rng.standard_normal((samples, rep.dim))
    worst = 0.0
    for g in rep.generators():
        mg = rep.matrix(g)
        vals = []
        for x in xs:
            base = norm.evaluate(x)
            vals.append(abs(norm.evaluate(mg @ x) - base) / base)
        vals = np.asarray(vals)
        worst = max(worst, float(vals.max()))
        if isinstance(norm, AveragedNorm):
            for k in np.argsort(vals)[-3:]:
                x = xs[k] / np.linalg.norm(xs[k])
                worst = max(worst, _ascend_defect(norm, mg, x))
    return worst


def uniform_bound(rep: AmenableRep, window: Sequence, p) -> float:
    """Lower estimate of sup_g ||pi(g)||_{p->p}: max Boyd bound over the window.

    Geometric growth across nested windows is the practical flag that a
    representation is not uniformly bounded at all.
    """
    mats = _window_matrices(rep, window)
    ex = as_exponent(p)
    return max(opnorm_boyd(m, ex).lower for m in mats)
