"""Independent oracles shared by the test modules.

These deliberately avoid the library's own norm/eigen code paths: the grid
oracle walks the unit l^p sphere of C^2 directly, and the summation oracles
re-accumulate matrix formulas elementwise.
"""

from __future__ import annotations

import numpy as np


def grid_opnorm_2x2(M, p: float, coarse: int = 1201, refine: int = 1201) -> float:
    """Brute-force ||M||_{p->p} for 2x2 M by sphere search.

    Unit vectors are parameterized by modulus split t and relative phase psi,
    x = (t^(1/p), (1-t)^(1/p) e^{i psi}); a global phase changes nothing.
    Coarse grid plus one local refinement pass gives ~1e-8 accuracy on the
    smooth objectives used in the tests (well over 10^6 samples total).
    """
    M = np.asarray(M, dtype=complex)
    assert M.shape == (2, 2)

    def value(t, psi):
        x0 = t ** (1.0 / p)
        x1 = (1.0 - t) ** (1.0 / p) * np.exp(1j * psi)
        y0 = M[0, 0] * x0 + M[0, 1] * x1
        y1 = M[1, 0] * x0 + M[1, 1] * x1
        return (np.abs(y0) ** p + np.abs(y1) ** p) ** (1.0 / p)

    t = np.linspace(0.0, 1.0, coarse)[:, None]
    psi = np.linspace(0.0, 2.0 * np.pi, coarse)[None, :]
    v = value(t, psi)
    i, j = np.unravel_index(np.argmax(v), v.shape)
    dt = 2.0 / (coarse - 1)
    dpsi = 2.0 * (2.0 * np.pi) / (coarse - 1)
    t2 = np.clip(np.linspace(t[i, 0] - dt, t[i, 0] + dt, refine), 0.0, 1.0)[:, None]
    p2 = np.linspace(psi[0, j] - dpsi, psi[0, j] + dpsi, refine)[None, :]
    return float(value(t2, p2).max())


def pnorm_loop(v, p: float) -> float:
    """Scalar-loop l^p norm, no vectorized shortcuts."""
    total = 0.0
    for z in np.ravel(v):
        total += abs(z) ** p
    return total ** (1.0 / p)


def matrix_sum_oracle(terms) -> np.ndarray:
    """Elementwise re-summation of a list of matrices, scalar loops only."""
    terms = [np.asarray(t, dtype=complex) for t in terms]
    d = terms[0].shape
    out = np.zeros(d, dtype=complex)
    for t in terms:
        for i in range(d[0]):
            for j in range(d[1]):
                out[i, j] += t[i, j]
    return out
