"""Conjugate-exponent arithmetic and the two planar regions it controls.

The interpolation weight theta = |2/p - 1| drives everything downstream: it
is the exponent pair's distance from 2 in interpolation scale, the height of
the spectral lens B(0,1) n {|Im z| <= theta}, and the quantity a witness
point has to beat to escape the lens while staying inside the parameter
ellipse with foci +-sqrt(2r-1)/r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PExponent",
    "LensRegion",
    "PytlikEllipse",
    "as_exponent",
    "theta",
    "conjugate",
    "lens_contains",
    "ellipse_contains",
    "pytlik_witness",
]

_CONJ_TOL = 1e-12


@dataclass(frozen=True)
class PExponent:
    """A Hoelder exponent p with 1 < p < infinity, strictly.

    The endpoints are rejected at construction: p = 1 and p = infinity have
    no conjugate in the open interval and the averaging constructions that
    consume this type need reflexivity.
    """

    p: float

    def __post_init__(self) -> None:
        p = float(self.p)
        if not math.isfinite(p) or p <= 1.0:
            raise ValueError(f"exponent must satisfy 1 < p < inf, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        """Conjugate exponent, 1/p + 1/q = 1."""
        return self.p / (self.p - 1.0)

    @property
    def theta(self) -> float:
        return theta(self)

    def conjugate(self) -> "PExponent":
        return conjugate(self)


def as_exponent(p) -> PExponent:
    """Coerce a float (or PExponent) to a validated PExponent."""
    return p if isinstance(p, PExponent) else PExponent(float(p))


def theta(p) -> float:
    """Interpolation weight |2/p - 1|, in [0, 1).

    For p <= 2 this is 2/p - 1 directly; for p > 2 the value of the
    conjugate exponent is returned, so theta(p) == theta(q) always.
    """
    ex = as_exponent(p)
    return abs(2.0 / ex.p - 1.0)


def conjugate(p) -> PExponent:
    """The exponent q with 1/p + 1/q = 1."""
    ex = as_exponent(p)
    return PExponent(ex.q)


@dataclass(frozen=True)
class LensRegion:
    """B(0,1) n {z : |Im z| <= theta}; symmetric under conjugation and negation."""

    theta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.theta < 1.0:
            raise ValueError(f"lens height must lie in [0, 1), got {self.theta!r}")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        return lens_contains(z, self.theta, tol)


def lens_contains(z: complex, theta: float, tol: float = 0.0) -> bool:
    """Membership in the closed lens, with additive slack tol on both tests."""
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    z = complex(z)
    return abs(z) <= 1.0 + tol and abs(z.imag) <= theta + tol


@dataclass(frozen=True)
class PytlikEllipse:
    """Open ellipse |z - c| + |z + c| < 2 with foci c = +-sqrt(2r-1)/r.

    Semi-major axis 1, semi-minor axis (r-1)/r; the identity
    sqrt(1 - c^2) = (r-1)/r is exact for every integer r >= 2.
    """

    r: int

    def __post_init__(self) -> None:
        if int(self.r) != self.r or self.r < 2:
            raise ValueError(f"ellipse parameter must be an integer >= 2, got {self.r!r}")
        object.__setattr__(self, "r", int(self.r))

    @property
    def focus(self) -> float:
        return math.sqrt(2 * self.r - 1) / self.r

    @property
    def semi_minor(self) -> float:
        return (self.r - 1) / self.r

    def contains(self, z: complex) -> bool:
        return ellipse_contains(z, self.r)


def ellipse_contains(z: complex, r: int) -> bool:
    """Strict membership |z - c| + |z + c| < 2, c = sqrt(2r-1)/r."""
    c = PytlikEllipse(r).focus
    z = complex(z)
    return abs(z - c) + abs(z + c) < 2.0


def pytlik_witness(p) -> tuple[int, complex]:
    """Minimal r and a point z0 inside the r-ellipse but above the lens.

    r is the least integer >= 2 with theta(p) < (r-1)/r; z0 sits on the
    imaginary axis at the midpoint between the lens boundary and the ellipse
    semi-minor axis, which maximizes the margin on both predicates.  Such an
    r always exists because theta < 1.
    """
    th = theta(p)
    r = 2
    while (r - 1) / r <= th:
        r += 1
    ellipse = PytlikEllipse(r)
    z0 = 1j * (th + ellipse.semi_minor) / 2.0
    # boundary safety: keep a 1e-12 cushion inside the strict ellipse inequality
    c = ellipse.focus
    assert abs(z0 - c) + abs(z0 + c) <= 2.0 - 1e-12, "witness landed on the ellipse boundary"
    assert z0.imag > th, "witness failed to escape the lens"
    return r, z0
