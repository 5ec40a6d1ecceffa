"""Scalar special functions used by the one-particle basis.

Chebyshev polynomials of the first kind serve as the radial and feature
bases; complex spherical harmonics (orthonormal on the sphere, with the
Condon-Shortley phase) serve as the angular basis in three dimensions.
The associated Legendre values are built by the standard upward-l
recursion, which is stable for the moderate l this package needs, and the
normalisation factor uses exact integer factorial ratios before the final
square root.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


def chebyshev(k: int, x: float) -> float:
    """Chebyshev polynomial T_k(x) via the three-term recurrence."""
    if k < 0:
        raise ValueError("degree must be non-negative")
    if k == 0:
        return 1.0
    prev, cur = 1.0, x
    for _ in range(k - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def legendre_assoc(l: int, m: int, x: float) -> float:
    """Associated Legendre P_l^m(x) for 0 <= m <= l, Condon-Shortley phase."""
    if not 0 <= m <= l:
        raise ValueError(f"need 0 <= m <= l, got l={l}, m={m}")
    sx = math.sqrt(max(0.0, (1.0 - x) * (1.0 + x)))
    # P_m^m = (-1)^m (2m-1)!! (1-x^2)^(m/2)
    pmm = 1.0
    for k in range(1, m + 1):
        pmm *= -(2 * k - 1) * sx
    if l == m:
        return pmm
    pm1 = x * (2 * m + 1) * pmm  # P_{m+1}^m
    if l == m + 1:
        return pm1
    for ll in range(m + 2, l + 1):
        pmm, pm1 = pm1, (x * (2 * ll - 1) * pm1 - (ll + m - 1) * pmm) / (ll - m)
    return pm1


def sph_harm(l: int, m: int, theta: float, phi: float) -> complex:
    """Complex orthonormal spherical harmonic Y_l^m(theta, phi).

    ``theta`` is the polar angle in [0, pi], ``phi`` the azimuth.
    """
    if abs(m) > l:
        raise ValueError(f"need |m| <= l, got l={l}, m={m}")
    am = abs(m)
    ratio = Fraction(math.factorial(l - am), math.factorial(l + am))
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * float(ratio))
    y = norm * legendre_assoc(l, am, math.cos(theta)) * cmath.exp(1j * am * phi)
    if m < 0:
        y = (-1) ** am * y.conjugate()
    return y
