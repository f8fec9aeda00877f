"""The single-qudit family X(alpha) and its eigenbases.

``X(alpha) = omega**(-alpha) * (sum_{n<D-1} |n><n+1| + omega**(alpha*D) |D-1><0|)``
has eigenvalues ``omega**n`` with eigenvectors
``|n>_alpha = D**-0.5 * sum_m omega**((n+alpha)*m) |m>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConsistencyError, InvalidArgumentError
from .qudit_algebra import (
    StateVector,
    _check_dim,
    as_rational,
    inner_product,
    is_integer,
    omega_power,
)

EIGEN_TOL = 1e-10


@dataclass(frozen=True)
class LocalObservable:
    dim: int
    alpha: Fraction

    def __post_init__(self):
        _check_dim(self.dim)
        object.__setattr__(self, "alpha", as_rational(self.alpha))

    def matrix(self) -> np.ndarray:
        return x_of_alpha(self.dim, self.alpha)

    def eigenvector(self, n: int) -> StateVector:
        return eigenvector(self.dim, self.alpha, n)


def x_of_alpha(D: int, alpha) -> np.ndarray:
    _check_dim(D)
    alpha = as_rational(alpha)
    M = np.zeros((D, D), dtype=complex)
    hop = omega_power(D, -alpha)
    for n in range(D - 1):
        M[n, n + 1] = hop
    # one combined exponent so the wraparound entry is a single rounding
    M[D - 1, 0] = omega_power(D, alpha * D - alpha)
    return M


def eigenvector(D: int, alpha, n: int) -> StateVector:
    _check_dim(D)
    alpha = as_rational(alpha)
    if not 0 <= n < D:
        raise InvalidArgumentError(f"eigen-index {n} outside 0..{D - 1}")
    amps = [omega_power(D, (n + alpha) * m) for m in range(D)]
    return StateVector(1, D, np.array(amps) / math.sqrt(D))


def eigenbasis(D: int, alpha) -> np.ndarray:
    """Matrix whose column ``n`` is ``|n>_alpha``."""
    return np.column_stack([eigenvector(D, alpha, n).amplitudes for n in range(D)])


def normalize_alpha(alpha) -> tuple[Fraction, int]:
    """Split ``alpha = r + a`` with ``r`` in [0, 1) and integer ``a``.

    ``X(alpha) == omega**(-a) * X(r)``, so ``a`` is the absorbed phase exponent.
    """
    alpha = as_rational(alpha)
    a = math.floor(alpha)
    return alpha - a, a


def equivalent(alpha, beta) -> bool:
    """True iff X(alpha) and X(beta) share a measurement basis (up to relabeling)."""
    return is_integer(as_rational(beta) - as_rational(alpha))


def delta_D(gamma, D: int) -> int:
    gamma = as_rational(gamma)
    return int(is_integer(gamma) and gamma.numerator % D == 0)


def overlap_closed_form(D: int, xi) -> float:
    """``sin(pi xi)**2 / (D**2 sin(pi xi / D)**2)``, with the exact delta rule at integer xi."""
    xi = as_rational(xi)
    if is_integer(xi):
        return float(delta_D(xi, D))
    # numerator has period 1, denominator period D
    x = float(xi % D)
    return math.sin(math.pi * x) ** 2 / (D**2 * math.sin(math.pi * x / D) ** 2)


def overlap_sq(D: int, n: int, alpha, m: int, beta, tol: float = EIGEN_TOL) -> float:
    """``|<n_alpha | m_beta>|**2``, computed twice and cross-checked.

    The direct inner product of the two eigenvectors must agree with the
    closed form in ``xi = m - n + beta - alpha``. Integer ``xi`` returns the
    exact delta value.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    direct = abs(inner_product(eigenvector(D, alpha, n), eigenvector(D, beta, m))) ** 2
    closed = overlap_closed_form(D, m - n + beta - alpha)
    if abs(direct - closed) > tol:
        raise ConsistencyError(
            f"overlap mismatch D={D} n={n} alpha={alpha} m={m} beta={beta}: "
            f"direct={direct!r} closed={closed!r}"
        )
    return closed
