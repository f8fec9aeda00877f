"""Exact phases and dense qudit linear algebra.

Phase exponents are kept as :class:`fractions.Fraction` so that every
congruence and integrality decision is exact. Complex floats appear only when
a matrix or state vector is materialized.

Joint states are indexed in mixed radix with party 1 as the most significant
digit, i.e. ``amplitudes.reshape((D,) * N)[m_1, ..., m_N]``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import InvalidArgumentError

UNITARY_TOL = 1e-12

INDEX_CONVENTION = "mixed-radix, party 1 most significant digit"


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"1/3"`` to a Fraction.

    Floats are rejected: an exponent decided by float rounding is exactly what
    this module exists to avoid.
    """
    if isinstance(value, bool):
        raise InvalidArgumentError("booleans are not phase exponents")
    if isinstance(value, (Rational, str)):
        return Fraction(value)
    raise InvalidArgumentError(f"expected an exact rational, got {type(value).__name__}")


def is_integer(q: Fraction) -> bool:
    return q.denominator == 1


def _check_dim(D: int) -> None:
    if not isinstance(D, (int, np.integer)) or D < 2:
        raise InvalidArgumentError(f"local dimension must be an integer >= 2, got {D!r}")


def omega_power(D: int, c) -> complex:
    """Return ``exp(2*pi*i*c/D)``.

    ``c`` is reduced modulo ``D`` exactly before conversion, so
    ``omega_power(D, c + D) == omega_power(D, c)`` holds bit for bit.
    """
    _check_dim(D)
    c = as_rational(c) % D
    if c == 0:
        return 1.0 + 0.0j
    if 2 * c == D:
        return -1.0 + 0.0j
    return cmath.exp(2j * math.pi * (c.numerator / (c.denominator * D)))


@dataclass(frozen=True)
class PhaseFunction:
    """Linear phase ``f(n) = coefficient * n``."""

    coefficient: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficient", as_rational(self.coefficient))

    def __call__(self, n: int) -> Fraction:
        return self.coefficient * n


@dataclass(frozen=True, eq=False)
class StateVector:
    n_parties: int
    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.dim**self.n_parties:
            raise InvalidArgumentError(
                f"expected {self.dim}**{self.n_parties} amplitudes, got {amps.size}"
            )
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((self.dim,) * self.n_parties)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        return StateVector(self.n_parties, self.dim, self.amplitudes / self.norm())

    def __sub__(self, other: "StateVector") -> np.ndarray:
        _check_same_dims(self, other)
        return self.amplitudes - other.amplitudes

    @classmethod
    def basis(cls, digits, dim: int) -> "StateVector":
        digits = tuple(digits)
        amps = np.zeros((dim,) * len(digits), dtype=complex)
        amps[digits] = 1.0
        return cls(len(digits), dim, amps)


def _check_same_dims(a: StateVector, b: StateVector) -> None:
    if (a.n_parties, a.dim) != (b.n_parties, b.dim):
        raise InvalidArgumentError(
            f"dimension mismatch: (N={a.n_parties}, D={a.dim}) vs (N={b.n_parties}, D={b.dim})"
        )


def is_unitary(M: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    M = np.asarray(M)
    eye = np.eye(M.shape[0])
    return bool(np.max(np.abs(M.conj().T @ M - eye)) <= tol)


def fourier_matrix(D: int) -> np.ndarray:
    """Quantum Fourier transform, entry ``(m, n) = omega**(m*n) / sqrt(D)``."""
    _check_dim(D)
    F = np.array([[omega_power(D, (m * n) % D) for n in range(D)] for m in range(D)])
    return F / math.sqrt(D)


def clock_matrix(D: int) -> np.ndarray:
    """Reference observable ``Z = sum_n omega**n |n><n|``."""
    return phase_shifter(D, PhaseFunction(1))


def phase_shifter(D: int, f: PhaseFunction) -> np.ndarray:
    """Diagonal ``sum_n omega**f(n) |n><n|``."""
    _check_dim(D)
    return np.diag([omega_power(D, f(n)) for n in range(D)])


def apply_local(M: np.ndarray, site: int, s: StateVector) -> StateVector:
    """Apply a single-qudit matrix at party ``site`` (1-based) of ``s``.

    Works on the ``(D,)*N`` tensor view; the ``D**N``-square operator is never
    built.
    """
    M = np.asarray(M)
    if M.shape != (s.dim, s.dim):
        raise InvalidArgumentError(f"matrix shape {M.shape} does not act on D={s.dim}")
    if not 1 <= site <= s.n_parties:
        raise InvalidArgumentError(f"site {site} outside 1..{s.n_parties}")
    axis = site - 1
    out = np.tensordot(M, s.tensor, axes=([1], [axis]))
    out = np.moveaxis(out, 0, axis)
    return StateVector(s.n_parties, s.dim, out)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    _check_same_dims(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))
