"""Generalized GHZ states, concurrent composite observables and their statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import ConsistencyError, InvalidArgumentError, ResourceLimitError
from .observables import eigenbasis, x_of_alpha
from .qudit_algebra import (
    PhaseFunction,
    StateVector,
    _check_dim,
    apply_local,
    as_rational,
    inner_product,
    omega_power,
)

AMP_BOUND = 10**7
RESIDUAL_TOL = 1e-10
SUPPORT_TOL = 1e-10


def check_amp_bound(N: int, D: int, amp_bound: int = AMP_BOUND) -> None:
    if D**N > amp_bound:
        raise ResourceLimitError(f"D**N = {D}**{N} = {D**N} amplitudes exceeds bound {amp_bound}")


@dataclass(frozen=True, eq=False)
class GhzState:
    n_parties: int
    dim: int
    vector: StateVector


def ghz_state(N: int, D: int, amp_bound: int = AMP_BOUND) -> GhzState:
    """``(1/sqrt(D)) * sum_n |n>^{(x)N}``."""
    _check_dim(D)
    if N < 2:
        raise InvalidArgumentError(f"need at least 2 parties, got N={N}")
    check_amp_bound(N, D, amp_bound)
    amps = np.zeros((D,) * N, dtype=complex)
    for n in range(D):
        amps[(n,) * N] = 1.0 / math.sqrt(D)
    return GhzState(N, D, StateVector(N, D, amps))


def _state(s) -> StateVector:
    return s.vector if isinstance(s, GhzState) else s


def check_invariance(phases: Sequence[PhaseFunction], D: int) -> bool:
    """True iff ``sum_k f_k(n) == 0 (mod D)`` for every ``n`` in ``0..D-1``."""
    _check_dim(D)
    return all(sum((f(n) for f in phases), Fraction(0)) % D == 0 for n in range(D))


@dataclass(frozen=True)
class ConstructionParams:
    """N1 parties measure X, N2 measure Y = X(1/N2); ``D = d*g`` and ``N2 = eta*g``."""

    N: int
    D: int
    N1: int
    N2: int
    g: int
    d: int
    eta: int

    def __post_init__(self):
        problems = []
        if self.N1 < 1 or self.N2 < 1:
            problems.append("N1 and N2 must be >= 1")
        if self.N1 + self.N2 != self.N:
            problems.append(f"N1 + N2 = {self.N1 + self.N2} != N = {self.N}")
        if self.g < 2:
            problems.append(f"divisor g = {self.g} must be a nonunit (>= 2)")
        if self.D != self.d * self.g:
            problems.append(f"D = {self.D} != d*g = {self.d}*{self.g}")
        if self.N2 != self.eta * self.g:
            problems.append(f"N2 = {self.N2} != eta*g = {self.eta}*{self.g}")
        if problems:
            raise InvalidArgumentError("invalid construction: " + "; ".join(problems))

    @classmethod
    def from_n2(cls, N: int, D: int, N2: int, g: Optional[int] = None) -> "ConstructionParams":
        """Fill in the derived fields; ``g`` defaults to ``gcd(N2, D)``."""
        if g is None:
            g = math.gcd(N2, D)
        if g < 2 or D % g or N2 % g:
            raise InvalidArgumentError(
                f"no nonunit divisor g={g} common to N2={N2} and D={D}"
            )
        return cls(N=N, D=D, N1=N - N2, N2=N2, g=g, d=D // g, eta=N2 // g)

    @property
    def y_alpha(self) -> Fraction:
        return Fraction(1, self.N2)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("N", "D", "N1", "N2", "g", "d", "eta")}


@dataclass(frozen=True)
class MeasurementSetting:
    alphas: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(as_rational(a) for a in self.alphas))

    def __len__(self):
        return len(self.alphas)


@dataclass(frozen=True)
class CompositeObservable:
    """``omega**global_phase_exp * X(site_alphas[0]) (x) ... (x) X(site_alphas[N-1])``."""

    n_parties: int
    dim: int
    global_phase_exp: Fraction
    site_alphas: tuple

    def __post_init__(self):
        object.__setattr__(self, "global_phase_exp", as_rational(self.global_phase_exp))
        object.__setattr__(self, "site_alphas", tuple(as_rational(a) for a in self.site_alphas))
        if len(self.site_alphas) != self.n_parties:
            raise InvalidArgumentError(
                f"{len(self.site_alphas)} site parameters for {self.n_parties} parties"
            )

    @property
    def setting(self) -> MeasurementSetting:
        return MeasurementSetting(self.site_alphas)

    def reduced(self, party: int) -> "CompositeObservable":
        """Drop ``party`` (1-based); the global phase is kept as is."""
        if not 1 <= party <= self.n_parties:
            raise InvalidArgumentError(f"party {party} outside 1..{self.n_parties}")
        alphas = self.site_alphas[: party - 1] + self.site_alphas[party:]
        return CompositeObservable(self.n_parties - 1, self.dim, self.global_phase_exp, alphas)

    def folded_phases(self) -> list[PhaseFunction]:
        """Linear phase list of a unitary ``U`` with ``U X^{(x)N} U^dag`` equal to this observable.

        Uses ``omega**c * X(a) == X(a - c)`` to push the global phase onto site 1.
        """
        coeffs = list(self.site_alphas)
        coeffs[0] -= self.global_phase_exp
        return [PhaseFunction(c) for c in coeffs]

    def label(self, y_alpha: Optional[Fraction] = None) -> str:
        parts = []
        for a in self.site_alphas:
            if a == 0:
                parts.append("X")
            elif y_alpha is not None and a == y_alpha:
                parts.append("Y")
            else:
                parts.append(f"X({a})")
        prefix = "" if self.global_phase_exp == 0 else f"w^{self.global_phase_exp} "
        return prefix + "*".join(parts)


def y_block_labels(p: ConstructionParams, k: int) -> tuple[str, ...]:
    """Setting labels of the k-th observable, ``k`` in ``1..N``.

    ``v_1`` is X on parties 1..N1 and Y on the rest; ``v_k`` is ``v_1`` shifted
    cyclically right by ``k - 1`` parties.
    """
    if not 1 <= k <= p.N:
        raise InvalidArgumentError(f"observable index {k} outside 1..{p.N}")
    base = ("X",) * p.N1 + ("Y",) * p.N2
    return tuple(base[(i - (k - 1)) % p.N] for i in range(p.N))


def build_concurrent_set(p: ConstructionParams) -> list[CompositeObservable]:
    """``[v_0, v_1, ..., v_N]``: all-X plus the N cyclic X/Y patterns carrying a factor omega."""
    obs = [CompositeObservable(p.N, p.D, 0, (0,) * p.N)]
    for k in range(1, p.N + 1):
        alphas = tuple(0 if lab == "X" else p.y_alpha for lab in y_block_labels(p, k))
        obs.append(CompositeObservable(p.N, p.D, 1, alphas))
    return obs


def _check_obs_dims(v: CompositeObservable, s: StateVector) -> None:
    if (v.n_parties, v.dim) != (s.n_parties, s.dim):
        raise InvalidArgumentError(
            f"observable (N={v.n_parties}, D={v.dim}) vs state (N={s.n_parties}, D={s.dim})"
        )


def apply_setting(setting: MeasurementSetting, s: StateVector) -> StateVector:
    if len(setting) != s.n_parties:
        raise InvalidArgumentError(f"{len(setting)} settings for {s.n_parties} parties")
    out = s
    for site, alpha in enumerate(setting.alphas, start=1):
        out = apply_local(x_of_alpha(s.dim, alpha), site, out)
    return out


def apply_composite(v: CompositeObservable, s) -> StateVector:
    s = _state(s)
    _check_obs_dims(v, s)
    out = apply_setting(v.setting, s)
    return StateVector(s.n_parties, s.dim, omega_power(s.dim, v.global_phase_exp) * out.amplitudes)


@dataclass(frozen=True)
class EigenstateReport:
    residuals: tuple
    tol: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol


def eigen_residual(v: CompositeObservable, s) -> float:
    s = _state(s)
    return float(np.linalg.norm(apply_composite(v, s) - s))


def verify_common_eigenstate(observables, s, tol: float = RESIDUAL_TOL) -> EigenstateReport:
    """Residuals ``||v s - s||`` for each observable (eigenvalue 1 is what is tested)."""
    s = _state(s)
    return EigenstateReport(tuple(eigen_residual(v, s) for v in observables), tol)


def joint_amplitudes(setting: MeasurementSetting, s) -> np.ndarray:
    """``<m_1|_{a_1} (x) ... (x) <m_N|_{a_N} | s>`` as a ``(D,)*N`` array."""
    s = _state(s)
    if len(setting) != s.n_parties:
        raise InvalidArgumentError(f"{len(setting)} settings for {s.n_parties} parties")
    out = s
    for site, alpha in enumerate(setting.alphas, start=1):
        out = apply_local(eigenbasis(s.dim, alpha).conj().T, site, out)
    return out.tensor


def joint_distribution(setting: MeasurementSetting, s) -> np.ndarray:
    """Outcome probabilities ``P[m_1, ..., m_N]``; outcome ``m`` means eigenvalue ``omega**m``."""
    return np.abs(joint_amplitudes(setting, s)) ** 2


def outcome_sums(N: int, D: int) -> np.ndarray:
    """``(sum_k m_k) mod D`` on the ``(D,)*N`` outcome grid."""
    return np.indices((D,) * N).sum(axis=0) % D


def correlation_function(setting: MeasurementSetting, c, s, tol: float = RESIDUAL_TOL) -> complex:
    """``<s| omega**c X(a_1) (x) ... (x) X(a_N) |s>``.

    Recomputed as ``sum_m omega**(sum m + c) P(m)`` from the joint distribution;
    a disagreement beyond ``tol`` raises :class:`ConsistencyError`.
    """
    s = _state(s)
    c = as_rational(c)
    phase = omega_power(s.dim, c)
    direct = phase * inner_product(s, apply_setting(setting, s))

    P = joint_distribution(setting, s)
    roots = np.array([omega_power(s.dim, r) for r in range(s.dim)])
    via_dist = phase * complex(np.sum(roots[outcome_sums(s.n_parties, s.dim)] * P))
    if abs(direct - via_dist) > tol:
        raise ConsistencyError(f"correlation mismatch: {direct!r} vs {via_dist!r}")
    return direct


def perfect_correlation_offset(dist: np.ndarray, D: int, threshold: float = SUPPORT_TOL) -> Optional[int]:
    """The ``c`` with support of ``dist`` inside ``{m : sum m == c mod D}``, else None."""
    dist = np.asarray(dist)
    sums = outcome_sums(dist.ndim, D)
    found = np.unique(sums[dist > threshold])
    if found.size != 1:
        return None
    return int(found[0])
