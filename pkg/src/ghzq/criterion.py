"""Which (N, D) admit the construction, known special cases, and genuineness checks.

The existence criterion reads "some N2 in 1..N-1 has gcd(N2, D) not dividing
N". The prose phrasing "N not divisible by all nonunit divisors of D smaller
than N" also admits a universal reading; the worked examples (four parties,
D = 6, where g = 2 fails but g = 3 works) only fit the existential one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidArgumentError
from .ghz_core import (
    AMP_BOUND,
    RESIDUAL_TOL,
    ConstructionParams,
    build_concurrent_set,
    check_invariance,
    eigen_residual,
    ghz_state,
)
from .observables import equivalent, overlap_sq
from .qudit_algebra import as_rational

GENUINE_FAIL_TOL = 1e-6
OVERLAP_FLOOR = 1e-9


@dataclass(frozen=True)
class CriterionResult:
    N: int
    D: int
    admissible_N2: tuple  # (N2, gcd(N2, D)) pairs
    chosen: Optional[ConstructionParams]

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "D": self.D,
            "admissible_N2": [{"N2": n2, "gcd": g} for n2, g in self.admissible_N2],
            "chosen": None if self.chosen is None else self.chosen.to_dict(),
        }


def admissible_constructions(N: int, D: int) -> CriterionResult:
    if N < 3 or D < 2:
        raise InvalidArgumentError(f"need N >= 3 and D >= 2, got N={N}, D={D}")
    admissible = tuple(
        (n2, math.gcd(n2, D)) for n2 in range(1, N) if N % math.gcd(n2, D) != 0
    )
    chosen = ConstructionParams.from_n2(N, D, admissible[0][0]) if admissible else None
    return CriterionResult(N, D, admissible, chosen)


KNOWN_CASES = ("GHZ_3qubit", "Zukowski_Dplus1", "CerfLee_oddN_evenD")


def reproduce_known_case(case_id: str, N: Optional[int] = None, D: Optional[int] = None) -> ConstructionParams:
    """Parameters recovering earlier GHZ-type results as members of the family.

    * ``GHZ_3qubit``: three qubits, N1 = 1, N2 = 2.
    * ``Zukowski_Dplus1``: D + 1 qudits with N1 = 1, N2 = D (needs ``D``).
    * ``CerfLee_oddN_evenD``: odd N, even D, g = 2, N1 = 1 (needs ``N`` and ``D``).
    """
    if case_id == "GHZ_3qubit":
        return ConstructionParams.from_n2(3, 2, 2)
    if case_id == "Zukowski_Dplus1":
        if D is None or D < 2:
            raise InvalidArgumentError("Zukowski_Dplus1 needs D >= 2")
        return ConstructionParams.from_n2(D + 1, D, D, g=D)
    if case_id == "CerfLee_oddN_evenD":
        if N is None or D is None or N < 3 or N % 2 == 0 or D % 2:
            raise InvalidArgumentError("CerfLee_oddN_evenD needs odd N >= 3 and even D")
        # largest even N2 <= N - 1 is N - 1 itself, leaving N1 = 1 (odd)
        return ConstructionParams.from_n2(N, D, N - 1, g=2)
    raise InvalidArgumentError(f"unknown case {case_id!r}; expected one of {KNOWN_CASES}")


@dataclass(frozen=True)
class RemovalOutcome:
    removed_party: int
    residuals: tuple
    failing: tuple  # observable indices with residual > GENUINE_FAIL_TOL
    oracle_failing: tuple  # indices whose folded reduced phases break the invariance congruence

    @property
    def destroyed(self) -> bool:
        return bool(self.failing)

    @property
    def oracle_agrees(self) -> bool:
        return self.failing == self.oracle_failing

    def to_dict(self) -> dict:
        return {
            "removed_party": self.removed_party,
            "residuals": list(self.residuals),
            "failing": list(self.failing),
            "oracle_failing": list(self.oracle_failing),
        }


@dataclass(frozen=True)
class NPartiteReport:
    params: ConstructionParams
    removals: tuple

    @property
    def genuine(self) -> bool:
        return all(r.destroyed for r in self.removals)

    @property
    def reduced_v0_passes(self) -> bool:
        return all(r.residuals[0] <= RESIDUAL_TOL for r in self.removals)

    @property
    def oracle_agrees(self) -> bool:
        return all(r.oracle_agrees for r in self.removals)

    def to_dict(self) -> dict:
        return {
            "genuine": self.genuine,
            "reduced_v0_passes": self.reduced_v0_passes,
            "oracle_agrees": self.oracle_agrees,
            "removals": [r.to_dict() for r in self.removals],
        }


def genuinely_npartite_check(p: ConstructionParams, amp_bound: int = AMP_BOUND) -> NPartiteReport:
    """Delete each party in turn and test the reduced observables on GHZ(N-1, D).

    Each numerical verdict is paired with the exact one: a reduced observable
    fixes the smaller GHZ state iff its phase list, with the global phase
    folded onto a site, satisfies the invariance congruence.
    """
    psi = ghz_state(p.N - 1, p.D, amp_bound)
    observables = build_concurrent_set(p)
    removals = []
    for j in range(1, p.N + 1):
        reduced = [v.reduced(j) for v in observables]
        residuals = tuple(eigen_residual(v, psi) for v in reduced)
        failing = tuple(i for i, r in enumerate(residuals) if r > GENUINE_FAIL_TOL)
        oracle = tuple(
            i for i, v in enumerate(reduced) if not check_invariance(v.folded_phases(), p.D)
        )
        removals.append(RemovalOutcome(j, residuals, failing, oracle))
    return NPartiteReport(p, tuple(removals))


@dataclass(frozen=True)
class DDimReport:
    D: int
    alpha: Fraction
    beta: Fraction
    min_overlap: float

    @property
    def positive(self) -> bool:
        return self.min_overlap > OVERLAP_FLOOR

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "min_overlap": self.min_overlap,
            "positive": self.positive,
        }


def genuinely_ddim_check(D: int, alpha, beta) -> DDimReport:
    """Smallest ``|<n_alpha|m_beta>|**2`` over all outcome pairs.

    A zero would let a block-diagonal (lower-dimensional) reduction through;
    inequivalent settings keep every overlap strictly positive.
    """
    alpha, beta = as_rational(alpha), as_rational(beta)
    if equivalent(alpha, beta):
        raise InvalidArgumentError(f"beta - alpha = {beta - alpha} is an integer")
    lowest = min(overlap_sq(D, n, alpha, m, beta) for n in range(D) for m in range(D))
    return DDimReport(D, alpha, beta, lowest)
