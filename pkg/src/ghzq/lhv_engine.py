"""Deterministic local models against the perfect correlations.

A local realistic model fixes, for every party ``k``, an outcome exponent
``x_k`` for setting X and ``y_k`` for setting Y. Perfect correlations force a
stochastic model to be a mixture of such deterministic ones, so exhausting
``Z_D**(2N)`` settles existence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConsistencyError, InvalidArgumentError, ResourceLimitError
from .ghz_core import (
    AMP_BOUND,
    RESIDUAL_TOL,
    ConstructionParams,
    build_concurrent_set,
    ghz_state,
    verify_common_eigenstate,
    y_block_labels,
)

LHV_BOUND = 10**8
# elements of the (x-chunk, y-block, constraint) comparison tensor per step
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class CorrelationConstraint:
    """``sum_k value_k(settings[k]) == offset (mod D)``."""

    settings: tuple
    offset: int

    def __post_init__(self):
        object.__setattr__(self, "settings", tuple(self.settings))
        if any(s not in ("X", "Y") for s in self.settings):
            raise InvalidArgumentError(f"settings must be 'X' or 'Y': {self.settings}")

    def holds(self, x: Sequence[int], y: Sequence[int], D: int) -> bool:
        total = sum(xk if s == "X" else yk for s, xk, yk in zip(self.settings, x, y))
        return (total - self.offset) % D == 0

    def __str__(self):
        return f"{''.join(self.settings)} = {self.offset}"


@dataclass(frozen=True)
class LhvAssignment:
    x: tuple
    y: tuple

    def to_dict(self) -> dict:
        return {"x": list(self.x), "y": list(self.y)}


def constraints_from_params(p: ConstructionParams) -> list[CorrelationConstraint]:
    """All-X with offset 0, then the N cyclic X/Y patterns with offset ``-1 mod D``."""
    out = [CorrelationConstraint(("X",) * p.N, 0)]
    out += [CorrelationConstraint(y_block_labels(p, k), (-1) % p.D) for k in range(1, p.N + 1)]
    return out


def pattern_constraints(N: int, D: int, N2: int) -> list[CorrelationConstraint]:
    """Same constraint system for any split, including ``gcd(N2, D) == 1``.

    Such splits have no nonunit divisor and hence no :class:`ConstructionParams`,
    but the modular system is still well defined and the gcd test still applies.
    """
    if not 1 <= N2 <= N - 1:
        raise InvalidArgumentError(f"N2 = {N2} outside 1..{N - 1}")
    base = ("X",) * (N - N2) + ("Y",) * N2
    out = [CorrelationConstraint(("X",) * N, 0)]
    out += [
        CorrelationConstraint(tuple(base[(i - k) % N] for i in range(N)), (-1) % D)
        for k in range(N)
    ]
    return out


def _coefficients(constraints, N: int) -> tuple[np.ndarray, np.ndarray]:
    cx = np.array([[s == "X" for s in c.settings] for c in constraints], dtype=np.int64)
    return cx, 1 - cx


def brute_force_search(
    constraints: Sequence[CorrelationConstraint], N: int, D: int, bound: int = LHV_BOUND
) -> Optional[LhvAssignment]:
    """First assignment in lexicographic order of ``(x_1..x_N, y_1..y_N)`` meeting every constraint.

    Every point of ``Z_D**(2N)`` is tested. The scan is split as x-prefix by
    y-suffix so each step checks a block of consecutive assignments at once;
    early exit takes the lowest flat index in the first block with a hit.
    """
    if any(len(c.settings) != N for c in constraints):
        raise InvalidArgumentError("constraint length does not match N")
    space = D ** (2 * N)
    if space > bound:
        raise ResourceLimitError(f"LHV space D**(2N) = {space} exceeds bound {bound}")

    cx, cy = _coefficients(constraints, N)
    offsets = np.array([c.offset % D for c in constraints], dtype=np.int64)
    half = np.indices((D,) * N).reshape(N, -1).T  # lexicographic rows of Z_D^N
    sx = (half @ cx.T) % D  # (D^N, J)
    sy = (half @ cy.T) % D

    J = len(constraints)
    chunk = max(1, _CHUNK_ELEMENTS // (len(half) * max(J, 1)))
    for start in range(0, len(half), chunk):
        block = sx[start : start + chunk]
        ok = np.all((block[:, None, :] + sy[None, :, :]) % D == offsets, axis=2)
        hits = np.flatnonzero(ok)
        if hits.size:
            i, j = divmod(int(hits[0]), len(half))
            return LhvAssignment(
                tuple(int(v) for v in half[start + i]), tuple(int(v) for v in half[j])
            )
    return None


@dataclass(frozen=True)
class AnalyticResult:
    gcd_value: int
    solvable: bool

    @property
    def divides_N(self) -> bool:
        return self.solvable


def analytic_solvable(N: int, D: int, N2: int) -> AnalyticResult:
    """Whether ``N2 * y + N == 0 (mod D)`` has an integer solution.

    That congruence is what the summed constraints leave once the all-X
    correlation forces ``N1 * sum(x) == 0``; it is solvable iff
    ``gcd(N2, D)`` divides ``N``.
    """
    if not 1 <= N2 <= N - 1:
        raise InvalidArgumentError(f"N2 = {N2} outside 1..{N - 1}")
    g = math.gcd(N2, D)
    return AnalyticResult(g, N % g == 0)


@dataclass(frozen=True)
class LhvSearchResult:
    space_size: int
    satisfying: Optional[LhvAssignment]
    status: str  # "exhaustive" | "analytic-only"

    def to_dict(self) -> dict:
        return {
            "space_size": self.space_size,
            "status": self.status,
            "satisfying": None if self.satisfying is None else self.satisfying.to_dict(),
        }


@dataclass(frozen=True)
class ContradictionCertificate:
    params: ConstructionParams
    quantum_residuals: tuple
    quantum_max_residual: float
    tol: float
    lhv_search: LhvSearchResult
    analytic: AnalyticResult
    constraints: tuple = field(default=())

    @property
    def contradiction(self) -> bool:
        return (
            self.quantum_max_residual <= self.tol
            and self.lhv_search.satisfying is None
            and not self.analytic.divides_N
        )

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "constraints": [str(c) for c in self.constraints],
            "quantum": {
                "residuals": list(self.quantum_residuals),
                "max_residual": self.quantum_max_residual,
                "tolerance": self.tol,
            },
            "lhv_search": self.lhv_search.to_dict(),
            "analytic": {"gcd_value": self.analytic.gcd_value, "divides_N": self.analytic.divides_N},
            "verdict": {"contradiction": self.contradiction},
        }


def certify(
    p: ConstructionParams,
    tol: float = RESIDUAL_TOL,
    lhv_bound: int = LHV_BOUND,
    amp_bound: int = AMP_BOUND,
) -> ContradictionCertificate:
    """Quantum eigenstate check, exhaustive LHV search and gcd test for one construction.

    When the LHV space exceeds ``lhv_bound`` the search is skipped and marked
    ``analytic-only``. A state vector over ``amp_bound`` raises.
    """
    psi = ghz_state(p.N, p.D, amp_bound)
    report = verify_common_eigenstate(build_concurrent_set(p), psi, tol)
    constraints = constraints_from_params(p)
    analytic = analytic_solvable(p.N, p.D, p.N2)

    space = p.D ** (2 * p.N)
    if space > lhv_bound:
        search = LhvSearchResult(space, None, "analytic-only")
    else:
        found = brute_force_search(constraints, p.N, p.D, lhv_bound)
        if (found is None) == analytic.solvable:
            raise ConsistencyError(
                f"brute force {'found no' if found is None else 'found an'} LHV model but "
                f"gcd({p.N2}, {p.D}) = {analytic.gcd_value} "
                f"{'divides' if analytic.solvable else 'does not divide'} N = {p.N}"
            )
        search = LhvSearchResult(space, found, "exhaustive")

    return ContradictionCertificate(
        params=p,
        quantum_residuals=report.residuals,
        quantum_max_residual=report.max_residual,
        tol=tol,
        lhv_search=search,
        analytic=analytic,
        constraints=tuple(constraints),
    )
