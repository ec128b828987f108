"""Classical two-source combination rules for complete mass assignments.

All rules here require both operands to be complete (total mass 1); they are
the textbook Dempster-Shafer machinery and double as the degeneration oracle
for the D number rules in :mod:`dnumbers.fusion`.  Cell sums use ``math.fsum``,
so every rule is exactly commutative.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum

from .errors import FrameMismatch, IncompleteInput, TotalConflict
from .evidence import DNumber, Frame

#: A global conflict this close to 1 leaves no normalizable mass; dividing by
#: the remainder would amplify representation error past any useful tolerance.
TOTAL_CONFLICT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ConjunctiveResult:
    """Unnormalized conjunctive masses, including the mass on the empty set.

    The empty-set entry is the global conflict K; the remaining entries are
    what Dempster's rule normalizes.  All entries sum to the product of the
    input Q values (1 for complete inputs).
    """

    frame: Frame
    masses: dict[int, float]

    @property
    def k(self) -> float:
        """Global conflict: the mass landing on the empty set."""
        return self.masses.get(0, 0.0)


def _require_combinable(m1: DNumber, m2: DNumber) -> None:
    if m1.frame != m2.frame:
        raise FrameMismatch("operands are defined over different frames")
    if not (m1.is_complete() and m2.is_complete()):
        raise IncompleteInput(
            "classical rules require complete assignments "
            f"(Q values {m1.q_value!r} and {m2.q_value!r})"
        )


def _cells(m1: DNumber, m2: DNumber, key) -> dict[int, float]:
    """Accumulate the products m1(B)*m2(C) into cells keyed by key(B, C)."""
    cells: dict[int, list[float]] = {}
    for b, w1 in m1.items():
        for c, w2 in m2.items():
            cells.setdefault(key(b, c), []).append(w1 * w2)
    frame = m1.frame
    ordered = sorted(cells, key=frame.sort_key)
    return {a: fsum(cells[a]) for a in ordered}


def conjunctive(m1: DNumber, m2: DNumber) -> ConjunctiveResult:
    """Conjunctive rule: every product lands on the intersection of its pair.

    The output keeps the empty-set mass (the global conflict) instead of
    redistributing it.
    """
    _require_combinable(m1, m2)
    masses = _cells(m1, m2, lambda b, c: b & c)
    masses.setdefault(0, 0.0)
    ordered = sorted(masses, key=m1.frame.sort_key)
    return ConjunctiveResult(m1.frame, {a: masses[a] for a in ordered})


def disjunctive(m1: DNumber, m2: DNumber) -> DNumber:
    """Disjunctive rule: every product lands on the union of its pair."""
    _require_combinable(m1, m2)
    return DNumber(m1.frame, _cells(m1, m2, lambda b, c: b | c))


def dempster(m1: DNumber, m2: DNumber) -> DNumber:
    """Dempster's rule: conjunctive masses renormalized by 1 - K.

    Raises TotalConflict when K is within ``TOTAL_CONFLICT_TOLERANCE`` of 1.
    """
    conj = conjunctive(m1, m2)
    k = conj.k
    if k >= 1.0 - TOTAL_CONFLICT_TOLERANCE:
        raise TotalConflict(f"global conflict K = {k!r}; combination is undefined")
    denom = 1.0 - k
    return DNumber(m1.frame, {a: v / denom for a, v in conj.masses.items() if a})


def yager(m1: DNumber, m2: DNumber) -> DNumber:
    """Yager's rule: the global conflict is moved onto the whole frame."""
    conj = conjunctive(m1, m2)
    masses = {a: v for a, v in conj.masses.items() if a}
    full = m1.frame.full_mask
    masses[full] = masses.get(full, 0.0) + conj.k
    return DNumber(m1.frame, masses)


def dubois_prade(m1: DNumber, m2: DNumber) -> DNumber:
    """Dubois-Prade rule: each conflicting product moves to the pair's union."""
    _require_combinable(m1, m2)
    return DNumber(
        m1.frame, _cells(m1, m2, lambda b, c: (b & c) if b & c else (b | c))
    )


def global_conflict(d1: DNumber, d2: DNumber) -> float:
    """Total product mass on disjoint focal pairs.

    Purely diagnostic: unlike the rules above it accepts incomplete
    assignments, so it can report K for any pair of D numbers.
    """
    if d1.frame != d2.frame:
        raise FrameMismatch("operands are defined over different frames")
    return fsum(
        w1 * w2 for b, w1 in d1.items() for c, w2 in d2.items() if not b & c
    )
