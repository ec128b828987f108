"""Frames of discernment, subsets as bitmasks, and D number mass assignments.

A :class:`Frame` fixes an ordered universe of labels; subsets of it are plain
integers whose bit i stands for label i.  A :class:`DNumber` assigns weights to
non-empty subsets.  Unlike a classical basic probability assignment, the total
weight may fall short of 1; ``q_value`` measures how much was assigned.  The
elements of a frame are *not* assumed mutually exclusive here -- exclusiveness
lives in the non-exclusivity model (see :mod:`dnumbers.fusion`), not in the
frame.

All types are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import fsum
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    DuplicateLabel,
    EmptyFrame,
    EmptySetAssignment,
    ForeignSubset,
    FrameTooLarge,
    MassOverflow,
    NegativeWeight,
)

#: Absolute tolerance on the total mass at construction time and in
#: completeness checks.
EPSILON = 1e-9

#: Hard cap on frame size: subset iteration is O(2^N) in the worst case and the
#: expanded degree matrix is (2^N - 1) squared, so large frames are rejected
#: early instead of hanging.
MAX_FRAME_SIZE = 24

#: Ways a subset may be spelled in the public API: a ready bitmask, a single
#: label, or an iterable of labels.
SubsetLike = Union[int, str, Iterable[str]]


def bit_indices(mask: int) -> tuple[int, ...]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class Frame:
    """An ordered set of distinct element labels; label i maps to bit i.

    The label order given at construction is stable and defines the bitmask
    encoding of every subset of this frame.
    """

    __slots__ = ("labels", "_index")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not labels:
            raise EmptyFrame("a frame needs at least one label")
        if len(labels) > MAX_FRAME_SIZE:
            raise FrameTooLarge(
                f"frame has {len(labels)} labels; at most {MAX_FRAME_SIZE} are supported"
            )
        index: dict[str, int] = {}
        for i, label in enumerate(labels):
            if label in index:
                raise DuplicateLabel(f"duplicate frame label {label!r}")
            index[label] = i
        self.labels = labels
        self._index = index

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        """Bitmask of the whole frame."""
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        """Bit position of ``label``; raises ForeignSubset if unknown."""
        try:
            return self._index[label]
        except KeyError:
            raise ForeignSubset(f"label {label!r} is not in the frame") from None

    def mask(self, *labels: str) -> int:
        """Bitmask of the subset holding the given labels."""
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def coerce(self, subset: SubsetLike) -> int:
        """Normalize any accepted subset spelling to a validated bitmask."""
        if isinstance(subset, int):
            if subset < 0 or subset > self.full_mask:
                raise ForeignSubset(
                    f"mask {subset:#b} does not fit a frame of {len(self.labels)} elements"
                )
            return subset
        if isinstance(subset, str):
            return self.mask(subset)
        return self.mask(*subset)

    def labels_of(self, mask: int) -> tuple[str, ...]:
        """Labels of a subset, in frame order."""
        mask = self.coerce(mask)
        return tuple(self.labels[i] for i in bit_indices(mask))

    def sort_key(self, mask: int):
        """Canonical subset order: by cardinality, then by element indices."""
        return (mask.bit_count(), bit_indices(mask))

    def subsets(self) -> Iterator[int]:
        """All non-empty subsets in canonical order."""
        return iter(sorted(range(1, self.full_mask + 1), key=self.sort_key))

    def __eq__(self, other) -> bool:
        return isinstance(other, Frame) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"Frame({list(self.labels)!r})"


@dataclass(frozen=True)
class BeliefSummary:
    """Belief/plausibility bounds of one subset.

    ``from_incomplete`` marks values computed from an assignment whose total
    mass is below 1: the raw sums are still reported, but they are not the
    classical Bel/Pl measures, which are only defined for complete assignments.
    """

    subset: int
    bel: float
    pl: float
    from_incomplete: bool = False


class DNumber:
    """A mass assignment over non-empty subsets of a frame.

    Weights lie in (0, 1] and sum to at most 1; a classical basic probability
    assignment is the special case where they sum to exactly 1 (``is_complete``).
    Zero weights are dropped at construction and duplicate subsets are summed.
    """

    __slots__ = ("frame", "_masses", "_q")

    def __init__(
        self,
        frame: Frame,
        entries: Union[Mapping[SubsetLike, float], Iterable[tuple[SubsetLike, float]]] = (),
    ):
        if isinstance(entries, Mapping):
            entries = entries.items()
        acc: dict[int, float] = {}
        for subset, weight in entries:
            mask = frame.coerce(subset)
            if mask == 0:
                raise EmptySetAssignment("the empty set cannot carry mass")
            w = float(weight)
            if not w >= 0.0:  # also catches NaN
                raise NegativeWeight(f"weight {weight!r} is not a number in [0, 1]")
            if w > 1.0 + EPSILON:
                raise MassOverflow(f"single weight {w!r} exceeds 1")
            if w > 0.0:
                acc[mask] = acc.get(mask, 0.0) + w
        self.frame = frame
        self._masses = {m: acc[m] for m in sorted(acc, key=frame.sort_key)}
        self._q = fsum(self._masses.values())
        if self._q > 1.0 + EPSILON:
            raise MassOverflow(f"total mass {self._q!r} exceeds 1")

    @classmethod
    def vacuous(cls, frame: Frame) -> "DNumber":
        """The know-nothing assignment: all mass on the whole frame."""
        return cls(frame, {frame.full_mask: 1.0})

    @property
    def masses(self) -> Mapping[int, float]:
        """Read-only view of the focal sets, in canonical subset order."""
        return MappingProxyType(self._masses)

    def items(self) -> Iterator[tuple[int, float]]:
        return iter(self._masses.items())

    def label_items(self) -> Iterator[tuple[tuple[str, ...], float]]:
        """Focal sets as label tuples, for serialization and display."""
        for mask, w in self._masses.items():
            yield self.frame.labels_of(mask), w

    def focal_sets(self) -> tuple[int, ...]:
        return tuple(self._masses)

    def __len__(self) -> int:
        return len(self._masses)

    def weight(self, subset: SubsetLike) -> float:
        """Weight assigned to exactly this subset (0 if not focal)."""
        return self._masses.get(self.frame.coerce(subset), 0.0)

    @property
    def q_value(self) -> float:
        """Total assigned mass: the degree of information completeness."""
        return self._q

    def is_complete(self) -> bool:
        """True when the total mass equals 1 within the construction tolerance."""
        return abs(self._q - 1.0) <= EPSILON

    def belief(self, subset: SubsetLike) -> float:
        """Sum of weights of focal sets contained in ``subset``.

        For a complete assignment this is the classical belief measure, the
        lower bound of support; for an incomplete one it is the raw sum.
        """
        a = self.frame.coerce(subset)
        return fsum(w for m, w in self._masses.items() if m & a == m)

    def plausibility(self, subset: SubsetLike) -> float:
        """Sum of weights of focal sets intersecting ``subset``.

        For a complete assignment this equals 1 - belief(complement), the
        upper bound of support.
        """
        a = self.frame.coerce(subset)
        return fsum(w for m, w in self._masses.items() if m & a)

    def summary(self, subset: SubsetLike) -> BeliefSummary:
        """Belief and plausibility of one subset, flagged if the source is incomplete."""
        a = self.frame.coerce(subset)
        return BeliefSummary(
            subset=a,
            bel=self.belief(a),
            pl=self.plausibility(a),
            from_incomplete=not self.is_complete(),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DNumber)
            and self.frame == other.frame
            and self._masses == other._masses
        )

    def __repr__(self) -> str:
        body = ", ".join(
            "{%s}: %r" % (",".join(labels), w) for labels, w in self.label_items()
        )
        return f"DNumber({body})"
