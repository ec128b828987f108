"""Non-exclusivity models and the DCR1/DCR2 combination rules for D numbers.

Classical combination treats frame elements as mutually exclusive, so any two
disjoint focal sets conflict outright.  A :class:`NonExclusivityModel` softens
that: each unordered pair of subsets gets a degree in [0, 1] saying how far the
two fail to exclude one another (1 whenever they intersect).  DCR1 combines two
complete D numbers by crediting each disjoint pair's product to the pair's
union in proportion to that degree and discounting the global conflict by the
rest; DCR2 additionally handles incomplete inputs by scaling the normalized
result to an aggregate of the two Q values.  With an all-exclusive model both
rules collapse to Dempster's rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import fsum
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import (
    DuplicatePair,
    EmptySubset,
    FrameMismatch,
    FrameTooLargeForMatrix,
    IncompleteInput,
    IntersectingPair,
    InvalidAggregator,
    OutOfRangeValue,
    TotalConflict,
)
from .evidence import DNumber, Frame, SubsetLike, bit_indices

#: Largest frame for which the full (2^N - 1)-squared degree matrix may be
#: materialized; degree lookups themselves are lazy and uncapped.
MAX_MATRIX_FRAME_SIZE = 12

#: Threshold below which no combinable mass survives.
TOTAL_CONFLICT_TOLERANCE = 1e-12

PairDegrees = Union[
    Mapping[tuple[str, str], float], Iterable[tuple[tuple[str, str], float]]
]
OverrideDegrees = Union[
    Mapping[tuple[SubsetLike, SubsetLike], float],
    Iterable[tuple[tuple[SubsetLike, SubsetLike], float]],
]


def _items(entries) -> Iterable:
    if entries is None:
        return ()
    if isinstance(entries, Mapping):
        return entries.items()
    return entries


def _check_degree(value: float) -> float:
    v = float(value)
    if not 0.0 <= v <= 1.0:
        raise OutOfRangeValue(f"degree {value!r} is outside [0, 1]")
    return v


class NonExclusivityModel:
    """Pairwise non-exclusive degrees over a frame.

    ``pairs`` assigns degrees to unordered pairs of *elements*; any unlisted
    pair defaults to 0, so the zero-configuration model is the classical,
    fully exclusive frame.  Degrees between disjoint multi-element subsets are
    expanded on demand as the maximum over their element pairs, unless an
    explicit ``overrides`` entry for that unordered subset pair wins.
    Intersecting subsets always have degree 1; that branch cannot be
    configured.
    """

    __slots__ = ("frame", "_pairs", "_overrides")

    def __init__(
        self,
        frame: Frame,
        pairs: PairDegrees | None = None,
        overrides: OverrideDegrees | None = None,
    ):
        self.frame = frame
        elem: dict[tuple[int, int], float] = {}
        for (l1, l2), degree in _items(pairs):
            i, j = frame.index(l1), frame.index(l2)
            if i == j:
                raise IntersectingPair(
                    f"the degree of {l1!r} with itself is pinned to 1"
                )
            key = (i, j) if i < j else (j, i)
            if key in elem:
                raise DuplicatePair(f"pair ({l1!r}, {l2!r}) assigned twice")
            elem[key] = _check_degree(degree)
        over: dict[tuple[int, int], float] = {}
        for (s1, s2), degree in _items(overrides):
            m1, m2 = frame.coerce(s1), frame.coerce(s2)
            if m1 == 0 or m2 == 0:
                raise EmptySubset("overrides require non-empty subsets")
            if m1 & m2:
                raise IntersectingPair(
                    "override targets intersecting subsets, whose degree is pinned to 1"
                )
            key = (m1, m2) if m1 <= m2 else (m2, m1)
            if key in over:
                raise DuplicatePair(
                    f"subset pair ({frame.labels_of(m1)}, {frame.labels_of(m2)}) assigned twice"
                )
            over[key] = _check_degree(degree)
        self._pairs = elem
        self._overrides = over

    @classmethod
    def exclusive(cls, frame: Frame) -> "NonExclusivityModel":
        """The classical model: every disjoint pair has degree 0."""
        return cls(frame)

    @property
    def element_degrees(self) -> Mapping[tuple[int, int], float]:
        return MappingProxyType(self._pairs)

    @property
    def subset_overrides(self) -> Mapping[tuple[int, int], float]:
        return MappingProxyType(self._overrides)

    def degree(self, b1: SubsetLike, b2: SubsetLike) -> float:
        """Non-exclusive degree of two non-empty subsets.

        Returns 1 for intersecting subsets; otherwise the override for the
        unordered pair if present, else the maximum element-pair degree
        (0 when no element pair is listed).
        """
        m1, m2 = self.frame.coerce(b1), self.frame.coerce(b2)
        if m1 == 0 or m2 == 0:
            raise EmptySubset("non-exclusive degrees are defined for non-empty subsets")
        return self._degree(m1, m2)

    def exclusive_degree(self, b1: SubsetLike, b2: SubsetLike) -> float:
        """Exclusive degree: 1 minus the non-exclusive degree."""
        return 1.0 - self.degree(b1, b2)

    def _degree(self, m1: int, m2: int) -> float:
        # Trusted path: masks already validated against this frame.
        if m1 & m2:
            return 1.0
        key = (m1, m2) if m1 <= m2 else (m2, m1)
        if key in self._overrides:
            return self._overrides[key]
        best = 0.0
        for i in bit_indices(m1):
            for j in bit_indices(m2):
                d = self._pairs.get((i, j) if i < j else (j, i), 0.0)
                if d > best:
                    best = d
        return best

    def matrix(self) -> "DegreeMatrix":
        """The full non-exclusive degree matrix over all non-empty subsets.

        Rows and columns follow the canonical subset order (by cardinality,
        then element indices).  Capped at ``MAX_MATRIX_FRAME_SIZE`` elements.
        """
        if self.frame.size > MAX_MATRIX_FRAME_SIZE:
            raise FrameTooLargeForMatrix(
                f"a frame of {self.frame.size} elements would need a "
                f"{2 ** self.frame.size - 1}x{2 ** self.frame.size - 1} matrix; "
                f"the cap is {MAX_MATRIX_FRAME_SIZE} elements"
            )
        subsets = tuple(self.frame.subsets())
        rows = tuple(
            tuple(self._degree(r, c) for c in subsets) for r in subsets
        )
        return DegreeMatrix(self.frame, subsets, rows)

    def __repr__(self) -> str:
        return (
            f"NonExclusivityModel({self.frame!r}, {len(self._pairs)} pairs, "
            f"{len(self._overrides)} overrides)"
        )


@dataclass(frozen=True)
class DegreeMatrix:
    """A materialized symmetric degree matrix over the non-empty subsets."""

    frame: Frame
    subsets: tuple[int, ...]
    rows: tuple[tuple[float, ...], ...]

    def exclusive(self) -> "DegreeMatrix":
        """The complementary matrix of exclusive degrees (1 minus each entry)."""
        return DegreeMatrix(
            self.frame,
            self.subsets,
            tuple(tuple(1.0 - v for v in row) for row in self.rows),
        )


# --- completeness aggregators --------------------------------------------------


@dataclass(frozen=True)
class CompletenessAggregator:
    """A function f(Q1, Q2) fixing the total mass of a DCR2 result.

    Admissible aggregators satisfy 0 <= f(Q1, Q2) <= max(Q1, Q2) on the unit
    square and f(1, 1) = 1.  Use :meth:`from_callable` for user functions; it
    enforces both constraints on a 101x101 grid.
    """

    name: str
    fn: Callable[[float, float], float] = field(repr=False)

    def __call__(self, q1: float, q2: float) -> float:
        return self.fn(q1, q2)

    @classmethod
    def from_callable(
        cls, name: str, fn: Callable[[float, float], float], grid: int = 101
    ) -> "CompletenessAggregator":
        """Wrap and validate a user-supplied aggregator on a grid."""
        tol = 1e-12
        for i in range(grid):
            for j in range(grid):
                q1, q2 = i / (grid - 1), j / (grid - 1)
                v = fn(q1, q2)
                if not -tol <= v <= max(q1, q2) + tol:
                    raise InvalidAggregator(
                        f"{name!r} gives f({q1}, {q2}) = {v!r}, "
                        f"outside [0, max(Q1, Q2)]"
                    )
        if abs(fn(1.0, 1.0) - 1.0) > tol:
            raise InvalidAggregator(f"{name!r} gives f(1, 1) = {fn(1.0, 1.0)!r}, not 1")
        return cls(name, fn)


PRODUCT = CompletenessAggregator("product", lambda q1, q2: q1 * q2)
MINIMUM = CompletenessAggregator("minimum", min)
MAXIMUM = CompletenessAggregator("maximum", max)
AVERAGE = CompletenessAggregator("average", lambda q1, q2: (q1 + q2) / 2.0)
#: Deliberately inadmissible escape hatch: renormalizes every result to total
#: mass 1, exceeding the max(Q1, Q2) bound whenever an input is incomplete.
CONSTANT_ONE = CompletenessAggregator("constant-one", lambda q1, q2: 1.0)

AGGREGATORS: dict[str, CompletenessAggregator] = {
    "product": PRODUCT,
    "minimum": MINIMUM,
    "maximum": MAXIMUM,
    "average": AVERAGE,
    "constant-one": CONSTANT_ONE,
    # CLI spellings
    "min": MINIMUM,
    "max": MAXIMUM,
    "avg": AVERAGE,
    "one": CONSTANT_ONE,
}


def aggregator(name: str) -> CompletenessAggregator:
    """Look up a built-in aggregator by name or CLI alias."""
    try:
        return AGGREGATORS[name]
    except KeyError:
        raise InvalidAggregator(
            f"unknown aggregator {name!r}; choose from "
            f"{sorted(set(a.name for a in AGGREGATORS.values()))}"
        ) from None


def validate_f_points(points: Iterable[tuple[float, float, float]]) -> int:
    """Check sampled aggregator values (q1, q2, f) against the admissibility
    constraints; the sample must include the corner f(1, 1) = 1.

    Returns the number of points checked.
    """
    tol = 1e-12
    count = 0
    has_corner = False
    for q1, q2, v in points:
        count += 1
        if not -tol <= v <= max(q1, q2) + tol:
            raise InvalidAggregator(
                f"f({q1}, {q2}) = {v!r} is outside [0, max(Q1, Q2)]"
            )
        if q1 == 1.0 and q2 == 1.0:
            has_corner = True
            if abs(v - 1.0) > tol:
                raise InvalidAggregator(f"f(1, 1) = {v!r}, not 1")
    if not has_corner:
        raise InvalidAggregator("the table lacks the required corner point f(1, 1)")
    return count


# --- combination ----------------------------------------------------------------


@dataclass(frozen=True)
class FusionReport:
    """A combined D number plus the diagnostics of the rule that produced it.

    ``k_d`` is set on the DCR1 path; ``d_t_total`` (the unnormalized mass that
    survived) and ``f_value`` are set on the DCR2 path.
    """

    result: DNumber
    rule: str
    q1: float
    q2: float
    k_d: float | None = None
    d_t_total: float | None = None
    f_value: float | None = None


def _require_common_frame(d1: DNumber, d2: DNumber, model: NonExclusivityModel) -> None:
    if not (d1.frame == d2.frame == model.frame):
        raise FrameMismatch("D numbers and model must share one frame")


def _interaction(
    d1: DNumber, d2: DNumber, model: NonExclusivityModel
) -> tuple[dict[int, float], float]:
    """Degree-weighted product masses per target subset, plus the residual conflict.

    Each product D1(B)*D2(C) lands on B&C when the pair intersects; a disjoint
    pair credits degree*product to B|C and (1-degree)*product to the conflict.
    Cells are fsum-reduced, making the outcome independent of operand order.
    """
    cells: dict[int, list[float]] = {}
    conflict: list[float] = []
    for b, w1 in d1.items():
        for c, w2 in d2.items():
            prod = w1 * w2
            inter = b & c
            if inter:
                cells.setdefault(inter, []).append(prod)
            else:
                u = model._degree(b, c)
                if u > 0.0:
                    cells.setdefault(b | c, []).append(u * prod)
                if u < 1.0:
                    conflict.append((1.0 - u) * prod)
    frame = d1.frame
    masses = {a: fsum(cells[a]) for a in sorted(cells, key=frame.sort_key)}
    return masses, fsum(conflict)


def residual_conflict(
    d1: DNumber, d2: DNumber, model: NonExclusivityModel
) -> float:
    """The conflict K_D left after discounting each disjoint pair by its degree.

    Diagnostic: accepts incomplete inputs.  Never exceeds the classical global
    conflict and equals it under a fully exclusive model.
    """
    _require_common_frame(d1, d2, model)
    return _interaction(d1, d2, model)[1]


def dcr1(d1: DNumber, d2: DNumber, model: NonExclusivityModel) -> FusionReport:
    """Combine two complete D numbers, renormalizing away the residual conflict.

    Requires both inputs complete.  Raises TotalConflict when the discounted
    conflict K_D reaches 1, in which case nothing is left to normalize.
    """
    _require_common_frame(d1, d2, model)
    if not (d1.is_complete() and d2.is_complete()):
        raise IncompleteInput(
            "dcr1 requires complete D numbers "
            f"(Q values {d1.q_value!r} and {d2.q_value!r}); use dcr2 instead"
        )
    masses, k_d = _interaction(d1, d2, model)
    # Normalize by the surviving mass itself; algebraically 1 - K_D, but free
    # of the cancellation that 1 - K_D suffers when K_D is close to 1.
    retained = fsum(masses.values())
    if k_d >= 1.0 - TOTAL_CONFLICT_TOLERANCE or retained <= TOTAL_CONFLICT_TOLERANCE:
        raise TotalConflict(f"discounted conflict K_D = {k_d!r}; combination is undefined")
    result = DNumber(d1.frame, {a: v / retained for a, v in masses.items()})
    return FusionReport(
        result=result, rule="dcr1", q1=d1.q_value, q2=d2.q_value, k_d=k_d
    )


def dcr2(
    d1: DNumber,
    d2: DNumber,
    model: NonExclusivityModel,
    f: CompletenessAggregator = PRODUCT,
) -> FusionReport:
    """Combine two (possibly incomplete) D numbers.

    The degree-weighted masses are normalized and then scaled so the output's
    total mass is f(Q1, Q2).  With two complete inputs and any admissible f
    this coincides with dcr1.  Raises TotalConflict when no mass survives.
    """
    _require_common_frame(d1, d2, model)
    masses, _ = _interaction(d1, d2, model)
    total = fsum(masses.values())
    if total <= TOTAL_CONFLICT_TOLERANCE:
        raise TotalConflict(
            f"no mass survives the combination (sum of D_t = {total!r})"
        )
    q1, q2 = d1.q_value, d2.q_value
    f_value = f(q1, q2)
    result = DNumber(
        d1.frame, {a: f_value * (v / total) for a, v in masses.items()}
    )
    return FusionReport(
        result=result,
        rule="dcr2",
        q1=q1,
        q2=q2,
        d_t_total=total,
        f_value=f_value,
    )


def mean_assignment(ds: Sequence[DNumber]) -> DNumber:
    """Pointwise arithmetic mean of several D numbers on one frame."""
    if not ds:
        raise ValueError("need at least one D number")
    frame = ds[0].frame
    if any(d.frame != frame for d in ds):
        raise FrameMismatch("D numbers must share one frame")
    focal: set[int] = set()
    for d in ds:
        focal.update(d.focal_sets())
    n = len(ds)
    return DNumber(
        frame, {m: fsum(d.weight(m) for d in ds) / n for m in focal}
    )


def combine_many(
    ds: Sequence[DNumber],
    model: NonExclusivityModel,
    f: CompletenessAggregator = PRODUCT,
    strategy: str = "fold",
) -> FusionReport:
    """Combine three or more D numbers with dcr2, which is not associative.

    ``fold`` applies dcr2 left to right in list order and so respects sources
    that arrive in a meaningful order.  ``average-iterate`` combines the
    pointwise mean of all inputs with itself n-1 times, trading order
    sensitivity for symmetry.  A TotalConflict raised mid-way carries the
    1-based index of the failing combination step.
    """
    if len(ds) < 2:
        raise ValueError("need at least two D numbers to combine")
    frame = ds[0].frame
    if any(d.frame != frame for d in ds) or model.frame != frame:
        raise FrameMismatch("D numbers and model must share one frame")
    if strategy == "fold":
        acc = ds[0]
        report = None
        for step, nxt in enumerate(ds[1:], start=1):
            report = _step(acc, nxt, model, f, step)
            acc = report.result
        return report
    if strategy == "average-iterate":
        avg = mean_assignment(ds)
        acc = avg
        report = None
        for step in range(1, len(ds)):
            report = _step(acc, avg, model, f, step)
            acc = report.result
        return report
    raise ValueError(f"unknown strategy {strategy!r}; use 'fold' or 'average-iterate'")


def _step(acc, nxt, model, f, step) -> FusionReport:
    try:
        return dcr2(acc, nxt, model, f)
    except TotalConflict as exc:
        raise TotalConflict(f"combination step {step}: {exc}", step=step) from exc
