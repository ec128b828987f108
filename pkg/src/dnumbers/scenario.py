"""Scenario files: one self-contained document per fusion problem.

A scenario bundles a frame, any number of named D numbers, and the pairwise
non-exclusivity model, in a line-oriented text format:

    # an example scenario
    frame: a, b, c

    dnumber D1:
      {a}: 0.7
      {b, c}: 0.1
      {a, b, c}: 0.1

    dnumber D2:
      {a}: 0.5
      {c}: 0.3

    nonexclusivity:
      a ~ b: 0.1
      b ~ c: 0.2
      a ~ c: 0

    overrides:
      {a} ~ {b, c}: 0.5

Blank lines and lines starting with ``#`` are ignored, indentation is
optional, and the ``frame:`` line must come first.  Labels may use any
characters except whitespace and ``{ } , : ~ #``.  Weights and degrees are
decimal numbers in [0, 1].  Subsets are always written as label lists, never
bitmasks, so files do not depend on the frame's label order; the parser stores
them sorted, which is also how :func:`format_scenario` prints them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    DuplicatePair,
    OutOfRangeValue,
    ScenarioSyntaxError,
    UnknownLabel,
)
from .evidence import DNumber, Frame
from .fusion import NonExclusivityModel

_LABEL = r"[^\s{},:~#]+"
_FRAME_LINE = re.compile(r"^\s*frame\s*:\s*(?P<body>.*?)\s*$")
_DNUMBER_HEADER = re.compile(rf"^\s*dnumber\s+(?P<name>{_LABEL})\s*:\s*$")
_PAIRS_HEADER = re.compile(r"^\s*nonexclusivity\s*:\s*$")
_OVERRIDES_HEADER = re.compile(r"^\s*overrides\s*:\s*$")
_SUBSET_ENTRY = re.compile(r"^\s*\{(?P<labels>[^{}]*)\}\s*:\s*(?P<value>\S+)\s*$")
_PAIR_ENTRY = re.compile(
    rf"^\s*(?P<l1>{_LABEL})\s*~\s*(?P<l2>{_LABEL})\s*:\s*(?P<value>\S+)\s*$"
)
_OVERRIDE_ENTRY = re.compile(
    r"^\s*\{(?P<s1>[^{}]*)\}\s*~\s*\{(?P<s2>[^{}]*)\}\s*:\s*(?P<value>\S+)\s*$"
)
_NUMBER = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?$")


@dataclass(frozen=True)
class WeightEntry:
    subset: tuple[str, ...]
    weight: float


@dataclass(frozen=True)
class NamedAssignment:
    name: str
    entries: tuple[WeightEntry, ...]


@dataclass(frozen=True)
class PairDegree:
    elements: tuple[str, str]
    degree: float


@dataclass(frozen=True)
class OverrideDegree:
    subsets: tuple[tuple[str, ...], tuple[str, ...]]
    degree: float


@dataclass(frozen=True)
class Scenario:
    """Domain objects built from a document."""

    frame: Frame
    dnumbers: dict[str, DNumber]
    model: NonExclusivityModel


@dataclass(frozen=True)
class ScenarioDocument:
    """The parsed, validated content of a scenario file.

    Documents produced by :func:`parse_scenario` are canonical: subsets and
    pairs are sorted, so printing and re-parsing reproduces the document
    exactly.
    """

    frame: tuple[str, ...]
    dnumbers: tuple[NamedAssignment, ...] = ()
    pairs: tuple[PairDegree, ...] = ()
    overrides: tuple[OverrideDegree, ...] = ()

    def build_frame(self) -> Frame:
        return Frame(self.frame)

    def build_dnumbers(self, frame: Frame | None = None) -> dict[str, DNumber]:
        frame = frame or self.build_frame()
        return {
            named.name: DNumber(frame, [(e.subset, e.weight) for e in named.entries])
            for named in self.dnumbers
        }

    def build_model(self, frame: Frame | None = None) -> NonExclusivityModel:
        frame = frame or self.build_frame()
        return NonExclusivityModel(
            frame,
            pairs=[(p.elements, p.degree) for p in self.pairs],
            overrides=[(o.subsets, o.degree) for o in self.overrides],
        )

    def build(self) -> Scenario:
        """Realize the document as domain objects, surfacing any domain errors."""
        frame = self.build_frame()
        return Scenario(frame, self.build_dnumbers(frame), self.build_model(frame))


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.frame_labels: tuple[str, ...] | None = None
        self.frame_set: set[str] = set()
        self.dnumbers: list[tuple[str, list[WeightEntry]]] = []
        self.pairs: list[PairDegree] = []
        self.overrides: list[OverrideDegree] = []
        self.pair_keys: set[tuple[str, str]] = set()
        self.override_keys: set[tuple[tuple[str, ...], tuple[str, ...]]] = set()
        self.section: object = None  # None | list[WeightEntry] | "pairs" | "overrides"
        self.seen_pairs_section = False
        self.seen_overrides_section = False

    def run(self) -> ScenarioDocument:
        for line_no, raw in enumerate(self.lines, start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            self.line_no = line_no
            self.raw = raw
            self.handle(raw)
        if self.frame_labels is None:
            raise ScenarioSyntaxError("scenario has no 'frame:' line", len(self.lines) or 1, 1)
        return ScenarioDocument(
            frame=self.frame_labels,
            dnumbers=tuple(
                NamedAssignment(name, tuple(entries)) for name, entries in self.dnumbers
            ),
            pairs=tuple(self.pairs),
            overrides=tuple(self.overrides),
        )

    def fail(self, message: str, column: int | None = None):
        if column is None:
            column = len(self.raw) - len(self.raw.lstrip()) + 1
        raise ScenarioSyntaxError(message, self.line_no, column)

    def handle(self, raw: str):
        if self.frame_labels is None:
            m = _FRAME_LINE.match(raw)
            if not m:
                self.fail("expected 'frame: <label>, <label>, ...' before anything else")
            labels = self.split_labels(m.group("body"), m.start("body"))
            seen: set[str] = set()
            for label, col in labels:
                if label in seen:
                    self.fail(f"duplicate frame label {label!r}", col)
                seen.add(label)
            self.frame_labels = tuple(label for label, _ in labels)
            self.frame_set = seen
            return
        if _FRAME_LINE.match(raw):
            self.fail("the frame is already declared")
        m = _DNUMBER_HEADER.match(raw)
        if m:
            name = m.group("name")
            if any(name == existing for existing, _ in self.dnumbers):
                self.fail(f"dnumber {name!r} is already declared", m.start("name") + 1)
            entries: list[WeightEntry] = []
            self.dnumbers.append((name, entries))
            self.section = entries
            return
        if _PAIRS_HEADER.match(raw):
            if self.seen_pairs_section:
                self.fail("the nonexclusivity section is already declared")
            self.seen_pairs_section = True
            self.section = "pairs"
            return
        if _OVERRIDES_HEADER.match(raw):
            if self.seen_overrides_section:
                self.fail("the overrides section is already declared")
            self.seen_overrides_section = True
            self.section = "overrides"
            return
        if self.section is None:
            self.fail("expected a section header ('dnumber <name>:', 'nonexclusivity:' or 'overrides:')")
        elif isinstance(self.section, list):
            self.subset_entry(raw, self.section)
        elif self.section == "pairs":
            self.pair_entry(raw)
        else:
            self.override_entry(raw)

    def split_labels(self, body: str, base: int, allow_empty: bool = False):
        """Split a comma-separated label list, reporting each label's column."""
        if body.strip() == "":
            if allow_empty:
                return []
            self.fail("expected at least one label", base + 1)
        out = []
        pos = 0
        for segment in body.split(","):
            label = segment.strip()
            col = base + pos + (len(segment) - len(segment.lstrip())) + 1
            if not label:
                self.fail("empty label", col)
            if not re.fullmatch(_LABEL, label):
                self.fail(f"invalid label {label!r}", col)
            out.append((label, col))
            pos += len(segment) + 1
        return out

    def known_subset(self, body: str, base: int) -> tuple[str, ...]:
        labels = self.split_labels(body, base, allow_empty=True)
        for label, col in labels:
            if label not in self.frame_set:
                raise UnknownLabel(
                    f"label {label!r} is not in the frame", self.line_no, col
                )
        return tuple(sorted({label for label, _ in labels}))

    def value(self, text: str, col: int) -> float:
        if not _NUMBER.match(text):
            self.fail(f"expected a number, got {text!r}", col)
        v = float(text)
        if not 0.0 <= v <= 1.0:
            raise OutOfRangeValue(f"value {text} is outside [0, 1]", self.line_no, col)
        return v

    def subset_entry(self, raw: str, entries: list[WeightEntry]):
        m = _SUBSET_ENTRY.match(raw)
        if not m:
            self.fail("expected '{<labels>}: <weight>'")
        subset = self.known_subset(m.group("labels"), m.start("labels"))
        weight = self.value(m.group("value"), m.start("value") + 1)
        entries.append(WeightEntry(subset, weight))

    def pair_entry(self, raw: str):
        m = _PAIR_ENTRY.match(raw)
        if not m:
            self.fail("expected '<label> ~ <label>: <degree>'")
        l1, l2 = m.group("l1"), m.group("l2")
        for label, group in ((l1, "l1"), (l2, "l2")):
            if label not in self.frame_set:
                raise UnknownLabel(
                    f"label {label!r} is not in the frame", self.line_no, m.start(group) + 1
                )
        if l1 == l2:
            self.fail("a pair needs two distinct elements", m.start("l2") + 1)
        degree = self.value(m.group("value"), m.start("value") + 1)
        key = (l1, l2) if l1 < l2 else (l2, l1)
        if key in self.pair_keys:
            raise DuplicatePair(f"pair {key[0]} ~ {key[1]} assigned twice", self.line_no)
        self.pair_keys.add(key)
        self.pairs.append(PairDegree(key, degree))

    def override_entry(self, raw: str):
        m = _OVERRIDE_ENTRY.match(raw)
        if not m:
            self.fail("expected '{<labels>} ~ {<labels>}: <degree>'")
        s1 = self.known_subset(m.group("s1"), m.start("s1"))
        s2 = self.known_subset(m.group("s2"), m.start("s2"))
        degree = self.value(m.group("value"), m.start("value") + 1)
        key = (s1, s2) if s1 <= s2 else (s2, s1)
        if key in self.override_keys:
            raise DuplicatePair(
                f"override {{{', '.join(key[0])}}} ~ {{{', '.join(key[1])}}} assigned twice",
                self.line_no,
            )
        self.override_keys.add(key)
        self.overrides.append(OverrideDegree(key, degree))


def parse_scenario(data: bytes | str) -> ScenarioDocument:
    """Parse and validate a scenario document.

    Raises ScenarioSyntaxError, UnknownLabel, OutOfRangeValue or DuplicatePair,
    each carrying the offending line (and column where known).  Domain-level
    problems (mass overflow, intersecting overrides, ...) are only raised later,
    by :meth:`ScenarioDocument.build`.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScenarioSyntaxError(f"scenario is not valid UTF-8 ({exc})") from None
    return _Parser(data).run()


def parse_f_table(data: bytes | str) -> tuple[tuple[float, float, float], ...]:
    """Parse an aggregator sample table: one 'q1 q2 value' triple per line.

    Blank lines and '#' comments are ignored.  Q values must lie in [0, 1];
    judging the sampled values against the admissibility constraints is left
    to :func:`dnumbers.fusion.validate_f_points`.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ScenarioSyntaxError(f"table is not valid UTF-8 ({exc})") from None
    points = []
    for line_no, raw in enumerate(data.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = list(re.finditer(r"\S+", raw))
        if len(tokens) != 3:
            raise ScenarioSyntaxError(
                f"expected 'q1 q2 value', got {len(tokens)} fields", line_no, 1
            )
        values = []
        for tok in tokens:
            if not _NUMBER.match(tok.group()):
                raise ScenarioSyntaxError(
                    f"expected a number, got {tok.group()!r}", line_no, tok.start() + 1
                )
            values.append(float(tok.group()))
        for tok, q in zip(tokens[:2], values[:2]):
            if not 0.0 <= q <= 1.0:
                raise OutOfRangeValue(
                    f"Q value {tok.group()} is outside [0, 1]", line_no, tok.start() + 1
                )
        points.append(tuple(values))
    return tuple(points)


def _fmt_number(v: float) -> str:
    return repr(float(v))


def _fmt_subset(subset: tuple[str, ...]) -> str:
    return "{%s}" % ", ".join(subset)


def format_scenario(doc: ScenarioDocument) -> str:
    """Print a document in canonical form; parsing it back reproduces ``doc``."""
    out = ["frame: " + ", ".join(doc.frame)]
    for named in doc.dnumbers:
        out.append("")
        out.append(f"dnumber {named.name}:")
        for entry in named.entries:
            out.append(f"  {_fmt_subset(entry.subset)}: {_fmt_number(entry.weight)}")
    if doc.pairs:
        out.append("")
        out.append("nonexclusivity:")
        for pair in doc.pairs:
            out.append(
                f"  {pair.elements[0]} ~ {pair.elements[1]}: {_fmt_number(pair.degree)}"
            )
    if doc.overrides:
        out.append("")
        out.append("overrides:")
        for override in doc.overrides:
            out.append(
                f"  {_fmt_subset(override.subsets[0])} ~ {_fmt_subset(override.subsets[1])}: "
                f"{_fmt_number(override.degree)}"
            )
    return "\n".join(out) + "\n"
