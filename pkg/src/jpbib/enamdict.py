"""Parser for ENAMDICT-format name dictionary files.

Entries come one per line as ``SURFACE [READING] /LATIN (TYPE)/`` where
the reading bracket is optional (kana-only surfaces need none), the type
block may sit before or after the Latin text, and one line may carry
several slash-delimited senses.  Only person-name senses are kept; the
known file inconsistencies (missing terminal slash, stray bracket,
backslash in place of a bracket) are tolerated and reported as warnings
instead of patched by hand.
"""

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "NameRecord",
    "NameType",
    "ParseWarning",
    "apostrophe_variants",
    "filter_types",
    "format_entry_line",
    "load_enamdict",
    "parse_entry_line",
    "parse_file",
]


class NameType(enum.Enum):
    """Person-name categories stored by the parser."""

    SURNAME = "s"
    GIVEN = "g"
    FEMALE_GIVEN = "f"
    MALE_GIVEN = "m"
    UNCLASSIFIED = "u"


PERSON_TYPE_CODES = {t.value: t for t in NameType}

# Every code the type block may carry; the non-person ones (place, full
# person name, product, company, station) are recognized but dropped.
_ALL_TYPE_CODES = ("st", "pr", "co", "s", "u", "g", "f", "m", "p", "h")
_VALID_TYPES_RE = re.compile("(,|%s)*" % "|".join(_ALL_TYPE_CODES))
_TYPE_TOKEN_RE = re.compile("|".join(_ALL_TYPE_CODES) + "|,")


@dataclass(frozen=True)
class NameRecord:
    """One dictionary name: written form, optional kana reading, Latin form."""

    surface: str
    reading: str | None
    latin: str
    types: frozenset[NameType]


@dataclass(frozen=True)
class ParseWarning:
    """A tolerated irregularity; ``raw`` is the offending line verbatim."""

    line_number: int
    kind: str  # missing-terminal-slash | stray-bracket | malformed-type-block
    raw: str


def filter_types(raw: str) -> frozenset[NameType]:
    """Person-name types named by one round-bracket block.

    Returns the empty set when the block is commentary, i.e. anything
    that is not a comma-separated list of known type codes, or when it
    names only non-person types.
    """
    if _VALID_TYPES_RE.fullmatch(raw) is None:
        return frozenset()
    found = set()
    for token in _TYPE_TOKEN_RE.findall(raw):
        if token in PERSON_TYPE_CODES:
            found.add(PERSON_TYPE_CODES[token])
    return frozenset(found)


_HEAD_RE = re.compile(r"^(?P<surface>\S+)(?:\s+\[(?P<reading>[^\]]*)\])?\s*$")
_HEAD_BACKSLASH_RE = re.compile(r"^(?P<surface>\S+)\s+\[(?P<reading>[^\]\\]*)\\\s*$")
_BRACKET_BLOCK_RE = re.compile(r"\(([^()]*)\)")


def _parse_sense(
    sense: str, include_unclassified: bool, warn: list[str]
) -> tuple[str, frozenset[NameType]] | None:
    # A ')' with no matching '(' appears in the wild; drop it and note it.
    cleaned = []
    depth = 0
    for ch in sense:
        if ch == "(":
            depth += 1
        elif ch == ")":
            if depth == 0:
                warn.append("stray-bracket")
                continue
            depth -= 1
        cleaned.append(ch)
    sense = "".join(cleaned)
    if depth > 0:
        warn.append("stray-bracket")

    types: set[NameType] = set()
    for block in _BRACKET_BLOCK_RE.findall(sense):
        types |= filter_types(block)
    latin = " ".join(_BRACKET_BLOCK_RE.sub(" ", sense).split())
    if not include_unclassified:
        types.discard(NameType.UNCLASSIFIED)
    if not latin or not types:
        return None
    return latin, frozenset(types)


def parse_entry_line(
    line: str, include_unclassified: bool, line_number: int = 0
) -> tuple[list[NameRecord], list[ParseWarning]]:
    """Parse one entry line into zero or more records.

    Each slash-delimited sense yields one record when its type set still
    holds person types after filtering.  Malformed lines yield warnings
    and whatever could be salvaged.
    """
    raw = line.rstrip("\n")
    stripped = raw.strip()
    records: list[NameRecord] = []
    warnings: list[ParseWarning] = []
    if not stripped:
        return records, warnings

    slash = stripped.find("/")
    if slash < 0:
        warnings.append(ParseWarning(line_number, "malformed-type-block", raw))
        return records, warnings
    head = stripped[:slash].strip()
    body = stripped[slash + 1:]
    if body.endswith("/"):
        body = body[:-1]
    else:
        warnings.append(ParseWarning(line_number, "missing-terminal-slash", raw))

    match = _HEAD_RE.match(head)
    if match is None:
        match = _HEAD_BACKSLASH_RE.match(head)
        if match is None:
            warnings.append(ParseWarning(line_number, "malformed-type-block", raw))
            return records, warnings
        warnings.append(ParseWarning(line_number, "stray-bracket", raw))
    surface = match.group("surface")
    reading = match.group("reading")

    seen: set[tuple[str, str, frozenset[NameType]]] = set()
    for sense in body.split("/"):
        sense = sense.strip()
        if not sense:
            continue
        kinds: list[str] = []
        parsed = _parse_sense(sense, include_unclassified, kinds)
        for kind in kinds:
            warnings.append(ParseWarning(line_number, kind, raw))
        if parsed is None:
            continue
        latin, types = parsed
        key = (surface, latin, types)
        if key in seen:
            continue
        seen.add(key)
        records.append(NameRecord(surface, reading, latin, types))
    return records, warnings


def parse_file(
    lines: Iterable[str], include_unclassified: bool = False
) -> tuple[list[NameRecord], list[ParseWarning]]:
    """Parse a whole dictionary stream.

    Warnings accumulate and are never fatal; duplicate records (same
    surface, Latin form and types) are kept once.  Read errors from the
    underlying stream propagate as OSError.
    """
    records: list[NameRecord] = []
    warnings: list[ParseWarning] = []
    seen: set[tuple[str, str, frozenset[NameType]]] = set()
    for number, line in enumerate(lines, start=1):
        recs, warns = parse_entry_line(line, include_unclassified, number)
        warnings.extend(warns)
        for record in recs:
            key = (record.surface, record.latin, record.types)
            if key in seen:
                continue
            seen.add(key)
            records.append(record)
    return records, warnings


def load_enamdict(
    path: str, include_unclassified: bool = False
) -> tuple[list[NameRecord], list[ParseWarning]]:
    """Parse a dictionary file from disk (UTF-8 only)."""
    with open(path, encoding="utf-8") as handle:
        return parse_file(handle, include_unclassified)


def apostrophe_variants(record: NameRecord) -> list[NameRecord]:
    """The record itself, plus an apostrophe-free copy when one applies."""
    if "'" not in record.latin:
        return [record]
    stripped = NameRecord(
        record.surface, record.reading, record.latin.replace("'", ""), record.types
    )
    return [record, stripped]


_TYPE_ORDER = [
    NameType.SURNAME,
    NameType.GIVEN,
    NameType.FEMALE_GIVEN,
    NameType.MALE_GIVEN,
    NameType.UNCLASSIFIED,
]


def format_entry_line(record: NameRecord) -> str:
    """Render a record back into single-sense entry form."""
    codes = ",".join(t.value for t in _TYPE_ORDER if t in record.types)
    reading = f" [{record.reading}]" if record.reading is not None else ""
    return f"{record.surface}{reading} /{record.latin} ({codes})/"


def iter_person_records(
    records: Iterable[NameRecord],
) -> Iterator[NameRecord]:
    """Records with their apostrophe lookup variants expanded."""
    for record in records:
        yield from apostrophe_variants(record)
