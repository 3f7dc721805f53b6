"""Rendering of extended BHT files and per-directory concatenation.

One publication becomes one file (single publication format): an h2
header with volume, number and issue date, the author/title/pages list
item, and the extension elements carrying original names, per-author
status, reading candidates, the original-language title, common
coauthors and the corpus key when the publication was already known.
Output is pure ASCII; everything else is written as character
references.
"""

import calendar
import logging
import os
import re
from dataclasses import dataclass, field

from .matching import AuthorResolution
from .oai import HarvestedPublication

__all__ = [
    "BhtEntry",
    "build_entry",
    "concatenate",
    "date_label",
    "escape_non_ascii",
    "render_spf",
    "spf_relative_path",
]

log = logging.getLogger(__name__)


@dataclass
class BhtEntry:
    """Everything needed to render one single-publication file."""

    volume: str | None
    number: str | None
    date: str | None  # raw date, e.g. 2011-10-15
    authors: list[AuthorResolution]
    title: str
    pages: str | None = None
    ee_url: str | None = None
    original_title: tuple[str, str, str] | None = None  # text, lang, type
    common_coauthors: list[str] = field(default_factory=list)
    dblp_key: str | None = None


def escape_non_ascii(text: str) -> str:
    """ASCII-safe form: XML specials named, all else as &#xHEX; references."""
    out = []
    for ch in text:
        code = ord(ch)
        if ch == "&":
            out.append("&amp;")
        elif ch == "<":
            out.append("&lt;")
        elif ch == ">":
            out.append("&gt;")
        elif code > 127:
            out.append(f"&#x{code:X};")
        else:
            out.append(ch)
    return "".join(out)


def date_label(date: str | None) -> str | None:
    """Human-readable issue date ("October 2011") from an ISO-style date."""
    if not date:
        return None
    match = re.match(r"(\d{4})-(\d{2})", date)
    if match:
        year, month = match.group(1), int(match.group(2))
        if 1 <= month <= 12:
            return f"{calendar.month_name[month]} {year}"
    match = re.match(r"\d{4}", date)
    if match:
        return match.group(0)
    return date


def _attr(text: str) -> str:
    # Attribute values additionally need their delimiter escaped.
    return escape_non_ascii(text).replace('"', "&quot;")


def _display_name(resolution: AuthorResolution) -> str:
    if resolution.latin is not None:
        display = resolution.latin.display()
        if display:
            return display
    if resolution.kanji is not None:
        return resolution.kanji.display()
    return ""


def render_spf(entry: BhtEntry) -> str:
    """Render one publication in single publication format (LF endings)."""
    lines: list[str] = []

    header_parts = []
    if entry.volume:
        header_parts.append(f"Volume {entry.volume}")
    if entry.number:
        header_parts.append(f"Number {entry.number}")
    label = date_label(entry.date)
    if label:
        header_parts.append(label)
    lines.append(f"<h2>{escape_non_ascii(', '.join(header_parts))}</h2>")
    lines.append("<ul>")

    if not entry.authors:
        log.warning("publication %r has no authors", entry.title)
    author_list = ", ".join(
        escape_non_ascii(_display_name(a)) for a in entry.authors
    )
    lines.append(f"<li>{author_list}:")

    title = entry.title.strip()
    if title and title[-1] not in ".?!":
        title += "."
    lines.append(escape_non_ascii(title))
    lines.append(escape_non_ascii(entry.pages or "0-"))
    if entry.ee_url:
        lines.append(f"<ee>{escape_non_ascii(entry.ee_url)}</ee>")

    for author in entry.authors:
        display = _attr(_display_name(author))
        if author.kanji is not None:
            original = escape_non_ascii(
                f"{author.kanji.family},{author.kanji.given}"
            )
            latin_attr = ""
            if author.latin is not None and author.latin.display():
                latin_attr = f' latin="{_attr(author.latin.display())}"'
            lines.append(
                f"<originalname{latin_attr}>{original}</originalname>"
            )
        lines.append(
            f'<status name="{display}">{author.status.value}</status>'
        )
        if author.candidates:
            kanji_attr = ""
            if author.kanji is not None:
                kanji_attr = _attr(author.kanji.display())
            rendered = ", ".join(c.display() for c in author.candidates)
            lines.append(
                f'<namecandidates kanji="{kanji_attr}">'
                f"{escape_non_ascii(rendered)}</namecandidates>"
            )

    if entry.original_title:
        text, lang, pub_type = entry.original_title
        lines.append(
            f'<originaltitle lang="{lang}" type="{_attr(pub_type)}">'
            f"{escape_non_ascii(text)}</originaltitle>"
        )
    if entry.common_coauthors:
        lines.append(
            "<commoncoauthors>"
            + escape_non_ascii(", ".join(entry.common_coauthors))
            + "</commoncoauthors>"
        )
    if entry.dblp_key:
        lines.append(f"<dblpkey>{escape_non_ascii(entry.dblp_key)}</dblpkey>")

    lines.append("</ul>")
    return "\n".join(lines) + "\n"


def build_entry(
    publication: HarvestedPublication,
    resolutions: list[AuthorResolution],
    common_coauthors: list[str] | None = None,
    dblp_key: str | None = None,
) -> BhtEntry:
    """Assemble the renderable entry for one harvested publication."""
    latin_title = None
    japanese_title = None
    for text, lang in publication.titles:
        if lang == "ja" and japanese_title is None:
            japanese_title = text
        elif lang != "ja" and latin_title is None:
            latin_title = text
    title = latin_title or japanese_title or ""

    original_title = None
    if publication.language == "ja" and japanese_title:
        original_title = (japanese_title, "ja", publication.publication_type)

    return BhtEntry(
        volume=publication.volume,
        number=publication.number,
        date=publication.date,
        authors=resolutions,
        title=title,
        pages=publication.pages,
        ee_url=publication.source_url,
        original_title=original_title,
        common_coauthors=list(common_coauthors or []),
        dblp_key=dblp_key,
    )


_SLUG_RE = re.compile(r"[^a-z0-9]+")


def spf_relative_path(publication: HarvestedPublication) -> str:
    """Directory grouping and file name for one publication.

    Files group by publication type and volume; the file itself is named
    after the trailing integer of the OAI identifier.
    """
    type_slug = _SLUG_RE.sub("-", (publication.publication_type or "untyped").lower())
    type_slug = type_slug.strip("-") or "untyped"
    volume = publication.volume or "0"
    match = re.search(r"(\d+)$", publication.identifier)
    stem = match.group(1) if match else _SLUG_RE.sub(
        "-", publication.identifier.lower()
    ).strip("-")
    return os.path.join(type_slug, f"volume-{volume}", f"{stem}.bht")


def concatenate(root: str) -> int:
    """Write all.bht in every directory that holds single-publication files.

    Files concatenate in lexicographic filename order; an existing
    all.bht never feeds its own replacement, so reruns are idempotent.
    Returns the number of all.bht files written.
    """
    written = 0
    for directory, _, filenames in os.walk(root):
        parts = sorted(
            name
            for name in filenames
            if name.endswith(".bht") and name != "all.bht"
        )
        if not parts:
            continue
        try:
            chunks = []
            for name in parts:
                with open(os.path.join(directory, name), "rb") as handle:
                    chunks.append(handle.read())
            with open(os.path.join(directory, "all.bht"), "wb") as handle:
                handle.write(b"".join(chunks))
        except OSError as exc:
            log.error("cannot concatenate in %s: %s", directory, exc)
            continue
        written += 1
    return written
