"""OAI-PMH client: record listing, single-record retrieval, junii2 parsing.

Transport is a plain callable ``fetch(url) -> bytes`` so tests and replay
runs can serve canned XML; the default implementation does HTTP GET with
retries.  Requests follow the protocol's two request shapes: the first
ListRecords call carries the metadata prefix, continuations carry only
the resumption token.

junii2 field mapping (fixed by the fixtures shipped in this repository):
``title`` elements carry per-language titles via xml:lang; ``creator``
elements hold author names, kanji and Latin forms of the same person
adjacent to each other; ``NIItype`` (or ``type``) is the publication
type; ``volume``/``issue``/``spage``/``epage`` describe the issue;
``dateofissued`` (or ``date``) the date; ``language`` uses jpn/eng
codes; ``URI`` (or an http identifier) is the electronic edition;
``contributor`` and ``description`` are carried through verbatim.
"""

import logging
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterator
from xml.etree import ElementTree as ET

__all__ = [
    "HarvestedPublication",
    "MalformedRecordError",
    "OaiProtocolError",
    "OaiRecord",
    "TransportError",
    "get_record",
    "harvest",
    "http_fetch",
    "list_metadata_formats",
    "list_records",
    "parse_junii2",
    "parse_oai_dc",
    "replay_fetcher",
]

log = logging.getLogger(__name__)

OAI_NS = "http://www.openarchives.org/OAI/2.0/"

Fetch = Callable[[str], bytes]


class TransportError(RuntimeError):
    """Network-level failure after the configured number of attempts."""

    def __init__(self, url: str, attempts: int, cause: Exception | None = None):
        super().__init__(f"fetch failed after {attempts} attempts: {url}")
        self.url = url
        self.attempts = attempts
        self.cause = cause


class OaiProtocolError(RuntimeError):
    """Protocol-level error element returned by the provider."""

    def __init__(self, code: str, message: str = ""):
        super().__init__(f"{code}: {message}".rstrip(": "))
        self.code = code
        self.message = message


class MalformedRecordError(ValueError):
    """Metadata payload missing required fields (e.g. all titles)."""


@dataclass
class OaiRecord:
    """One protocol record; deleted records never carry a payload."""

    identifier: str
    datestamp: str
    deleted: bool = False
    payload: ET.Element | None = None


@dataclass
class HarvestedPublication:
    """Publication metadata extracted from a junii2 payload."""

    identifier: str
    titles: list[tuple[str, str]]  # (text, language tag)
    creators: list[tuple[str | None, str | None]]  # (latin, kanji)
    publication_type: str = ""
    date: str | None = None
    pages: str | None = None
    volume: str | None = None
    number: str | None = None
    language: str = "other"
    source_url: str | None = None
    contributors: list[tuple[str, str]] = field(default_factory=list)
    descriptions: list[tuple[str, str]] = field(default_factory=list)


def http_fetch(url: str, timeout: float = 30.0) -> bytes:
    request = urllib.request.Request(url, headers={"User-Agent": "jpbib/0.1"})
    try:
        with urllib.request.urlopen(request, timeout=timeout) as response:
            return response.read()
    except (urllib.error.URLError, OSError) as exc:
        raise TransportError(url, 1, exc) from exc


def _fetch_with_retries(
    fetch: Fetch, url: str, retries: int = 3, backoff: float = 0.5
) -> bytes:
    last: Exception | None = None
    for attempt in range(1, retries + 1):
        try:
            return fetch(url)
        except (TransportError, OSError) as exc:
            last = exc
            if attempt < retries:
                time.sleep(backoff * 2 ** (attempt - 1))
    raise TransportError(url, retries, last)


def _build_url(endpoint: str, params: dict[str, str]) -> str:
    separator = "&" if "?" in endpoint else "?"
    return endpoint + separator + urllib.parse.urlencode(params)


def _parse_response(data: bytes, verb: str) -> ET.Element:
    root = ET.fromstring(data)
    error = root.find(f"{{{OAI_NS}}}error")
    if error is not None:
        raise OaiProtocolError(error.get("code", "unknown"), (error.text or "").strip())
    body = root.find(f"{{{OAI_NS}}}{verb}")
    if body is None:
        raise OaiProtocolError("badVerb", f"response lacks a {verb} element")
    return body


def _parse_record(elem: ET.Element) -> OaiRecord:
    header = elem.find(f"{{{OAI_NS}}}header")
    identifier = header.findtext(f"{{{OAI_NS}}}identifier", "").strip()
    datestamp = header.findtext(f"{{{OAI_NS}}}datestamp", "").strip()
    deleted = header.get("status") == "deleted"
    payload = None
    if not deleted:
        metadata = elem.find(f"{{{OAI_NS}}}metadata")
        if metadata is not None and len(metadata):
            payload = metadata[0]
    return OaiRecord(identifier, datestamp, deleted, payload)


def list_records(
    endpoint: str,
    prefix: str,
    token: str | None = None,
    *,
    fetch: Fetch = http_fetch,
    retries: int = 3,
    backoff: float = 0.5,
    from_date: str | None = None,
    until_date: str | None = None,
) -> tuple[list[OaiRecord], str | None]:
    """One ListRecords page plus the token for the next one, if any.

    Continuation requests carry only the resumption token; the optional
    date window applies to the first request of a harvest.
    """
    if token:
        params = {"verb": "ListRecords", "resumptionToken": token}
    else:
        params = {"verb": "ListRecords", "metadataPrefix": prefix}
        if from_date:
            params["from"] = from_date
        if until_date:
            params["until"] = until_date
    url = _build_url(endpoint, params)
    try:
        body = _parse_response(
            _fetch_with_retries(fetch, url, retries, backoff), "ListRecords"
        )
    except OaiProtocolError as exc:
        if exc.code == "noRecordsMatch":
            return [], None
        raise
    records = [_parse_record(r) for r in body.findall(f"{{{OAI_NS}}}record")]
    token_elem = body.find(f"{{{OAI_NS}}}resumptionToken")
    next_token = None
    if token_elem is not None and token_elem.text and token_elem.text.strip():
        next_token = token_elem.text.strip()
    return records, next_token


def get_record(
    endpoint: str,
    prefix: str,
    identifier: str,
    *,
    fetch: Fetch = http_fetch,
    retries: int = 3,
    backoff: float = 0.5,
) -> OaiRecord | None:
    """A single record, or None when the provider reports idDoesNotExist."""
    url = _build_url(
        endpoint,
        {"verb": "GetRecord", "metadataPrefix": prefix, "identifier": identifier},
    )
    try:
        body = _parse_response(
            _fetch_with_retries(fetch, url, retries, backoff), "GetRecord"
        )
    except OaiProtocolError as exc:
        if exc.code == "idDoesNotExist":
            return None
        raise
    record = body.find(f"{{{OAI_NS}}}record")
    if record is None:
        return None
    return _parse_record(record)


def list_metadata_formats(
    endpoint: str,
    *,
    fetch: Fetch = http_fetch,
    retries: int = 3,
    backoff: float = 0.5,
) -> list[str]:
    """Metadata prefixes declared by the provider."""
    url = _build_url(endpoint, {"verb": "ListMetadataFormats"})
    body = _parse_response(
        _fetch_with_retries(fetch, url, retries, backoff), "ListMetadataFormats"
    )
    return [
        fmt.findtext(f"{{{OAI_NS}}}metadataPrefix", "").strip()
        for fmt in body.findall(f"{{{OAI_NS}}}metadataFormat")
    ]


def _local_name(elem: ET.Element) -> str:
    tag = elem.tag
    return tag.rsplit("}", 1)[-1] if "}" in tag else tag


_LANG_ATTR = "{http://www.w3.org/XML/1998/namespace}lang"
_LANGUAGE_CODES = {"jpn": "ja", "ja": "ja", "eng": "en", "en": "en"}


def _has_cjk(text: str) -> bool:
    return any(
        0x3040 <= ord(ch) <= 0x30FF  # kana
        or 0x4E00 <= ord(ch) <= 0x9FFF  # unified ideographs
        or 0x3000 <= ord(ch) <= 0x303F  # CJK punctuation
        for ch in text
    )


def _language_tag(elem: ET.Element, text: str) -> str:
    lang = elem.get(_LANG_ATTR, "").lower()
    if lang in _LANGUAGE_CODES:
        return _LANGUAGE_CODES[lang]
    if lang:
        return "other"
    return "ja" if _has_cjk(text) else "en"


def _pair_creators(raw: list[str]) -> list[tuple[str | None, str | None]]:
    # A kanji form and a Latin form next to each other describe the same
    # person; anything unpaired stands alone.
    creators: list[tuple[str | None, str | None]] = []
    i = 0
    while i < len(raw):
        current = raw[i]
        current_kanji = _has_cjk(current)
        if i + 1 < len(raw) and _has_cjk(raw[i + 1]) != current_kanji:
            latin, kanji = (
                (raw[i + 1], current) if current_kanji else (current, raw[i + 1])
            )
            creators.append((latin, kanji))
            i += 2
        else:
            if current_kanji:
                creators.append((None, current))
            else:
                creators.append((current, None))
            i += 1
    return creators


def parse_junii2(payload: ET.Element | str, identifier: str = "") -> HarvestedPublication:
    """Extract a HarvestedPublication from one junii2 metadata element.

    Raises MalformedRecordError when the payload carries no title at all.
    """
    if isinstance(payload, str):
        payload = ET.fromstring(payload)

    titles: list[tuple[str, str]] = []
    creators_raw: list[str] = []
    contributors: list[tuple[str, str]] = []
    descriptions: list[tuple[str, str]] = []
    fields: dict[str, str] = {}
    for child in payload:
        name = _local_name(child)
        text = (child.text or "").strip()
        if not text:
            continue
        if name in ("title", "alternative"):
            titles.append((text, _language_tag(child, text)))
        elif name == "creator":
            creators_raw.append(text)
        elif name == "contributor":
            contributors.append((text, _language_tag(child, text)))
        elif name == "description":
            descriptions.append((text, _language_tag(child, text)))
        elif name not in fields:
            fields[name] = text

    if not titles:
        raise MalformedRecordError(f"record {identifier or '?'} has no titles")

    pages = None
    spage, epage = fields.get("spage"), fields.get("epage")
    if spage and epage:
        pages = f"{spage}-{epage}"
    elif spage:
        pages = f"{spage}-"

    source_url = fields.get("URI")
    if not source_url:
        candidate = fields.get("identifier", "")
        if candidate.startswith("http"):
            source_url = candidate

    return HarvestedPublication(
        identifier=identifier,
        titles=titles,
        creators=_pair_creators(creators_raw),
        publication_type=fields.get("NIItype") or fields.get("type", ""),
        date=fields.get("dateofissued") or fields.get("date"),
        pages=pages,
        volume=fields.get("volume"),
        number=fields.get("issue") or fields.get("number"),
        language=_LANGUAGE_CODES.get(fields.get("language", "").lower(), "other"),
        source_url=source_url,
        contributors=contributors,
        descriptions=descriptions,
    )


def parse_oai_dc(payload: ET.Element | str, identifier: str = "") -> HarvestedPublication:
    """Thin Dublin Core mapping; junii2 is the richer primary format.

    Plain dc elements carry no per-field language attributes, so language
    tags fall back to script detection; issue fields (volume, number,
    pages) have no dc equivalent and stay empty.
    """
    if isinstance(payload, str):
        payload = ET.fromstring(payload)
    titles: list[tuple[str, str]] = []
    creators_raw: list[str] = []
    fields: dict[str, str] = {}
    for child in payload.iter():
        name = _local_name(child)
        text = (child.text or "").strip()
        if not text:
            continue
        if name == "title":
            titles.append((text, _language_tag(child, text)))
        elif name == "creator":
            creators_raw.append(text)
        elif name not in fields:
            fields[name] = text
    if not titles:
        raise MalformedRecordError(f"record {identifier or '?'} has no titles")
    source_url = fields.get("identifier", "")
    return HarvestedPublication(
        identifier=identifier,
        titles=titles,
        creators=_pair_creators(creators_raw),
        publication_type=fields.get("type", ""),
        date=fields.get("date"),
        language=_LANGUAGE_CODES.get(fields.get("language", "").lower(), "other"),
        source_url=source_url if source_url.startswith("http") else None,
    )


def harvest(
    endpoint: str,
    prefix: str,
    mode: str | tuple[int, int] = "list",
    *,
    fetch: Fetch = http_fetch,
    id_prefix: str = "",
    delay: float = 0.0,
    retries: int = 3,
    backoff: float = 0.5,
    save_dir: str | None = None,
    from_date: str | None = None,
    until_date: str | None = None,
) -> Iterator[tuple[OaiRecord, HarvestedPublication | None]]:
    """Stream every record of a provider exactly once.

    ``mode`` is either "list" (follow resumption tokens to exhaustion) or
    an (min, max) id range fetched record by record; range ids are built
    as ``id_prefix`` plus the integer and unknown ids are skipped.  Each
    payload is parsed as junii2; deleted or malformed records yield None
    as their publication.  With ``save_dir`` set, every raw response body
    is written there in request order for later replay.
    """
    saver = _ResponseSaver(save_dir) if save_dir else None
    wrapped_fetch = saver.wrap(fetch) if saver else fetch

    if mode == "list":
        token: str | None = None
        first = True
        while True:
            if not first and delay:
                time.sleep(delay)
            records, token = list_records(
                endpoint,
                prefix,
                token,
                fetch=wrapped_fetch,
                retries=retries,
                backoff=backoff,
                from_date=from_date if first else None,
                until_date=until_date if first else None,
            )
            first = False
            for record in records:
                yield record, _parse_payload(record)
            if not token:
                break
    else:
        lower, upper = mode
        if lower > upper:
            raise ValueError(f"invalid id range: {lower} > {upper}")
        first = True
        for number in range(lower, upper + 1):
            if not first and delay:
                time.sleep(delay)
            first = False
            record = get_record(
                endpoint,
                prefix,
                f"{id_prefix}{number}",
                fetch=wrapped_fetch,
                retries=retries,
                backoff=backoff,
            )
            if record is None:
                continue
            yield record, _parse_payload(record)


def _parse_payload(record: OaiRecord) -> HarvestedPublication | None:
    if record.deleted or record.payload is None:
        return None
    try:
        return parse_junii2(record.payload, record.identifier)
    except MalformedRecordError as exc:
        log.warning("%s", exc)
        return None


class _ResponseSaver:
    def __init__(self, directory: str):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.sequence = 0

    def wrap(self, fetch: Fetch) -> Fetch:
        def saving_fetch(url: str) -> bytes:
            data = fetch(url)
            self.sequence += 1
            (self.directory / f"{self.sequence:06d}.xml").write_bytes(data)
            return data

        return saving_fetch


def replay_fetcher(directory: str) -> Fetch:
    """Serve previously saved responses in their original request order."""
    files = sorted(Path(directory).glob("*.xml"))
    iterator = iter(files)

    def fetch(url: str) -> bytes:
        try:
            return next(iterator).read_bytes()
        except StopIteration:
            raise TransportError(url, 1, None)

    return fetch
