"""Latin-transcription normalization and lookup-variant generation.

Japanese names reach us romanized in inconsistent ways: kunrei-style
spellings (zi, si, tu ...), vowel length marked with a macron, with a
trailing h, or dropped entirely, separators written as apostrophe or
hyphen or omitted, and occasionally fullwidth Latin codepoints.  The
name dictionary stores Hepburn spellings with explicit double vowels and
apostrophe separators, so every probe goes through the converters here.
"""

import itertools
import unicodedata
from dataclasses import dataclass, field

__all__ = [
    "EmptyNameError",
    "NormalizedLatin",
    "VariantExplosionError",
    "consonant_variants",
    "expand_double_vowels",
    "normalize_latin",
    "separator_variants",
    "strip_length_h",
    "to_hepburn",
]

DEFAULT_VOWEL_SITE_CAP = 8


class EmptyNameError(ValueError):
    """Raised when a name is empty after normalization."""


class VariantExplosionError(ValueError):
    """Raised when a name has more expandable vowel sites than the cap."""

    def __init__(self, sites: int, cap: int):
        super().__init__(
            f"{sites} expandable vowel sites exceed the cap of {cap}"
        )
        self.sites = sites
        self.cap = cap


@dataclass
class NormalizedLatin:
    """A cleaned Latin name plus the vowel positions known to be long.

    ``lengthening_positions`` are indices into ``text`` of vowels whose
    length marker (macron, circumflex or trailing h) was removed; those
    sites must not be offered undoubled when variants are generated.
    """

    text: str
    lengthening_positions: list[int] = field(default_factory=list)


# Kunrei/nihon-style sequences and their Hepburn spellings.  "shu" and
# "chu" map to themselves so that the "hu" rule cannot fire inside text
# that is already Hepburn (keeps the conversion idempotent).
_HEPBURN_BASE = [
    ("sya", "sha"),
    ("syo", "sho"),
    ("syu", "shu"),
    ("zya", "ja"),
    ("zyo", "jo"),
    ("zyu", "ju"),
    ("tya", "cha"),
    ("tyo", "cho"),
    ("tyu", "chu"),
    ("jya", "ja"),
    ("jyo", "jo"),
    ("jyu", "ju"),
    ("shu", "shu"),
    ("chu", "chu"),
    ("tu", "tsu"),
    ("ti", "chi"),
    ("si", "shi"),
    ("hu", "fu"),
    ("zi", "ji"),
    ("l", "r"),
]

_HEPBURN_TABLE: dict[str, str] = {}
for _src, _dst in _HEPBURN_BASE:
    _HEPBURN_TABLE[_src] = _dst
    _HEPBURN_TABLE[_src.capitalize()] = _dst.capitalize()
_HEPBURN_TABLE["L"] = "R"
_PATTERN_LENGTHS = (3, 2, 1)


def to_hepburn(name: str) -> str:
    """Rewrite a romanized name into the Hepburn system.

    A single left-to-right pass; at each position the longest matching
    sequence wins and its replacement is emitted verbatim.  Lowercase and
    capitalized forms are covered; text already in Hepburn is unchanged.
    """
    out = []
    i = 0
    n = len(name)
    while i < n:
        for length in _PATTERN_LENGTHS:
            repl = _HEPBURN_TABLE.get(name[i:i + length])
            if repl is not None:
                out.append(repl)
                i += length
                break
        else:
            out.append(name[i])
            i += 1
    return "".join(out)


_LONG_VOWELS = {
    "ā": "a", "ī": "i", "ū": "u", "ē": "e", "ō": "o",
    "Ā": "A", "Ī": "I", "Ū": "U", "Ē": "E", "Ō": "O",
    "â": "a", "î": "i", "û": "u", "ê": "e", "ô": "o",
    "Â": "A", "Î": "I", "Û": "U", "Ê": "E", "Ô": "O",
}
_CHAR_MAP = {
    # curly quotes and modifier letters standing in for the apostrophe
    "\u2019": "'", "\u2018": "'", "\u02bc": "'",
    # dash punctuation of any width
    "\u2010": "-", "\u2011": "-", "\u2012": "-", "\u2013": "-",
    "\u2014": "-", "\u2015": "-",
    # middle dots separate name parts; ideographic space
    "\u00b7": " ", "\u30fb": " ", "\u3000": " ",
}


def normalize_latin(raw: str) -> NormalizedLatin:
    """Map a raw Latin name onto plain ASCII.

    Fullwidth Latin becomes basic Latin, long-vowel marks (macron or
    circumflex) become the plain vowel with the position recorded, other
    diacritics are stripped, whitespace is trimmed and collapsed.  Case
    is preserved.  Raises EmptyNameError when nothing is left.
    """
    chars: list[tuple[str, bool]] = []  # (ascii char, lengthened vowel?)
    for ch in unicodedata.normalize("NFC", raw):
        if ch in _LONG_VOWELS:
            chars.append((_LONG_VOWELS[ch], True))
            continue
        ch = _CHAR_MAP.get(ch, ch)
        code = ord(ch)
        if 0xFF01 <= code <= 0xFF5E:  # fullwidth ASCII block
            ch = chr(code - 0xFEE0)
            code = ord(ch)
        if code < 128:
            if ch.isspace():
                ch = " "
            chars.append((ch, False))
            continue
        # Other accented Latin: decompose and keep the ASCII base letter.
        for part in unicodedata.normalize("NFKD", ch):
            if ord(part) < 128 and not unicodedata.combining(part):
                chars.append((part, False))

    text_parts: list[str] = []
    positions: list[int] = []
    pending_space = False
    for ch, lengthened in chars:
        if ch == " ":
            if text_parts:
                pending_space = True
            continue
        if pending_space:
            text_parts.append(" ")
            pending_space = False
        if lengthened:
            positions.append(len(text_parts))
        text_parts.append(ch)
    text = "".join(text_parts)
    if not text:
        raise EmptyNameError(f"name is empty after normalization: {raw!r}")
    return NormalizedLatin(text, positions)


_VOWELS = "aeiou"


def strip_length_h(name: str) -> NormalizedLatin:
    """Drop h's that mark vowel length and remember where they were.

    An h counts as a length marker when it directly follows o or u and is
    followed by a consonant or the end of the word; the position of the
    lengthened vowel (in the output text) is recorded.  An h before a
    vowel is never touched.
    """
    out: list[str] = []
    positions: list[int] = []
    for i, ch in enumerate(name):
        if ch in "hH" and i > 0 and name[i - 1].lower() in "ou":
            nxt = name[i + 1] if i + 1 < len(name) else ""
            if not nxt or (nxt.isalpha() and nxt.lower() not in _VOWELS):
                positions.append(len(out) - 1)
                continue
        out.append(ch)
    return NormalizedLatin("".join(out), positions)


_DOUBLINGS = {
    "a": ("a", "aa"),
    "i": ("i", "ii"),
    "u": ("u", "uu"),
    "e": ("e", "ee", "ei"),
    "o": ("o", "oo", "ou"),
}
_DIGRAPHS = {"aa", "ii", "uu", "ee", "ei", "oo", "ou"}


def expand_double_vowels(
    base: NormalizedLatin, cap: int = DEFAULT_VOWEL_SITE_CAP
) -> list[str]:
    """Enumerate the spellings a name takes under vowel doubling.

    Every single vowel may also appear doubled (o and u each have two
    doublings: oo/ou resp. ee/ei); the variants are the cartesian product
    over all such sites.  Sites listed in ``lengthening_positions`` are
    known to be long, so their undoubled spelling is omitted.  Existing
    double vowels are kept as-is.  More than ``cap`` expandable sites
    raises VariantExplosionError.
    """
    text = base.text
    lengthened = set(base.lengthening_positions)
    segments: list[tuple[str, ...]] = []
    site_count = 0
    i = 0
    while i < len(text):
        ch = text[i]
        low = ch.lower()
        if low in _VOWELS:
            if i + 1 < len(text) and low + text[i + 1].lower() in _DIGRAPHS:
                segments.append((text[i:i + 2],))
                i += 2
                continue
            options = _DOUBLINGS[low]
            if i in lengthened:
                options = options[1:]
            # Rebuild each option on the original character to keep case.
            segments.append(tuple(ch + opt[1:] for opt in options))
            site_count += 1
            i += 1
        else:
            segments.append((ch,))
            i += 1
    if site_count > cap:
        raise VariantExplosionError(site_count, cap)
    return ["".join(parts) for parts in itertools.product(*segments)]


def consonant_variants(name: str) -> list[str]:
    """The input plus every m/n swap before b or p.

    The nasal before b or p is heard as m and written either way, so each
    such site yields both spellings; all combinations are returned, input
    first.
    """
    sites = [
        i
        for i, ch in enumerate(name[:-1])
        if ch.lower() in "mn" and name[i + 1].lower() in "bp"
    ]
    if not sites:
        return [name]
    swaps = {"m": "n", "n": "m", "M": "N", "N": "M"}
    variants: list[str] = []
    for choice in itertools.product((False, True), repeat=len(sites)):
        chars = list(name)
        for site, swap in zip(sites, choice):
            if swap:
                chars[site] = swaps[chars[site]]
        candidate = "".join(chars)
        if candidate not in variants:
            variants.append(candidate)
    return variants


def separator_variants(name: str) -> list[str]:
    """Spellings of a name under separator-symbol substitution.

    Separators appear as apostrophe, hyphen, or not at all; the dictionary
    convention is the apostrophe, so that form comes first, followed by
    the input, the hyphenated form and the separator-free form.
    """
    variants = [
        name.replace("-", "'"),
        name,
        name.replace("'", "-"),
        name.replace("'", "").replace("-", ""),
    ]
    out: list[str] = []
    for v in variants:
        if v not in out:
            out.append(v)
    return out
