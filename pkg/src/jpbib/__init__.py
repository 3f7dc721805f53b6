"""Japanese bibliography toolkit.

Parses an ENAMDICT-format name dictionary, harvests publication
metadata over OAI-PMH, matches Japanese author names between kanji and
Latin transcription, deduplicates against a DBLP-style corpus, and
writes extended BHT files ready for import review.
"""

__version__ = "0.1.0"
