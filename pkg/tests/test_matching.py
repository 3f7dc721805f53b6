"""Name splitting, kanji/Latin matching and candidate generation."""

import pytest

from jpbib.matching import (
    NameStatus,
    PersonName,
    detect_abbreviated,
    kanji_name_candidates,
    latin_lookup_variants,
    match_latin_kanji,
    resolve_author,
    split_latin_full_name,
)


def test_split_fused_uppercase_family(name_dictionary):
    person, hint = split_latin_full_name("NobukazuYOSHIOKA", name_dictionary)
    assert person == PersonName("Nobukazu", "Yoshioka")
    assert hint is NameStatus.BAD_DATA_QUALITY


def test_split_kenjitoda(name_dictionary):
    person, hint = split_latin_full_name("KenjiTODA", name_dictionary)
    assert person == PersonName("Kenji", "Toda")
    assert hint is NameStatus.BAD_DATA_QUALITY


def test_split_with_dictionary_evidence(name_dictionary):
    person, hint = split_latin_full_name("Shinsuke Mori", name_dictionary)
    assert person == PersonName("Shinsuke", "Mori")
    assert hint is NameStatus.OK


def test_split_reversed_order_detected(name_dictionary):
    person, hint = split_latin_full_name("Mori Shinsuke", name_dictionary)
    assert person == PersonName("Shinsuke", "Mori")
    assert hint is NameStatus.OK


def test_split_comma_means_family_first(name_dictionary):
    person, hint = split_latin_full_name("Mori, Shinsuke", name_dictionary)
    assert person == PersonName("Shinsuke", "Mori")
    assert hint is NameStatus.OK


def test_split_two_unknown_tokens_keep_order(name_dictionary):
    person, hint = split_latin_full_name("Graham Neubig", name_dictionary)
    assert person == PersonName("Graham", "Neubig")
    assert hint is NameStatus.NOT_FOUND_IN_DICTIONARY


def test_split_single_unknown_token(name_dictionary):
    person, hint = split_latin_full_name("Zzyzx", name_dictionary)
    assert person == PersonName("Zzyzx", "Zzyzx")
    assert hint is NameStatus.NAME_ANOMALY


def test_split_all_caps_token(name_dictionary):
    person, hint = split_latin_full_name("YOSHIOKA", name_dictionary)
    assert person == PersonName("", "Yoshioka")
    assert hint is NameStatus.POSSIBLE_NAME_ANOMALY


def test_split_never_returns_two_empty_parts(name_dictionary):
    for raw in ["NobukazuYOSHIOKA", "Mori", "Zzyzx", "a b c", "QQQQ", ",", "x,"]:
        person, _ = split_latin_full_name(raw, name_dictionary)
        assert person.given or person.family


def test_detect_abbreviated():
    assert detect_abbreviated("T. Nakamura")
    assert detect_abbreviated("T Nakamura")
    assert not detect_abbreviated("Takeshi Nakamura")


def test_latin_lookup_variants_gotoh():
    variants = latin_lookup_variants("Gotoh")
    assert variants[0] == "Gotoh"
    assert "Gotou" in variants and "Gotoo" in variants
    assert "Goto" not in variants  # the removed h marked the vowel long


def test_latin_lookup_variants_mori():
    variants = latin_lookup_variants("Mori")
    assert variants[0] == "Mori"
    assert {"Mori", "Moori", "Mouri"} <= set(variants)


def test_latin_lookup_variants_kai():
    assert latin_lookup_variants("Kai")[0] == "Kai"


def test_latin_lookup_variants_deduplicated():
    variants = latin_lookup_variants("Shin'ichi")
    assert len(variants) == len(set(variants))


def test_dictionary_lookup_succeeds_for_both_apostrophe_spellings(name_dictionary):
    with_apostrophe = name_dictionary.by_latin("Shin'ichi")
    without = name_dictionary.by_latin("Shinichi")
    assert with_apostrophe and without
    assert {r.surface for r in with_apostrophe} == {"真一"}
    assert {r.surface for r in without} == {"真一"}
    # Case-insensitive keys.
    assert name_dictionary.by_latin("MORI") == name_dictionary.by_latin("mori")


def test_match_latin_kanji_ok(name_dictionary):
    resolution = match_latin_kanji(
        PersonName("Shinsuke", "Mori"), "森信介", name_dictionary
    )
    assert resolution.status is NameStatus.OK
    assert resolution.kanji == PersonName("信介", "森")
    assert resolution.candidates == []


def test_match_latin_kanji_lengthened_vowel(name_dictionary):
    # Dictionary stores Gotou; the transcription dropped the length mark.
    resolution = match_latin_kanji(
        PersonName("Hitoshi", "Gotoh"), "後藤仁", name_dictionary
    )
    assert resolution.status is NameStatus.OK
    assert resolution.kanji == PersonName("仁", "後藤")


def test_match_latin_kanji_no_match(name_dictionary):
    resolution = match_latin_kanji(
        PersonName("Graham", "Neubig"), "ニュービッググラム", name_dictionary
    )
    assert resolution.status is NameStatus.NO_KANJI_MATCHING_FOUND
    assert resolution.kanji == PersonName("", "ニュービッググラム")


def test_match_latin_kanji_missing_latin(name_dictionary):
    resolution = match_latin_kanji(None, "菅谷正弘", name_dictionary)
    assert resolution.status is NameStatus.UNDEFINED_LATIN_MISSING
    assert resolution.latin is None


def test_match_latin_kanji_empty_kanji(name_dictionary):
    resolution = match_latin_kanji(
        PersonName("Shinsuke", "Mori"), "", name_dictionary
    )
    assert resolution.status is NameStatus.OK
    assert resolution.kanji is None

    resolution = match_latin_kanji(
        PersonName("Graham", "Neubig"), "", name_dictionary
    )
    assert resolution.status is NameStatus.NOT_FOUND_IN_DICTIONARY


def test_match_latin_kanji_self_consistency(name_dictionary):
    resolution = match_latin_kanji(
        PersonName("Takeshi", "Nakamura"), "中村武志", name_dictionary
    )
    assert resolution.status is NameStatus.OK
    family_records = name_dictionary.by_surface(resolution.kanji.family)
    forms = {v.lower() for v in latin_lookup_variants("Nakamura")}
    assert any(r.latin.lower() in forms for r in family_records)


def test_abbreviated_with_unique_kanji_split(name_dictionary):
    resolution = match_latin_kanji(
        PersonName("T.", "Nakamura"), "中村武志", name_dictionary
    )
    assert resolution.status is NameStatus.POSSIBLE_NAME_ANOMALY
    assert resolution.kanji == PersonName("武志", "中村")


def test_abbreviated_without_kanji(name_dictionary):
    resolution = match_latin_kanji(PersonName("T.", "Nakamura"), "", name_dictionary)
    assert resolution.status is NameStatus.ABBREVIATED


def test_kanji_candidates_twenty(name_dictionary):
    candidates = kanji_name_candidates("菅谷正弘", name_dictionary)
    assert len(candidates) == 20
    rendered = [c.display() for c in candidates]
    assert rendered[:4] == [
        "Shougu Sugatani",
        "Seihiro Sugatani",
        "Tadahiro Sugatani",
        "Masahiro Sugatani",
    ]
    assert rendered[4] == "Shougu Suganoya"
    families = {c.family for c in candidates}
    givens = {c.given for c in candidates}
    assert len(candidates) == len(families) * len(givens)
    assert len(rendered) == len(set(rendered))


def test_kanji_candidates_no_hit(name_dictionary):
    assert kanji_name_candidates("ニュービッグ", name_dictionary) == []


def test_kanji_candidates_multiple_splits():
    from jpbib.enamdict import NameRecord, NameType
    from jpbib.matching import NameDictionary

    surname = frozenset({NameType.SURNAME})
    given = frozenset({NameType.GIVEN})
    # Both 山 | 田太 and 山田 | 太 are accepted splits for 山田太.
    dictionary = NameDictionary(
        [
            NameRecord("山", None, "Yama", surname),
            NameRecord("田太", None, "Data", given),
            NameRecord("山田", None, "Yamada", surname),
            NameRecord("山田", None, "Yamata", surname),
            NameRecord("太", None, "Futoshi", given),
            NameRecord("太", None, "Hiroshi", given),
        ]
    )
    candidates = kanji_name_candidates("山田太", dictionary)
    rendered = [c.display() for c in candidates]
    # 1x1 combinations from the first split, then 2x2 from the second.
    assert rendered == [
        "Data Yama",
        "Futoshi Yamada",
        "Hiroshi Yamada",
        "Futoshi Yamata",
        "Hiroshi Yamata",
    ]
    assert len(rendered) == len(set(rendered))


def test_kanji_candidates_single_combination(name_dictionary):
    candidates = kanji_name_candidates("森信介", name_dictionary)
    assert candidates == [PersonName("Shinsuke", "Mori")]


def test_resolve_author_full_pipeline(name_dictionary):
    resolution = resolve_author("Shinsuke Mori", "森信介", name_dictionary)
    assert resolution.status is NameStatus.OK
    assert resolution.latin == PersonName("Shinsuke", "Mori")
    assert resolution.kanji == PersonName("信介", "森")


def test_resolve_author_bad_quality_sticks(name_dictionary):
    resolution = resolve_author("NobukazuYOSHIOKA", "吉岡信和", name_dictionary)
    assert resolution.status is NameStatus.BAD_DATA_QUALITY
    assert resolution.kanji == PersonName("信和", "吉岡")


def test_resolve_author_fullwidth_latin(name_dictionary):
    resolution = resolve_author("Ｓｈｉｎｓｕｋｅ Ｍｏｒｉ", "森信介", name_dictionary)
    assert resolution.status is NameStatus.OK


def test_resolve_author_missing_latin_gets_candidates(name_dictionary):
    resolution = resolve_author(None, "菅谷正弘", name_dictionary)
    assert resolution.status is NameStatus.UNDEFINED_LATIN_MISSING
    assert len(resolution.candidates) == 20


def test_resolve_author_unusable_latin_field(name_dictionary):
    # Nothing survives normalization: treated like a missing Latin name.
    resolution = resolve_author("★★★", "菅谷正弘", name_dictionary)
    assert resolution.status is NameStatus.UNDEFINED_LATIN_MISSING
    assert resolution.candidates
    # ASCII junk survives and is flagged instead.
    resolution = resolve_author("***", "森信介", name_dictionary)
    assert resolution.status is NameStatus.NAME_ANOMALY


def test_resolve_author_candidates_only_when_latin_missing(name_dictionary):
    resolution = resolve_author("Shinsuke Mori", "森信介", name_dictionary)
    assert resolution.candidates == []


def test_unclassified_names_monotonic(name_dictionary, name_dictionary_with_u):
    # Ib is unclassified; with u-records present it can serve as a reading.
    corpus = [
        ("Shinsuke Mori", "森信介"),
        ("Graham Neubig", "ニュービッググラム"),
        ("Yuuta Tsuboi", "坪井祐太"),
        ("Ib Mori", "森イブ"),
        ("Takeshi Nakamura", "中村武志"),
    ]

    def ok_count(dictionary):
        return sum(
            1
            for latin, kanji in corpus
            if resolve_author(latin, kanji, dictionary).status is NameStatus.OK
        )

    without_u = ok_count(name_dictionary)
    with_u = ok_count(name_dictionary_with_u)
    assert with_u >= without_u
    assert with_u == without_u + 1  # the Ib case flips to ok


def test_resolution_is_deterministic(name_dictionary):
    first = resolve_author("Shinsuke Mori", "森信介", name_dictionary)
    second = resolve_author("Shinsuke Mori", "森信介", name_dictionary)
    assert first == second


def test_resolution_invariants_over_mock_corpus(name_dictionary):
    from jpbib.oai import harvest
    from mockrepo import build_provider

    provider = build_provider()
    for record, publication in harvest(
        "http://example.org/oai", "junii2", "list", fetch=provider.fetch
    ):
        if publication is None:
            continue
        for latin_raw, kanji_raw in publication.creators:
            resolution = resolve_author(latin_raw, kanji_raw, name_dictionary)
            if resolution.status is NameStatus.OK:
                assert resolution.latin is not None
                if kanji_raw:
                    assert resolution.kanji is not None
                    assert resolution.kanji.given and resolution.kanji.family
            if resolution.candidates:
                assert resolution.latin is None
