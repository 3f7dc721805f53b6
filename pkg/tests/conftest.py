from pathlib import Path

import pytest

from jpbib.enamdict import load_enamdict
from jpbib.matching import NameDictionary

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def names_fixture_path() -> Path:
    return FIXTURES / "names_fixture.txt"


@pytest.fixture(scope="session")
def name_records(names_fixture_path):
    records, _ = load_enamdict(str(names_fixture_path))
    return records


@pytest.fixture(scope="session")
def name_dictionary(name_records) -> NameDictionary:
    return NameDictionary(name_records)


@pytest.fixture(scope="session")
def name_dictionary_with_u(names_fixture_path) -> NameDictionary:
    records, _ = load_enamdict(str(names_fixture_path), include_unclassified=True)
    return NameDictionary(records)
