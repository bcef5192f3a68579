import json
from pathlib import Path

import pytest

from bugloc import ingest, load_goldset, parse_report, save_index
from bugloc.reports import report_from_dict

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def corpus_index():
    return ingest(FIXTURES / "corpus")


@pytest.fixture(scope="session")
def index_file(corpus_index, tmp_path_factory) -> Path:
    path = tmp_path_factory.mktemp("index") / "fixture.idx"
    save_index(corpus_index, path)
    return path


@pytest.fixture(scope="session")
def goldset():
    return load_goldset(FIXTURES / "goldset.tsv")


@pytest.fixture(scope="session")
def table1_report():
    return parse_report(FIXTURES / "reports" / "report_31637.json")


@pytest.fixture(scope="session")
def table2_report():
    return parse_report(FIXTURES / "reports" / "report_187316.json")


@pytest.fixture(scope="session")
def pe_report():
    return parse_report(FIXTURES / "reports" / "report_15036.json")


@pytest.fixture(scope="session")
def classify_fixture_reports():
    data = json.loads((FIXTURES / "classify_reports.json").read_text(encoding="utf-8"))
    return [report_from_dict(item) for item in data]
