import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conceptacc.concept_parser import Grammar  # noqa: E402
from conceptacc.corpus_io import generate_synthetic_corpus, load_templates  # noqa: E402
from conceptacc.semantics import load_inventory  # noqa: E402


@pytest.fixture(scope="session")
def inventory():
    return load_inventory()


@pytest.fixture(scope="session")
def grammar(inventory):
    return Grammar.load(inventory=inventory)


@pytest.fixture(scope="session")
def templates(inventory):
    return load_templates(inventory=inventory)


@pytest.fixture(scope="session")
def synthetic(grammar, templates):
    return generate_synthetic_corpus(templates, grammar.lexicon, 500, seed=11)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
