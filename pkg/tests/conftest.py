import io
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))  # oracles / synth helpers

from paramine.conllu import load_corpus, parse_conllu
from paramine.extraction import extract_corpus
from paramine.stats import build_stats

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "paramine", "data")


def data_path(name: str) -> str:
    return os.path.normpath(os.path.join(DATA_DIR, name))


@pytest.fixture(scope="session")
def mini_corpus():
    return load_corpus([data_path("mini.conllu")])


@pytest.fixture(scope="session")
def mini_instances(mini_corpus):
    return extract_corpus(mini_corpus)


@pytest.fixture(scope="session")
def mini_stats(mini_corpus, mini_instances):
    return build_stats(mini_corpus, mini_instances)


@pytest.fixture(scope="session")
def news_corpus():
    return load_corpus([data_path("news.conllu")])


@pytest.fixture(scope="session")
def august_corpus():
    return load_corpus([data_path("august.conllu")])


@pytest.fixture(scope="session")
def antonym_corpus():
    return load_corpus([data_path("antonym.conllu")])


def corpus_from_text(text: str, source: str = "test"):
    return parse_conllu(io.StringIO(text), source=source)
