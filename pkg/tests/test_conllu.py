import io

import pytest

from paramine.conllu import load_corpus, parse_conllu
from paramine.errors import ParseError

from conftest import corpus_from_text, data_path

THREE_TOKENS = """\
1\tDogs\tdog\tNOUN\t_\t_\t2\tnsubj\t_\t_
2\tbark\tbark\tVERB\t_\t_\t0\troot\t_\t_
3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\t_
"""


def test_empty_stream_is_empty_corpus():
    corpus = parse_conllu(io.StringIO(""))
    assert len(corpus) == 0
    assert corpus.token_count() == 0


def test_single_block_has_contiguous_indices():
    corpus = corpus_from_text(THREE_TOKENS)
    assert len(corpus) == 1
    sentence = corpus.sentences[0]
    assert [t.index for t in sentence.tokens] == [1, 2, 3]
    assert sentence.id == "test:1"


def test_wrong_column_count_names_the_line():
    bad = THREE_TOKENS.replace("2\tbark\tbark\tVERB\t_\t_\t0\troot\t_\t_",
                               "2\tbark\tbark\tVERB\t_\t_\t0\troot\t_")
    with pytest.raises(ParseError, match="test:2") as excinfo:
        corpus_from_text(bad)
    assert "9" in str(excinfo.value)
    assert excinfo.value.line == 2


def test_head_out_of_range_is_an_error():
    bad = THREE_TOKENS.replace("2\tnsubj", "9\tnsubj")
    with pytest.raises(ParseError, match="out of range"):
        corpus_from_text(bad)


def test_token_cannot_head_itself():
    bad = THREE_TOKENS.replace("1\tDogs\tdog\tNOUN\t_\t_\t2", "1\tDogs\tdog\tNOUN\t_\t_\t1")
    with pytest.raises(ParseError, match="own head"):
        corpus_from_text(bad)


def test_sent_id_comment_takes_precedence():
    text = "# sent_id = doc9:4\n" + THREE_TOKENS
    corpus = corpus_from_text(text)
    assert corpus.sentences[0].id == "doc9:4"


def test_lemma_is_lowercased_and_falls_back_to_surface():
    text = (
        "1\tParis\tParis\tPROPN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tcalls\t_\tVERB\t_\t_\t0\troot\t_\t_\n"
    )
    corpus = corpus_from_text(text)
    lemmas = [t.lemma for t in corpus.sentences[0].tokens]
    assert lemmas == ["paris", "calls"]


def test_hyphenated_lemmas_become_underscored():
    text = (
        "1\tSecretary-General\tsecretary-general\tPROPN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tspoke\tspeak\tVERB\t_\t_\t0\troot\t_\t_\n"
        "3\t-\t-\tPUNCT\t_\t_\t2\tpunct\t_\t_\n"
    )
    tokens = corpus_from_text(text).sentences[0].tokens
    assert tokens[0].lemma == "secretary_general"
    assert tokens[2].lemma == "-"  # pure punctuation untouched


def test_multiword_ranges_and_empty_nodes_are_skipped():
    text = (
        "1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tdo\tdo\tAUX\t_\t_\t3\taux\t_\t_\n"
        "2\tn't\tnot\tPART\t_\t_\t3\tadvmod\t_\t_\n"
        "3\tgo\tgo\tVERB\t_\t_\t0\troot\t_\t_\n"
        "3.1\tghost\tghost\tNOUN\t_\t_\t_\t_\t_\t_\n"
    )
    sentence = corpus_from_text(text).sentences[0]
    assert [t.surface for t in sentence.tokens] == ["do", "n't", "go"]


def test_duplicate_sentence_ids_rejected():
    text = "# sent_id = same\n" + THREE_TOKENS + "\n# sent_id = same\n" + THREE_TOKENS
    with pytest.raises(ParseError, match="duplicate"):
        corpus_from_text(text)


def test_load_corpus_uses_file_basename(tmp_path):
    path = tmp_path / "tiny.conllu"
    path.write_text(THREE_TOKENS, encoding="utf-8")
    corpus = load_corpus([str(path)])
    assert corpus.sentences[0].id == "tiny.conllu:1"


def test_load_corpus_merges_files_in_order(tmp_path):
    a = tmp_path / "a.conllu"
    b = tmp_path / "b.conllu"
    a.write_text(THREE_TOKENS, encoding="utf-8")
    b.write_text(THREE_TOKENS + "\n" + THREE_TOKENS, encoding="utf-8")
    corpus = load_corpus([str(a), str(b)])
    assert [s.id for s in corpus.sentences] == [
        "a.conllu:1", "b.conllu:1", "b.conllu:2",
    ]
    assert corpus.token_count() == 9


def test_text_comment_preserved_for_reports():
    corpus = load_corpus([data_path("news.conllu")])
    assert corpus.sentences[0].surface_text().startswith("But U.N. Secretary-General")
