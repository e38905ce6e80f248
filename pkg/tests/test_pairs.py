import math
import random

import pytest

from paramine.extraction import VerbInstance, extract_corpus, extract_instances
from paramine.overlap import SentenceMatrix, sentence_overlap
from paramine.pairs import (
    PairKey,
    generate_filtered_pairs,
    has_contradiction,
    index_instances,
)
from paramine.stats import build_stats

from conftest import corpus_from_text
from oracles import oracle_counts, oracle_overlap
from synth import random_small_corpus


def make_instance(verb, sid, pronouns=(), **components):
    return VerbInstance(
        verb=verb,
        sentence_id=sid,
        token_index=1,
        components={rel: frozenset(v) for rel, v in components.items()},
        pronoun_fillers=frozenset(pronouns),
    )


# ------------------------------------------------------------- indexing

def test_instance_without_object_is_not_indexed():
    instance = make_instance("fall", "s1", subject={"share"})
    assert index_instances([instance]) == {}


def test_filler_combinations_all_indexed():
    instance = make_instance("buy", "s1", subject={"ibm"}, object={"lotus", "stake"})
    index = index_instances([instance])
    assert set(index) == {PairKey("ibm", "lotus"), PairKey("ibm", "stake")}


def test_pronoun_subject_omitted():
    instance = make_instance("buy", "s1", pronouns={"it"}, subject={"it"}, object={"lotus"})
    assert index_instances([instance]) == {}


# ------------------------------------------------------------- overlap

def overlap_fixture():
    text = (
        "# sent_id = o1\n"
        "1\tacme\tacme\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tgrew\tgrow\tVERB\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = o2\n"
        "1\tacme\tacme\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tshrank\tshrink\tVERB\t_\t_\t0\troot\t_\t_\n\n"
        "# sent_id = o3\n"
        "1\tbirds\tbird\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tsing\tsing\tVERB\t_\t_\t0\troot\t_\t_\n\n"
        # filler sentences so N = 20 and freq(acme) = 2
        "# sent_id = o4\n"
        + "".join(
            f"{i}\tw{i}\tw{i}\tNOUN\t_\t_\t{0 if i == 1 else 1}\t{'root' if i == 1 else 'dep'}\t_\t_\n"
            for i in range(1, 15)
        )
    )
    corpus = corpus_from_text(text)
    stats = build_stats(corpus, [])
    assert stats.N == 20
    return corpus, stats


def test_disjoint_sentences_overlap_zero():
    corpus, stats = overlap_fixture()
    assert sentence_overlap(corpus.get("o1"), corpus.get("o3"), stats) == 0.0


def test_single_shared_lemma_overlap():
    # One shared lemma, tf 1 on both sides, corpus freq 2 of N = 20:
    # the contribution is ln(10)^2.
    corpus, stats = overlap_fixture()
    got = sentence_overlap(corpus.get("o1"), corpus.get("o2"), stats)
    assert abs(got - math.log(10.0) ** 2) < 1e-12
    assert abs(got - 5.3019) < 1e-3


def test_self_overlap_is_full_weight_sum():
    corpus, stats = overlap_fixture()
    sentence = corpus.get("o1")
    expected = 0.0
    for token in sentence.tokens:
        freq = stats.token_freq[token.lemma]
        expected += math.log(stats.N / freq) ** 2
    assert abs(sentence_overlap(sentence, sentence, stats) - expected) < 1e-12
    assert sentence_overlap(sentence, sentence, stats) > 0.0


def test_overlap_symmetric_and_matches_matrix():
    rng = random.Random(5)
    for trial in range(10):
        corpus = corpus_from_text(random_small_corpus(rng), source=f"t{trial}")
        stats = build_stats(corpus, [])
        matrix = SentenceMatrix(corpus, stats)
        n, token_freq, *_ = oracle_counts(corpus, [])
        sentences = corpus.sentences
        for _ in range(20):
            s1, s2 = rng.choice(sentences), rng.choice(sentences)
            direct = sentence_overlap(s1, s2, stats)
            assert direct >= 0.0
            assert direct == pytest.approx(sentence_overlap(s2, s1, stats), rel=1e-12)
            assert direct == pytest.approx(matrix.overlap(s1.id, s2.id), rel=1e-9)
            assert direct == pytest.approx(oracle_overlap(s1, s2, n, token_freq), rel=1e-9)


# ------------------------------------------------------------- contradiction

def test_contradicting_dates_detected(news_corpus, august_corpus):
    attack = extract_instances(news_corpus.sentences[0])[1]
    capture = extract_instances(august_corpus.sentences[0])[0]
    assert attack.components["pp-on"] == frozenset({"august 31"})
    assert capture.components["pp-on"] == frozenset({"august 29"})
    assert has_contradiction(attack, capture)
    assert has_contradiction(capture, attack)


def test_relation_on_one_side_is_complementary():
    a = make_instance("buy", "s1", subject={"x"}, object={"y"})
    b = make_instance("get", "s2", subject={"x"}, object={"y"}, **{"pp-on": {"monday"}})
    assert not has_contradiction(a, b)


def test_identical_fillers_are_shared_not_contradicting():
    a = make_instance("buy", "s1", subject={"x"}, object={"y"}, **{"pp-on": {"august 31"}})
    b = make_instance("get", "s2", subject={"x"}, object={"y"}, **{"pp-on": {"august 31"}})
    assert not has_contradiction(a, b)


def test_partial_filler_overlap_is_not_contradiction():
    a = make_instance("buy", "s1", **{"pp-on": {"monday", "tuesday"}})
    b = make_instance("get", "s2", **{"pp-on": {"monday"}})
    assert not has_contradiction(a, b)


# ------------------------------------------------------------- generation

def pair_pipeline(corpus, threshold, **kwargs):
    instances = extract_corpus(corpus)
    stats = build_stats(corpus, instances)
    matrix = SentenceMatrix(corpus, stats)
    return generate_filtered_pairs(index_instances(instances), matrix, threshold, **kwargs)


def test_same_verb_instances_never_pair():
    text = (
        "# sent_id = a\n"
        "1\tacme\tacme\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tbought\tbuy\tVERB\t_\t_\t0\troot\t_\t_\n"
        "3\tlotus\tlotus\tNOUN\t_\t_\t2\tobj\t_\t_\n\n"
        "# sent_id = b\n"
        "1\tacme\tacme\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tbought\tbuy\tVERB\t_\t_\t0\troot\t_\t_\n"
        "3\tlotus\tlotus\tNOUN\t_\t_\t2\tobj\t_\t_\n"
    )
    pairs, counts = pair_pipeline(corpus_from_text(text), 0.0)
    assert pairs == []
    assert counts.candidate_pairs == 0


def test_threshold_is_inclusive_lower_bound(mini_corpus, mini_instances, mini_stats):
    matrix = SentenceMatrix(mini_corpus, mini_stats)
    index = index_instances(mini_instances)
    pairs, _ = generate_filtered_pairs(index, matrix, 0.0)
    scores = [p.overlap_score for p in pairs]
    just_below = generate_filtered_pairs(index, matrix, min(scores) + 1e-9)[0]
    assert len(just_below) == len(scores) - scores.count(min(scores))
    at_score = generate_filtered_pairs(index, matrix, min(scores))[0]
    assert len(at_score) == len(scores)


def test_three_distinct_verbs_give_three_pairs():
    text = "".join(
        f"# sent_id = s{i}\n"
        f"1\tacme\tacme\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        f"2\t{verb}\t{verb}\tVERB\t_\t_\t0\troot\t_\t_\n"
        f"3\tlotus\tlotus\tNOUN\t_\t_\t2\tobj\t_\t_\n\n"
        for i, verb in enumerate(["buy", "get", "take"], start=1)
    )
    pairs, _ = pair_pipeline(corpus_from_text(text), 0.0)
    assert len(pairs) == 3
    verbs = {(p.left.verb, p.right.verb) for p in pairs}
    assert verbs == {("buy", "get"), ("buy", "take"), ("get", "take")}
    for pair in pairs:
        assert pair.left.verb < pair.right.verb
        assert len(pair.shared_components) >= 2


def test_threshold_monotonicity(mini_corpus, mini_instances, mini_stats):
    matrix = SentenceMatrix(mini_corpus, mini_stats)
    index = index_instances(mini_instances)
    previous = None
    for threshold in (0.0, 1.0, 10.0, 100.0, 1000.0):
        pairs, _ = generate_filtered_pairs(index, matrix, threshold)
        current = {(p.key, p.left, p.right) for p in pairs}
        if previous is not None:
            assert current <= previous
        previous = current


def test_same_sentence_pairs_excluded_by_default():
    # Two verbs in one sentence sharing subject and object.
    text = (
        "# sent_id = s1\n"
        "1\tacme\tacme\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
        "2\tbought\tbuy\tVERB\t_\t_\t0\troot\t_\t_\n"
        "3\tand\tand\tCCONJ\t_\t_\t4\tcc\t_\t_\n"
        "4\tacquired\tacquire\tVERB\t_\t_\t2\tconj\t_\t_\n"
        "5\tlotus\tlotus\tNOUN\t_\t_\t2\tobj\t_\t_\n\n"
        "# sent_id = s2\n"
        "1\tacme\tacme\tNOUN\t_\t_\t4\tnsubj\t_\t_\n"
        "2\tlotus\tlotus\tNOUN\t_\t_\t4\tobj\t_\t_\n"
        "3\tx\tx\tNOUN\t_\t_\t4\tdep\t_\t_\n"
        "4\tz\tz\tVERB\t_\t_\t0\troot\t_\t_\n"
    )
    corpus = corpus_from_text(text)
    # conj structure does not propagate arguments, so index both verbs by hand
    instances = [
        make_instance("buy", "s1", subject={"acme"}, object={"lotus"}),
        make_instance("acquire", "s1", subject={"acme"}, object={"lotus"}),
    ]
    stats = build_stats(corpus, instances)
    matrix = SentenceMatrix(corpus, stats)
    pairs, _ = generate_filtered_pairs(index_instances(instances), matrix, 0.0)
    assert pairs == []
    debug, _ = generate_filtered_pairs(
        index_instances(instances), matrix, 0.0, same_sentence=True
    )
    assert len(debug) == 1


def test_keep_contradictions_flag(mini_corpus, mini_instances, mini_stats):
    matrix = SentenceMatrix(mini_corpus, mini_stats)
    index = index_instances(mini_instances)
    strict, strict_counts = generate_filtered_pairs(index, matrix, 100.0)
    loose, loose_counts = generate_filtered_pairs(index, matrix, 100.0, keep_contradictions=True)
    assert strict_counts.after_overlap == loose_counts.after_overlap
    assert len(loose) == len(strict) + 1
    kept = {(p.left.verb, p.right.verb) for p in loose} - {
        (p.left.verb, p.right.verb) for p in strict
    }
    assert kept == {("cut", "raise")}


def test_jobs_do_not_change_results(mini_corpus, mini_instances, mini_stats):
    matrix = SentenceMatrix(mini_corpus, mini_stats)
    index = index_instances(mini_instances)
    single, counts1 = generate_filtered_pairs(index, matrix, 0.0, jobs=1)
    threaded, counts8 = generate_filtered_pairs(index, matrix, 0.0, jobs=8)
    assert single == threaded
    assert counts1 == counts8


def test_emitted_pair_invariants_on_random_corpora():
    rng = random.Random(61)
    saw_pairs = False
    for trial in range(15):
        corpus = corpus_from_text(random_small_corpus(rng), source=f"inv{trial}")
        pairs, counts = pair_pipeline(corpus, rng.choice((0.0, 5.0)))
        saw_pairs = saw_pairs or bool(pairs)
        assert counts.candidate_pairs >= counts.after_overlap >= counts.after_contradiction
        assert len(pairs) == counts.after_contradiction
        for pair in pairs:
            assert pair.left.verb < pair.right.verb
            assert pair.left.sentence_id != pair.right.sentence_id
            assert pair.overlap_score >= 0.0
            assert len(pair.shared_components) >= 2
            components = dict(pair.shared_components)
            assert components.get("subject") is not None
            assert components.get("object") is not None
    assert saw_pairs
