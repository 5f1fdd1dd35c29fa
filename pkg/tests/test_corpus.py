"""Corpus construction, aggregation views, and their invariants."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from xindices import (
    DuplicateId,
    MissingGroupLabel,
    NegativeCitations,
    PublicationRecord,
    build_corpus,
    partition_by_group,
    x_index,
    xd_index,
)

from conftest import random_records, record


def weights(items):
    return {it.label: it.weight for it in items}


def test_empty_corpus():
    corpus = build_corpus([])
    assert len(corpus) == 0
    assert corpus.keyword_totals() == []
    assert corpus.pair_totals() == []
    assert corpus.category_totals("whole") == []
    assert corpus.category_samples() == {}


def test_singleton_corpus():
    corpus = build_corpus([record("a", 3, ("k1",), ("c1",), ("i1",))])
    assert len(corpus) == 1
    assert weights(corpus.keyword_totals()) == {"k1": 3.0}


def test_duplicate_id_rejected():
    with pytest.raises(DuplicateId) as err:
        build_corpus([record("a", 1), record("a", 2)])
    assert err.value.id == "a"


def test_negative_citations_rejected():
    with pytest.raises(NegativeCitations):
        build_corpus([record("a", -1)])


def test_record_deduplicates_labels():
    rec = record("a", 1, keywords=("k1", "k1", "", "k2"))
    assert rec.keywords == ("k1", "k2")


def test_record_requires_id():
    with pytest.raises(ValueError):
        record("", 1)


def test_keyword_totals_hand_sum():
    corpus = build_corpus(
        [
            record("p1", 6, keywords=("a", "b")),
            record("p2", 1, keywords=("a",)),
            record("p3", 2, keywords=("b", "c")),
        ]
    )
    assert weights(corpus.keyword_totals()) == {"a": 7.0, "b": 8.0, "c": 2.0}


def test_keyword_totals_replicates_full_count():
    corpus = build_corpus([record("p1", 5, keywords=("a", "b", "c"))])
    assert weights(corpus.keyword_totals()) == {"a": 5.0, "b": 5.0, "c": 5.0}


def test_keyword_totals_empty_when_no_keywords():
    corpus = build_corpus([record("p1", 5), record("p2", 2)])
    assert corpus.keyword_totals() == []


def test_pair_totals_cross_product():
    corpus = build_corpus([record("p1", 3, keywords=("a",), categories=("c1", "c2"))])
    assert weights(corpus.pair_totals()) == {"a@c1": 3.0, "a@c2": 3.0}


def test_pair_totals_no_category_no_pair():
    corpus = build_corpus([record("p1", 3, keywords=("a",))])
    assert corpus.pair_totals() == []


def test_pair_totals_hand_sum():
    corpus = build_corpus(
        [
            record("p1", 2, keywords=("a",), categories=("c1",)),
            record("p2", 5, keywords=("a",), categories=("c1",)),
        ]
    )
    assert weights(corpus.pair_totals()) == {"a@c1": 7.0}


def test_category_totals_whole():
    corpus = build_corpus(
        [
            record("p1", 9, categories=("a",)),
            record("p2", 4, categories=("a", "b")),
        ]
    )
    assert weights(corpus.category_totals("whole")) == {"a": 13.0, "b": 4.0}


def test_category_totals_fractional_divides_by_institutions():
    corpus = build_corpus([record("p1", 10, categories=("a",), institutions=("i1", "i2"))])
    assert weights(corpus.category_totals("fractional")) == {"a": 5.0}


def test_category_totals_fractional_empty_institutions_divisor_one():
    corpus = build_corpus([record("p1", 10, categories=("a",))])
    assert weights(corpus.category_totals("fractional")) == {"a": 10.0}


def test_category_totals_fractional_equals_whole_for_single_institution():
    rng = random.Random(7)
    records = [
        record(f"p{i}", rng.randint(0, 50), categories=("a", "b"), institutions=("i1",))
        for i in range(20)
    ]
    corpus = build_corpus(records)
    assert corpus.category_totals("fractional") == corpus.category_totals("whole")


def test_category_totals_unknown_mode():
    with pytest.raises(ValueError):
        build_corpus([]).category_totals("split")


def test_category_samples():
    corpus = build_corpus(
        [
            record("p1", 1, categories=("a",)),
            record("p2", 2, categories=("a",)),
            record("p3", 3, categories=("a",)),
        ]
    )
    assert corpus.category_samples() == {"a": [1.0, 2.0, 3.0]}


def test_category_samples_multi_category():
    corpus = build_corpus([record("p1", 5, categories=("a", "b"))])
    assert corpus.category_samples() == {"a": [5.0], "b": [5.0]}


def test_partition_by_group():
    records = [record("p1", 1), record("p2", 2), record("p3", 3)]
    groups = partition_by_group(records, [("i1",), ("i2",), ("i1",)])
    assert sorted(groups) == ["i1", "i2"]
    assert len(groups["i1"]) == 2
    assert len(groups["i2"]) == 1


def test_partition_multi_label_record_in_both():
    records = [record("p1", 1)]
    groups = partition_by_group(records, [("i1", "i2")])
    assert len(groups["i1"]) == 1
    assert len(groups["i2"]) == 1


def test_partition_empty_records():
    assert partition_by_group([], []) == {}


def test_partition_ungrouped_fallback_and_strict():
    records = [record("p1", 1)]
    groups = partition_by_group(records, [()])
    assert sorted(groups) == ["(ungrouped)"]
    with pytest.raises(MissingGroupLabel):
        partition_by_group(records, [()], strict=True)


# --- properties ---------------------------------------------------------------


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_permutation_invariance(seed):
    rng = random.Random(seed)
    records = random_records(rng, max_pubs=40, max_categories=6, max_keywords=15)
    shuffled = list(records)
    rng.shuffle(shuffled)
    a, b = build_corpus(records), build_corpus(shuffled)
    assert a.keyword_totals() == b.keyword_totals()
    assert a.pair_totals() == b.pair_totals()
    assert a.category_totals("whole") == b.category_totals("whole")
    assert a.category_totals("fractional") == b.category_totals("fractional")
    assert a.category_samples() == b.category_samples()
    assert x_index(a).value == x_index(b).value
    assert xd_index(a, "g").value == xd_index(b, "g").value


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_conservation_single_category(seed):
    rng = random.Random(seed)
    records = [
        record(f"p{i}", rng.randint(0, 30), categories=(f"c{rng.randint(0, 3)}",))
        for i in range(rng.randint(0, 25))
    ]
    corpus = build_corpus(records)
    total = sum(it.weight for it in corpus.category_totals("whole"))
    assert total == sum(r.citations for r in records)


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_pair_weight_bounded_by_keyword_weight(seed):
    rng = random.Random(seed)
    corpus = build_corpus(random_records(rng, max_pubs=40, max_categories=5, max_keywords=10))
    kw = {it.label: it.weight for it in corpus.keyword_totals()}
    for it in corpus.pair_totals():
        keyword = it.label.rsplit("@", 1)[0]
        assert it.weight <= kw[keyword]


@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_fractional_never_exceeds_whole(seed):
    rng = random.Random(seed)
    corpus = build_corpus(random_records(rng, max_pubs=40))
    whole = {it.label: it.weight for it in corpus.category_totals("whole")}
    for it in corpus.category_totals("fractional"):
        assert it.weight <= whole[it.label]


def test_corpus_is_immutable():
    corpus = build_corpus([record("p1", 1)])
    with pytest.raises(AttributeError):
        corpus.publications = ()
