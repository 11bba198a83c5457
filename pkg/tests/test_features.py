"""Vocabulary construction, sparse count matrices, and TF-IDF weighting."""

import math

import numpy as np
import pytest

from tweetsent.exceptions import DataError
from tweetsent.features import (
    COUNTS,
    TFIDF,
    build_count_matrix,
    build_vocabulary,
    dump_matrix_csv,
    idf,
    tfidf_transform,
    vectorize_counts,
)

DOCS = [
    ["apple", "banana", "apple"],
    ["banana", "cherry"],
    ["cherry", "cherry", "date"],
]


class TestVocabulary:
    def test_terms_in_first_appearance_order(self):
        vocab = build_vocabulary(DOCS)
        assert vocab.terms == ("apple", "banana", "cherry", "date")

    def test_document_frequencies_count_documents_not_occurrences(self):
        vocab = build_vocabulary(DOCS)
        assert vocab.doc_freq.tolist() == [1, 2, 2, 1]

    def test_min_df_prunes_rare_terms(self):
        vocab = build_vocabulary(DOCS, min_df=2)
        assert vocab.terms == ("banana", "cherry")

    def test_empty_corpus_rejected(self):
        with pytest.raises(DataError):
            build_vocabulary([])

    def test_min_df_below_one_rejected(self):
        with pytest.raises(ValueError):
            build_vocabulary(DOCS, min_df=0)


class TestCountMatrix:
    def test_csr_layout(self):
        vocab = build_vocabulary(DOCS)
        m = build_count_matrix(vocab, DOCS)
        assert m.n_docs == 3 and m.n_terms == 4
        assert m.indptr.tolist() == [0, 2, 4, 6]
        assert m.weighting == COUNTS

    def test_dense_view(self):
        vocab = build_vocabulary(DOCS)
        dense = build_count_matrix(vocab, DOCS).toarray()
        expected = np.array(
            [[2, 1, 0, 0],
             [0, 1, 1, 0],
             [0, 0, 2, 1]], dtype=np.float64)
        np.testing.assert_array_equal(dense, expected)

    def test_row_returns_sorted_sparse_vector(self):
        vocab = build_vocabulary(DOCS)
        m = build_count_matrix(vocab, DOCS)
        row = m.row(0)
        assert row.cols.tolist() == [0, 1]
        assert row.weights.tolist() == [2.0, 1.0]

    def test_out_of_vocabulary_tokens_dropped(self):
        vocab = build_vocabulary(DOCS)
        vec = vectorize_counts(vocab, ["apple", "zebra"])
        assert vec.cols.tolist() == [0]

    def test_empty_document_is_a_zero_row(self):
        vocab = build_vocabulary(DOCS)
        m = build_count_matrix(vocab, [["apple"], [], ["date"]])
        assert m.row(1).nnz == 0
        np.testing.assert_array_equal(m.toarray()[1], np.zeros(4))

    def test_take_reorders_rows(self):
        vocab = build_vocabulary(DOCS)
        m = build_count_matrix(vocab, DOCS)
        sub = m.take(np.array([2, 0]))
        np.testing.assert_array_equal(sub.toarray(), m.toarray()[[2, 0]])


class TestIdf:
    def test_formula_is_natural_log_of_inverse_fraction(self):
        assert idf(10, 2) == pytest.approx(math.log(5.0))
        assert idf(3, 3) == 0.0

    def test_rejects_out_of_range_df(self):
        with pytest.raises(ValueError):
            idf(3, 0)
        with pytest.raises(ValueError):
            idf(3, 4)


class TestTfidf:
    def test_weights_are_count_times_idf(self):
        vocab = build_vocabulary(DOCS)
        counts = build_count_matrix(vocab, DOCS)
        weighted = tfidf_transform(counts)
        assert weighted.weighting == TFIDF
        dense = weighted.toarray()
        assert dense[0, 0] == pytest.approx(2 * math.log(3 / 1))
        assert dense[0, 1] == pytest.approx(1 * math.log(3 / 2))

    def test_ubiquitous_term_drops_out(self):
        docs = [["common", "rare"], ["common"], ["common", "other"]]
        vocab = build_vocabulary(docs)
        weighted = tfidf_transform(build_count_matrix(vocab, docs))
        dense = weighted.toarray()
        np.testing.assert_array_equal(dense[:, 0], np.zeros(3))
        # the zero weights are removed from the sparse structure entirely
        assert weighted.nnz == 2

    def test_requires_count_input(self):
        vocab = build_vocabulary(DOCS)
        weighted = tfidf_transform(build_count_matrix(vocab, DOCS))
        with pytest.raises(ValueError):
            tfidf_transform(weighted)


class TestDumpMatrixCsv:
    def test_writes_doc_term_weight_rows(self, tmp_path):
        vocab = build_vocabulary(DOCS)
        m = build_count_matrix(vocab, DOCS)
        path = tmp_path / "matrix.csv"
        dump_matrix_csv(m, ["d0", "d1", "d2"], path)
        lines = path.read_text().splitlines()
        assert lines[0] == "doc_id,term,weight"
        assert lines[1] == "d0,apple,2.0"
        assert len(lines) == 1 + m.nnz
