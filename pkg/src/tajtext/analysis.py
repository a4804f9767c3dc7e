"""Feature extraction and lexical analysis: Bag-of-Words and TF-IDF
matrices with n-gram support, keyword classification, and static word
embeddings with nearest-neighbour queries.

Fitted vocabularies, matrices and embedding tables are immutable; all
queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .core import Component, Document, TajTextError


class EmptyCorpusError(TajTextError):
    pass


class UnknownWordError(TajTextError):
    pass


@dataclass(frozen=True)
class Vocabulary:
    """Term -> dense column index, plus the n-gram range that produced it."""

    index: dict[str, int]
    ngram_range: tuple[int, int] = (1, 1)

    def __post_init__(self) -> None:
        lo, hi = self.ngram_range
        if not 1 <= lo <= hi:
            raise ValueError(f"invalid ngram_range {self.ngram_range}")
        if sorted(self.index.values()) != list(range(len(self.index))):
            raise ValueError("vocabulary indices must be dense 0..V-1")

    def __len__(self) -> int:
        return len(self.index)

    def terms(self) -> list[str]:
        ordered = [""] * len(self.index)
        for term, i in self.index.items():
            ordered[i] = term
        return ordered


def _ngrams(tokens: Sequence[str], lo: int, hi: int) -> Iterable[str]:
    for n in range(lo, hi + 1):
        for i in range(len(tokens) - n + 1):
            yield " ".join(tokens[i:i + n])


def _build_vocabulary(corpus: Sequence[Sequence[str]],
                      ngram_range: tuple[int, int]) -> Vocabulary:
    lo, hi = ngram_range
    terms = sorted({gram for doc in corpus for gram in _ngrams(doc, lo, hi)})
    return Vocabulary({term: i for i, term in enumerate(terms)}, ngram_range)


def _count_matrix(corpus: Sequence[Sequence[str]], vocab: Vocabulary) -> sparse.csr_matrix:
    lo, hi = vocab.ngram_range
    rows, cols, data = [], [], []
    for d, doc in enumerate(corpus):
        counts: dict[int, int] = {}
        for gram in _ngrams(doc, lo, hi):
            j = vocab.index.get(gram)
            if j is not None:
                counts[j] = counts.get(j, 0) + 1
        for j, c in sorted(counts.items()):
            rows.append(d)
            cols.append(j)
            data.append(c)
    matrix = sparse.csr_matrix(
        (data, (rows, cols)), shape=(len(corpus), len(vocab)), dtype=np.float64
    )
    matrix.eliminate_zeros()
    return matrix


def fit_count(corpus: Sequence[Sequence[str]],
              ngram_range: tuple[int, int] = (1, 1)) -> tuple[Vocabulary, sparse.csr_matrix]:
    """Bag-of-Words: vocabulary of all n-grams in range (lexicographically
    indexed) and the raw count matrix."""
    if not corpus:
        raise EmptyCorpusError("corpus must contain at least one document")
    vocab = _build_vocabulary(corpus, ngram_range)
    return vocab, _count_matrix(corpus, vocab)


def fit_tfidf(corpus: Sequence[Sequence[str]],
              ngram_range: tuple[int, int] = (1, 1)) -> tuple[Vocabulary, sparse.csr_matrix]:
    """TF-IDF with smoothed idf and L2-normalized rows.

    weight(d, t) = tf(d, t) * (ln((1+N)/(1+df(t))) + 1); a term present in
    every document gets idf exactly 1.
    """
    vocab, counts = fit_count(corpus, ngram_range)
    n_docs = counts.shape[0]
    df = np.asarray((counts > 0).sum(axis=0)).ravel()
    idf = np.log((1.0 + n_docs) / (1.0 + df)) + 1.0
    weighted = counts.multiply(idf[np.newaxis, :]).tocsr()
    norms = np.sqrt(np.asarray(weighted.multiply(weighted).sum(axis=1)).ravel())
    norms[norms == 0.0] = 1.0
    inv = sparse.diags(1.0 / norms)
    matrix = (inv @ weighted).tocsr()
    matrix.eliminate_zeros()
    return vocab, matrix


def transform_count(corpus: Sequence[Sequence[str]], vocab: Vocabulary) -> sparse.csr_matrix:
    """Count matrix for new documents over a fitted vocabulary; unseen
    n-grams are ignored."""
    return _count_matrix(corpus, vocab)


def export_matrix(matrix: sparse.spmatrix, path) -> None:
    """Write "row col value" triplets with a "rows cols nnz" header."""
    coo = matrix.tocoo()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{coo.shape[0]} {coo.shape[1]} {coo.nnz}\n")
        order = np.lexsort((coo.col, coo.row))
        for k in order:
            fh.write(f"{coo.row[k]} {coo.col[k]} {coo.data[k]:.12g}\n")


@dataclass(frozen=True)
class CategoryKeywords:
    """Category -> case-folded keyword set."""

    categories: dict[str, frozenset[str]]

    def __post_init__(self) -> None:
        if not self.categories:
            raise ValueError("categories must be nonempty")

    @classmethod
    def from_dict(cls, mapping: dict[str, Iterable[str]]) -> "CategoryKeywords":
        return cls({name: frozenset(w.lower() for w in words)
                    for name, words in mapping.items()})


def classify_keywords(
    tokens: Sequence[str], categories: CategoryKeywords
) -> tuple[str, dict[str, int]]:
    """Count keyword hits per category; the winner takes the document.

    Ties and all-zero score sets return "unknown" (with the counts, so the
    caller can inspect the near-misses).
    """
    folded = [t.lower() for t in tokens]
    counts = {
        name: sum(1 for t in folded if t in keywords)
        for name, keywords in categories.categories.items()
    }
    best = max(counts.values(), default=0)
    winners = [name for name, c in counts.items() if c == best]
    if best == 0 or len(winners) > 1:
        return "unknown", counts
    return winners[0], counts


def classify_doc(doc: Document, categories: CategoryKeywords) -> tuple[str, dict[str, int]]:
    """Classify a document matching lemmas when present, surfaces otherwise."""
    tokens = [t.lemma if t.lemma else t.text for t in doc.tokens]
    return classify_keywords(tokens, categories)


class EmbeddingTable:
    """Static word vectors of one fixed dimension."""

    def __init__(self, dimension: int, vectors: dict[str, np.ndarray]):
        self.dimension = dimension
        for word, vec in vectors.items():
            if vec.shape != (dimension,):
                raise ValueError(f"{word!r}: vector of shape {vec.shape}, "
                                 f"expected ({dimension},)")
        self._vectors = vectors
        self._words = sorted(vectors)
        self._matrix = (np.vstack([vectors[w] for w in self._words])
                        if vectors else np.zeros((0, dimension)))
        norms = np.linalg.norm(self._matrix, axis=1)
        norms[norms == 0.0] = 1.0
        self._unit = self._matrix / norms[:, np.newaxis]

    def __contains__(self, word: str) -> bool:
        return word in self._vectors

    def __len__(self) -> int:
        return len(self._vectors)

    def vector(self, word: str) -> np.ndarray:
        try:
            return self._vectors[word]
        except KeyError:
            raise UnknownWordError(f"word {word!r} not in embedding table") from None

    def words(self) -> list[str]:
        return list(self._words)


def load_embeddings(path) -> EmbeddingTable:
    """Read the plain-text vector format: a "count dimension" header, then
    one word plus its values per line. Malformed lines report their number."""
    vectors: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise TajTextError(f"{path}:1: expected 'count dimension' header")
        try:
            count, dimension = int(header[0]), int(header[1])
        except ValueError:
            raise TajTextError(f"{path}:1: non-numeric header") from None
        for lineno, line in enumerate(fh, 2):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split(" ")
            if len(parts) != dimension + 1:
                raise TajTextError(
                    f"{path}:{lineno}: expected word + {dimension} values, "
                    f"got {len(parts)} fields"
                )
            try:
                vectors[parts[0]] = np.array([float(x) for x in parts[1:]])
            except ValueError:
                raise TajTextError(f"{path}:{lineno}: non-numeric vector value") from None
    if len(vectors) != count:
        raise TajTextError(f"{path}: header declares {count} words, found {len(vectors)}")
    return EmbeddingTable(dimension, vectors)


def most_similar(table: EmbeddingTable, word: str, k: int = 10) -> list[tuple[str, float]]:
    """The k nearest vocabulary words by cosine similarity, query excluded,
    sorted descending with lexicographic tie-break."""
    if k < 1:
        raise ValueError("k must be >= 1")
    query = table.vector(word)
    norm = np.linalg.norm(query)
    if norm == 0.0:
        norm = 1.0
    sims = table._unit @ (query / norm)
    ranked = sorted(
        ((w, float(s)) for w, s in zip(table.words(), sims) if w != word),
        key=lambda ws: (-ws[1], ws[0]),
    )
    return ranked[:k]


class EmbeddingsLookup(Component):
    """Pipeline component marking which tokens have vectors.

    Vector payloads stay in the table; tokens carry ``has_vector`` metadata
    so serialized records remain compact.
    """

    name = "embeddings"
    requires = frozenset({"tokens"})
    assigns = frozenset({"embeddings"})

    def __init__(self, table: EmbeddingTable):
        self.table = table

    def __call__(self, doc: Document) -> Document:
        for token in doc.tokens:
            known = token.text in self.table or token.text.lower() in self.table
            token.metadata["has_vector"] = "true" if known else "false"
        return doc
