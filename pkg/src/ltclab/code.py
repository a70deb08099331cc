"""Linear block codes over prime fields, with exact brute-force oracles.

A code is held as a full-rank generator matrix (reduced at construction) plus
the derived parity-check matrix.  Minimum distance and nearest-codeword
queries enumerate codewords exhaustively up to the configured threshold and
refuse beyond it; nothing here ever estimates.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .config import enumeration_threshold
from .errors import (
    EmptyProjectionError,
    FieldMismatchError,
    LengthMismatchError,
    RankDeficiencyWarning,
    TooLargeToEnumerateError,
    TooLongError,
)
from .field import Field, FieldElement

# Chunk size for codeword enumeration (messages per numpy batch).
_CHUNK = 1 << 14


def _coerce_symbols(field: Field, symbols) -> np.ndarray:
    if isinstance(symbols, np.ndarray):
        values = symbols.astype(np.int64, copy=True)
    else:
        out = []
        for s in symbols:
            if isinstance(s, FieldElement):
                if s.field != field:
                    raise FieldMismatchError(
                        f"element of {s.field} used in a word over {field}"
                    )
                out.append(s.value)
            else:
                out.append(int(s))
        values = np.array(out, dtype=np.int64)
    if values.ndim != 1:
        raise ValueError("symbols must form a 1-d sequence")
    if values.size and (values.min() < 0 or values.max() >= field.q):
        raise ValueError(f"symbol values must lie in [0, {field.q})")
    return values


class Word:
    """A length-n vector of field residues.  Immutable."""

    __slots__ = ("field", "values")

    def __init__(self, field: Field, symbols):
        values = _coerce_symbols(field, symbols)
        values.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self):
        return self.values.size

    def __getitem__(self, i: int) -> int:
        return int(self.values[i])

    def __iter__(self):
        return iter(int(v) for v in self.values)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.field == other.field
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self):
        return hash((self.field.q, self.values.tobytes()))

    def weight(self) -> int:
        return int(np.count_nonzero(self.values))

    def to_list(self) -> list[int]:
        return [int(v) for v in self.values]

    def __repr__(self):
        body = ",".join(str(int(v)) for v in self.values[:12])
        tail = ",..." if len(self) > 12 else ""
        return f"Word(GF({self.field.q}), [{body}{tail}])"


def distance(x: Word, y: Word) -> tuple[int, Fraction]:
    """Hamming distance and the exact relative distance between two words."""
    if x.field != y.field:
        raise FieldMismatchError(f"words over {x.field} and {y.field}")
    if len(x) != len(y):
        raise LengthMismatchError(f"lengths {len(x)} and {len(y)} differ")
    ham = int(np.count_nonzero(x.values != y.values))
    return ham, Fraction(ham, len(x))


class LinearCode:
    """An [n, k, d] linear code given by a full-rank generator matrix."""

    def __init__(
        self,
        field: Field,
        generator: np.ndarray,
        d_known: Optional[int] = None,
        _reduced: bool = False,
    ):
        if generator.ndim != 2:
            raise ValueError("generator must be a matrix")
        if not _reduced:
            generator = linalg.row_basis(generator, field.q)
        generator = generator.astype(np.int64, copy=True)
        generator.setflags(write=False)
        self.field = field
        self.generator = generator
        self.k, self.n = generator.shape
        parity = linalg.null_space(generator, field.q)
        parity.setflags(write=False)
        self.parity_check = parity
        self.d_known = d_known
        self._codewords: Optional[np.ndarray] = None

    # --- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows, d_known: Optional[int] = None) -> "LinearCode":
        """Build a code from generator rows, reducing them to a basis.

        Dependent rows are legal but reported with a RankDeficiencyWarning;
        the code keeps the reduced basis.
        """
        mat = linalg.as_matrix(rows, field.q)
        if mat.shape[0] == 0 or mat.shape[1] == 0:
            raise ValueError("generator rows must be nonempty")
        basis = linalg.row_basis(mat, field.q)
        if basis.shape[0] < mat.shape[0]:
            warnings.warn(
                RankDeficiencyWarning(
                    f"supplied {mat.shape[0]} rows but rank is {basis.shape[0]}; "
                    "keeping the reduced basis"
                )
            )
        if basis.shape[0] == 0:
            raise ValueError("generator rows are all zero")
        return cls(field, basis, d_known=d_known, _reduced=True)

    # --- basic queries -----------------------------------------------------

    def params(self) -> tuple[int, int, Optional[int]]:
        return self.n, self.k, self.d_known

    def num_codewords(self) -> int:
        return self.field.q**self.k

    def encode(self, message) -> Word:
        """Encode a length-k message as message @ generator."""
        msg = _coerce_symbols(self.field, message)
        if msg.size != self.k:
            raise LengthMismatchError(f"message length {msg.size}, expected {self.k}")
        return Word(self.field, (msg @ self.generator) % self.field.q)

    def encode_batch(self, messages: np.ndarray) -> np.ndarray:
        """Encode a (B, k) batch of messages into a (B, n) array."""
        return (messages @ self.generator) % self.field.q

    def contains(self, word: Word) -> bool:
        """Membership via the parity check."""
        values = self._check_word(word)
        if self.parity_check.shape[0] == 0:
            return True
        return not np.any((self.parity_check @ values) % self.field.q)

    def contains_batch(self, words: np.ndarray) -> np.ndarray:
        """Vectorized membership for a (B, n) array of words."""
        if self.parity_check.shape[0] == 0:
            return np.ones(words.shape[0], dtype=bool)
        return ~np.any((words @ self.parity_check.T) % self.field.q, axis=1)

    def _check_word(self, word: Word) -> np.ndarray:
        if word.field != self.field:
            raise FieldMismatchError(f"word over {word.field}, code over {self.field}")
        if len(word) != self.n:
            raise LengthMismatchError(f"word length {len(word)}, block length {self.n}")
        return word.values

    # --- exhaustive oracles -------------------------------------------------

    def _require_enumerable(self, threshold) -> int:
        limit = enumeration_threshold(threshold)
        total = self.num_codewords()
        if total > limit:
            raise TooLargeToEnumerateError(
                f"{self.field.q}^{self.k} = {total} codewords exceeds threshold {limit}"
            )
        return total

    def _message_chunk(self, start: int, stop: int) -> np.ndarray:
        idx = np.arange(start, stop, dtype=np.int64)
        digits = np.stack(
            np.unravel_index(idx, (self.field.q,) * self.k), axis=1
        ).astype(np.int64)
        return digits

    def codewords(self, threshold=None) -> np.ndarray:
        """All q**k codewords as a read-only (q**k, n) array.

        Row order is lexicographic in the message symbols, so row index i
        encodes the message ``unravel_index(i, (q,)*k)``.
        """
        if self._codewords is None:
            total = self._require_enumerable(threshold)
            if total * self.n > 1 << 26:
                raise TooLargeToEnumerateError(
                    f"codeword table would hold {total * self.n} cells"
                )
            rows = [
                self.encode_batch(self._message_chunk(s, min(s + _CHUNK, total)))
                for s in range(0, total, _CHUNK)
            ]
            table = np.concatenate(rows, axis=0)
            table.setflags(write=False)
            self._codewords = table
        return self._codewords

    def min_distance(self, threshold=None) -> int:
        """Exact minimum distance by enumerating nonzero codewords."""
        total = self._require_enumerable(threshold)
        best = self.n + 1
        for s in range(0, total, _CHUNK):
            block = self.encode_batch(self._message_chunk(s, min(s + _CHUNK, total)))
            w = np.count_nonzero(block, axis=1)
            if s == 0:
                w = w[1:]  # skip the zero codeword
            if w.size:
                best = min(best, int(w.min()))
        if self.d_known is None:
            self.d_known = best
        return best

    def nearest(self, word: Word, threshold=None) -> tuple[Word, Fraction]:
        """A codeword minimizing relative distance to ``word``.

        Ties break toward the lexicographically smallest message, which is the
        first minimum in enumeration order.
        """
        values = self._check_word(word)
        total = self._require_enumerable(threshold)
        best_ham = self.n + 1
        best_idx = -1
        for s in range(0, total, _CHUNK):
            block = self.encode_batch(self._message_chunk(s, min(s + _CHUNK, total)))
            hams = np.count_nonzero(block != values[None, :], axis=1)
            i = int(np.argmin(hams))
            if int(hams[i]) < best_ham:
                best_ham = int(hams[i])
                best_idx = s + i
        msg = np.array(
            np.unravel_index(best_idx, (self.field.q,) * self.k), dtype=np.int64
        )
        codeword = Word(self.field, (msg @ self.generator) % self.field.q)
        return codeword, Fraction(best_ham, self.n)

    def nearest_distance_batch(self, words: np.ndarray, threshold=None) -> np.ndarray:
        """Per-row Hamming distance from a (B, n) array to the nearest codeword."""
        table = self.codewords(threshold)
        out = np.empty(words.shape[0], dtype=np.int64)
        # Cap the broadcast buffer at ~2**26 entries.
        step = max(1, (1 << 26) // max(1, table.shape[0] * self.n))
        for s in range(0, words.shape[0], step):
            block = words[s : s + step]
            diff = block[:, None, :] != table[None, :, :]
            out[s : s + step] = diff.sum(axis=2).min(axis=1)
        return out

    # --- projection ---------------------------------------------------------

    def project(self, coords: Sequence[int]) -> "LinearCode":
        """The code generated by the generator columns at 1-based ``coords``.

        ``coords`` must be nonempty and strictly increasing.  When the minimum
        distance is known and ``len(coords) >= n - d + 1``, the projection is
        checked to be injective on codewords.
        """
        idx = [int(c) for c in coords]
        if not idx:
            raise EmptyProjectionError("projection index set is empty")
        if any(not 1 <= c <= self.n for c in idx):
            raise IndexError(f"projection coordinates must lie in [1, {self.n}]")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("projection coordinates must be strictly increasing")
        cols = np.array(idx, dtype=np.int64) - 1
        sub = self.generator[:, cols]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RankDeficiencyWarning)
            projected = LinearCode.from_rows(self.field, sub)
        if self.d_known is not None and len(idx) >= self.n - self.d_known + 1:
            if projected.k != self.k:
                raise AssertionError(
                    "projection expected to be injective lost rank; "
                    "the declared distance is wrong"
                )
        return projected

    def __repr__(self):
        d = self.d_known if self.d_known is not None else "?"
        return f"LinearCode[{self.n},{self.k},{d}] over GF({self.field.q})"


def make_generator_code(field: Field, rows, d_known: Optional[int] = None) -> LinearCode:
    """Functional alias for LinearCode.from_rows."""
    return LinearCode.from_rows(field, rows, d_known=d_known)


def reed_solomon(field: Field, n: int, k: int) -> LinearCode:
    """The [n, k, n-k+1] Reed-Solomon code evaluating at points 0..n-1.

    Generator row i holds the i-th powers of the evaluation points, so
    encoding evaluates the message polynomial at each point.
    """
    if n > field.q:
        raise TooLongError(f"block length {n} exceeds field size {field.q}")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    points = np.arange(n, dtype=np.int64)
    gen = np.ones((k, n), dtype=np.int64)
    for i in range(1, k):
        gen[i] = (gen[i - 1] * points) % field.q
    # Vandermonde rows of distinct points are a basis already; keep them so
    # that encoding means polynomial evaluation.
    return LinearCode(field, gen, d_known=n - k + 1, _reduced=True)


def repetition(field: Field, n: int) -> LinearCode:
    """The [n, 1, n] repetition code."""
    return LinearCode(
        field, np.ones((1, n), dtype=np.int64), d_known=n, _reduced=True
    )


def full_code(field: Field, n: int) -> LinearCode:
    """The trivial [n, n, 1] code containing every word."""
    return LinearCode(field, np.eye(n, dtype=np.int64), d_known=1, _reduced=True)
