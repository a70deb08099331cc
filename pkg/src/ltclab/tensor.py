"""Tensor product codes, m-dimensional words, slices, and unique extension.

Layout convention (fixed everywhere in this package)
----------------------------------------------------

Words of the product of codes C_1, ..., C_m live on the grid
[n_1] x ... x [n_m]; coordinate access is 1-based.  Flattening is row-major
with axis 1 slowest, i.e. numpy C order.  Lines parallel to axis b (vary the
b-th index, freeze the rest) are codewords of the b-th factor.  The flattened
generator is then the Kronecker product of the factor generators taken in
axis order, and messages are k_1 x ... x k_m grids flattened the same way.

Worked 2x2 example: factors C_1 = C_2 = the [2,1,2] repetition code over
GF(2), generators G_1 = G_2 = [1 1].  kron(G_1, G_2) = [1 1 1 1], so the
product code is {0000, 1111}.  The word 1111 unflattens to the 2x2 grid

        axis 2 ->
    axis 1 | 1 1
       |   | 1 1
       v

whose two axis-1 lines (columns of this picture: positions (1,1),(2,1) and
(1,2),(2,2)) and two axis-2 lines (rows: (1,1),(1,2) and (2,1),(2,2)) are all
the repetition codeword 11.  In the matrix view of a two-factor product,
matrix rows (indexed by n_2) vary along axis 2 and matrix columns along
axis 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .code import LinearCode, Word, _coerce_symbols
from .config import enumeration_threshold
from .errors import (
    EmptyProjectionError,
    FieldMismatchError,
    IndexOutOfRangeError,
    InconsistentSystemError,
    NotACodewordError,
    ShapeMismatchError,
    TooLargeToEnumerateError,
    UnderdeterminedError,
    UnderdeterminedSystemError,
)
from .field import Field


class TensorWord:
    """A dense m-dimensional word over a field; coordinates are 1-based."""

    __slots__ = ("field", "shape", "array")

    def __init__(self, field: Field, shape: Sequence[int], symbols):
        shape = tuple(int(s) for s in shape)
        if any(s < 1 for s in shape):
            raise ValueError(f"shape entries must be positive, got {shape}")
        flat = _coerce_symbols(field, symbols)
        size = int(np.prod(shape))
        if flat.size != size:
            raise ShapeMismatchError(
                f"{flat.size} symbols cannot fill shape {shape} ({size} cells)"
            )
        arr = flat.reshape(shape)
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "array", arr)

    def __setattr__(self, name, value):
        raise AttributeError("TensorWord is immutable")

    @classmethod
    def from_array(cls, field: Field, array: np.ndarray) -> "TensorWord":
        return cls(field, array.shape, np.asarray(array).reshape(-1))

    @property
    def ndim(self) -> int:
        return len(self.shape)

    def at(self, *indices: int) -> int:
        """The symbol at 1-based coordinates (i_1, ..., i_m)."""
        if len(indices) != self.ndim:
            raise IndexOutOfRangeError(
                f"expected {self.ndim} coordinates, got {len(indices)}"
            )
        for b, (i, n) in enumerate(zip(indices, self.shape), start=1):
            if not 1 <= i <= n:
                raise IndexOutOfRangeError(f"coordinate {i} on axis {b} not in [1, {n}]")
        return int(self.array[tuple(i - 1 for i in indices)])

    def axis_slice(self, b: int, i: int):
        """Freeze axis ``b`` at coordinate ``i`` (both 1-based).

        Returns the (m-1)-dimensional TensorWord; for a 1-dimensional word the
        result is the single symbol itself.
        """
        if not 1 <= b <= self.ndim:
            raise IndexOutOfRangeError(f"axis {b} not in [1, {self.ndim}]")
        if not 1 <= i <= self.shape[b - 1]:
            raise IndexOutOfRangeError(
                f"coordinate {i} not in [1, {self.shape[b - 1]}] on axis {b}"
            )
        sliced = np.take(self.array, i - 1, axis=b - 1)
        if self.ndim == 1:
            return int(sliced)
        return TensorWord.from_array(self.field, sliced)

    def flatten(self) -> Word:
        """Row-major flattening (axis 1 slowest) as a plain Word."""
        return Word(self.field, self.array.reshape(-1))

    def weight(self) -> int:
        return int(np.count_nonzero(self.array))

    def __eq__(self, other):
        return (
            isinstance(other, TensorWord)
            and self.field == other.field
            and self.shape == other.shape
            and np.array_equal(self.array, other.array)
        )

    def __hash__(self):
        return hash((self.field.q, self.shape, self.array.tobytes()))

    def __repr__(self):
        return f"TensorWord(GF({self.field.q}), shape={self.shape})"


class TensorCode:
    """The product C_1 (x) ... (x) C_m of linear codes over one field."""

    def __init__(self, factors: Sequence[LinearCode]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("a tensor code needs at least one factor")
        field = factors[0].field
        for c in factors[1:]:
            if c.field != field:
                raise FieldMismatchError("all factors must share one field")
        self.factors = factors
        self.field = field
        self.shape = tuple(c.n for c in factors)
        self.block_length = int(np.prod(self.shape))
        self.dimension = int(np.prod([c.k for c in factors]))
        ds = [c.d_known for c in factors]
        self.distance: Optional[int] = (
            int(np.prod(ds)) if all(d is not None for d in ds) else None
        )
        self._codewords: Optional[np.ndarray] = None
        self._linear: Optional[LinearCode] = None

    @property
    def m(self) -> int:
        return len(self.factors)

    def _check_shape(self, word: TensorWord) -> np.ndarray:
        if word.field != self.field:
            raise FieldMismatchError(f"word over {word.field}, code over {self.field}")
        if word.shape != self.shape:
            raise ShapeMismatchError(f"word shape {word.shape}, code shape {self.shape}")
        return word.array

    # --- membership ---------------------------------------------------------

    def contains(self, word: TensorWord) -> bool:
        """Membership via axis-parallel lines.

        True iff for every axis b, every line parallel to axis b is a codeword
        of the b-th factor.
        """
        arr = self._check_shape(word)
        return bool(np.all(self._line_memberships(arr)))

    def _line_memberships(self, arr: np.ndarray) -> list[np.ndarray]:
        out = []
        for b0, factor in enumerate(self.factors):
            lines = np.moveaxis(arr, b0, -1).reshape(-1, factor.n)
            out.append(factor.contains_batch(lines))
        return out

    def contains_batch(self, flat_words: np.ndarray) -> np.ndarray:
        """Vectorized axis-parallel membership for (B, block_length) values."""
        batch = flat_words.shape[0]
        arrs = flat_words.reshape((batch,) + self.shape)
        ok = np.ones(batch, dtype=bool)
        for b0, factor in enumerate(self.factors):
            lines = np.moveaxis(arrs, 1 + b0, -1).reshape(-1, factor.n)
            good = factor.contains_batch(lines).reshape(batch, -1)
            ok &= good.all(axis=1)
        return ok

    # --- encoding and enumeration -------------------------------------------

    def encode_tensor(self, message: np.ndarray) -> TensorWord:
        """Encode a k_1 x ... x k_m message grid into a codeword."""
        msg = np.mod(np.asarray(message, dtype=np.int64), self.field.q)
        kshape = tuple(c.k for c in self.factors)
        if msg.shape != kshape:
            raise ShapeMismatchError(f"message shape {msg.shape}, expected {kshape}")
        arr = self._contract(msg[None, ...])[0]
        return TensorWord.from_array(self.field, arr)

    def _contract(self, batch: np.ndarray) -> np.ndarray:
        """Apply each factor generator along its axis of a (B, k_1..k_m) batch."""
        arr = batch
        for b0, factor in enumerate(self.factors):
            arr = np.tensordot(arr, factor.generator, axes=([1 + b0], [0]))
            arr = np.moveaxis(arr, -1, 1 + b0) % self.field.q
        return arr

    def _require_enumerable(self, threshold) -> int:
        limit = enumeration_threshold(threshold)
        total = self.field.q**self.dimension
        if total > limit:
            raise TooLargeToEnumerateError(
                f"{self.field.q}^{self.dimension} = {total} codewords exceeds "
                f"threshold {limit}"
            )
        return total

    def codewords(self, threshold=None) -> np.ndarray:
        """All codewords as a (q**dim, block_length) array, flattened row-major.

        Row order is lexicographic in the flattened message grid.
        """
        if self._codewords is None:
            total = self._require_enumerable(threshold)
            if total * self.block_length > 1 << 26:
                raise TooLargeToEnumerateError(
                    f"codeword table would hold {total * self.block_length} cells"
                )
            kshape = tuple(c.k for c in self.factors)
            idx = np.arange(total, dtype=np.int64)
            msgs = np.stack(np.unravel_index(idx, (self.field.q,) * self.dimension), axis=1)
            batch = msgs.reshape((total,) + kshape)
            table = self._contract(batch).reshape(total, self.block_length)
            table.setflags(write=False)
            self._codewords = table
        return self._codewords

    def nearest(self, word: TensorWord, threshold=None) -> tuple[TensorWord, Fraction]:
        """Closest codeword (lex-smallest message on ties) and its distance."""
        arr = self._check_shape(word).reshape(-1)
        table = self.codewords(threshold)
        hams = np.count_nonzero(table != arr[None, :], axis=1)
        i = int(np.argmin(hams))
        best = TensorWord(self.field, self.shape, table[i])
        return best, Fraction(int(hams[i]), self.block_length)

    def nearest_distance_batch(self, flat_words: np.ndarray, threshold=None) -> np.ndarray:
        """Per-row Hamming distance from (B, N) flattened words to the code."""
        table = self.codewords(threshold)
        out = np.empty(flat_words.shape[0], dtype=np.int64)
        step = max(1, (1 << 26) // max(1, table.shape[0] * self.block_length))
        for s in range(0, flat_words.shape[0], step):
            block = flat_words[s : s + step]
            diff = block[:, None, :] != table[None, :, :]
            out[s : s + step] = diff.sum(axis=2).min(axis=1)
        return out

    def as_linear_code(self, max_cells: int = 1 << 24) -> LinearCode:
        """The same code as a flat LinearCode with a Kronecker generator."""
        if self._linear is None:
            if self.dimension * self.block_length > max_cells:
                raise TooLargeToEnumerateError(
                    f"generator would hold {self.dimension * self.block_length} cells"
                )
            gen = self.factors[0].generator
            for factor in self.factors[1:]:
                gen = linalg.kron(gen, factor.generator, self.field.q)
            self._linear = LinearCode(
                self.field, gen, d_known=self.distance, _reduced=True
            )
        return self._linear

    # --- projection and extension --------------------------------------------

    def extend(self, index_sets: Sequence[Sequence[int]], partial: TensorWord) -> TensorWord:
        """Extend a partial codeword on I_1 x ... x I_m to the full grid.

        Each 1-based index set I_b must have at least n_b - d_b + 1 elements,
        which makes the extension unique.  The message grid is recovered by
        Gaussian elimination against the projected generator; an inconsistent
        system means ``partial`` is not a codeword of the projected product.
        """
        if len(index_sets) != self.m:
            raise ValueError(f"expected {self.m} index sets, got {len(index_sets)}")
        sets0 = []
        for b, (raw, factor) in enumerate(zip(index_sets, self.factors), start=1):
            idx = [int(i) for i in raw]
            if not idx:
                raise EmptyProjectionError(f"index set for axis {b} is empty")
            if any(not 1 <= i <= factor.n for i in idx):
                raise IndexOutOfRangeError(
                    f"axis {b} indices must lie in [1, {factor.n}]"
                )
            if any(y <= x for x, y in zip(idx, idx[1:])):
                raise ValueError(f"axis {b} indices must be strictly increasing")
            d = factor.d_known if factor.d_known is not None else factor.min_distance()
            if len(idx) < factor.n - d + 1:
                raise UnderdeterminedError(
                    f"axis {b}: {len(idx)} coordinates < n - d + 1 = {factor.n - d + 1}"
                )
            sets0.append(np.array(idx, dtype=np.int64) - 1)
        pshape = tuple(len(s) for s in sets0)
        if partial.field != self.field or partial.shape != pshape:
            raise ShapeMismatchError(
                f"partial word has shape {partial.shape}, expected {pshape}"
            )
        gen = None
        for factor, cols in zip(self.factors, sets0):
            g = factor.generator[:, cols]
            gen = g if gen is None else linalg.kron(gen, g, self.field.q)
        try:
            msg = linalg.solve_unique(gen.T, partial.array.reshape(-1), self.field.q)
        except InconsistentSystemError as exc:
            raise NotACodewordError(
                "partial word is not a codeword of the projected product code"
            ) from exc
        except UnderdeterminedSystemError as exc:  # pragma: no cover - guarded above
            raise UnderdeterminedError(str(exc)) from exc
        kshape = tuple(c.k for c in self.factors)
        return self.encode_tensor(msg.reshape(kshape))

    def __repr__(self):
        d = self.distance if self.distance is not None else "?"
        return (
            f"TensorCode[{self.block_length},{self.dimension},{d}] "
            f"= product of {self.m} factor(s) over GF({self.field.q})"
        )


def tensor_product(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """The flat [n1*n2, k1*k2] product code of two linear codes.

    The generator is kron(G1, G2), matching the package-wide flattening of
    two-axis words (axis 1 slowest); its minimum distance is d1*d2 when both
    factor distances are known.
    """
    if c1.field != c2.field:
        raise FieldMismatchError(f"codes over {c1.field} and {c2.field}")
    gen = linalg.kron(c1.generator, c2.generator, c1.field.q)
    d = None
    if c1.d_known is not None and c2.d_known is not None:
        d = c1.d_known * c2.d_known
    return LinearCode(c1.field, gen, d_known=d, _reduced=True)


def tensor_power(code: LinearCode, m: int) -> TensorCode:
    """The m-fold product of ``code`` with itself."""
    if m < 1:
        raise ValueError(f"power must be >= 1, got {m}")
    return TensorCode((code,) * m)


def project_word(word: TensorWord, index_sets: Sequence[Sequence[int]]) -> TensorWord:
    """Restrict a tensor word to the 1-based grid I_1 x ... x I_m."""
    if len(index_sets) != word.ndim:
        raise ValueError(f"expected {word.ndim} index sets, got {len(index_sets)}")
    sets0 = []
    for b, (raw, n) in enumerate(zip(index_sets, word.shape), start=1):
        idx = [int(i) for i in raw]
        if not idx:
            raise EmptyProjectionError(f"index set for axis {b} is empty")
        if any(not 1 <= i <= n for i in idx):
            raise IndexOutOfRangeError(f"axis {b} indices must lie in [1, {n}]")
        sets0.append(np.array(idx, dtype=np.int64) - 1)
    sub = word.array[np.ix_(*sets0)]
    return TensorWord.from_array(word.field, sub)
