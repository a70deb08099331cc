"""Ordered bipartite graphs, Tanner product codes, and graph composition.

An (n, m, t)-ordered bipartite graph has n left vertices, m right vertices,
and for each right vertex j an ordered neighbor list of exactly t left
vertices (1-based).  A Tanner product code TPC(G, C_small) consists of the
words over the left vertices whose every right-vertex view (the ordered
projection onto a neighbor list) is a codeword of the small code.

Graphs small enough are materialized as a dense (m, t) array; larger ones
keep a computed row accessor so that sampled testing still works.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import linalg
from .code import LinearCode, Word
from .config import adjacency_budget
from .errors import (
    DegreeMismatchError,
    EntryOutOfRangeError,
    FieldMismatchError,
    GraphTooLargeError,
    InapplicableError,
    LengthMismatchError,
    RaggedListsError,
    TooLargeToEnumerateError,
)

# Left-vertex block size when streaming rows of a lazy graph.
_ROW_BLOCK = 1 << 12


class OrderedGraph:
    """An (n, m, t)-ordered bipartite graph.

    Neighbor lists are exposed 1-based (matching serialization); internal
    arrays are 0-based.  Instances are immutable after construction.
    """

    def __init__(
        self,
        n_left: int,
        m_right: int,
        t_degree: int,
        rows0: Optional[np.ndarray] = None,
        row_at_fn: Optional[Callable[[int, np.ndarray], np.ndarray]] = None,
        left_degree: Optional[int] = None,
        label: str = "",
    ):
        if (rows0 is None) == (row_at_fn is None):
            raise ValueError("exactly one of rows0 / row_at_fn must be given")
        self.n_left = int(n_left)
        self.m_right = int(m_right)
        self.t_degree = int(t_degree)
        self.left_degree = left_degree
        self.label = label
        if rows0 is not None:
            rows0 = np.asarray(rows0, dtype=np.int64)
            rows0.setflags(write=False)
        self._rows0 = rows0
        self._row_at_fn = row_at_fn

    # --- construction -------------------------------------------------------

    @classmethod
    def from_lists(cls, n_left: int, lists: Sequence[Sequence[int]], label: str = "") -> "OrderedGraph":
        """Validate 1-based adjacency lists and build an explicit graph."""
        if not lists:
            raise ValueError("a graph needs at least one right vertex")
        lengths = {len(row) for row in lists}
        if len(lengths) != 1:
            raise RaggedListsError(f"neighbor lists have mixed lengths {sorted(lengths)}")
        t = lengths.pop()
        if t == 0:
            raise ValueError("neighbor lists must be nonempty")
        rows = np.array([[int(v) for v in row] for row in lists], dtype=np.int64)
        if rows.min() < 1 or rows.max() > n_left:
            bad = int(rows.min()) if rows.min() < 1 else int(rows.max())
            raise EntryOutOfRangeError(f"entry {bad} outside [1, {n_left}]")
        return cls(n_left, rows.shape[0], t, rows0=rows - 1, label=label)

    @property
    def is_explicit(self) -> bool:
        return self._rows0 is not None

    def params(self) -> tuple[int, int, int]:
        return self.n_left, self.m_right, self.t_degree

    # --- row access -----------------------------------------------------------

    def row_at0(self, j0: int, positions: np.ndarray) -> np.ndarray:
        """Entries of 0-based row j0 at the given 0-based positions."""
        if self._rows0 is not None:
            return self._rows0[j0][positions]
        return self._row_at_fn(j0, positions)

    def row0(self, j0: int) -> np.ndarray:
        """0-based neighbor row of 0-based right vertex j0."""
        if not 0 <= j0 < self.m_right:
            raise IndexError(f"right vertex {j0} not in [0, {self.m_right})")
        if self._rows0 is not None:
            return self._rows0[j0]
        return self._row_at_fn(j0, np.arange(self.t_degree, dtype=np.int64))

    def rows0_block(self, start: int, stop: int) -> np.ndarray:
        stop = min(stop, self.m_right)
        if self._rows0 is not None:
            return self._rows0[start:stop]
        return np.stack([self.row0(j0) for j0 in range(start, stop)])

    def iter_row_blocks(self, block: int = _ROW_BLOCK) -> Iterable[tuple[int, np.ndarray]]:
        for start in range(0, self.m_right, block):
            yield start, self.rows0_block(start, start + block)

    def neighbors(self, j: int) -> tuple[int, ...]:
        """1-based neighbor list of 1-based right vertex j."""
        return tuple(int(v) + 1 for v in self.row0(j - 1))

    @property
    def lists(self) -> tuple[tuple[int, ...], ...]:
        """All neighbor lists, 1-based.  Explicit graphs only."""
        if self._rows0 is None:
            raise GraphTooLargeError(
                "graph is stored as a computed accessor; materialize via rows0_block"
            )
        return tuple(tuple(int(v) + 1 for v in row) for row in self._rows0)

    def materialized(self, budget=None) -> "OrderedGraph":
        """An explicit copy (error if over the adjacency budget)."""
        if self.is_explicit:
            return self
        if self.m_right * self.t_degree > adjacency_budget(budget):
            raise GraphTooLargeError(
                f"{self.m_right} x {self.t_degree} adjacency entries exceed the budget"
            )
        rows = self.rows0_block(0, self.m_right)
        return OrderedGraph(
            self.n_left, self.m_right, self.t_degree, rows0=rows,
            left_degree=self.left_degree, label=self.label,
        )

    # --- views ------------------------------------------------------------------

    def view(self, values: np.ndarray, j: int) -> np.ndarray:
        """The ordered projection of a word's values onto list j (1-based)."""
        return values[self.row0(j - 1)]

    def views_matrix(self, values: np.ndarray) -> np.ndarray:
        """All views as an (m, t) array; explicit-size graphs only."""
        if self._rows0 is not None:
            return values[self._rows0]
        if self.m_right * self.t_degree > adjacency_budget(None):
            raise GraphTooLargeError("too many views to materialize at once")
        return values[self.rows0_block(0, self.m_right)]

    # --- structure ----------------------------------------------------------------

    def left_degrees(self) -> np.ndarray:
        """Occurrence count of every left vertex across all lists."""
        counts = np.zeros(self.n_left, dtype=np.int64)
        for _, block in self.iter_row_blocks():
            counts += np.bincount(block.reshape(-1), minlength=self.n_left)
        return counts

    def uniform_left_degree(self) -> int:
        """The common left degree; raises if the graph is not left-regular."""
        if self.left_degree is not None:
            return self.left_degree
        counts = self.left_degrees()
        if counts.min() != counts.max():
            raise ValueError("graph is not left-regular")
        self.left_degree = int(counts[0])
        return self.left_degree

    def compose(self, inner: "OrderedGraph", budget=None) -> "OrderedGraph":
        """Composition: route each list of ``self`` through every list of ``inner``.

        Requires inner.n_left == self.t_degree.  The composed right vertex
        (j, j') is numbered j * inner.m_right + j' (j outer), and its list is
        self's list j sampled at inner's list j'.
        """
        if inner.n_left != self.t_degree:
            raise DegreeMismatchError(
                f"inner graph has {inner.n_left} left vertices, outer degree is {self.t_degree}"
            )
        m_total = self.m_right * inner.m_right
        label = f"({self.label or '?'} (c) {inner.label or '?'})"
        ld = None
        if self.left_degree is not None and inner.left_degree is not None:
            ld = self.left_degree * inner.left_degree
        if (
            self.is_explicit
            and inner.is_explicit
            and m_total * inner.t_degree <= adjacency_budget(budget)
        ):
            rows = self._rows0[:, inner._rows0].reshape(m_total, inner.t_degree)
            return OrderedGraph(
                self.n_left, m_total, inner.t_degree, rows0=rows,
                left_degree=ld, label=label,
            )

        outer = self

        def row_at_fn(jj0: int, positions: np.ndarray) -> np.ndarray:
            j0, jp0 = divmod(jj0, inner.m_right)
            return outer.row_at0(j0, inner.row_at0(jp0, positions))

        return OrderedGraph(
            self.n_left, m_total, inner.t_degree, row_at_fn=row_at_fn,
            left_degree=ld, label=label,
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n_left,
            "m": self.m_right,
            "t": self.t_degree,
            "lists": [list(row) for row in self.lists],
        }

    def __repr__(self):
        kind = "explicit" if self.is_explicit else "computed"
        name = f" {self.label!r}" if self.label else ""
        return (
            f"OrderedGraph({self.n_left}, {self.m_right}, {self.t_degree},"
            f" {kind}{name})"
        )


def graph_compose(outer: OrderedGraph, inner: OrderedGraph, budget=None) -> OrderedGraph:
    """Functional alias for OrderedGraph.compose."""
    return outer.compose(inner, budget=budget)


# --- concrete families ------------------------------------------------------


def product_graph(n: int, m: int, budget=None) -> OrderedGraph:
    """The axis test graph on the grid [n]^m.

    Left vertices are the n**m grid points in row-major order (axis 1
    slowest); right vertex (b, i) sits at position (b-1)*n + i and is adjacent
    to every point whose b-th coordinate is i, ordered lexicographically by
    the remaining coordinates.  Views under this ordering coincide with
    flattened axis slices of tensor words.
    """
    if n < 1 or m < 1:
        raise ValueError(f"need n, m >= 1, got n={n}, m={m}")
    n_left = n**m
    if n_left > 2**62:
        # Vertex positions must fit int64 even in accessor form.
        raise GraphTooLargeError(f"{n}^{m} left vertices cannot be indexed")
    m_right = m * n
    t = n ** (m - 1)
    label = f"product:n={n},m={m}"
    if m_right * t <= adjacency_budget(budget):
        idx = np.arange(n_left, dtype=np.int64).reshape((n,) * m)
        blocks = [np.moveaxis(idx, b0, 0).reshape(n, -1) for b0 in range(m)]
        rows = np.concatenate(blocks, axis=0)
        return OrderedGraph(n_left, m_right, t, rows0=rows, left_degree=m, label=label)

    def row_at_fn(j0: int, positions: np.ndarray) -> np.ndarray:
        # Positions enumerate the remaining m-1 coordinates lexicographically;
        # splice coordinate i back in at axis b.
        b0, i0 = divmod(j0, n)
        hi_stride = n ** (m - 1 - b0)
        high, low = np.divmod(positions, hi_stride)
        return high * (hi_stride * n) + i0 * hi_stride + low

    return OrderedGraph(n_left, m_right, t, row_at_fn=row_at_fn, left_degree=m, label=label)


def iterated_graph(n: int, m: int, mp: int, budget=None) -> OrderedGraph:
    """Compose axis test graphs down from m-dimensional to mp-dimensional views."""
    if not 1 <= mp < m:
        raise ValueError(f"need 1 <= mp < m, got m={m}, mp={mp}")
    if mp == m - 1:
        g = product_graph(n, m, budget=budget)
    else:
        g = product_graph(n, m, budget=budget).compose(
            iterated_graph(n, m - 1, mp, budget=budget), budget=budget
        )
    g.label = f"iterated:n={n},m={m},mp={mp}"
    return g


def square_test_graph(n: int, t: int, budget=None) -> OrderedGraph:
    """The recursive test graph with n**(2**t) left vertices and degree n**2."""
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    if t == 2:
        g = iterated_graph(n, 4, 2, budget=budget)
    else:
        outer = iterated_graph(n ** (2 ** (t - 2)), 4, 2, budget=budget)
        g = outer.compose(square_test_graph(n, t - 1, budget=budget), budget=budget)
    g.label = f"square:n={n},t={t}"
    return g


# --- Tanner product codes -----------------------------------------------------


class TannerCode:
    """TPC(G, C_small): words whose every right-vertex view is a small codeword."""

    def __init__(self, graph: OrderedGraph, small: LinearCode):
        if small.n != graph.t_degree:
            raise DegreeMismatchError(
                f"small code length {small.n} != right degree {graph.t_degree}"
            )
        self.graph = graph
        self.small = small

    def contains(self, word: Word) -> bool:
        if word.field != self.small.field:
            raise FieldMismatchError(
                f"word over {word.field}, small code over {self.small.field}"
            )
        if len(word) != self.graph.n_left:
            raise LengthMismatchError(
                f"word length {len(word)}, graph has {self.graph.n_left} left vertices"
            )
        values = word.values
        for _, block in self.graph.iter_row_blocks():
            if not np.all(self.small.contains_batch(values[block])):
                return False
        return True

    def contains_batch(self, words: np.ndarray) -> np.ndarray:
        """Vectorized membership for a (B, n_left) array of word values."""
        ok = np.ones(words.shape[0], dtype=bool)
        for _, block in self.graph.iter_row_blocks():
            views = words[:, block]  # (B, rows, t)
            flat = views.reshape(-1, self.graph.t_degree)
            good = self.small.contains_batch(flat).reshape(words.shape[0], -1)
            ok &= good.all(axis=1)
        return ok

    def __repr__(self):
        return f"TannerCode({self.graph!r}, {self.small!r})"


def tpc_membership(graph: OrderedGraph, small: LinearCode, word: Word) -> bool:
    return TannerCode(graph, small).contains(word)


def tpc_linear_code(graph: OrderedGraph, small: LinearCode, max_cells: int = 1 << 24) -> LinearCode:
    """The Tanner product code as an explicit LinearCode.

    Stacks one parity row per (right vertex, small parity row) pair and takes
    the null space.  Intended for desk-scale graphs; refuses when the stacked
    parity matrix would be too large.
    """
    rows_per_view = small.parity_check.shape[0]
    n = graph.n_left
    total = graph.m_right * max(rows_per_view, 1)
    if total * n > max_cells:
        raise TooLargeToEnumerateError(
            f"stacked parity matrix would hold {total * n} cells (max {max_cells})"
        )
    if rows_per_view == 0:
        # The small code is the full space: every word qualifies.
        return LinearCode(
            small.field, np.eye(n, dtype=np.int64), d_known=1, _reduced=True
        )
    stacked = np.zeros((total, n), dtype=np.int64)
    r = 0
    for _, block in graph.iter_row_blocks():
        for row in block:
            for h in small.parity_check:
                np.add.at(stacked[r], row, h)
                r += 1
    stacked %= small.field.q
    basis = linalg.null_space(stacked, small.field.q)
    if basis.shape[0] == 0:
        raise ValueError("Tanner product code is trivial (only the zero word)")
    return LinearCode(small.field, basis, _reduced=True)


# --- expansion ---------------------------------------------------------------


@dataclass(frozen=True)
class ExpansionResult:
    """Outcome of one boundary-expansion comparison."""

    gamma: int
    bound: Fraction
    holds: bool
    s_size: int
    t_size: int

    @property
    def slack(self) -> Fraction:
        return Fraction(self.gamma) - self.bound


def _as_mask(size: int, subset: Iterable[int]) -> np.ndarray:
    mask = np.zeros(size, dtype=bool)
    for v in subset:
        i = int(v)
        if not 1 <= i <= size:
            raise EntryOutOfRangeError(f"vertex {i} outside [1, {size}]")
        mask[i - 1] = True
    return mask


def boundary_edge_count(graph: OrderedGraph, s_mask: np.ndarray, t_mask: np.ndarray) -> int:
    """Edges with exactly one endpoint inside S (left) union T (right)."""
    gamma = 0
    t = graph.t_degree
    for start, block in graph.iter_row_blocks():
        counts = s_mask[block].sum(axis=1)
        in_t = t_mask[start : start + block.shape[0]]
        gamma += int(counts[~in_t].sum()) + int((t - counts[in_t]).sum())
    return gamma


def check_expansion(graph: OrderedGraph, s_subset: Iterable[int], t_subset: Iterable[int]) -> ExpansionResult:
    """Compare the exact boundary count of S union T against the 1/8 bound.

    S is a set of 1-based left vertices with |S| <= n/4 (otherwise the check
    is inapplicable); T is any set of 1-based right vertices.  The bound is
    (d_L * |S| + d_R * |T|) / 8 where d_L is the uniform left degree and d_R
    the right degree.
    """
    s_mask = _as_mask(graph.n_left, s_subset)
    t_mask = _as_mask(graph.m_right, t_subset)
    s_size = int(s_mask.sum())
    t_size = int(t_mask.sum())
    if 4 * s_size > graph.n_left:
        raise InapplicableError(
            f"|S| = {s_size} exceeds a quarter of {graph.n_left} left vertices"
        )
    d_l = graph.uniform_left_degree()
    d_r = graph.t_degree
    gamma = boundary_edge_count(graph, s_mask, t_mask)
    bound = Fraction(d_l * s_size + d_r * t_size, 8)
    return ExpansionResult(gamma, bound, Fraction(gamma) >= bound, s_size, t_size)
