"""Finite strict partial orders, linear orders, and realizers.

Conventions that the rest of the package relies on:

- A relation is a dense boolean matrix ``lt`` over an ordered label tuple;
  ``lt[i, j]`` means ``elements[i] < elements[j]`` strictly.  Matrices are
  frozen (non-writeable) after construction.
- A linear order is the sequence of labels from bottom to top.
- A realizer is a tuple of linear orders over one element set whose
  intersection equals the poset's relation.
- The 2n-element crown uses the convention a_i < b_j iff i != j.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product as iter_product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    CycleIntroduced,
    DuplicateLabel,
    ElementMismatch,
    NotARealizer,
    NotLinear,
    ReflexiveViolation,
    TooSmall,
    TransitivityViolation,
)

__all__ = [
    "FinitePoset",
    "LinearOrder",
    "RealizerTuple",
    "OrderedStructure",
    "validate_poset",
    "szpilrajn_extend",
    "is_realizer",
    "crown",
    "chain",
    "antichain",
    "product_order",
    "lex_order",
    "hiraguchi_bound",
    "tuple_label",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=bool)
    out.setflags(write=False)
    return out


def tuple_label(parts: Sequence[str]) -> str:
    """Canonical label for an element of a product: "(a,b,c)"."""
    return "(" + ",".join(parts) + ")"


class FinitePoset:
    """Strict partial order on an ordered tuple of distinct labels.

    Construct through validate_poset or the module constructors; the
    class itself only checks shape, not the order axioms.
    """

    __slots__ = ("elements", "lt", "__dict__")

    def __init__(self, elements: Sequence[str], lt: np.ndarray):
        self.elements: tuple[str, ...] = tuple(elements)
        m = len(self.elements)
        if lt.shape != (m, m):
            raise ElementMismatch(
                f"relation shape {lt.shape} does not match {m} elements"
            )
        self.lt = _freeze(lt)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.elements == other.elements and bool(
            np.array_equal(self.lt, other.lt)
        )

    def __hash__(self) -> int:
        return hash((self.elements, self.lt.tobytes()))

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {int(self.lt.sum())} relations)"

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ElementMismatch(f"unknown element {label!r}") from None

    def less(self, a: str, b: str) -> bool:
        return bool(self.lt[self.index(a), self.index(b)])

    def leq(self, a: str, b: str) -> bool:
        return a == b or self.less(a, b)

    def incomparable(self, a: str, b: str) -> bool:
        return a != b and not self.less(a, b) and not self.less(b, a)

    def lt_pairs(self) -> Iterator[tuple[str, str]]:
        for i, j in zip(*np.nonzero(self.lt)):
            yield self.elements[i], self.elements[j]

    def downset(self, label: str) -> frozenset[str]:
        j = self.index(label)
        return frozenset(self.elements[i] for i in np.nonzero(self.lt[:, j])[0])

    def upset(self, label: str) -> frozenset[str]:
        i = self.index(label)
        return frozenset(self.elements[j] for j in np.nonzero(self.lt[i, :])[0])

    def covers(self) -> list[tuple[str, str]]:
        """Covering pairs (a, b): a < b with nothing strictly between."""
        strict2 = self.lt @ self.lt
        cov = self.lt & ~strict2
        return [
            (self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(cov))
        ]

    def is_chain(self) -> bool:
        comparable = np.array(self.lt | self.lt.T)
        np.fill_diagonal(comparable, True)
        return bool(comparable.all())

    def restrict(self, labels: Sequence[str]) -> "FinitePoset":
        idx = [self.index(x) for x in labels]
        return FinitePoset(tuple(labels), self.lt[np.ix_(idx, idx)])

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "lt": [[bool(v) for v in row] for row in self.lt],
        }

    @staticmethod
    def from_json(data: dict) -> "FinitePoset":
        return validate_poset(data["elements"], np.array(data["lt"], dtype=bool))


def validate_poset(elements: Sequence[str], lt: np.ndarray | Sequence[Sequence[bool]]) -> FinitePoset:
    """Check the strict-order axioms, naming the first violation found."""
    labels = tuple(elements)
    if len(labels) < 1:
        raise TooSmall("a poset needs at least one element")
    seen: set[str] = set()
    for x in labels:
        if x in seen:
            raise DuplicateLabel(x)
        seen.add(x)
    mat = np.array(lt, dtype=bool)
    m = len(labels)
    if mat.shape != (m, m):
        raise ElementMismatch(f"relation shape {mat.shape} does not match {m} elements")
    diag = np.nonzero(np.diagonal(mat))[0]
    if diag.size:
        raise ReflexiveViolation(labels[int(diag[0])])
    gap = (mat @ mat) & ~mat
    bad = np.nonzero(gap)
    if bad[0].size:
        i, k = int(bad[0][0]), int(bad[1][0])
        j = int(np.nonzero(mat[i, :] & mat[:, k])[0][0])
        raise TransitivityViolation(labels[i], labels[j], labels[k])
    return FinitePoset(labels, mat)


class LinearOrder:
    """Total order given as the label sequence from bottom to top."""

    __slots__ = ("order", "__dict__")

    def __init__(self, order: Sequence[str]):
        self.order: tuple[str, ...] = tuple(order)
        if len(set(self.order)) != len(self.order):
            raise DuplicateLabel(
                next(x for i, x in enumerate(self.order) if x in self.order[:i])
            )

    @cached_property
    def rank(self) -> dict[str, int]:
        """1-based rank of each label."""
        return {e: i + 1 for i, e in enumerate(self.order)}

    def __len__(self) -> int:
        return len(self.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearOrder):
            return NotImplemented
        return self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return "LinearOrder(" + " < ".join(self.order) + ")"

    def before(self, a: str, b: str) -> bool:
        return self.rank[a] < self.rank[b]

    def to_poset(self) -> FinitePoset:
        m = len(self.order)
        lt = np.triu(np.ones((m, m), dtype=bool), k=1)
        return FinitePoset(self.order, lt)

    @staticmethod
    def from_poset(p: FinitePoset) -> "LinearOrder":
        if not p.is_chain():
            raise NotLinear(f"{p!r} is not a chain")
        order = sorted(p.elements, key=lambda e: len(p.downset(e)))
        return LinearOrder(order)


def _rank_array(order: LinearOrder, elements: Sequence[str]) -> np.ndarray:
    try:
        return np.array([order.rank[e] for e in elements])
    except KeyError as exc:
        raise ElementMismatch(f"order is missing element {exc.args[0]!r}") from None


def _intersection_matrix(orders: Sequence[LinearOrder], elements: Sequence[str]) -> np.ndarray:
    out = np.ones((len(elements), len(elements)), dtype=bool)
    for o in orders:
        if len(o) != len(elements):
            raise ElementMismatch("orders range over different element sets")
        r = _rank_array(o, elements)
        out &= r[:, None] < r[None, :]
    return out


class RealizerTuple:
    """Tuple of linear orders over one element set."""

    __slots__ = ("orders",)

    def __init__(self, orders: Sequence[LinearOrder]):
        self.orders: tuple[LinearOrder, ...] = tuple(orders)
        if not self.orders:
            raise TooSmall("a realizer tuple needs at least one order")
        support = set(self.orders[0].order)
        for o in self.orders[1:]:
            if set(o.order) != support:
                raise ElementMismatch("orders range over different element sets")

    @property
    def n(self) -> int:
        return len(self.orders)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealizerTuple):
            return NotImplemented
        return self.orders == other.orders

    def __hash__(self) -> int:
        return hash(self.orders)

    def __repr__(self) -> str:
        return f"RealizerTuple(n={self.n}, m={len(self.orders[0])})"

    def intersection(self, elements: Sequence[str] | None = None) -> FinitePoset:
        elems = tuple(elements) if elements is not None else self.orders[0].order
        return FinitePoset(elems, _intersection_matrix(self.orders, elems))

    def to_json(self) -> list[list[str]]:
        return [list(o.order) for o in self.orders]

    @staticmethod
    def from_json(data: Sequence[Sequence[str]]) -> "RealizerTuple":
        return RealizerTuple([LinearOrder(o) for o in data])


def is_realizer(p: FinitePoset, t: RealizerTuple) -> bool:
    """True iff a < b in p exactly when a is before b in every order of t."""
    if set(t.orders[0].order) != set(p.elements):
        raise ElementMismatch("realizer support differs from poset elements")
    return bool(np.array_equal(_intersection_matrix(t.orders, p.elements), p.lt))


class OrderedStructure:
    """A poset bundled with a realizer tuple; construction checks the pair."""

    __slots__ = ("poset", "realizers")

    def __init__(self, poset: FinitePoset, realizers: RealizerTuple):
        if not is_realizer(poset, realizers):
            raise NotARealizer("orders do not realize the poset")
        self.poset = poset
        self.realizers = realizers

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def n(self) -> int:
        return self.realizers.n

    def __len__(self) -> int:
        return len(self.poset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderedStructure):
            return NotImplemented
        return self.poset == other.poset and self.realizers == other.realizers

    def __repr__(self) -> str:
        return f"OrderedStructure(m={len(self)}, n={self.n})"

    def order_index_pairs(self) -> list[np.ndarray]:
        """Per-order rank arrays aligned with the element tuple."""
        return [_rank_array(o, self.elements) for o in self.realizers.orders]

    def restrict(self, labels: Sequence[str]) -> "OrderedStructure":
        keep = set(labels)
        sub = self.poset.restrict(tuple(labels))
        orders = [
            LinearOrder([x for x in o.order if x in keep])
            for o in self.realizers.orders
        ]
        return OrderedStructure(sub, RealizerTuple(orders))

    @staticmethod
    def from_orders(orders: Sequence[LinearOrder]) -> "OrderedStructure":
        """Structure whose poset is the intersection of the given orders."""
        t = RealizerTuple(orders)
        return OrderedStructure(t.intersection(), t)

    def to_json(self) -> dict:
        out = self.poset.to_json()
        out["orders"] = self.realizers.to_json()
        return out

    @staticmethod
    def from_json(data: dict) -> "OrderedStructure":
        p = FinitePoset.from_json(data)
        return OrderedStructure(p, RealizerTuple.from_json(data["orders"]))


def _closure(mat: np.ndarray) -> np.ndarray:
    out = mat.copy()
    for k in range(out.shape[0]):
        out |= np.outer(out[:, k], out[k, :])
    return out


def _find_cycle(edges: np.ndarray, start: int, labels: Sequence[str]) -> list[str]:
    """Walk edges from start back to start; edges must admit such a cycle."""
    parent: dict[int, int | None] = {start: None}
    frontier = [start]
    while frontier:
        nxt: list[int] = []
        for u in frontier:
            for raw in np.nonzero(edges[u, :])[0]:
                v = int(raw)
                if v == start:
                    path = [u]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return [labels[i] for i in path] + [labels[start]]
                if v not in parent:
                    parent[v] = u
                    nxt.append(v)
        frontier = nxt
    raise AssertionError("no cycle reachable from start")


def szpilrajn_extend(
    p: FinitePoset, forced: Iterable[tuple[str, str]] = ()
) -> LinearOrder:
    """Linear extension of p placing a before b for each forced pair (a, b).

    Deterministic: repeatedly emits the lexicographically smallest label
    among the current minimal elements of the forced closure.
    """
    edges = np.array(p.lt)
    for a, b in forced:
        edges[p.index(a), p.index(b)] = True
    closed = _closure(edges)
    diag = np.nonzero(np.diagonal(closed))[0]
    if diag.size:
        cycle = _find_cycle(edges, int(diag[0]), p.elements)
        raise CycleIntroduced(cycle)
    remaining = set(range(len(p)))
    out: list[str] = []
    while remaining:
        minimal = [
            i for i in remaining if not any(closed[j, i] for j in remaining if j != i)
        ]
        pick = min(minimal, key=lambda i: p.elements[i])
        remaining.remove(pick)
        out.append(p.elements[pick])
    return LinearOrder(out)


def crown(n: int) -> FinitePoset:
    """The 2n-element crown: a_i < b_j iff i != j, nothing else related."""
    if n < 2:
        raise TooSmall("crown(n) needs n >= 2")
    labels = [f"a{i}" for i in range(1, n + 1)] + [f"b{i}" for i in range(1, n + 1)]
    lt = np.zeros((2 * n, 2 * n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j:
                lt[i, n + j] = True
    return FinitePoset(labels, lt)


def chain(m: int, labels: Sequence[str] | None = None) -> FinitePoset:
    if m < 1:
        raise TooSmall("chain(m) needs m >= 1")
    elems = tuple(labels) if labels is not None else tuple(f"c{i}" for i in range(1, m + 1))
    if len(elems) != m:
        raise ElementMismatch(f"expected {m} labels, got {len(elems)}")
    lt = np.triu(np.ones((m, m), dtype=bool), k=1)
    return FinitePoset(elems, lt)


def antichain(m: int, labels: Sequence[str] | None = None) -> FinitePoset:
    if m < 1:
        raise TooSmall("antichain(m) needs m >= 1")
    elems = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(1, m + 1))
    return FinitePoset(elems, np.zeros((m, m), dtype=bool))


def product_order(ps: Sequence[FinitePoset]) -> FinitePoset:
    """Cartesian product with the componentwise order (<= everywhere, not equal)."""
    if not ps:
        raise TooSmall("product_order needs at least one factor")
    tuples = list(iter_product(*[p.elements for p in ps]))
    labels = [tuple_label(t) for t in tuples]
    leqs = []
    for p in ps:
        leq = p.lt | np.eye(len(p), dtype=bool)
        leqs.append(leq)
    m = len(tuples)
    lt = np.ones((m, m), dtype=bool)
    for axis, p in enumerate(ps):
        ranks = np.array([p.index(t[axis]) for t in tuples])
        lt &= leqs[axis][np.ix_(ranks, ranks)]
    np.fill_diagonal(lt, False)
    return FinitePoset(labels, lt)


def lex_order(ps: Sequence[FinitePoset], i: int) -> LinearOrder:
    """The i-th lexicographic order on the product of the given chains.

    Coordinates are compared with cyclic priority i, i+1, ..., n, 1, ..., i-1
    (1-based i as in the written convention).
    """
    if not ps:
        raise TooSmall("lex_order needs at least one factor")
    n = len(ps)
    if not 1 <= i <= n:
        raise ElementMismatch(f"priority index {i} out of range 1..{n}")
    chains = []
    for p in ps:
        if not p.is_chain():
            raise NotLinear("lex_order factors must be chains")
        chains.append(LinearOrder.from_poset(p))
    priority = [(i - 1 + j) % n for j in range(n)]
    tuples = list(iter_product(*[p.elements for p in ps]))
    tuples.sort(key=lambda t: tuple(chains[a].rank[t[a]] for a in priority))
    return LinearOrder([tuple_label(t) for t in tuples])


def hiraguchi_bound(p: FinitePoset) -> int:
    """floor(|P| / 2), the dimension bound valid from four elements up."""
    if len(p) < 4:
        raise TooSmall("bound asserted only for posets with at least 4 elements")
    return len(p) // 2
