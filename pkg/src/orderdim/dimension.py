"""Order dimension: extension enumeration, realizer search, Ore embedding.

The realizer search works over reversal masks of critical pairs.  A pair
(x, y) of incomparable elements is critical when down(x) is contained in
down(y) and up(y) is contained in up(x); a family of linear extensions
realizes the poset exactly when every critical pair (x, y) has some member
placing y below x.  The searched tuples are non-decreasing in the index of
the deterministic extension stream, so the first hit is the
lexicographically first witness.  A naive checker with no critical-pair
reduction lives in the test suite and must agree with this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .budget import DEFAULT_MAX_ELEMENTS, BudgetMeter, effective_budget
from .errors import LimitExceeded, NotARealizer
from .poset import FinitePoset, LinearOrder, RealizerTuple, is_realizer

__all__ = [
    "DimensionResult",
    "all_linear_extensions",
    "critical_pairs",
    "find_realizers",
    "dimension",
    "ore_embedding",
]


@dataclass(frozen=True)
class DimensionResult:
    dim: int
    witness: RealizerTuple


def all_linear_extensions(
    p: FinitePoset,
    budget: int | None = None,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> Iterator[LinearOrder]:
    """Every linear extension exactly once, smallest-available-index first."""
    m = len(p)
    if m > max_elements:
        raise LimitExceeded(
            f"extension enumeration capped at {max_elements} elements, got {m}"
        )
    meter = BudgetMeter(effective_budget(budget), "linear extension enumeration")
    preds = [0] * m
    for i in range(m):
        mask = 0
        for j in np.nonzero(p.lt[:, i])[0]:
            mask |= 1 << int(j)
        preds[i] = mask
    order: list[int] = []

    def rec(taken: int) -> Iterator[LinearOrder]:
        if len(order) == m:
            meter.tick()
            yield LinearOrder([p.elements[i] for i in order])
            return
        for i in range(m):
            if not (taken >> i) & 1 and preds[i] & ~taken == 0:
                order.append(i)
                yield from rec(taken | (1 << i))
                order.pop()

    return rec(0)


def critical_pairs(p: FinitePoset) -> list[tuple[str, str]]:
    """Ordered pairs (x, y): incomparable, down(x) <= down(y), up(y) <= up(x)."""
    m = len(p)
    out: list[tuple[str, str]] = []
    lt = p.lt
    for x in range(m):
        for y in range(m):
            if x == y or lt[x, y] or lt[y, x]:
                continue
            if (lt[:, x] & ~lt[:, y]).any():
                continue
            if (lt[y, :] & ~lt[x, :]).any():
                continue
            out.append((p.elements[x], p.elements[y]))
    return out


def _reversal_masks(
    exts: list[LinearOrder], pairs: list[tuple[str, str]]
) -> list[int]:
    """Bit c set iff the extension puts pairs[c][1] below pairs[c][0]."""
    masks = []
    for ext in exts:
        rank = ext.rank
        mask = 0
        for c, (x, y) in enumerate(pairs):
            if rank[y] < rank[x]:
                mask |= 1 << c
        masks.append(mask)
    return masks


def _search_cover(
    masks: list[int], full: int, n: int, meter: BudgetMeter
) -> tuple[int, ...] | None:
    """First non-decreasing index tuple of length n whose masks cover full."""
    count = len(masks)
    suffix_union = [0] * (count + 1)
    suffix_best = [0] * (count + 1)
    for i in range(count - 1, -1, -1):
        suffix_union[i] = suffix_union[i + 1] | masks[i]
        pop = bin(masks[i]).count("1")
        suffix_best[i] = max(suffix_best[i + 1], pop)
    chosen: list[int] = []

    def rec(start: int, uncovered: int, slots: int) -> bool:
        meter.tick()
        if uncovered == 0:
            while len(chosen) < n:
                chosen.append(chosen[-1] if chosen else 0)
            return True
        if slots == 0 or start >= count:
            return False
        if uncovered & ~suffix_union[start]:
            return False
        if slots * suffix_best[start] < bin(uncovered).count("1"):
            return False
        for i in range(start, count):
            if slots == 1 and uncovered & ~masks[i]:
                continue
            chosen.append(i)
            if rec(i, uncovered & ~masks[i], slots - 1):
                return True
            chosen.pop()
        return False

    if count == 0:
        return None
    if rec(0, full, n):
        return tuple(chosen)
    return None


def find_realizers(
    p: FinitePoset, n: int, budget: int | None = None
) -> RealizerTuple | None:
    """A tuple of n linear extensions whose intersection is lt, or None."""
    if n < 1:
        raise ValueError("n must be at least 1")
    exts = list(all_linear_extensions(p, budget))
    return _find_from_stream(p, exts, n, budget)


def _find_from_stream(
    p: FinitePoset, exts: list[LinearOrder], n: int, budget: int | None
) -> RealizerTuple | None:
    crits = critical_pairs(p)
    full = (1 << len(crits)) - 1
    masks = _reversal_masks(exts, crits)
    meter = BudgetMeter(effective_budget(budget), "realizer tuple search")
    hit = _search_cover(masks, full, n, meter)
    if hit is None:
        return None
    witness = RealizerTuple([exts[i] for i in hit])
    assert is_realizer(p, witness)
    return witness


def dimension(p: FinitePoset, budget: int | None = None) -> DimensionResult:
    """Smallest n admitting a realizer tuple, with the first witness found."""
    exts = list(all_linear_extensions(p, budget))
    for n in range(1, len(p) + 1):
        witness = _find_from_stream(p, exts, n, budget)
        if witness is not None:
            if len(p) >= 4:
                assert n <= len(p) // 2
            return DimensionResult(dim=n, witness=witness)
    raise AssertionError("every finite poset has a realizer")


def ore_embedding(
    p: FinitePoset, t: RealizerTuple
) -> dict[str, tuple[int, ...]]:
    """The diagonal map into the product of the witness chains, in rank coordinates."""
    if not is_realizer(p, t):
        raise NotARealizer("ore_embedding needs a realizer of p")
    image = {e: tuple(o.rank[e] for o in t.orders) for e in p.elements}
    for a in p.elements:
        for b in p.elements:
            if a == b:
                continue
            below = all(x < y for x, y in zip(image[a], image[b]))
            assert below == p.less(a, b)
    return image
