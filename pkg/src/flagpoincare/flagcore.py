"""Flag shapes, index tuples (ordered set partitions) and the N-statistic.

An index tuple ``(I_1, ..., I_{l+1})`` is stored as a plain tuple of
frozensets of 1-based integers.  It labels the torus-fixed flag spanned by
the coordinate vectors of ``I_1``, then ``I_1 | I_2``, and so on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .kernels import nstat_histogram
from .polyq import IntPolynomial, ONE, omega, q_multinomial

IndexTuple = tuple  # tuple[frozenset[int], ...]


@dataclass(frozen=True)
class FlagShape:
    """Block sizes ``(r_1, ..., r_{l+1})`` of a partial flag in ``C^k``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(r) for r in self.parts)
        object.__setattr__(self, "parts", parts)
        if len(parts) < 2:
            raise ValueError(f"a flag shape needs at least two parts, got {parts}")
        if any(r < 1 for r in parts):
            raise ValueError(f"flag shape parts must be positive, got {parts}")

    @classmethod
    def parse(cls, text: str) -> "FlagShape":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def l(self) -> int:
        return len(self.parts) - 1

    @cached_property
    def partial_sums(self) -> tuple[int, ...]:
        """``s_1, ..., s_l``, the dimensions of the subspaces in the flag."""
        out, acc = [], 0
        for r in self.parts[:-1]:
            acc += r
            out.append(acc)
        return tuple(out)

    @property
    def dim(self) -> int:
        k = self.k
        return sum(r * (k - s) for r, s in zip(self.parts, self.partial_sums))

    @property
    def is_complete(self) -> bool:
        return all(r == 1 for r in self.parts)

    def __str__(self):
        return "Fl(" + ",".join(map(str, self.parts)) + f";{self.k})"


def all_shapes(k: int) -> Iterator[FlagShape]:
    """Every flag shape with ``sum = k`` and at least two parts (compositions
    of ``k``), in lexicographic order."""

    def rec(rest):
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first,) + tail

    for comp in rec(k):
        if len(comp) >= 2:
            yield FlagShape(comp)


def check_index_tuple(blocks: Sequence[Iterable[int]], k: int | None = None,
                      profile: Sequence[int] | None = None) -> IndexTuple:
    """Normalize ``blocks`` to a tuple of frozensets and validate it."""
    out = tuple(frozenset(b) for b in blocks)
    seen: set[int] = set()
    for b in out:
        if seen & b:
            raise ValueError(f"blocks overlap: {blocks}")
        seen |= b
    if k is not None and seen != set(range(1, k + 1)):
        raise ValueError(f"blocks do not partition 1..{k}: {blocks}")
    if profile is not None and tuple(len(b) for b in out) != tuple(profile):
        raise ValueError(f"block sizes {[len(b) for b in out]} do not match {list(profile)}")
    return out


def _colex(elements: Sequence[int], r: int):
    return sorted(combinations(elements, r), key=lambda c: c[::-1])


def enumerate_index_tuples(k: int, profile: Sequence[int]) -> Iterator[IndexTuple]:
    """Yield every ordered set partition of ``{1..k}`` with block sizes
    ``profile``.

    Order: the first block runs through its candidates in colexicographic
    order, and for each choice the remaining blocks are enumerated the same
    way on the leftover elements.  A negative profile entry gives an empty
    stream; zero entries give empty blocks.
    """
    profile = tuple(profile)
    if sum(profile) != k:
        raise ValueError(f"profile {list(profile)} does not sum to {k}")
    if any(p < 0 for p in profile):
        return

    def rec(remaining, idx):
        if idx == len(profile):
            yield ()
            return
        for chosen in _colex(remaining, profile[idx]):
            rest = [x for x in remaining if x not in chosen]
            block = frozenset(chosen)
            for tail in rec(rest, idx + 1):
                yield (block,) + tail

    yield from rec(list(range(1, k + 1)), 0)


def n_statistic(blocks: Sequence[Iterable[int]]) -> int:
    """Number of pairs ``mu > nu`` with ``nu`` in block ``s`` and ``mu`` in a
    later block; equals the number of positive tangent weights."""
    blocks = [frozenset(b) for b in blocks]
    total = 0
    later: set[int] = set().union(*blocks) if blocks else set()
    for b in blocks[:-1]:
        later -= b
        total += sum(1 for nu in b for mu in later if mu > nu)
    return total


def f_polynomial(k: int, profile: Sequence[int]) -> IntPolynomial:
    """Sum of ``t**N`` over all index tuples with the given block sizes."""
    if sum(profile) != k:
        raise ValueError(f"profile {list(profile)} does not sum to {k}")
    return IntPolynomial(nstat_histogram(list(profile)))


def f_factorized(profile: Sequence[int]) -> IntPolynomial:
    """``f`` assembled from two-block pieces by peeling off the last block
    repeatedly: ``f(s_l, r_{l+1}) * f(s_{l-1}, r_l) * ... * f(r_1, r_2)``."""
    out = ONE
    acc = profile[0]
    for r in profile[1:]:
        out = out * f_polynomial(acc + r, [acc, r])
        acc += r
    return out


def flag_poincare(shape: FlagShape) -> IntPolynomial:
    """Poincare polynomial of the flag manifold, in ``t = q**2``."""
    return q_multinomial(shape.k, shape.parts)


def transpose_subset(subset: Iterable[int], n: int) -> frozenset[int]:
    """``{a_1 < ... < a_j}`` -> ``{n+1-a_j < ... < n+1-a_1}``."""
    return frozenset(n + 1 - a for a in subset)


def subset_n_statistic(subset: Iterable[int], k: int) -> int:
    """N-statistic of the two-block tuple ``(S, complement)``."""
    s = frozenset(subset)
    return n_statistic([s, frozenset(range(1, k + 1)) - s])


def fibration_split(blocks: IndexTuple, grouping: Sequence[int]):
    """Split an index tuple along consecutive runs of blocks.

    Returns ``(coarse, fine)``: ``coarse`` merges each run into one block;
    ``fine[i]`` is run ``i`` with its elements relabeled ``1..m`` in order.
    The N-statistic is additive over this split.
    """
    if any(g < 1 for g in grouping) or sum(grouping) != len(blocks):
        raise ValueError(f"grouping {list(grouping)} does not cover {len(blocks)} blocks")
    coarse, fine = [], []
    pos = 0
    for g in grouping:
        run = blocks[pos:pos + g]
        pos += g
        merged = frozenset().union(*run)
        relabel = {x: i + 1 for i, x in enumerate(sorted(merged))}
        coarse.append(merged)
        fine.append(tuple(frozenset(relabel[x] for x in b) for b in run))
    return tuple(coarse), fine


__all__ = [
    "FlagShape", "IndexTuple", "all_shapes", "check_index_tuple",
    "enumerate_index_tuples", "n_statistic", "f_polynomial", "f_factorized",
    "flag_poincare", "transpose_subset", "subset_n_statistic", "omega",
    "fibration_split",
]
