"""Torus weights as rational combinations of the symbols alpha_1..alpha_k.

The weights are generic with ``alpha_1 < ... < alpha_k`` and each
``alpha_i`` much larger than the sum of the earlier ones, so the sign of a
weight is the sign of its coefficient on the largest index present.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

POSITIVE, ZERO, NEGATIVE = 1, 0, -1

CHECK_BASES = (3, 4, 5)


class GenericityError(ArithmeticError):
    """The dominant-index sign rule disagrees with a numeric evaluation."""


class NonEffectiveError(ValueError):
    """A virtual representation with a negative multiplicity was used where
    an honest representation is required."""


_debug: ContextVar[set | None] = ContextVar("_debug", default=None)


@contextmanager
def debug_weights():
    """Within this block every constructed weight is checked against
    :func:`numeric_sign` at bases 3, 4 and 5.  Yields the set of all weights
    seen, for later inspection."""
    seen: set = set()
    token = _debug.set(seen)
    try:
        yield seen
    finally:
        _debug.reset(token)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Weight:
    """Sparse rational vector over the basis ``alpha_1, ..., alpha_k``."""

    __slots__ = ("terms", "_hash")

    def __init__(self, coefficients: Mapping[int, int | Fraction] | Iterable = ()):
        items = coefficients.items() if hasattr(coefficients, "items") else coefficients
        acc: dict[int, int | Fraction] = {}
        for i, c in items:
            acc[i] = acc.get(i, 0) + c
        self._set(tuple(sorted((i, _norm(c)) for i, c in acc.items() if c != 0)))

    def _set(self, terms):
        self.terms = terms
        self._hash = hash(terms)
        seen = _debug.get()
        if seen is not None and self not in seen:
            _check(self)
            seen.add(self)

    @classmethod
    def _from_terms(cls, terms) -> "Weight":
        # terms already canonical: sorted by index, no zeros
        w = cls.__new__(cls)
        w._set(terms)
        return w

    @classmethod
    def alpha(cls, i: int) -> "Weight":
        return cls._from_terms(((i, 1),))

    @classmethod
    def difference(cls, mu: int, nu: int) -> "Weight":
        """``alpha_mu - alpha_nu``."""
        if mu == nu:
            return cls._from_terms(())
        if mu < nu:
            return cls._from_terms(((mu, 1), (nu, -1)))
        return cls._from_terms(((nu, -1), (mu, 1)))

    def as_dict(self) -> dict[int, int | Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Weight) and self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.terms < other.terms

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.terms + other.terms)

    def __neg__(self) -> "Weight":
        return Weight._from_terms(tuple((i, -c) for i, c in self.terms))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.terms + tuple((i, -c) for i, c in other.terms))

    def __mul__(self, scalar) -> "Weight":
        return Weight((i, c * scalar) for i, c in self.terms)

    __rmul__ = __mul__

    def __truediv__(self, n) -> "Weight":
        return Weight((i, Fraction(c) / n) for i, c in self.terms)

    def swap(self, a: int, b: int) -> "Weight":
        """Exchange the roles of ``alpha_a`` and ``alpha_b``."""
        perm = {a: b, b: a}
        return Weight._from_terms(tuple(sorted((perm.get(i, i), c) for i, c in self.terms)))

    def ratio(self, other: "Weight"):
        """``x`` with ``self == x * other``, or ``None`` if not proportional."""
        if other.is_zero():
            raise ZeroDivisionError("ratio to the zero weight")
        if self.is_zero():
            return 0
        if len(self.terms) != len(other.terms):
            return None
        x = None
        for (i, c), (j, d) in zip(self.terms, other.terms):
            if i != j:
                return None
            r = Fraction(c) / d
            if x is None:
                x = r
            elif r != x:
                return None
        return _norm(x)

    def sign(self) -> int:
        return weight_sign(self)

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for i, c in reversed(self.terms):
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            sym = f"a{i}"
            if not out:
                out = ("-" if c < 0 else "") + coef + sym
            else:
                out += (" - " if c < 0 else " + ") + coef + sym
        return out

    def __repr__(self):
        return f"Weight({str(self)!r})"


ZERO_WEIGHT = Weight()


def weight_sign(w: Weight) -> int:
    """Sign by the dominant (largest-index) coefficient."""
    if not w.terms:
        return ZERO
    return POSITIVE if w.terms[-1][1] > 0 else NEGATIVE


def numeric_sign(w: Weight, base: int) -> int:
    """Sign of the weight evaluated at ``alpha_i = base**i`` (exact)."""
    if base < 3:
        raise ValueError("base must be at least 3")
    value = sum(Fraction(c) * base**i for i, c in w.terms)
    return (value > 0) - (value < 0)


def _check(w: Weight) -> None:
    s = weight_sign(w)
    for base in CHECK_BASES:
        if numeric_sign(w, base) != s:
            raise GenericityError(f"sign of {w} is not decided by its dominant index (base {base})")


class WeightMultiset:
    """Finite formal sum of weights with integer multiplicities.

    Negative multiplicities are allowed for intermediate (virtual) results;
    counting positive weights requires an honest representation.
    """

    __slots__ = ("_m",)

    def __init__(self, entries: Mapping[Weight, int] | Iterable[Weight] = ()):
        m: dict[Weight, int] = {}
        if hasattr(entries, "items"):
            for w, c in entries.items():
                if c:
                    m[w] = m.get(w, 0) + c
        else:
            for w in entries:
                m[w] = m.get(w, 0) + 1
        self._m = {w: c for w, c in m.items() if c}

    def items(self):
        """``(weight, multiplicity)`` pairs in sorted weight order."""
        return sorted(self._m.items())

    def multiplicity(self, w: Weight) -> int:
        return self._m.get(w, 0)

    def __contains__(self, w):
        return self._m.get(w, 0) > 0

    def __iter__(self):
        """Weights with repetition (effective part only)."""
        for w, c in self.items():
            for _ in range(max(c, 0)):
                yield w

    def __len__(self):
        return self.dimension

    def __eq__(self, other):
        return isinstance(other, WeightMultiset) and self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        out = dict(self._m)
        for w, c in other._m.items():
            out[w] = out.get(w, 0) + c
        return WeightMultiset(out)

    def __sub__(self, other: "WeightMultiset") -> "WeightMultiset":
        out = dict(self._m)
        for w, c in other._m.items():
            out[w] = out.get(w, 0) - c
        return WeightMultiset(out)

    def intersection(self, other: "WeightMultiset") -> "WeightMultiset":
        return WeightMultiset(
            {w: min(c, other._m[w]) for w, c in self._m.items() if w in other._m}
        )

    def is_effective(self) -> bool:
        return all(c >= 0 for c in self._m.values())

    @property
    def dimension(self) -> int:
        return sum(self._m.values())

    def _count(self, sign: int) -> int:
        if not self.is_effective():
            bad = [str(w) for w, c in self.items() if c < 0]
            raise NonEffectiveError(f"non-effective representation: negative multiplicity at {bad}")
        return sum(c for w, c in self._m.items() if weight_sign(w) == sign)

    def positive_count(self) -> int:
        return self._count(POSITIVE)

    def negative_count(self) -> int:
        return self._count(NEGATIVE)

    def zero_count(self) -> int:
        return self._count(ZERO)

    def __str__(self):
        parts = []
        for w, c in self.items():
            parts.append(str(w) if c == 1 else f"{c}x({w})")
        return "{" + ", ".join(parts) + "}"

    def __repr__(self):
        return f"WeightMultiset({self})"


def block_rep(blocks: Sequence[Iterable[int]]) -> WeightMultiset:
    """The representation spanned by ``alpha_mu - alpha_nu`` with ``nu`` in a
    block and ``mu`` in any later block."""
    blocks = [frozenset(b) for b in blocks]
    seen: set[int] = set()
    for b in blocks:
        if seen & b:
            raise ValueError(f"overlapping blocks: {[sorted(x) for x in blocks]}")
        seen |= b
    later = set(seen)
    ws = []
    for b in blocks[:-1]:
        later -= b
        for nu in sorted(b):
            for mu in sorted(later):
                ws.append(Weight.difference(mu, nu))
    return WeightMultiset(ws)


def tangent_weights(blocks: Sequence[Iterable[int]]) -> WeightMultiset:
    """Weights of the tangent space of the flag manifold at the fixed point
    labeled by ``blocks``."""
    return block_rep(blocks)
