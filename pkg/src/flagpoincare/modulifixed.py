"""Torus-fixed stable maps of genus zero into a flag manifold.

Fixed points of the moduli space, in the degrees handled here, are either a
fixed line (or a double cover of one) or two fixed lines glued at a fixed
point of the flag manifold.  Their deformation spaces are computed by one
engine:

* sections of the pulled-back tangent bundle over each component, from the
  two-fixed-point Lefschetz formula on P^1 (weights pair up into line bundles
  and each contributes an arithmetic progression);
* the normalization sequence at the node, plus the node smoothing weight;
* minus the infinitesimal automorphisms of the domain.

The per-family closed formulas in :func:`def_formula_oracle` are an
independent transcription used to cross-check the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .flagcore import FlagShape, IndexTuple, enumerate_index_tuples
from .torusweights import (
    ZERO_WEIGHT, Weight, WeightMultiset, block_rep, tangent_weights,
)

SUPPORTED_PATTERNS = (
    "e_i",
    "e_i + e_j with j - i >= 2",
    "2 e_i",
    "e_i + e_{i+1}",
)


class UnsupportedDegreeError(ValueError):
    def __init__(self, degree):
        self.degree = tuple(degree)
        super().__init__(
            f"unsupported degree {list(degree)}; supported patterns: "
            + "; ".join(SUPPORTED_PATTERNS)
            + " (and the zero degree for the flag manifold itself)"
        )


class ConsistencyError(ArithmeticError):
    """An internal invariant of the deformation engine failed."""


# -- degrees -------------------------------------------------------------------


@dataclass(frozen=True)
class DegreePattern:
    """Classified degree vector; ``i`` and ``j`` are 0-based positions."""

    kind: str  # zero | single | split | double | adjacent
    i: int | None = None
    j: int | None = None


def classify_degree(shape: FlagShape, degree: Sequence[int]) -> DegreePattern:
    degree = tuple(int(d) for d in degree)
    if len(degree) != shape.l:
        raise ValueError(f"degree {list(degree)} needs {shape.l} entries for {shape}")
    if any(d < 0 for d in degree):
        raise UnsupportedDegreeError(degree)
    support = [(s, d) for s, d in enumerate(degree) if d]
    if not support:
        return DegreePattern("zero")
    if len(support) == 1:
        (s, d), = support
        if d == 1:
            return DegreePattern("single", s)
        if d == 2:
            return DegreePattern("double", s)
    if len(support) == 2 and support[0][1] == support[1][1] == 1:
        i, j = support[0][0], support[1][0]
        return DegreePattern("adjacent" if j == i + 1 else "split", i, j)
    raise UnsupportedDegreeError(degree)


def unit_degree(shape: FlagShape, *positions: int) -> tuple[int, ...]:
    """Degree vector with a 1 added at each 0-based position."""
    d = [0] * shape.l
    for p in positions:
        d[p] += 1
    return tuple(d)


def expected_dimension(shape: FlagShape, degree: Sequence[int]) -> int:
    """``dim Fl + sum_s d_s (r_s + r_{s+1}) - 3``."""
    r = shape.parts
    return shape.dim + sum(d * (r[s] + r[s + 1]) for s, d in enumerate(degree)) - 3


# -- fixed lines ---------------------------------------------------------------


def _swap(blocks: IndexTuple, a: int, b: int) -> IndexTuple:
    perm = {a: b, b: a}
    return tuple(frozenset(perm.get(x, x) for x in blk) for blk in blocks)


def _position(blocks: IndexTuple, x: int) -> int:
    for pos, blk in enumerate(blocks):
        if x in blk:
            return pos
    raise ValueError(f"{x} not in any block")


@dataclass(frozen=True)
class FixedLine:
    """Torus-invariant line joining ``source`` to the fixed point obtained by
    exchanging ``a`` (in block ``left``) and ``b`` (in block ``right``).

    Components of nodal maps are stored with ``source`` at the node.
    """

    source: IndexTuple
    a: int
    b: int

    def __post_init__(self):
        if self.left >= self.right:
            raise ValueError(f"{self.a} must sit in an earlier block than {self.b}")

    @property
    def left(self) -> int:
        return _position(self.source, self.a)

    @property
    def right(self) -> int:
        return _position(self.source, self.b)

    @property
    def target(self) -> IndexTuple:
        return _swap(self.source, self.a, self.b)

    @property
    def tangent(self) -> Weight:
        """Weight of the line's tangent direction at ``source``."""
        return Weight.difference(self.b, self.a)

    def degree(self, l: int) -> tuple[int, ...]:
        return tuple(1 if self.left <= s < self.right else 0 for s in range(l))

    def same_line(self, other: "FixedLine") -> bool:
        return {self.source, self.target} == {other.source, other.target}


def line_profile(shape: FlagShape, m: int, n: int, p: int) -> list[int]:
    """Block sizes of the index set for lines moving blocks ``m`` and
    ``m + n + 1`` (0-based)."""
    r = list(shape.parts)
    if m < 0 or n < 0 or p < 0 or m + n + p + 2 != shape.l + 1:
        raise ValueError(f"(m, n, p) = ({m}, {n}, {p}) does not fit {shape}")
    return r[:m] + [r[m] - 1, 2] + r[m + 1:m + n + 1] + [r[m + n + 1] - 1] + r[m + n + 2:]


def _line_from_tuple(t: IndexTuple, m: int, n: int) -> FixedLine:
    pre, A, pair = t[:m], t[m], t[m + 1]
    J, B, post = t[m + 2:m + 2 + n], t[m + 2 + n], t[m + 3 + n:]
    a, b = sorted(pair)
    source = pre + (A | {a},) + J + (B | {b},) + post
    return FixedLine(source, a, b)


def enumerate_fixed_lines(shape: FlagShape, m: int, n: int, p: int) -> Iterator[tuple[IndexTuple, FixedLine]]:
    """Yield ``(index tuple, line)`` for every fixed line of degree
    ``e_{m+1} + ... + e_{m+n+1}`` (1-based); the unordered pair ``{a, b}`` is
    oriented with ``a < b``."""
    prof = line_profile(shape, m, n, p)
    for t in enumerate_index_tuples(shape.k, prof):
        yield t, _line_from_tuple(t, m, n)


# -- deformation engine ------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def _tangent(blocks: IndexTuple) -> WeightMultiset:
    return tangent_weights(blocks)


@lru_cache(maxsize=1 << 16)
def h0_line_weights(line: FixedLine, e: int = 1) -> WeightMultiset:
    """Weights of ``H^0`` of the pulled-back tangent bundle along a degree
    ``e`` cover of ``line``.

    Weights present at both endpoints pair with themselves (trivial
    summands).  Each remaining weight ``w`` at the source pairs with its
    image under ``a <-> b`` at the target; the summand has degree
    ``delta = (w - swap(w)) / lam`` and contributes
    ``w, w - lam/e, ..., w - e*delta*lam/e``.
    """
    if e not in (1, 2):
        raise ValueError("cover degree must be 1 or 2")
    at_src = _tangent(line.source)
    at_tgt = _tangent(line.target)
    common = at_src.intersection(at_tgt)
    rest_src = at_src - common
    rest_tgt = at_tgt - common
    lam = line.tangent
    step = lam / e
    out = dict(common.items())
    pending = dict(rest_tgt.items())
    for w, c in rest_src.items():
        w2 = w.swap(line.a, line.b)
        if pending.get(w2, 0) < c:
            raise ConsistencyError(f"no partner for {w} along line {line}")
        pending[w2] -= c
        delta = (w - w2).ratio(lam)
        if delta is None or Fraction(delta).denominator != 1 or delta < 0:
            raise ConsistencyError(f"bad line-bundle degree {delta} for {w} along {line}")
        for j in range(e * int(delta) + 1):
            v = w - step * j
            out[v] = out.get(v, 0) + c
    if any(pending.values()):
        raise ConsistencyError(f"unpaired target weights along {line}")
    return WeightMultiset(out)


def automorphisms(line: FixedLine, e: int, marked_at_source: bool = False) -> WeightMultiset:
    """Infinitesimal automorphisms of the domain of a degree-``e`` cover;
    with a marked point over the source, only the fields vanishing there."""
    step = line.tangent / e
    if marked_at_source:
        return WeightMultiset([ZERO_WEIGHT, -step])
    return WeightMultiset([ZERO_WEIGHT, step, -step])


def _finalize(ms: WeightMultiset, what: str) -> WeightMultiset:
    if not ms.is_effective():
        raise ConsistencyError(f"negative multiplicity in {what}: {ms}")
    return ms


def def_irreducible(line: FixedLine, e: int = 1) -> WeightMultiset:
    """Deformation space of an irreducible fixed map (a line or a double
    cover of one)."""
    return _finalize(h0_line_weights(line, e) - automorphisms(line, e), "irreducible deformation")


def def_nodal(c1: FixedLine, c2: FixedLine) -> WeightMultiset:
    """Deformation space of two lines glued at their common source point."""
    if c1.source != c2.source:
        raise ValueError("components do not meet at their sources")
    node = c1.source
    smoothing = WeightMultiset([c1.tangent + c2.tangent])
    ms = (
        h0_line_weights(c1) + h0_line_weights(c2) - _tangent(node)
        + smoothing
        - automorphisms(c1, 1, True) - automorphisms(c2, 1, True)
    )
    return _finalize(ms, "nodal deformation")


def clear_caches() -> None:
    """Drop memoized tangent spaces and section spaces."""
    _tangent.cache_clear()
    h0_line_weights.cache_clear()


# -- fixed maps ----------------------------------------------------------------


@dataclass(frozen=True)
class FixedMap:
    """One torus-fixed stable map.

    ``family`` names the index set it comes from; ``labels`` is its index
    tuple in that family's block-size profile and ``position`` the 0-based
    block where the family's distinguished blocks start.
    """

    family: str
    components: tuple[FixedLine, ...]
    cover: int
    labels: IndexTuple
    position: int
    position2: int | None = None

    @property
    def nodal(self) -> bool:
        return len(self.components) == 2

    @property
    def node(self) -> IndexTuple | None:
        return self.components[0].source if self.nodal else None


def compute_def(fm: FixedMap) -> WeightMultiset:
    if fm.nodal:
        return def_nodal(*fm.components)
    return def_irreducible(fm.components[0], fm.cover)


def _one(t):
    (x,) = t
    return x


def _family_profiles(shape: FlagShape, pat: DegreePattern) -> list[tuple[str, list[int]]]:
    r = list(shape.parts)
    i, j = pat.i, pat.j
    if pat.kind == "single":
        return [("line", line_profile(shape, i, 0, shape.l - 1 - i))]
    if pat.kind == "split":
        return [("split", r[:i] + [r[i] - 1, 1, 1, r[i + 1] - 1] + r[i + 2:j]
                 + [r[j] - 1, 1, 1, r[j + 1] - 1] + r[j + 2:])]
    if pat.kind == "double":
        pre, post = r[:i], r[i + 2:]
        ri, rj = r[i], r[i + 1]
        return [
            ("I1", pre + [ri - 1, 2, rj - 1] + post),
            ("I2", pre + [ri - 1, 1, 1, rj - 1] + post),
            ("I3", pre + [ri - 1, 1, 2, rj - 2] + post),
            ("I4", pre + [ri - 2, 2, 1, rj - 1] + post),
            ("I5", pre + [ri - 2, 2, 1, 1, rj - 2] + post),
        ]
    if pat.kind == "adjacent":
        pre, post = r[:i], r[i + 3:]
        r0, r1, r2 = r[i], r[i + 1], r[i + 2]
        return [
            ("Ii", pre + [r0 - 1, 1, 1, r1 - 2, 1, 1, r2 - 1] + post),
            ("Ii'", pre + [r0 - 1, 1, 1, r1 - 1, 1, r2 - 1] + post),
            ("A", line_profile(shape, i, 1, shape.l - 2 - i)),
        ]
    raise UnsupportedDegreeError(())


def _build(family: str, t: IndexTuple, pat: DegreePattern) -> FixedMap:
    i = pat.i
    pre = t[:i]
    if family == "line":
        return FixedMap(family, (_line_from_tuple(t, i, 0),), 1, t, i)
    if family == "A":
        return FixedMap(family, (_line_from_tuple(t, i, 1),), 1, t, i)
    if family == "I1":
        return FixedMap(family, (_line_from_tuple(t, i, 0),), 2, t, i)
    if family == "split":
        j = pat.j
        A, a, b, B = t[i], _one(t[i + 1]), _one(t[i + 2]), t[i + 3]
        mid = t[i + 4:j + 2]
        C, c, d, D = t[j + 2], _one(t[j + 3]), _one(t[j + 4]), t[j + 5]
        post = t[j + 6:]
        node = pre + (A | {a}, B | {b}) + mid + (C | {c}, D | {d}) + post
        return FixedMap(family, (FixedLine(node, a, b), FixedLine(node, c, d)), 1, t, i, j)
    if family == "I2":
        A, a, b, B = t[i], _one(t[i + 1]), _one(t[i + 2]), t[i + 3]
        node = pre + (A | {a}, B | {b}) + t[i + 4:]
        line = FixedLine(node, a, b)
        return FixedMap(family, (line, line), 1, t, i)
    if family == "I3":
        A, a, (b1, b2), B = t[i], _one(t[i + 1]), sorted(t[i + 2]), t[i + 3]
        node = pre + (A | {a}, B | {b1, b2}) + t[i + 4:]
        return FixedMap(family, (FixedLine(node, a, b1), FixedLine(node, a, b2)), 1, t, i)
    if family == "I4":
        A, (a1, a2), b, B = t[i], sorted(t[i + 1]), _one(t[i + 2]), t[i + 3]
        node = pre + (A | {a1, a2}, B | {b}) + t[i + 4:]
        return FixedMap(family, (FixedLine(node, a1, b), FixedLine(node, a2, b)), 1, t, i)
    if family == "I5":
        A, (a1, a2), b1, b2, B = t[i], sorted(t[i + 1]), _one(t[i + 2]), _one(t[i + 3]), t[i + 4]
        node = pre + (A | {a1, a2}, B | {b1, b2}) + t[i + 5:]
        return FixedMap(family, (FixedLine(node, a1, b1), FixedLine(node, a2, b2)), 1, t, i)
    if family == "Ii":
        A, a, b1, B, b2, c, C = t[i], _one(t[i + 1]), _one(t[i + 2]), t[i + 3], _one(t[i + 4]), _one(t[i + 5]), t[i + 6]
        node = pre + (A | {a}, B | {b1, b2}, C | {c}) + t[i + 7:]
        return FixedMap(family, (FixedLine(node, a, b1), FixedLine(node, b2, c)), 1, t, i)
    if family == "Ii'":
        A, a, b, B, c, C = t[i], _one(t[i + 1]), _one(t[i + 2]), t[i + 3], _one(t[i + 4]), t[i + 5]
        node = pre + (A | {a}, B | {b}, C | {c}) + t[i + 6:]
        return FixedMap(family, (FixedLine(node, a, b), FixedLine(node, b, c)), 1, t, i)
    raise ValueError(f"unknown family {family}")


def family_names(shape: FlagShape, degree: Sequence[int]) -> list[str]:
    pat = classify_degree(shape, degree)
    if pat.kind == "zero":
        return ["flag"]
    return [name for name, _ in _family_profiles(shape, pat)]


def iter_fixed_maps(shape: FlagShape, degree: Sequence[int]) -> Iterator[FixedMap]:
    """Every fixed point of the moduli space, each exactly once, family by
    family in a fixed order."""
    pat = classify_degree(shape, degree)
    if pat.kind == "zero":
        raise ValueError("the zero degree has no stable maps; use the flag fixed points")
    for family, prof in _family_profiles(shape, pat):
        for t in enumerate_index_tuples(shape.k, prof):
            yield _build(family, t, pat)


def enumerate_fixed_maps(shape: FlagShape, degree: Sequence[int]) -> Iterator[tuple[FixedMap, WeightMultiset]]:
    """Every fixed point together with its deformation space."""
    for fm in iter_fixed_maps(shape, degree):
        yield fm, compute_def(fm)


# -- closed multiset formulas (oracle) -----------------------------------------


def _a(x):
    return Weight.alpha(x)


def _ms(*ws):
    return WeightMultiset(ws)


def _single(x):
    return frozenset((x,))


def fI4_smoothing(fm: FixedMap) -> Weight:
    """Node smoothing weight ``2 alpha_b - alpha_a1 - alpha_a2`` of an ``I4``
    map, missing from the usual closed formula for that family."""
    as_, b = fm.labels[fm.position + 1], _one(fm.labels[fm.position + 2])
    a1, a2 = sorted(as_)
    return 2 * _a(b) - _a(a1) - _a(a2)


def def_formula_oracle(fm: FixedMap, literal: bool = False) -> WeightMultiset:
    """Deformation space of ``fm`` written directly from the per-family
    closed formulas (block representations plus listed extra weights).

    The usual ``I4`` formula drops the node smoothing weight and is one
    dimension short; it is restored unless ``literal`` is set.
    """
    t, i = fm.labels, fm.position
    pre = t[:i]
    fam = fm.family
    if fam == "line":
        return block_rep(t)
    if fam == "A":
        pair, J = t[i + 1], t[i + 2]
        return block_rep(t) + block_rep((J, pair))
    if fam == "split":
        j = fm.position2
        A, a, b, B = t[i], _one(t[i + 1]), _one(t[i + 2]), t[i + 3]
        mid = t[i + 4:j + 2]
        C, c, d, D = t[j + 2], _one(t[j + 3]), _one(t[j + 4]), t[j + 5]
        post = t[j + 6:]
        base = block_rep(pre + (A, frozenset((a, b)), B) + mid + (C, frozenset((c, d)), D) + post)
        return base + _ms(_a(b) - _a(a), _a(d) - _a(c), _a(b) - _a(a) + _a(d) - _a(c))
    if fam == "I1":
        A, (a, b), B = t[i], sorted(t[i + 1]), t[i + 2]
        mid = (_a(a) + _a(b)) / 2
        extra = [mid - _a(nu) for nu in sorted(A)] + [_a(mu) - mid for mu in sorted(B)]
        return block_rep(t) + WeightMultiset(extra) + _ms(_a(b) - _a(a), _a(a) - _a(b))
    if fam == "I2":
        A, a, b, B = t[i], t[i + 1], t[i + 2], t[i + 3]
        (x,), (y,) = a, b
        return block_rep(t) + block_rep((A, a)) + block_rep((b, B)) + _ms(2 * _a(y) - 2 * _a(x))
    if fam == "I3":
        A, a, bs, B = t[i], t[i + 1], t[i + 2], t[i + 3]
        (x,) = a
        b1, b2 = sorted(bs)
        return block_rep(t) + block_rep((A, a)) + _ms(
            _a(b1) + _a(b2) - 2 * _a(x), _a(b2) - _a(b1), _a(b1) - _a(b2))
    if fam == "I4":
        A, as_, b, B = t[i], t[i + 1], t[i + 2], t[i + 3]
        a1, a2 = sorted(as_)
        out = block_rep(t) + _ms(_a(a1) - _a(a2), _a(a2) - _a(a1)) + block_rep((b, B))
        return out if literal else out + _ms(fI4_smoothing(fm))
    if fam == "I5":
        A, as_, b1s, b2s, B = t[i], t[i + 1], t[i + 2], t[i + 3], t[i + 4]
        a1, a2 = sorted(as_)
        b1, b2 = _one(b1s), _one(b2s)
        base = block_rep(pre + (A, as_, b1s | b2s, B) + t[i + 5:])
        return base + _ms(
            _a(a1) - _a(a2), _a(a2) - _a(a1), _a(b1) - _a(b2), _a(b2) - _a(b1),
            _a(b1) + _a(b2) - _a(a1) - _a(a2))
    if fam == "Ii":
        A, a, b1, B, b2, c, C = t[i:i + 7]
        (x,), (y1,), (y2,), (z,) = a, b1, b2, c
        return block_rep(t) + _ms(_a(y1) - _a(x) + _a(z) - _a(y2), _a(y2) - _a(y1))
    if fam == "Ii'":
        A, a, b, B, c, C = t[i:i + 6]
        (x,), (z,) = a, c
        return block_rep(pre + (A, a, B, b, c, C) + t[i + 6:]) + block_rep((b, B)) + _ms(_a(z) - _a(x))
    raise ValueError(f"unknown family {fam}")
