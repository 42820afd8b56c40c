"""Exact integer polynomials in one variable and the q-combinatorics kernel.

Everything here works in the variable ``t`` (``t = q**2`` in the geometric
application), with plain Python integers as coefficients, so results are
exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial division leaves a nonzero remainder."""

    def __init__(self, numerator, denominator, quotient, remainder):
        self.numerator = numerator
        self.denominator = denominator
        self.quotient = quotient
        self.remainder = remainder
        super().__init__(
            f"inexact division: ({numerator}) / ({denominator}) leaves remainder {remainder}"
        )


class IntPolynomial:
    """Dense polynomial in ``t`` with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``.  Instances are immutable and
    hashable; the highest stored coefficient is never zero (the zero
    polynomial stores an empty tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "IntPolynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        return cls([0] * exponent + [coefficient])

    @classmethod
    def from_exponents(cls, exponents: Mapping[int, int] | Iterable[int]) -> "IntPolynomial":
        """Build from ``{exponent: coefficient}`` or from a stream of exponents
        (each occurrence counting once)."""
        if isinstance(exponents, Mapping):
            items = exponents.items()
        else:
            counts: dict[int, int] = {}
            for e in exponents:
                counts[e] = counts.get(e, 0) + 1
            items = counts.items()
        top = max((e for e, c in items if c), default=-1)
        cs = [0] * (top + 1)
        for e, c in items:
            if e < 0:
                raise ValueError("negative exponent")
            if c:
                cs[e] += c
        return cls(cs)

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, exponent: int) -> int:
        if 0 <= exponent < len(self.coeffs):
            return self.coeffs[exponent]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def items(self):
        """``(exponent, coefficient)`` pairs with nonzero coefficient."""
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> "IntPolynomial":
        """Multiply by ``t**n``."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * n + list(self.coeffs))

    def divmod(self, den: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Euclidean division over the integers.

        Requires the leading coefficient of ``den`` to divide every leading
        term met along the way; otherwise the remainder keeps the offending
        term and the quotient stops early.
        """
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dc = den.coeffs
        dd = len(dc) - 1
        lead = dc[-1]
        q = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f, r = divmod(c, lead)
            if r:
                break
            q[i - dd] = f
            for j, d in enumerate(dc):
                rem[i - dd + j] -= f * d
        return IntPolynomial(q), IntPolynomial(rem)

    # -- presentation ----------------------------------------------------------

    def to_string(self, var: str = "t", scale: int = 1, latex: bool = False) -> str:
        """Render lowest degree first; ``scale`` multiplies every exponent
        (``scale=2`` rewrites a polynomial in ``t`` as one in ``q``)."""
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            e *= scale
            if e == 0:
                mono = str(abs(c))
            else:
                if latex:
                    power = var if e == 1 else f"{var}^{{{e}}}"
                else:
                    power = var if e == 1 else f"{var}^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"


ZERO = IntPolynomial()
ONE = IntPolynomial([1])
T = IntPolynomial([0, 1])


def exact_divide(num: IntPolynomial, den: IntPolynomial) -> IntPolynomial:
    """Quotient of ``num / den``; raises :class:`InexactDivisionError` carrying
    the remainder if ``den`` does not divide ``num``."""
    q, r = num.divmod(den)
    if r:
        raise InexactDivisionError(num, den, q, r)
    return q


def reverse(p: IntPolynomial) -> IntPolynomial:
    """``t**deg(p) * p(1/t)``."""
    return IntPolynomial(reversed(p.coeffs))


def eval_at_one(p: IntPolynomial) -> int:
    return sum(p.coeffs)


def is_palindromic(p: IntPolynomial) -> bool:
    return p == reverse(p)


# -- q-analogs ---------------------------------------------------------------


def q_number(n: int) -> IntPolynomial:
    """``[n] = 1 + t + ... + t**(n-1)``."""
    if n <= 0:
        raise ValueError(f"q_number needs n >= 1, got {n}")
    return IntPolynomial([1] * n)


def q_factorial(n: int) -> IntPolynomial:
    if n < 0:
        raise ValueError(f"q_factorial needs n >= 0, got {n}")
    out = ONE
    for m in range(2, n + 1):
        out = out * q_number(m)
    return out


@lru_cache(maxsize=None)
def _q_binomial(n: int, j: int) -> IntPolynomial:
    if j == 0 or j == n:
        return ONE
    # binom(n, j) = binom(n-1, j-1) + t^j binom(n-1, j)
    return _q_binomial(n - 1, j - 1) + _q_binomial(n - 1, j).shift(j)


def q_binomial(n: int, j: int) -> IntPolynomial:
    """Gaussian binomial coefficient via the Pascal recurrence (memoized)."""
    if n < 0 or j < 0 or j > n:
        raise ValueError(f"q_binomial needs 0 <= j <= n, got n={n}, j={j}")
    return _q_binomial(n, j)


def q_multinomial(k: int, parts: Sequence[int]) -> IntPolynomial:
    """Product of q-binomials ``binom(k - r1 - ... - r_{i-1}, r_i)``."""
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {list(parts)}")
    if sum(parts) != k:
        raise ValueError(f"parts {list(parts)} do not sum to {k}")
    out, rest = ONE, k
    for p in parts:
        out = out * q_binomial(rest, p)
        rest -= p
    return out


def omega(subset: Iterable[int]) -> int:
    """Sum of the elements of a subset."""
    return sum(subset)


def q_binomial_by_subsets(n: int, j: int) -> IntPolynomial:
    """Brute-force oracle: sum of ``t**(omega(S) - j(j+1)/2)`` over
    ``j``-subsets of ``{1..n}``."""
    shift = j * (j + 1) // 2
    return IntPolynomial.from_exponents(
        omega(s) - shift for s in combinations(range(1, n + 1), j)
    )


# -- identity suite ------------------------------------------------------------


def _binom0(n: int, j: int) -> IntPolynomial:
    if n < 0 or j < 0 or j > n:
        return ZERO
    return _q_binomial(n, j)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    checked: int
    counterexample: dict | None = None


def _symmetry(n_max):
    for n in range(n_max + 1):
        for j in range(n + 1):
            yield {"n": n, "k": j}, _binom0(n, j), _binom0(n, n - j)


def _pascal_1(n_max):
    for n in range(1, n_max + 1):
        for j in range(n + 1):
            yield (
                {"n": n, "k": j},
                _binom0(n, j),
                _binom0(n - 1, j) + _binom0(n - 1, j - 1).shift(n - j),
            )


def _pascal_2(n_max):
    for n in range(1, n_max + 1):
        for j in range(n + 1):
            yield (
                {"n": n, "k": j},
                _binom0(n, j),
                _binom0(n - 1, j).shift(j) + _binom0(n - 1, j - 1),
            )


def _hockey_stick(n_max):
    # top index d + a + 1 <= n_max
    for d in range(n_max):
        for a in range(n_max - d):
            lhs = sum((_binom0(d + j, j).shift(j) for j in range(a + 1)), ZERO)
            yield {"d": d, "a": a}, lhs, _binom0(d + a + 1, a)


def _identity_1(n_max):
    # top index i' + j' + u + 1 <= n_max
    for ip in range(n_max):
        for jp in range(n_max - ip):
            for u in range(n_max - ip - jp):
                lhs = sum(
                    (
                        (_binom0(i + ip, i) * _binom0(u - i + jp, u - i)).shift(i * (jp + 1))
                        for i in range(u + 1)
                    ),
                    ZERO,
                )
                yield {"i'": ip, "j'": jp, "u": u}, lhs, _binom0(ip + jp + u + 1, u)


def _identity_2(n_max):
    # top index i' + j' + u + 2 <= n_max
    for ip in range(n_max - 1):
        for jp in range(n_max - 1 - ip):
            for u in range(n_max - 1 - ip - jp):
                lhs = sum(
                    (
                        (_binom0(i + ip, i) * _binom0(u - i + jp, u - i)).shift(i * (jp + 2))
                        for i in range(u + 1)
                    ),
                    ZERO,
                )
                rhs = _binom0(ip + jp + u + 2, u) - _binom0(ip + jp + u + 1, u - 1).shift(jp + 1)
                yield {"i'": ip, "j'": jp, "u": u}, lhs, rhs


def _subset_oracle(n_max):
    for n in range(n_max + 1):
        for j in range(n + 1):
            yield {"n": n, "k": j}, q_binomial(n, j), q_binomial_by_subsets(n, j)


IDENTITIES = {
    "symmetry": _symmetry,
    "pascal_1": _pascal_1,
    "pascal_2": _pascal_2,
    "hockey_stick": _hockey_stick,
    "identity_I": _identity_1,
    "identity_II": _identity_2,
}


def _run(name, cases) -> IdentityResult:
    checked = 0
    for params, lhs, rhs in cases:
        checked += 1
        if lhs != rhs:
            return IdentityResult(
                name, False, checked,
                {"params": params, "lhs": str(lhs), "rhs": str(rhs)},
            )
    return IdentityResult(name, True, checked)


def verify_identity_suite(n_max: int) -> list[IdentityResult]:
    """Check the q-binomial identities for every parameter choice whose
    largest binomial top index is at most ``n_max``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    return [_run(name, gen(n_max)) for name, gen in IDENTITIES.items()]


def verify_subset_oracle(n_max: int) -> IdentityResult:
    """Compare :func:`q_binomial` with the subset-sum description."""
    return _run("subset_oracle", _subset_oracle(n_max))
