"""Exact Laurent polynomials in one variable ``q`` and two variables ``(q, t)``.

Exponents of :class:`LaurentPoly` live in ``(1/L)Z`` for a positive integer
scale ``L``; the scale is kept minimal so that equal polynomials compare and
hash equal.  Coefficients are Python integers (unbounded).
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, NamedTuple

__all__ = [
    "LaurentPoly",
    "BiLaurentPoly",
    "CoeffStats",
    "coeff_stats",
    "to_vector",
    "from_vector",
    "exact_div",
    "Q",
    "ONE",
    "ZERO",
]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class LaurentPoly:
    """Laurent polynomial ``sum c_k q^(k/L)`` with integer coefficients.

    Parameters
    ----------
    terms : mapping
        Exponent numerator -> coefficient.  Zero coefficients are dropped.
    scale : int
        Exponent denominator ``L``.
    """

    __slots__ = ("scale", "terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, scale: int = 1):
        if scale <= 0:
            raise ValueError("scale must be positive")
        clean = {int(k): int(v) for k, v in (terms or {}).items() if v}
        g = scale
        for k in clean:
            g = gcd(g, k)
            if g == 1:
                break
        if g > 1:
            clean = {k // g: v for k, v in clean.items()}
            scale //= g
        if not clean:
            scale = 1
        self.scale = scale
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def monomial(cls, exponent=0, coeff: int = 1) -> "LaurentPoly":
        e = _as_fraction(exponent)
        return cls({e.numerator: coeff}, e.denominator)

    @classmethod
    def from_exponents(cls, items: Mapping) -> "LaurentPoly":
        """Build from a mapping with rational exponents ``{Fraction: coeff}``."""
        items = {_as_fraction(k): v for k, v in items.items() if v}
        if not items:
            return cls()
        L = 1
        for e in items:
            L = L * e.denominator // gcd(L, e.denominator)
        return cls({int(e * L): v for e, v in items.items()}, L)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        """Ascending coefficient list starting at integer exponent ``low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    # basic properties ---------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def exponents(self) -> list[Fraction]:
        return sorted(Fraction(k, self.scale) for k in self.terms)

    def items(self) -> list[tuple[Fraction, int]]:
        """Sorted ``(exponent, coefficient)`` pairs."""
        return [(Fraction(k, self.scale), self.terms[k]) for k in sorted(self.terms)]

    def coeff(self, exponent) -> int:
        e = _as_fraction(exponent) * self.scale
        if e.denominator != 1:
            return 0
        return self.terms.get(int(e), 0)

    @property
    def min_degree(self) -> Fraction:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return Fraction(min(self.terms), self.scale)

    @property
    def max_degree(self) -> Fraction:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return Fraction(max(self.terms), self.scale)

    def is_integral(self) -> bool:
        return self.scale == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficients(self) -> list[int]:
        """Dense ascending coefficients from min to max degree (step 1/L)."""
        if not self.terms:
            return []
        lo, hi = min(self.terms), max(self.terms)
        return [self.terms.get(k, 0) for k in range(lo, hi + 1)]

    # arithmetic ---------------------------------------------------------
    def _aligned(self, other: "LaurentPoly"):
        L = self.scale * other.scale // gcd(self.scale, other.scale)
        a, b = L // self.scale, L // other.scale
        return L, {k * a: v for k, v in self.terms.items()}, {k * b: v for k, v in other.terms.items()}

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly({0: x})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        L, s, o = self._aligned(other)
        for k, v in o.items():
            s[k] = s.get(k, 0) + v
        return LaurentPoly(s, L)

    __radd__ = __add__

    def __neg__(self):
        p = LaurentPoly.__new__(LaurentPoly)
        p.scale, p.terms, p._hash = self.scale, {k: -v for k, v in self.terms.items()}, None
        return p

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: v * other for k, v in self.terms.items()}, self.scale)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        L, s, o = self._aligned(other)
        out: dict[int, int] = {}
        for k1, v1 in s.items():
            for k2, v2 in o.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return LaurentPoly(out, L)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            (k, v), = self.terms.items()
            if v not in (1, -1):
                raise ValueError("negative powers only for unit monomials")
            return LaurentPoly({k * n: v ** (-n)}, self.scale)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return exact_div(self, other)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.scale == other.scale and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.scale, frozenset(self.terms.items())))
        return self._hash

    # transformations ----------------------------------------------------
    def substitute(self, exponent) -> "LaurentPoly":
        """Return ``p(q^e)`` for a nonzero rational ``e``."""
        e = _as_fraction(exponent)
        if e == 0:
            return LaurentPoly({0: sum(self.terms.values())})
        return LaurentPoly(
            {k * e.numerator: v for k, v in self.terms.items()}, self.scale * e.denominator
        )

    def mirror(self) -> "LaurentPoly":
        return self.substitute(-1)

    def shift(self, exponent) -> "LaurentPoly":
        """Multiply by ``q^exponent``."""
        return self * LaurentPoly.monomial(exponent)

    def strip_monomial(self) -> "LaurentPoly":
        """Divide by the lowest monomial so the constant term is nonzero."""
        if not self.terms:
            return self
        lo = min(self.terms)
        return LaurentPoly({k - lo: v for k, v in self.terms.items()}, self.scale)

    def evaluate(self, x):
        return sum(v * x ** (k / self.scale) for k, v in self.terms.items())

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {"L": self.scale, "terms": [[k, self.terms[k]] for k in sorted(self.terms)]}

    def to_text(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj) -> "LaurentPoly":
        return cls({int(k): int(v) for k, v in obj["terms"]}, int(obj["L"]))

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly":
        return cls.from_json(json.loads(text))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            if e == 0:
                body = str(abs(c))
            else:
                es = str(e) if e.denominator == 1 else f"({e})"
                mono = "q" if e == 1 else f"q^{es}"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
Q = LaurentPoly({1: 1})


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``p / d``; raises ``ArithmeticError`` if ``d`` does not divide ``p``."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return ZERO
    L = p.scale * d.scale // gcd(p.scale, d.scale)
    num = {k * (L // p.scale): v for k, v in p.terms.items()}
    den = {k * (L // d.scale): v for k, v in d.terms.items()}
    dlo, dhi = min(den), max(den)
    lead = den[dhi]
    rem = dict(num)
    quot: dict[int, int] = {}
    while rem:
        top = max(rem)
        if top - dhi < min(rem) - dlo:
            raise ArithmeticError("polynomial division is not exact")
        c, r = divmod(rem[top], lead)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        shift = top - dhi
        quot[shift] = c
        for k, v in den.items():
            kk = k + shift
            nv = rem.get(kk, 0) - c * v
            if nv:
                rem[kk] = nv
            else:
                rem.pop(kk, None)
    return LaurentPoly(quot, L)


class BiLaurentPoly:
    """Laurent polynomial in ``q`` and ``t`` with integer exponents."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms = {(int(a), int(b)): int(v) for (a, b), v in (terms or {}).items() if v}
        self._hash = None

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BiLaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiLaurentPoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return BiLaurentPoly({k: v * other for k, v in self.terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), v1 in self.terms.items():
            for (a2, b2), v2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + v1 * v2
        return BiLaurentPoly(out)

    def substitute(self, t: int | None = None, q_exponent=1):
        """Specialize ``t`` to an integer constant and/or map ``q -> q^e``.

        With ``t`` given the result is a :class:`LaurentPoly`; otherwise a
        :class:`BiLaurentPoly` with rescaled q-exponents (integer ``e`` only).
        """
        if t is None:
            e = int(q_exponent)
            return BiLaurentPoly({(a * e, b): v for (a, b), v in self.terms.items()})
        acc: dict[Fraction, int] = {}
        for (a, b), v in self.terms.items():
            e = Fraction(a) * _as_fraction(q_exponent)
            acc[e] = acc.get(e, 0) + v * Fraction(t) ** b
        if any(Fraction(c).denominator != 1 for c in acc.values()):
            raise ValueError("specialization produced non-integer coefficients")
        return LaurentPoly.from_exponents({e: int(c) for e, c in acc.items()})

    def items(self):
        return sorted(self.terms.items())

    def to_json(self) -> list:
        return [[a, b, v] for (a, b), v in sorted(self.terms.items())]

    def to_text(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj) -> "BiLaurentPoly":
        return cls({(int(a), int(b)): int(v) for a, b, v in obj})

    @classmethod
    def from_text(cls, text: str) -> "BiLaurentPoly":
        return cls.from_json(json.loads(text))

    def __repr__(self):
        return f"BiLaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), v in self.items():
            mono = "*".join(x for x in (f"q^{a}" if a else "", f"t^{b}" if b else "") if x)
            parts.append(f"{v}*{mono}" if mono else str(v))
        return " + ".join(parts)


class CoeffStats(NamedTuple):
    abs_sum: int
    max_abs: int
    span: int | None


def coeff_stats(p: LaurentPoly | BiLaurentPoly, want_span: bool = True) -> CoeffStats:
    """Sum of absolute coefficients, largest absolute coefficient and span.

    The span counts coefficient slots from the lowest to the highest degree
    inclusive, in steps of ``1/L``.  Two-variable input has no span; asking
    for it raises ``ValueError``.
    """
    coeffs = list(p.terms.values())
    abs_sum = sum(abs(c) for c in coeffs)
    max_abs = max((abs(c) for c in coeffs), default=0)
    if not want_span:
        return CoeffStats(abs_sum, max_abs, None)
    if isinstance(p, BiLaurentPoly):
        raise ValueError("span is undefined for two-variable polynomials")
    if p.is_zero():
        raise ValueError("span is undefined for the zero polynomial")
    span = max(p.terms) - min(p.terms) + 1
    return CoeffStats(abs_sum, max_abs, span)


def to_vector(p: LaurentPoly | BiLaurentPoly, d: int, d_t: int | None = None) -> list[int]:
    """Coefficient vector ``[a_-d, ..., a_d]`` (ascending exponents).

    Two-variable input is laid out as a matrix with rows indexed by the
    ``t``-exponent ``-d_t..d_t`` and columns by the ``q``-exponent, then
    flattened row-major.
    """
    if isinstance(p, BiLaurentPoly):
        d_t = d if d_t is None else d_t
        out = [0] * ((2 * d_t + 1) * (2 * d + 1))
        for (a, b), v in p.terms.items():
            if abs(a) > d or abs(b) > d_t:
                raise ValueError(f"term q^{a} t^{b} outside the half-width")
            out[(b + d_t) * (2 * d + 1) + (a + d)] = v
        return out
    if not p.is_integral():
        raise ValueError("vector encoding needs integer exponents")
    out = [0] * (2 * d + 1)
    for k, v in p.terms.items():
        if abs(k) > d:
            raise ValueError(f"term q^{k} outside the half-width {d}")
        out[k + d] = v
    return out


def from_vector(vec: Iterable[int]) -> LaurentPoly:
    vec = list(vec)
    d = (len(vec) - 1) // 2
    return LaurentPoly.from_coeffs(vec, -d)
