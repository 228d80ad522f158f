"""Sparse exact polynomials in one or two variables.

Terms live in dicts mapping exponent vectors to nonzero Python ints, so
coefficients never overflow and Laurent exponents (negative powers) are
allowed.  Evaluation is exact over the rationals.

The canonical text form is pinned: bivariate terms are sorted by total degree
descending then by the u-exponent descending, univariate terms by exponent
descending; a coefficient of 1 is suppressed except on the constant term;
ASCII only, e.g. ``u^2 + u*v + 4*u + v + 3`` or ``v^-1 + 2``.  Printing and
parsing round-trip.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Scalar = Union[int, Fraction]

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\^-?\d+|[*+-])")


def _pow(base: Scalar, exp: int) -> Scalar:
    if exp >= 0:
        return base ** exp
    if base == 0:
        raise ZeroDivisionError("zero raised to a negative power")
    return Fraction(1, 1) / (Fraction(base) ** (-exp))


def _normalize(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"bad character at offset {pos}: {text[pos]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def _parse_terms(text: str, variables: Tuple[str, ...]) -> Dict[Tuple[int, ...], int]:
    """Shared parser: returns exponent-vector -> coefficient."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    terms: Dict[Tuple[int, ...], int] = {}
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -1
            i += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' near token {tokens[i]!r}")
        first = False
        coeff = None
        expo = [0] * len(variables)
        expect_factor = True
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-" and not expect_factor:
                break
            if tok == "*":
                if expect_factor:
                    raise ValueError("misplaced '*'")
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise ValueError(f"missing operator before {tok!r}")
            if tok.isdigit():
                coeff = (1 if coeff is None else coeff) * int(tok)
                i += 1
            elif tok in variables:
                e = 1
                if i + 1 < len(tokens) and tokens[i + 1].startswith("^"):
                    e = int(tokens[i + 1][1:])
                    i += 1
                expo[variables.index(tok)] += e
                i += 1
            else:
                raise ValueError(f"unexpected token {tok!r}")
            expect_factor = False
        if expect_factor:
            raise ValueError("dangling operator at end of term")
        c = sign * (1 if coeff is None else coeff)
        key = tuple(expo)
        terms[key] = terms.get(key, 0) + c
    return {k: v for k, v in terms.items() if v != 0}


def _format_terms(
    items: Iterable[Tuple[Tuple[int, ...], int]], variables: Tuple[str, ...]
) -> str:
    parts = []
    for expo, coeff in items:
        factors = []
        mag = abs(coeff)
        if mag != 1 or all(e == 0 for e in expo):
            factors.append(str(mag))
        for var, e in zip(variables, expo):
            if e == 1:
                factors.append(var)
            elif e != 0:
                factors.append(f"{var}^{e}")
        body = "*".join(factors)
        parts.append(("-" if coeff < 0 else "+", body))
    if not parts:
        return "0"
    sign0, body0 = parts[0]
    out = ("-" if sign0 == "-" else "") + body0
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class BiPoly:
    """Bivariate polynomial in u and v with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Tuple[int, int], int] | None = None):
        self.terms: Dict[Tuple[int, int], int] = {
            k: v for k, v in (terms or {}).items() if v != 0
        }

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, coeff: int, eu: int, ev: int) -> "BiPoly":
        return cls({(eu, ev): coeff})

    @classmethod
    def parse(cls, text: str) -> "BiPoly":
        return cls(_parse_terms(text, ("u", "v")))

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: Dict[Tuple[int, int], int] = {}
        for (a, b), c in self.terms.items():
            for (d, e), f in other.terms.items():
                k = (a + d, b + e)
                out[k] = out.get(k, 0) + c * f
        return BiPoly(out)

    def scalar_multiply(self, c: int) -> "BiPoly":
        return BiPoly({k: c * v for k, v in self.terms.items()})

    def __pow__(self, e: int) -> "BiPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        for _ in range(e):
            result = result * self
        return result

    def evaluate(self, u: Scalar, v: Scalar) -> Scalar:
        total: Scalar = Fraction(0)
        for (eu, ev), c in self.terms.items():
            total += c * Fraction(_pow(u, eu)) * Fraction(_pow(v, ev))
        return _normalize(total)

    def substitute_v(self, value: int) -> "UniPoly":
        """Plug a constant into v, leaving a polynomial in u."""
        out: Dict[int, int] = {}
        for (eu, ev), c in self.terms.items():
            if ev < 0:
                raise ValueError("negative v-exponent in substitution")
            t = c * value ** ev
            out[eu] = out.get(eu, 0) + t
        return UniPoly(out)

    def substitute(self, u_image: "UniPoly", v_image: "UniPoly") -> "UniPoly":
        """Raw substitution of univariate images for u and v."""
        total = UniPoly.zero()
        for (eu, ev), c in self.terms.items():
            if eu < 0 or ev < 0:
                raise ValueError("negative exponent in substitution")
            total = total + (u_image ** eu) * (v_image ** ev) * UniPoly.const(c)
        return total

    def hyperbola_section(self) -> "UniPoly":
        """The Laurent polynomial obtained by setting u = v^-1."""
        out: Dict[int, int] = {}
        for (eu, ev), c in self.terms.items():
            k = ev - eu
            out[k] = out.get(k, 0) + c
        return UniPoly(out)

    def swap_variables(self) -> "BiPoly":
        return BiPoly({(ev, eu): c for (eu, ev), c in self.terms.items()})

    def coefficient(self, eu: int, ev: int) -> int:
        return self.terms.get((eu, ev), 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get((0, 0), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])
        )

    def __str__(self) -> str:
        return _format_terms(self.sorted_terms(), ("u", "v"))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"BiPoly.parse({str(self)!r})"


class UniPoly:
    """Univariate Laurent polynomial with integer coefficients.

    The variable is anonymous; pick its display name at print time.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms: Dict[int, int] = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def const(cls, c: int) -> "UniPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, coeff: int, e: int) -> "UniPoly":
        return cls({e: coeff})

    @classmethod
    def variable(cls) -> "UniPoly":
        return cls({1: 1})

    @classmethod
    def parse(cls, text: str, var: str = "x") -> "UniPoly":
        raw = _parse_terms(text, (var,))
        return cls({k[0]: v for k, v in raw.items()})

    def __add__(self, other: "UniPoly") -> "UniPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return UniPoly(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly({k: -v for k, v in self.terms.items()})

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        out: Dict[int, int] = {}
        for a, c in self.terms.items():
            for b, f in other.terms.items():
                out[a + b] = out.get(a + b, 0) + c * f
        return UniPoly(out)

    def scalar_multiply(self, c: int) -> "UniPoly":
        return UniPoly({k: c * v for k, v in self.terms.items()})

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.const(1)
        for _ in range(e):
            result = result * self
        return result

    def evaluate(self, x: Scalar) -> Scalar:
        total: Scalar = Fraction(0)
        for e, c in self.terms.items():
            total += c * Fraction(_pow(x, e))
        return _normalize(total)

    def flip_variable(self) -> "UniPoly":
        """Substitute -x for x."""
        return UniPoly({e: c if e % 2 == 0 else -c for e, c in self.terms.items()})

    def shift_exponents(self, d: int) -> "UniPoly":
        return UniPoly({e + d: c for e, c in self.terms.items()})

    def coefficient(self, e: int) -> int:
        return self.terms.get(e, 0)

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return max(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: -kv[0])

    def to_string(self, var: str = "x") -> str:
        return _format_terms(
            (((e,), c) for e, c in self.sorted_terms()), (var,)
        )

    def __str__(self) -> str:
        return self.to_string()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UniPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"UniPoly.parse({str(self)!r})"
