"""Exact scalars: polynomials in formal generators with rational coefficients.

Every value whose collisions matter (channel entries, alphabet points, linear
combinations of both) lives here. A generator is an opaque symbol standing in
for a real number with no rational relations to the others, so two values are
equal exactly when their canonical term lists coincide; zero-testing a
difference decides every collision question in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import NotRationalError, ParseError, ValidationError

# A monomial is (degree, pairs) with pairs sorted by generator id, e.g.
# (3, (("g1", 2), ("g2", 1))) for g1^2*g2. Storing the degree first makes
# plain tuple comparison a graded order, so term lists can be merged without
# key functions. The empty monomial is the constant 1.
Monomial = tuple

MONO_ONE: Monomial = (0, ())

_mono_cache: dict[Monomial, Monomial] = {MONO_ONE: MONO_ONE}


def _intern(mono: Monomial) -> Monomial:
    # shared monomial objects keep term tuples pointer-light and make the
    # `is` fast path in _merge hit almost always
    return _mono_cache.setdefault(mono, mono)


def mono_from_pairs(pairs) -> Monomial:
    """Build a canonical monomial from (generator, exponent) pairs."""
    merged: dict[str, int] = {}
    for gen, exp in pairs:
        if exp < 0:
            raise ValidationError(f"negative exponent {exp} for generator '{gen}'")
        if exp:
            merged[gen] = merged.get(gen, 0) + exp
    items = tuple(sorted(merged.items()))
    return _intern((sum(e for _, e in items), items))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if a is MONO_ONE:
        return b
    if b is MONO_ONE:
        return a
    merged = dict(a[1])
    for gen, exp in b[1]:
        merged[gen] = merged.get(gen, 0) + exp
    return _intern((a[0] + b[0], tuple(sorted(merged.items()))))


def mono_str(mono: Monomial) -> str:
    if mono is MONO_ONE or not mono[1]:
        return "1"
    return "*".join(g if e == 1 else f"{g}^{e}" for g, e in mono[1])


class ExactScalar:
    """Immutable canonical polynomial; hashable, so usable as a support point.

    Internally a flat tuple (m1, c1, m2, c2, ...) with monomials strictly
    increasing and coefficients nonzero ints or Fractions. Equality and
    hashing are plain tuple operations on that canonical form.
    """

    __slots__ = ("_flat", "_hash")

    def __init__(self, flat: tuple = ()):
        # trusts the caller; external construction goes through the factories
        self._flat = flat
        self._hash = None

    # -- factories ---------------------------------------------------------

    @staticmethod
    def from_terms(terms: Mapping[Monomial, Fraction | int]) -> "ExactScalar":
        flat = []
        for mono in sorted(terms):
            coeff = terms[mono]
            if not coeff:
                continue
            if isinstance(coeff, Fraction) and coeff.denominator == 1:
                coeff = coeff.numerator
            flat.append(_intern(mono))
            flat.append(coeff)
        return ExactScalar(tuple(flat))

    @staticmethod
    def rational(value: int | Fraction) -> "ExactScalar":
        if not value:
            return ZERO
        if isinstance(value, Fraction) and value.denominator == 1:
            value = value.numerator
        return ExactScalar((MONO_ONE, value))

    @staticmethod
    def generator(gen_id: str) -> "ExactScalar":
        if not _IDENT_RE.fullmatch(gen_id):
            raise ValidationError(f"invalid generator id '{gen_id}'")
        return ExactScalar((_intern((1, ((gen_id, 1),))), 1))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExactScalar):
            if isinstance(other, (int, Fraction)):
                other = ExactScalar.rational(other)
            else:
                return NotImplemented
        a, b = self._flat, other._flat
        if not a:
            return other
        if not b:
            return self
        out = []
        append = out.append
        i = j = 0
        la, lb = len(a), len(b)
        while i < la and j < lb:
            ma, mb = a[i], b[j]
            if ma is mb or ma == mb:
                c = a[i + 1] + b[j + 1]
                if c:
                    append(ma)
                    append(c)
                i += 2
                j += 2
            elif ma < mb:
                append(ma)
                append(a[i + 1])
                i += 2
            else:
                append(mb)
                append(b[j + 1])
                j += 2
        out.extend(a[i:])
        out.extend(b[j:])
        return ExactScalar(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        flat = self._flat
        return ExactScalar(tuple(x if i % 2 == 0 else -x for i, x in enumerate(flat)))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.rational(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            flat = self._flat
            return ExactScalar(
                tuple(x if i % 2 == 0 else _norm_coeff(other * x) for i, x in enumerate(flat))
            )
        if not isinstance(other, ExactScalar):
            return NotImplemented
        a, b = self._flat, other._flat
        if not a or not b:
            return ZERO
        acc: dict[Monomial, Fraction | int] = {}
        for i in range(0, len(a), 2):
            ma, ca = a[i], a[i + 1]
            for j in range(0, len(b), 2):
                m = mono_mul(ma, b[j])
                c = acc.get(m)
                acc[m] = ca * b[j + 1] if c is None else c + ca * b[j + 1]
        return ExactScalar.from_terms(acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValidationError(f"exponent must be a nonnegative integer, got {exponent!r}")
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._flat

    def __bool__(self) -> bool:
        return bool(self._flat)

    def is_rational(self) -> bool:
        flat = self._flat
        return not flat or (len(flat) == 2 and flat[0] is MONO_ONE)

    def as_fraction(self) -> Fraction:
        flat = self._flat
        if not flat:
            return Fraction(0)
        if len(flat) == 2 and flat[0] is MONO_ONE:
            return Fraction(flat[1])
        raise NotRationalError(f"'{self}' is symbolic, not a rational")

    def terms(self) -> Iterator[tuple[Monomial, Fraction | int]]:
        flat = self._flat
        for i in range(0, len(flat), 2):
            yield flat[i], flat[i + 1]

    def generators(self) -> frozenset:
        gens = set()
        for mono, _ in self.terms():
            gens.update(g for g, _ in mono[1])
        return frozenset(gens)

    def degree(self) -> int:
        flat = self._flat
        return max((flat[i][0] for i in range(0, len(flat), 2)), default=0)

    def eval_float(self, assignment: Mapping[str, float]) -> float:
        total = 0.0
        for mono, coeff in self.terms():
            term = float(coeff)
            for gen, exp in mono[1]:
                if gen not in assignment:
                    raise ValidationError(f"missing assignment for generator '{gen}'")
                term *= assignment[gen] ** exp
            total += term
        return total

    def sort_key(self) -> tuple:
        """Opaque deterministic total-order key (used for stable JSON output)."""
        return self._flat

    # -- equality / hashing / formatting -------------------------------------

    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self._flat == other._flat
        if isinstance(other, (int, Fraction)):
            return self._flat == ExactScalar.rational(other)._flat
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash(self._flat)
        return h

    def __str__(self) -> str:
        if not self._flat:
            return "0"
        parts = []
        for mono, coeff in self.terms():
            negative = coeff < 0
            mag = -coeff if negative else coeff
            if mono is MONO_ONE or not mono[1]:
                body = str(mag)
            elif mag == 1:
                body = mono_str(mono)
            else:
                body = f"{mag}*{mono_str(mono)}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"ExactScalar('{self}')"


def _norm_coeff(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


ZERO = ExactScalar()
ONE = ExactScalar((MONO_ONE, 1))
ExactScalar.ZERO = ZERO
ExactScalar.ONE = ONE


def as_scalar(value) -> ExactScalar:
    """Coerce an int, Fraction, text expression, or ExactScalar to ExactScalar."""
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactScalar.rational(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise ValidationError(f"cannot interpret {value!r} as an exact scalar")


# -- text syntax -------------------------------------------------------------
#
# rationals as "p/q" or "p", generators as bare identifiers, products with
# "*", powers with "^", sums with "+"/"-", e.g. "2*g1^2*g2 + 1/3".

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\s*/\s*\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^])|(?P<bad>\S))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            break
        if match.group("bad"):
            raise ParseError(
                f"unexpected character {match.group('bad')!r} at position {match.start('bad')} in {text!r}"
            )
        if match.group("number"):
            tokens.append(("num", match.group("number").replace(" ", "")))
        elif match.group("ident"):
            tokens.append(("ident", match.group("ident")))
        else:
            tokens.append(("op", match.group("op")))
        pos = match.end()
    if text[pos:].strip():
        raise ParseError(f"trailing junk {text[pos:]!r} in {text!r}")
    return tokens


def parse_scalar(text: str) -> ExactScalar:
    """Parse the scalar text syntax into a canonical ExactScalar.

    Decimal literals are rejected: exact inputs are written "p/q" or "p".
    Both ASCII "-" and the typographic minus sign are accepted.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a scalar string, got {type(text).__name__}")
    cleaned = text.replace("−", "-").replace("–", "-").strip()
    if "." in cleaned:
        raise ParseError(f"decimal literals are not exact; write a fraction p/q instead: {text!r}")
    if not cleaned:
        raise ParseError("empty scalar expression")
    tokens = _tokenize(cleaned)
    result = ZERO
    idx = 0
    while idx < len(tokens):
        sign = 1
        while idx < len(tokens) and tokens[idx][0] == "op" and tokens[idx][1] in "+-":
            if tokens[idx][1] == "-":
                sign = -sign
            idx += 1
        if idx >= len(tokens):
            raise ParseError(f"dangling sign in {text!r}")
        term, idx = _parse_term(tokens, idx, cleaned)
        result = result + (term * -1 if sign < 0 else term)
        if idx < len(tokens) and not (tokens[idx][0] == "op" and tokens[idx][1] in "+-"):
            raise ParseError(f"expected '+' or '-' before {tokens[idx][1]!r} in {text!r}")
    return result


def _parse_term(tokens, idx, text):
    factors = []
    expect_factor = True
    while idx < len(tokens):
        kind, value = tokens[idx]
        if expect_factor:
            if kind == "num":
                factors.append(ExactScalar.rational(_parse_rational(value)))
                idx += 1
            elif kind == "ident":
                base = ExactScalar.generator(value)
                idx += 1
                if idx < len(tokens) and tokens[idx] == ("op", "^"):
                    idx += 1
                    if idx >= len(tokens) or tokens[idx][0] != "num" or "/" in tokens[idx][1]:
                        raise ParseError(f"'^' must be followed by an integer exponent in {text!r}")
                    base = base ** int(tokens[idx][1])
                    idx += 1
                factors.append(base)
            else:
                raise ParseError(f"expected a number or generator near {value!r} in {text!r}")
            expect_factor = False
        else:
            if kind == "op" and value == "*":
                expect_factor = True
                idx += 1
            else:
                break
    if expect_factor or not factors:
        raise ParseError(f"dangling operator in {text!r}")
    product = factors[0]
    for factor in factors[1:]:
        product = product * factor
    return product, idx


def _parse_rational(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (signs allowed) into an exact Fraction."""
    cleaned = str(text).replace("−", "-").strip()
    match = re.fullmatch(r"(-?\d+)(?:\s*/\s*(-?\d+))?", cleaned)
    if match is None:
        raise ParseError(f"expected a rational 'p/q' or 'p', got {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)
