"""Channel matrices, monomial enumeration, alphabet construction, and the
finite independence checker.

A channel is a K x K matrix of exact scalars. "Generic" entries are fresh
generators (algebraically independent stand-ins), named h_<i>_<j> with
1-based indices. The alphabet construction and the certified bounds build on
monomials in the K(K-1) off-diagonal positions, substituting whatever each
position actually holds (a generator, a rational, or a polynomial).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .dist import DEFAULT_ATOM_BUDGET
from .errors import BudgetExceededError, ParseError, ValidationError
from .linalg import kernel_basis, primitive_integer_vector
from .scalar import ExactScalar, Monomial, MONO_ONE, as_scalar, mono_from_pairs, mono_str


def off_diagonal_name(i: int, j: int) -> str:
    """Generator id for the off-diagonal position (i, j), 1-based."""
    return f"h_{i}_{j}"


@dataclass(frozen=True)
class ChannelMatrix:
    K: int
    entries: tuple[tuple[ExactScalar, ...], ...]

    def __post_init__(self):
        if self.K < 2:
            raise ValidationError(f"need at least 2 users, got K={self.K}")
        if len(self.entries) != self.K or any(len(row) != self.K for row in self.entries):
            raise ValidationError(f"entries must form a {self.K}x{self.K} matrix")

    @staticmethod
    def generic(K: int) -> "ChannelMatrix":
        """Fully generic matrix: every entry its own fresh generator."""
        rows = tuple(
            tuple(ExactScalar.generator(off_diagonal_name(i, j)) for j in range(1, K + 1))
            for i in range(1, K + 1)
        )
        return ChannelMatrix(K, rows)

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "ChannelMatrix":
        K = len(rows)
        return ChannelMatrix(K, tuple(tuple(as_scalar(x) for x in row) for row in rows))

    def entry(self, i: int, j: int) -> ExactScalar:
        """0-based accessor."""
        return self.entries[i][j]

    def row(self, i: int) -> tuple[ExactScalar, ...]:
        return self.entries[i]


def channel_from_json(obj) -> ChannelMatrix:
    """Parse {"K": k, "entries": [[...], ...]}; the token "generic" in an
    entry position allocates the generator h_<i>_<j> for that position."""
    if not isinstance(obj, dict) or "K" not in obj or "entries" not in obj:
        raise ParseError('channel JSON must be {"K": k, "entries": [[...], ...]}')
    K = obj["K"]
    if not isinstance(K, int):
        raise ParseError(f'"K" must be an integer, got {K!r}')
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != K:
        raise ParseError(f'"entries" must be a list of {K} rows')
    rows = []
    for i, row in enumerate(entries, start=1):
        if not isinstance(row, list) or len(row) != K:
            raise ParseError(f"row {i} must have exactly {K} entries")
        parsed = []
        for j, cell in enumerate(row, start=1):
            if cell == "generic":
                parsed.append(ExactScalar.generator(off_diagonal_name(i, j)))
            else:
                parsed.append(as_scalar(cell))
        rows.append(tuple(parsed))
    return ChannelMatrix(K, tuple(rows))


def channel_to_json(H: ChannelMatrix) -> dict:
    return {"K": H.K, "entries": [[str(x) for x in row] for row in H.entries]}


def is_fully_connected(H: ChannelMatrix) -> bool:
    """True iff every entry is nonzero (exact test)."""
    return all(not x.is_zero() for row in H.entries for x in row)


# -- monomial basis -------------------------------------------------------------


def phi(K: int, d: int) -> int:
    """Number of monomials of degree at most d in the K(K-1) off-diagonal
    positions: C(K(K-1)+d, d)."""
    if K < 2:
        raise ValidationError(f"need K >= 2, got {K}")
    if d < 0:
        raise ValidationError(f"need d >= 0, got {d}")
    return math.comb(K * (K - 1) + d, d)


@dataclass(frozen=True)
class MonomialBasis:
    K: int
    d: int
    monomials: tuple[Monomial, ...]

    def __len__(self) -> int:
        return len(self.monomials)


def enumerate_monomials(K: int, d: int) -> MonomialBasis:
    """All monomials of degree <= d in the off-diagonal position generators,
    ordered by degree and then lexicographically; the constant comes first."""
    count = phi(K, d)  # validates K, d
    names = sorted(
        off_diagonal_name(i, j)
        for i in range(1, K + 1)
        for j in range(1, K + 1)
        if i != j
    )
    monos: list[Monomial] = [MONO_ONE]
    for degree in range(1, d + 1):
        for combo in combinations_with_replacement(names, degree):
            pairs = []
            for name in combo:
                if pairs and pairs[-1][0] == name:
                    pairs[-1] = (name, pairs[-1][1] + 1)
                else:
                    pairs.append((name, 1))
            monos.append(mono_from_pairs(pairs))
    assert len(monos) == count
    return MonomialBasis(K, d, tuple(monos))


def _position_of(name: str) -> tuple[int, int]:
    _, i, j = name.split("_")
    return int(i), int(j)


def evaluate_monomial(H: ChannelMatrix, mono: Monomial) -> ExactScalar:
    """Value of an off-diagonal monomial with H's entries substituted in."""
    value = ExactScalar.rational(1)
    for name, exp in mono[1]:
        i, j = _position_of(name)
        value = value * (H.entry(i - 1, j - 1) ** exp)
    return value


def basis_values(H: ChannelMatrix, basis: MonomialBasis) -> list[ExactScalar]:
    return [evaluate_monomial(H, m) for m in basis.monomials]


def build_wn(
    H: ChannelMatrix, d: int, N: int, budget: int = DEFAULT_ATOM_BUDGET
) -> list[ExactScalar]:
    """The alphabet {sum_j a_j f_j : a_j in {1..N}} over the degree-<=d basis.

    Returns all N^phi(K,d) combination values in a deterministic order. With
    generic entries these are pairwise distinct; with concrete entries the
    list may repeat values, and callers decide whether that is an error.
    """
    if N < 1:
        raise ValidationError(f"need N >= 1, got {N}")
    size = N ** phi(H.K, d)
    if size > budget:
        raise BudgetExceededError(
            f"alphabet would hold {size} values, over the budget of {budget}"
        )
    values = [ExactScalar.rational(0)]
    for f in basis_values(H, enumerate_monomials(H.K, d)):
        scaled = [f * a for a in range(1, N + 1)]
        values = [w + fa for w in values for fa in scaled]
    return values


# -- independence checker --------------------------------------------------------


@dataclass(frozen=True)
class WitnessTerm:
    family: str  # "monomial" or "diag-multiple"
    monomial: Monomial
    coefficient: int

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "monomial": mono_str(self.monomial),
            "coefficient": str(self.coefficient),
        }


@dataclass(frozen=True)
class Witness:
    user: int  # 1-based
    degree: int
    terms: tuple[WitnessTerm, ...]

    def to_json(self) -> dict:
        return {
            "user": self.user,
            "degree": self.degree,
            "combination": [t.to_json() for t in self.terms],
        }


@dataclass(frozen=True)
class ConditionStarReport:
    status: str  # "holds-up-to-bound" or "violated"
    d: int
    witness: Optional[Witness] = None

    def to_json(self) -> dict:
        out = {"status": self.status, "degree": self.d}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def check_condition_star(H: ChannelMatrix, d: int) -> ConditionStarReport:
    """Decide, degree by degree up to d, whether the checked families are
    linearly independent over the rationals.

    For each user i the family is {f : deg f <= d+1} together with
    {h_ii * f : deg f <= d}, both evaluated at H's entries. Their coefficient
    vectors over the concrete generator monomials are stacked columnwise and
    the exact kernel decides dependence with any rational coefficients, which
    is what integer combinations reduce to after clearing denominators. A
    nonzero kernel yields an integer witness tagged by family, so a report
    shows whether the plain monomials or the diagonal multiples collapsed.
    """
    if d < 0:
        raise ValidationError(f"need d >= 0, got {d}")
    base_hi = enumerate_monomials(H.K, d + 1)
    base_lo = enumerate_monomials(H.K, d)
    values_hi = basis_values(H, base_hi)
    for i in range(H.K):
        diag = H.entry(i, i)
        family: list[tuple[str, Monomial, ExactScalar]] = [
            ("monomial", m, v) for m, v in zip(base_hi.monomials, values_hi)
        ]
        family.extend(
            ("diag-multiple", m, diag * evaluate_monomial(H, m)) for m in base_lo.monomials
        )
        witness = _kernel_witness(family)
        if witness is not None:
            terms = tuple(
                WitnessTerm(tag, mono, coeff)
                for (tag, mono, _), coeff in zip(family, witness)
                if coeff
            )
            combo = ExactScalar.rational(0)
            for (_, _, value), coeff in zip(family, witness):
                if coeff:
                    combo = combo + value * coeff
            if not combo.is_zero():
                raise RuntimeError("kernel witness failed re-substitution; elimination bug")
            return ConditionStarReport(
                "violated", d, Witness(user=i + 1, degree=d, terms=terms)
            )
    return ConditionStarReport("holds-up-to-bound", d)


def _kernel_witness(family) -> Optional[list[int]]:
    """First primitive integer kernel vector of the stacked coefficient
    matrix, or None when the family is independent."""
    monomials: dict[Monomial, int] = {}
    for _, _, value in family:
        for mono, _ in value.terms():
            monomials.setdefault(mono, len(monomials))
    rows = [[Fraction(0)] * len(family) for _ in range(len(monomials))]
    for col, (_, _, value) in enumerate(family):
        for mono, coeff in value.terms():
            rows[monomials[mono]][col] = Fraction(coeff)
    if not rows:
        # every value is the zero scalar; any unit vector vanishes
        vec = [0] * len(family)
        vec[0] = 1
        return vec
    basis = kernel_basis(rows)
    if not basis:
        return None
    return primitive_integer_vector(basis[0])


def verify_witness(H: ChannelMatrix, witness: Witness) -> bool:
    """Re-substitute a witness combination and confirm it vanishes exactly."""
    diag = H.entry(witness.user - 1, witness.user - 1)
    combo = ExactScalar.rational(0)
    for term in witness.terms:
        value = evaluate_monomial(H, term.monomial)
        if term.family == "diag-multiple":
            value = diag * value
        combo = combo + value * term.coefficient
    return combo.is_zero()
