"""Exact scalar ring: arithmetic, canonical form, parsing, evaluation."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from icdof import ExactScalar, NotRationalError, ParseError, as_scalar, parse_rational, parse_scalar

G1 = ExactScalar.generator("g1")
G2 = ExactScalar.generator("g2")
G3 = ExactScalar.generator("g3")


def random_scalar(rng: random.Random, max_terms: int = 4, max_degree: int = 3) -> ExactScalar:
    gens = [G1, G2, G3]
    total = ExactScalar.rational(Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
    for _ in range(rng.randint(0, max_terms)):
        term = ExactScalar.rational(Fraction(rng.randint(-5, 5), rng.randint(1, 5)))
        for _ in range(rng.randint(0, max_degree)):
            term = term * rng.choice(gens)
        total = total + term
    return total


class TestArithmetic:
    def test_small_identities(self):
        assert (G1 + 1) * (G1 - 1) == G1 * G1 - 1
        assert (G1 + G2) ** 2 == G1**2 + 2 * G1 * G2 + G2**2
        assert G1 - G1 == ExactScalar.ZERO
        assert not (G1 - G1)
        assert G1 * 0 == ExactScalar.ZERO
        assert G1 * 1 == G1
        assert Fraction(1, 2) * G1 + Fraction(1, 2) * G1 == G1

    def test_pow(self):
        a = 2 * G1 + 1
        assert a**0 == ExactScalar.ONE
        assert a**1 == a
        assert a**3 == a * a * a
        with pytest.raises(Exception):
            a ** (-1)

    def test_ring_axioms_on_corpus(self, rng):
        for _ in range(150):
            a, b, c = (random_scalar(rng) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == ExactScalar.ZERO
            assert a * ExactScalar.ONE == a

    def test_hash_consistency(self, rng):
        for _ in range(100):
            a = random_scalar(rng)
            b = -(-a)
            assert a == b and hash(a) == hash(b)
        assert hash(ExactScalar.rational(3)) == hash(as_scalar(3))

    def test_rational_fast_paths_match_general_route(self, rng):
        for _ in range(100):
            a = random_scalar(rng)
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            assert a * q == a * ExactScalar.rational(q)
            assert a + q == a + ExactScalar.rational(q)


class TestQueries:
    def test_is_rational_and_as_fraction(self):
        assert ExactScalar.rational(Fraction(3, 4)).as_fraction() == Fraction(3, 4)
        assert as_scalar(7).is_rational()
        assert not G1.is_rational()
        with pytest.raises(NotRationalError):
            G1.as_fraction()

    def test_generators_and_degree(self):
        s = 2 * G1**2 * G2 + G3
        assert s.generators() == frozenset({"g1", "g2", "g3"})
        assert s.degree() == 3
        assert ExactScalar.rational(5).degree() == 0
        assert ExactScalar.rational(5).generators() == frozenset()

    def test_eval_float_is_a_homomorphism(self, rng):
        assignment = {"g1": 1.25, "g2": -0.75, "g3": 0.5}
        for _ in range(100):
            a, b = random_scalar(rng), random_scalar(rng)
            fa, fb = a.eval_float(assignment), b.eval_float(assignment)
            scale = max(1.0, abs(fa), abs(fb), abs(fa * fb))
            assert (a + b).eval_float(assignment) == pytest.approx(fa + fb, abs=1e-9 * scale)
            assert (a * b).eval_float(assignment) == pytest.approx(fa * fb, abs=1e-9 * scale)

    def test_eval_float_missing_generator(self):
        with pytest.raises(Exception, match="g2"):
            (G1 + G2).eval_float({"g1": 1.0})

    def test_sort_key_orders_by_degree(self):
        keys = [x.sort_key() for x in (as_scalar(2), G1, G1 * G2, G1**3)]
        assert keys == sorted(keys)


class TestParsing:
    def test_round_trip(self, rng):
        for _ in range(100):
            a = random_scalar(rng)
            assert parse_scalar(str(a)) == a

    def test_examples(self):
        assert parse_scalar("2*g1^2 - 1/3*g2 + 4") == 2 * G1**2 - Fraction(1, 3) * G2 + 4
        assert parse_scalar("-g1") == -G1
        assert parse_scalar("0") == ExactScalar.ZERO
        assert parse_scalar("g1*g2*g1") == G1**2 * G2
        assert parse_scalar("3/4") == ExactScalar.rational(Fraction(3, 4))

    def test_unicode_minus(self):
        assert parse_scalar("−g1 + 2") == -G1 + 2

    def test_decimals_rejected(self):
        with pytest.raises(ParseError, match="fraction"):
            parse_scalar("0.5*g1")

    @pytest.mark.parametrize("bad", ["", "g1 +", "g1 g2", "2**3", "(g1)", "1/0", "^2"])
    def test_malformed(self, bad):
        with pytest.raises(Exception):
            parse_scalar(bad)

    def test_parse_rational(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-2") == -2
        assert parse_rational("−1/3") == Fraction(-1, 3)
        with pytest.raises(ParseError):
            parse_rational("0.25")


class TestFormatting:
    def test_constant_leads_then_graded(self):
        s = 2 * G1**2 + Fraction(2, 3) * G2 + Fraction(13, 3)
        assert str(s) == "13/3 + 2/3*g2 + 2*g1^2"

    def test_negative_leading_term(self):
        assert str(-G1) == "-g1"
        assert str(1 - G1) == "1 - g1"

    def test_zero(self):
        assert str(ExactScalar.ZERO) == "0"
