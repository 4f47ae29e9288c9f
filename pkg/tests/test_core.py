"""Core types: symbols, exact exponents, series validation, tail bounds."""

import math
import random
from fractions import Fraction

import pytest

from bohreq import scenarios
from bohreq.core import (
    UNIT_SYMBOL,
    ExponentVector,
    SeriesSpec,
    SymbolTable,
    TailMajorant,
    numeric_value,
    spec_tail_bound,
    tail_bound,
    validate_series,
)
from bohreq.errors import (
    DuplicateExponent,
    NonIncreasingExponents,
    NonpositiveSigma,
    UnknownSymbol,
)

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)


def table_23() -> SymbolTable:
    return SymbolTable([("L2", LOG2), ("L3", LOG3)])


class TestSymbolTable:
    def test_duplicate_name_rejected(self):
        with pytest.raises(ValueError):
            SymbolTable([("A", 1.5), ("A", 2.5)])

    def test_zero_value_rejected(self):
        with pytest.raises(ValueError):
            SymbolTable([("A", 0.0)])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            SymbolTable([("A", float("inf"))])

    def test_unit_symbol_pinned_to_one(self):
        with pytest.raises(ValueError):
            SymbolTable([(UNIT_SYMBOL, 2.0)])
        assert SymbolTable([(UNIT_SYMBOL, 1.0)]).value(UNIT_SYMBOL) == 1.0


class TestExponentVector:
    def test_zero_coordinates_dropped(self):
        assert ExponentVector({"L2": 0, "L3": 1}) == ExponentVector({"L3": 1})

    def test_exact_equality_is_coordinate_equality(self):
        assert ExponentVector({"L2": Fraction(2, 4)}) == ExponentVector({"L2": "1/2"})
        assert ExponentVector({"L2": 1}) != ExponentVector({"L3": 1})

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            ExponentVector({"L2": 0.5})

    def test_arithmetic(self):
        a = ExponentVector({"L2": 1, "L3": "1/2"})
        b = ExponentVector({"L3": "1/2"})
        assert a - b == ExponentVector({"L2": 1})
        assert b.scale(2) == ExponentVector({"L3": 1})
        assert (a - a).is_zero()


class TestNumericValue:
    def test_empty_combination(self):
        assert numeric_value(ExponentVector(), table_23()) == 0.0

    def test_single_symbol(self):
        assert numeric_value(ExponentVector({"L2": 1}), table_23()) == LOG2

    def test_rational_multiple_of_unit(self):
        # long-division oracle: plain float division is the correctly rounded
        # quotient, which the exact-rational path must match bit for bit
        syms = SymbolTable([(UNIT_SYMBOL, 1.0)])
        value = numeric_value(ExponentVector({UNIT_SYMBOL: "19/6"}), syms)
        assert value == 19.0 / 6.0
        assert value == 3.1666666666666665

    def test_unknown_symbol(self):
        with pytest.raises(UnknownSymbol):
            numeric_value(ExponentVector({"L5": 1}), table_23())

    def test_rational_linearity(self):
        rng = random.Random(1009)
        syms = SymbolTable([("A", 0.7314), ("B", -1.25), ("C", 3.0001)])
        for _ in range(300):
            def rand_vec():
                return ExponentVector(
                    {
                        name: Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                        for name in syms.names
                        if rng.random() < 0.8
                    }
                )

            e1, e2 = rand_vec(), rand_vec()
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
            lhs = numeric_value(e1.scale(q) + e2, syms)
            rhs = float(q) * numeric_value(e1, syms) + numeric_value(e2, syms)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


class TestRationalRoundTrip:
    def test_add_subtract_is_identity(self):
        rng = random.Random(7)
        for _ in range(1000):
            a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
            c = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
            assert (a + c) - c == a
            assert a.denominator > 0


class TestValidateSeries:
    def test_increasing_ok(self):
        spec = SeriesSpec(
            table_23(), [(ExponentVector({"L2": 1}), 1.0), (ExponentVector({"L3": 1}), 1.0)]
        )
        assert validate_series(spec) is spec

    def test_non_increasing_flagged_at_second_term(self):
        spec = SeriesSpec(
            table_23(), [(ExponentVector({"L3": 1}), 1.0), (ExponentVector({"L2": 1}), 1.0)]
        )
        with pytest.raises(NonIncreasingExponents) as err:
            validate_series(spec)
        assert err.value.index == 2

    def test_duplicate_exponent(self):
        spec = SeriesSpec(
            table_23(), [(ExponentVector({"L2": 1}), 1.0), (ExponentVector({"L2": 1}), 2.0)]
        )
        with pytest.raises(DuplicateExponent):
            validate_series(spec)


class TestTailBound:
    def test_bohr_tail_at_sigma_two(self):
        # frozen from the closed form exp(-99/7) / (1 - exp(-10/3)), checked
        # against a 40-digit evaluation: 7.4750018627054501e-07
        spec = scenarios.bohr_example(3)
        bound = spec_tail_bound(spec, 2.0)
        assert bound == pytest.approx(7.4750018627054501e-07, rel=1e-12)

    def test_bound_dominates_true_tail_terms(self):
        # oracle: direct summation of the true omitted terms n = 4..50
        spec = scenarios.bohr_example(3)
        for sigma in (1.0, 2.0, 5.0):
            true_tail = math.fsum(
                math.exp(-float(scenarios.bohr_exponent(n)) * sigma) for n in range(4, 51)
            )
            assert true_tail <= spec_tail_bound(spec, sigma)

    def test_zero_coeff_bound(self):
        tail = TailMajorant(ExponentVector({"L2": 1}), 0.0, 1.0)
        assert tail_bound(tail, table_23(), 2.0) == 0.0

    def test_monotone_vanishing(self):
        spec = scenarios.bohr_example(3)
        values = [spec_tail_bound(spec, s) for s in (1.0, 2.0, 4.0, 8.0, 16.0)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 1e-40

    def test_nonpositive_sigma_rejected(self):
        spec = scenarios.bohr_example(2)
        with pytest.raises(NonpositiveSigma):
            spec_tail_bound(spec, 0.0)

    def test_exact_series_has_zero_tail(self):
        spec = SeriesSpec(table_23(), [(ExponentVector({"L2": 1}), 1.0)])
        assert spec_tail_bound(spec, 1.0) == 0.0


class TestSeriesSpec:
    def test_take_terms_drops_stale_tail(self):
        spec = scenarios.bohr_example(5)
        head = spec.take_terms(3)
        assert len(head.terms) == 3
        assert head.tail is None
        assert spec.take_terms(5).tail is spec.tail

    def test_with_coeffs_requires_matching_length(self):
        spec = scenarios.bohr_example(3)
        with pytest.raises(ValueError):
            spec.with_coeffs([1.0])
