import random
from fractions import Fraction as F

import pytest
from support import conic_has_primitive_zero

from hermcycles import (
    FactorizationLimitError,
    INFINITY,
    PreconditionError,
    UnsupportedPrimeError,
    factorize,
    hilbert_symbol,
    is_square_unit,
    parse_rational,
    format_rational,
    smallest_nonresidue,
    splitting_type,
    unit_part,
    val_p,
)
from hermcycles.errors import InvalidFieldError, SchemaError


def test_val_examples():
    assert val_p(F(9, 2), 3) == 2
    assert val_p(0, 5) == INFINITY
    assert val_p(F(2, 3), 3) == -1


def test_val_is_valuation():
    rng = random.Random(1)
    for _ in range(1000):
        p = rng.choice([3, 5, 7])
        x = F(rng.randint(-40, 40), rng.randint(1, 40))
        y = F(rng.randint(-40, 40), rng.randint(1, 40))
        if x == 0 or y == 0:
            continue
        assert val_p(x * y, p) == val_p(x, p) + val_p(y, p)
        vx, vy = val_p(x, p), val_p(y, p)
        if x + y != 0:
            vsum = val_p(x + y, p)
            assert vsum >= min(vx, vy)
            if vx != vy:
                assert vsum == min(vx, vy)


def test_unit_part():
    assert unit_part(F(9, 2), 3) == F(1, 2)
    assert unit_part(F(2, 3), 3) == 2
    with pytest.raises(PreconditionError):
        unit_part(0, 3)


def test_is_square_unit_examples():
    assert is_square_unit(1, 3)
    assert not is_square_unit(2, 3)
    assert is_square_unit(F(4, 25), 3)
    with pytest.raises(PreconditionError):
        is_square_unit(3, 3)
    with pytest.raises(PreconditionError):
        is_square_unit(F(1, 5), 5)
    with pytest.raises(UnsupportedPrimeError):
        is_square_unit(3, 2)


def test_smallest_nonresidue():
    assert smallest_nonresidue(3) == 2
    assert smallest_nonresidue(5) == 2
    assert smallest_nonresidue(7) == 3
    assert smallest_nonresidue(11) == 2


def test_hilbert_trivial_first_argument_one():
    for delta in (-3, -7, -11, 5, 2):
        for p in (2, 3, 5, 7, "real"):
            assert hilbert_symbol(1, delta, p) == 1


def test_hilbert_derived_examples():
    # frozen from the conic search oracle
    assert conic_has_primitive_zero(-1, -3, 3) is False
    assert hilbert_symbol(-1, -3, 3) == -1
    assert conic_has_primitive_zero(2, 7, 7) is True
    assert hilbert_symbol(2, 7, 7) == 1


def test_hilbert_real_place():
    assert hilbert_symbol(-1, -1, "real") == -1
    assert hilbert_symbol(-1, 2, "real") == 1
    assert hilbert_symbol(3, 5, "real") == 1


def test_hilbert_errors():
    with pytest.raises(PreconditionError):
        hilbert_symbol(0, 3, 5)
    with pytest.raises(PreconditionError):
        hilbert_symbol(3, 0, 5)
    with pytest.raises(PreconditionError):
        hilbert_symbol(1, 1, 6)


def test_hilbert_symmetry_and_bimultiplicativity():
    rng = random.Random(2)
    places = [2, 3, 5, 7, "real"]
    for _ in range(200):
        a = F(rng.choice([n for n in range(-12, 13) if n]), rng.randint(1, 9))
        b = F(rng.choice([n for n in range(-12, 13) if n]), rng.randint(1, 9))
        c = F(rng.choice([n for n in range(-12, 13) if n]), rng.randint(1, 9))
        v = rng.choice(places)
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        assert hilbert_symbol(a * c, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v)


def test_hilbert_product_formula():
    rng = random.Random(3)
    for _ in range(100):
        a = rng.choice([n for n in range(-50, 51) if n])
        b = rng.choice([n for n in range(-50, 51) if n])
        product = hilbert_symbol(a, b, "real")
        for p in factorize(2 * a * b):
            product *= hilbert_symbol(a, b, p)
        assert product == 1


def test_hilbert_agrees_with_conic_oracle():
    for p in (3, 5, 7):
        values = [1, -1, 2, -2, p, -p, 2 * p, -2 * p]
        for a in values:
            for b in values:
                expected = 1 if conic_has_primitive_zero(a, b, p) else -1
                assert hilbert_symbol(a, b, p) == expected, (a, b, p)


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(-7) == {7: 1}
    assert factorize(1) == {}
    # leftover cofactor certified prime by trial division bound
    assert factorize(1009 * 8, bound=100) == {2: 3, 1009: 1}
    with pytest.raises(FactorizationLimitError):
        factorize(1009 * 1013, bound=100)
    with pytest.raises(PreconditionError):
        factorize(0)


def test_factorize_refuses_huge_remainder():
    with pytest.raises(FactorizationLimitError):
        factorize(2**89 - 1, bound=10**4)  # prime, but beyond certification


def test_splitting_examples():
    assert splitting_type(-3, 3) == "ramified"
    assert splitting_type(-3, 2) == "inert"
    assert splitting_type(-3, 7) == "split"
    # direct checks behind the derived examples
    assert pow(2, (7 - 1) // 2, 7) == 1 and (-3) % 7 == 4  # square residue
    f = lambda t: (t * t - t + 1) % 2  # minimal polynomial of (1+sqrt(-3))/2
    assert all(f(t) != 0 for t in range(2))  # irreducible mod 2 -> inert


def _minpoly_splitting(delta, p):
    # independent oracle: factor the minimal polynomial of the maximal-order
    # generator mod p (the generator has index 1, so this is always valid)
    if delta % 4 == 1:
        c1, c0 = -1, (1 - delta) // 4
    else:
        c1, c0 = 0, -delta
    roots = [t for t in range(p) if (t * t + c1 * t + c0) % p == 0]
    if len(roots) == 2:
        return "split"
    if len(roots) == 0:
        return "inert"
    return "ramified"


def test_splitting_vs_minpoly_oracle():
    for delta in (-1, -2, -3, -5, -7, -11, -15, -19):
        for p in (2, 3, 5, 7, 11, 13):
            assert splitting_type(delta, p) == _minpoly_splitting(delta, p), (delta, p)


def test_splitting_invalid_field():
    with pytest.raises(InvalidFieldError):
        splitting_type(3, 5)
    with pytest.raises(InvalidFieldError):
        splitting_type(-12, 5)
    with pytest.raises(InvalidFieldError):
        splitting_type(0, 5)


def test_rational_parsing():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-2") == -2
    assert parse_rational(5) == 5
    assert format_rational(F(10, 4)) == "5/2"
    assert format_rational(F(7)) == "7"
    with pytest.raises(SchemaError):
        parse_rational("x")
    with pytest.raises(SchemaError):
        parse_rational("1/0")
    with pytest.raises(SchemaError):
        parse_rational(None)
