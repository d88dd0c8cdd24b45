import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import factorint

from fcsg_minors.errors import ContextMismatchError, InputError, ResourceLimitError
from fcsg_minors.semigroup import (
    Backend,
    FactoredElement,
    PrimeSymbol,
    SemigroupContext,
    detect_backend,
    divides,
    evaluate,
    factorize,
    gcd,
    is_unit,
    multiply,
    set_product,
    unit,
)

FREE = SemigroupContext(Backend.FREE)
SYMBOLS = ["a", "b", "c", "d", "e1", "p"]

naturals = st.integers(min_value=1, max_value=10**6).map(factorize)
free_elements = st.dictionaries(st.sampled_from(SYMBOLS), st.integers(min_value=1, max_value=4), max_size=4).map(
    FREE.element
)


def random_natural(rng):
    # small-prime heavy so gcds are often non-trivial
    return factorize(rng.choice([1, rng.randint(1, 60), rng.randint(1, 10**6)]))


def random_free(rng):
    return FREE.element({s: rng.randint(1, 3) for s in rng.sample(SYMBOLS, rng.randint(0, 3))})


def test_factorize_examples():
    assert factorize(360).as_dict() == {PrimeSymbol(2): 3, PrimeSymbol(3): 2, PrimeSymbol(5): 1}
    assert factorize(1).is_unit
    assert factorize(97).as_dict() == {PrimeSymbol(97): 1}


def test_factorize_rejects_zero_and_negative():
    with pytest.raises(InputError):
        factorize(0)
    with pytest.raises(InputError):
        factorize(-4)


def test_factorize_caps_at_64_bits():
    assert evaluate(factorize(2**64 - 1)) == 2**64 - 1
    with pytest.raises(ResourceLimitError):
        factorize(2**64)


def test_factorize_round_trip_small_range():
    for n in range(1, 20_001):
        assert evaluate(factorize(n)) == n


@pytest.mark.slow
def test_factorize_round_trip_full_range():
    for n in range(1, 10**6 + 1):
        assert evaluate(factorize(n)) == n


@given(st.integers(min_value=1, max_value=10**6))
def test_factorize_round_trip(n):
    element = factorize(n)
    assert evaluate(element) == n
    assert {s.id: e for s, e in element.exponents} == factorint(n)


@given(st.integers(min_value=2**40, max_value=2**64 - 1))
@settings(max_examples=50)
def test_factorize_large_values(n):
    assert evaluate(factorize(n)) == n


def test_multiply_examples():
    assert multiply(factorize(2), factorize(3)) == factorize(6)
    assert multiply(unit(), factorize(25)) == factorize(25)
    assert multiply(factorize(6), factorize(4)) == factorize(24)


def test_multiply_rejects_mixed_backends():
    with pytest.raises(ContextMismatchError):
        multiply(factorize(6), FREE.prime("a"))


def test_gcd_examples():
    assert gcd(factorize(12), factorize(18)) == factorize(6)
    assert gcd(factorize(7), factorize(5)) == unit()
    a = factorize(360)
    assert gcd(a, a) == a


def test_is_unit_examples():
    assert is_unit(factorize(1))
    assert not is_unit(factorize(6))
    assert is_unit(multiply(unit(), unit()))
    assert is_unit(FREE.unit())


def test_set_product_examples():
    assert set_product([]) == unit()
    assert set_product([], Backend.FREE) == FREE.unit()
    assert set_product([factorize(2), factorize(3), factorize(5)]) == factorize(30)
    assert set_product([factorize(4), factorize(6)]) == factorize(24)


def test_canonical_form_is_sparse_and_sorted():
    element = FactoredElement.from_mapping(Backend.NATURALS, {PrimeSymbol(5): 1, PrimeSymbol(2): 0, PrimeSymbol(3): 2})
    assert element.exponents == ((PrimeSymbol(3), 2), (PrimeSymbol(5), 1))
    with pytest.raises(InputError):
        FactoredElement(Backend.NATURALS, ((PrimeSymbol(5), 1), (PrimeSymbol(3), 1)))
    with pytest.raises(InputError):
        FactoredElement(Backend.NATURALS, ((PrimeSymbol(4), 1),))
    with pytest.raises(InputError):
        FactoredElement(Backend.NATURALS, ((PrimeSymbol(3), 0),))


def test_nontrivial_unit_tag_is_rejected():
    with pytest.raises(InputError):
        FactoredElement(Backend.NATURALS, (), unit_tag=-1)


def test_canonical_text():
    assert factorize(360).canonical_text() == "360"
    assert FREE.element({"b": 1, "a": 2}).canonical_text() == "a^2*b"
    assert FREE.unit().canonical_text() == "e"
    assert factorize(360).length == 6


def test_free_context_universe():
    closed = SemigroupContext(Backend.FREE, frozenset({"a", "b"}))
    assert closed.prime("a") == FREE.prime("a")
    with pytest.raises(InputError):
        closed.prime("c")
    with pytest.raises(InputError):
        SemigroupContext(Backend.NATURALS, frozenset({"a"}))


def test_json_element_forms():
    naturals = SemigroupContext()
    assert naturals.parse_element(12) == factorize(12)
    assert naturals.parse_element("12") == factorize(12)
    assert naturals.format_element(factorize(12)) == 12
    assert naturals.format_element(factorize(2**60)) == str(2**60)
    element = FREE.parse_element({"primes": {"x": 2, "y": 1}})
    assert FREE.format_element(element) == {"primes": {"x": 2, "y": 1}}
    with pytest.raises(InputError):
        FREE.parse_element({"primes": {"x": 0}})
    with pytest.raises(InputError):
        FREE.parse_element({"primes": {"1x": 1}})
    with pytest.raises(InputError):
        naturals.parse_element({"primes": {}})
    with pytest.raises(InputError):
        naturals.parse_element(True)


def test_detect_backend():
    assert detect_backend([1, 2, 3]) is Backend.NATURALS
    assert detect_backend([{"primes": {"a": 1}}]) is Backend.FREE
    assert detect_backend([]) is Backend.NATURALS


@given(naturals, naturals)
def test_gcd_commutative(a, b):
    assert gcd(a, b) == gcd(b, a)


@given(naturals, naturals, naturals)
def test_gcd_associative(a, b, c):
    assert gcd(gcd(a, b), c) == gcd(a, gcd(b, c))


@given(free_elements)
def test_gcd_idempotent(a):
    assert gcd(a, a) == a


@given(free_elements, free_elements)
def test_gcd_divides_both(a, b):
    g = gcd(a, b)
    assert divides(g, a) and divides(g, b)


@given(naturals, naturals)
def test_gcd_matches_integer_gcd(a, b):
    import math

    assert evaluate(gcd(a, b)) == math.gcd(evaluate(a), evaluate(b))


@given(free_elements, free_elements, free_elements)
def test_multiply_commutative_and_associative(a, b, c):
    assert multiply(a, b) == multiply(b, a)
    assert multiply(multiply(a, b), c) == multiply(a, multiply(b, c))


@given(free_elements, free_elements)
def test_unit_product_law(a, b):
    assert is_unit(multiply(a, b)) == (is_unit(a) and is_unit(b))


@given(naturals, naturals, naturals, naturals)
def test_gcd_invariance_under_multiplication(a1, a2, a3, a4):
    assume(not is_unit(gcd(a1, a2)))
    assert not is_unit(gcd(multiply(a1, a3), multiply(a2, a4)))


@pytest.mark.parametrize("draw", [random_natural, random_free])
def test_unit_product_law_randomized(draw):
    rng = random.Random(2024)
    for _ in range(10_000):
        a, b = draw(rng), draw(rng)
        assert is_unit(multiply(a, b)) == (is_unit(a) and is_unit(b))


@pytest.mark.parametrize("draw", [random_natural, random_free])
def test_gcd_invariance_randomized(draw):
    rng = random.Random(7)
    checked = 0
    for _ in range(10_000):
        a1, a2, a3, a4 = (draw(rng) for _ in range(4))
        if is_unit(gcd(a1, a2)):
            continue
        checked += 1
        assert not is_unit(gcd(multiply(a1, a3), multiply(a2, a4)))
    assert checked > 1000
