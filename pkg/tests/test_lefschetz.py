import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feynquad.errors import NoIntegerFit, NotDivisible
from feynquad.lefschetz import (
    ONE,
    ZERO,
    L,
    LClass,
    eval_at,
    exact_div,
    interpolate,
    parse,
    projective_class,
)

from .oracles import projective_points

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]

coeffs = st.lists(st.integers(-10**6, 10**6), max_size=8)
classes = coeffs.map(LClass)
nonzero_classes = classes.filter(lambda c: not c.is_zero())


def test_ring_examples():
    assert L * L == L**2 == LClass([0, 0, 1])
    assert (1 + L) * (1 + L) == LClass([1, 2, 1])
    x = L**3 + L**2 - L
    assert (x - x).is_zero()
    assert (x - x) == ZERO


def test_canonical_form():
    assert LClass([1, 2, 0, 0]).coefficients == (1, 2)
    assert LClass([0, 0]) == ZERO
    assert ZERO.degree == -1
    assert hash(LClass([3, 0])) == hash(LClass([3]))


def test_projective_class():
    assert projective_class(0) == ONE
    assert projective_class(2) == 1 + L + L**2
    assert eval_at(projective_class(1), 2) == 3 == len(projective_points(2, 2))


@pytest.mark.parametrize("n", range(21))
def test_projective_class_telescopes(n):
    assert projective_class(n) * (L - 1) + 1 == L ** (n + 1)


def test_exact_div_examples():
    assert exact_div(L**3 + L**2 - L - 1, L - 1) == L**2 + 2 * L + 1
    assert exact_div(L**2, L) == L
    with pytest.raises(NotDivisible) as info:
        exact_div(L + 1, L)
    assert info.value.remainder == ONE


def test_exact_div_non_monic_divisor():
    assert exact_div(LClass([2, 4, 2]), LClass([2, 2])) == 1 + L
    with pytest.raises(NotDivisible):
        exact_div(LClass([1, 1]), LClass([0, 2]))
    with pytest.raises(ZeroDivisionError):
        exact_div(L, ZERO)


def test_eval_examples():
    assert eval_at(L**3 + L**2 - L, 2) == 10
    assert eval_at(ZERO, 17) == 0
    assert eval_at(L**12, 3) == 531441
    # beyond 64 bits
    assert eval_at(L**12 + 1, 47) == 47**12 + 1


def test_interpolate_examples():
    assert interpolate([(2, 10), (3, 33), (5, 145), (7, 385)], 3) == L**3 + L**2 - L
    assert interpolate([(2, 1), (3, 1)], 0) == ONE
    with pytest.raises(NoIntegerFit):
        interpolate([(2, 0), (3, 1)], 0)


def test_interpolate_rejects_rational_fit():
    # line through (2, 0), (4, 1) has slope 1/2
    with pytest.raises(NoIntegerFit):
        interpolate([(2, 0), (4, 1)], 1)


def test_interpolate_needs_enough_points():
    with pytest.raises(ValueError):
        interpolate([(2, 1)], 1)
    with pytest.raises(ValueError):
        interpolate([(2, 1), (2, 1)], 1)


@pytest.mark.parametrize(
    "text",
    ["0", "1", "-1", "L", "-L", "L^3 + L^2 - L", "3*L^11 - 8*L^9 + 7*L^8 - 2", "2*L^2 + 1"],
)
def test_render_parse_roundtrip(text):
    assert str(parse(text)) == text


def test_parse_tolerates_spacing_and_collects_terms():
    assert parse("L^2+L^2 -1") == 2 * L**2 - 1
    assert parse(" 2 * L ^ 3 ") == 2 * L**3
    with pytest.raises(ValueError):
        parse("L L")
    with pytest.raises(ValueError):
        parse("")


def test_json_roundtrip():
    x = L**12 * 47**20 - 3
    obj = x.to_json()
    assert all(isinstance(c, str) for c in obj["coefficients"])
    assert LClass.from_json(obj) == x


@given(classes, classes, st.sampled_from(SMALL_PRIMES))
def test_eval_is_ring_homomorphism(a, b, q):
    assert eval_at(a * b, q) == eval_at(a, q) * eval_at(b, q)
    assert eval_at(a + b, q) == eval_at(a, q) + eval_at(b, q)


@given(classes, classes, classes)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(classes, nonzero_classes)
def test_exact_div_inverts_mul(a, b):
    assert exact_div(a * b, b) == a


@given(classes)
@settings(max_examples=50)
def test_interpolate_roundtrip(a):
    deg = max(a.degree, 0)
    pts = [(q, eval_at(a, q)) for q in SMALL_PRIMES[: deg + 1]]
    assert interpolate(pts, deg) == a


@given(classes)
def test_parse_inverts_render(a):
    assert parse(str(a)) == a
