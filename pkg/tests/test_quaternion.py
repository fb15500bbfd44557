import pytest

from quatforms.errors import ConfigValidationError, EvenNorm
from quatforms.padic import Mat2, PrecCtx
from quatforms.quaternion import (
    I,
    J,
    K,
    ONE,
    ONE_PLUS_I,
    Quat,
    enumerate_norm,
    hurwitz_units,
    left_unit_class,
    norm_class_reps,
    solve_ab,
    split_p,
    two_adic_quotient,
    two_adic_reduce,
    two_adic_size,
    unit_subgroup,
)
from quatforms.storage import JsonCache


def test_mixed_parity_is_rejected():
    with pytest.raises(ConfigValidationError):
        Quat(1, 0, 1, 1)


def test_hamilton_relations():
    minus_one = Quat(-2, 0, 0, 0)
    assert I * I == J * J == K * K == minus_one
    assert I * J == K
    assert J * I == -K
    assert I * J * K == minus_one


def test_half_integral_unit_has_order_six():
    a = Quat(1, 1, 1, 1)
    assert a.norm() == 1
    assert a * a * a == Quat(-2, 0, 0, 0)


def test_norm_is_multiplicative():
    x, y = Quat(1, 3, -1, 5), Quat(4, 2, 0, -2)
    assert (x * y).norm() == x.norm() * y.norm()
    assert x * x.conj() == Quat(2 * x.norm(), 0, 0, 0)


def test_units_and_filtration():
    units = hurwitz_units()
    assert len(units) == 24
    assert all(u.norm() == 1 for u in units)
    assert [len(unit_subgroup(e)) for e in range(5)] == [24, 8, 2, 1, 1]


def _v2(n):
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


@pytest.mark.parametrize("e", range(5))
def test_unit_subgroup_is_the_congruence_filtration(e):
    expected = [u for u in hurwitz_units() if u == ONE or _v2((u - ONE).norm()) >= e]
    assert unit_subgroup(e) == expected


def test_unit_subgroup_members():
    assert set(unit_subgroup(1)) == {ONE, -ONE, I, -I, J, -J, K, -K}
    assert unit_subgroup(2) == [-ONE, ONE]
    assert unit_subgroup(3) == [ONE]


@pytest.mark.parametrize("ell", [3, 5, 7, 11, 13])
def test_norm_counts_for_primes(ell):
    elements = enumerate_norm(ell)
    assert len(elements) == 24 * (ell + 1)
    assert all(q.norm() == ell for q in elements)
    assert len(norm_class_reps(ell)) == ell + 1


def test_norm_two_is_one_unit_class():
    assert len(enumerate_norm(2)) == 24
    assert norm_class_reps(2) == [left_unit_class(ONE_PLUS_I)]


def test_enumerate_norm_uses_cache(tmp_path):
    cache = JsonCache(tmp_path)
    first = enumerate_norm(5, cache=cache)
    assert cache.get("norm", {"n": 5}) is not None
    assert enumerate_norm(5, cache=cache) == first


@pytest.mark.parametrize("p, expected", [(5, (2, 0)), (11, (3, 1)), (7, (3, 2))])
def test_solve_ab_base_solution(p, expected):
    ctx = PrecCtx(p, 8)
    a, b = solve_ab(ctx)
    assert (a.value % p, b.value % p) == expected
    assert (a * a + b * b + 1).value == 0


@pytest.mark.parametrize("p", [5, 7, 11])
def test_splitting_is_a_ring_homomorphism(p):
    ctx = PrecCtx(p, 6)
    minus_one = Mat2(-1, 0, 0, -1, ctx)
    assert split_p(I, ctx) @ split_p(I, ctx) == minus_one
    assert split_p(I, ctx) @ split_p(J, ctx) == split_p(K, ctx)
    x, y = Quat(1, 3, -1, 5), Quat(3, -1, 1, 1)
    assert split_p(x * y, ctx) == split_p(x, ctx) @ split_p(y, ctx)
    assert split_p(x, ctx).det() == x.norm() % ctx.modulus
    assert split_p(ONE, ctx) == Mat2.identity(ctx)


def test_two_adic_sizes():
    assert [two_adic_size(e) for e in range(5)] == [1, 3, 12, 48, 192]
    assert [len(two_adic_quotient(e)) for e in range(5)] == [1, 3, 12, 48, 192]


def test_two_adic_class_of_one_comes_first():
    minus_one = Quat(-2, 0, 0, 0)
    for e in range(4):
        assert two_adic_reduce(ONE, e).index == 0
    # N(-1 - 1) = 4, so -1 joins the class of 1 only up to e = 2
    assert two_adic_reduce(minus_one, 2).index == 0
    assert two_adic_reduce(minus_one, 3).index != 0


def test_two_adic_reduce_rejects_even_norm():
    with pytest.raises(EvenNorm):
        two_adic_reduce(ONE_PLUS_I, 2)


def test_two_adic_classes_of_units():
    # the units reach every class of Y_e exactly when e <= 2
    for e, reached in ((1, 3), (2, 12)):
        quotient = two_adic_quotient(e)
        assert len({quotient.index(u) for u in hurwitz_units()}) == reached
    quotient = two_adic_quotient(3)
    assert len({quotient.index(u) for u in hurwitz_units()}) == 24


def test_two_adic_left_multiplication_respects_classes():
    quotient = two_adic_quotient(2)
    a = Quat(1, 1, 1, 1)
    for idx, rep in enumerate(quotient.representatives):
        assert quotient.left_multiply(a, idx) == quotient.index(a * rep)
        assert quotient.left_multiply(ONE, idx) == idx


def test_conjugation_by_one_plus_i_is_a_permutation():
    quotient = two_adic_quotient(3)
    images = [quotient.conjugate_by_one_plus_i(idx) for idx in range(len(quotient))]
    assert sorted(images) == list(range(len(quotient)))
