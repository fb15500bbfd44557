from fractions import Fraction

import numpy as np
import pytest
from sympy import Matrix, symbols

from quatforms.errors import (
    ConfigValidationError,
    InvalidMonoidElement,
    NegativeWeightOnPolynomial,
    NoLiftInBound,
    NonUnitConstantTerm,
    PrecisionInsufficient,
    SingularToPrecision,
)
from quatforms.padic import (
    Mat2,
    PadicPoly,
    PrecCtx,
    Residue,
    TruncSeries,
    charpoly,
    expand_slopes,
    hensel_root,
    kernel_vector_2x2,
    lower_hull,
    mat_mul,
    newton_slopes,
    pivot_valuations,
    series_compose,
    series_invert,
    solve_pivoted,
    strip_zero_rows,
    symmetric_lift,
    val_int,
    weight_action,
    weight_block,
)

x = symbols("x")


@pytest.mark.parametrize("p, N, M", [(2, 5, 1), (9, 5, 1), (7, 0, 1), (7, 5, 0)])
def test_prec_ctx_rejects_bad_parameters(p, N, M):
    with pytest.raises(ConfigValidationError):
        PrecCtx(p, N, M)


def test_residue_arithmetic():
    ctx = PrecCtx(7, 5)
    a, b = Residue(3, ctx), Residue(5, ctx)
    assert (a * b).value == 15
    assert (a - b).value == 7**5 - 2
    assert (a * a.inverse()).value == 1
    assert (b / a * a).value == 5
    assert (a**-2 * 9).value == 1


def test_inverse_of_non_unit_raises():
    with pytest.raises(NonUnitConstantTerm):
        Residue(14, PrecCtx(7, 3)).inverse()


def test_valuation_caps_at_precision():
    assert val_int(98, 7, 5) == 2
    assert val_int(0, 7, 5) == 5
    assert Residue(7**6, PrecCtx(7, 5)).valuation() == 5


def test_symmetric_lift_recovers_small_integers():
    ctx = PrecCtx(11, 3)
    for c in range(-50, 51):
        assert symmetric_lift(Residue(c, ctx), 50) == c


def test_symmetric_lift_errors():
    with pytest.raises(PrecisionInsufficient):
        symmetric_lift(Residue(1, PrecCtx(7, 1)), 4)
    with pytest.raises(NoLiftInBound):
        symmetric_lift(Residue(100, PrecCtx(7, 4)), 10)


def test_hensel_root_square_root_of_two():
    ctx = PrecCtx(7, 10)
    r = hensel_root([-2, 0, 1], ctx, 3)
    assert r % 7 == 3
    assert (r * r - 2) % ctx.modulus == 0


def test_series_invert_geometric():
    ctx = PrecCtx(7, 5, 6)
    inv = series_invert(TruncSeries((1, 7), ctx))
    assert inv.coeffs == tuple((-7) ** n % ctx.modulus for n in range(6))
    assert (inv * TruncSeries((1, 7), ctx)).coeffs == (1, 0, 0, 0, 0, 0)


def test_series_invert_needs_unit_constant_term():
    with pytest.raises(NonUnitConstantTerm):
        series_invert(TruncSeries((7, 1), PrecCtx(7, 5, 4)))


def test_series_compose():
    ctx = PrecCtx(5, 4, 5)
    h = TruncSeries((1, 1), ctx)
    mu = TruncSeries((0, 0, 1), ctx)
    assert series_compose(h, mu).coeffs == (1, 0, 1, 0, 0)


def test_weight_action_on_polynomials():
    ctx = PrecCtx(7, 4)
    g = Mat2(1, 1, 0, 1, ctx)
    # (z | g) in weight 3 is az + b
    assert weight_action(PadicPoly((0, 1), ctx), g, 3).coeffs == (1, 1)
    assert weight_action(PadicPoly((2, 3), ctx), Mat2.identity(ctx), 3).coeffs == (2, 3)


def test_weight_action_preconditions():
    ctx = PrecCtx(7, 4)
    with pytest.raises(NegativeWeightOnPolynomial):
        weight_action(PadicPoly((1,), ctx), Mat2.identity(ctx), 1)
    with pytest.raises(InvalidMonoidElement):
        weight_action(PadicPoly((1,), ctx), Mat2(1, 0, 1, 1, ctx), 3)
    with pytest.raises(InvalidMonoidElement):
        weight_block(Mat2(1, 0, 7, 7, ctx), 1, 4)


def _random_monoid(rng, ctx, b_zero=False):
    q, p = ctx.modulus, ctx.p
    a = int(rng.integers(0, q))
    b = 0 if b_zero else int(rng.integers(0, q))
    c = p * int(rng.integers(0, q // p))
    d = int(rng.integers(1, p)) + p * int(rng.integers(0, q // p))
    return Mat2(a, b, c, d, ctx)


def test_weight_block_matches_weight_action():
    ctx = PrecCtx(7, 6)
    rng = np.random.default_rng(3)
    for _ in range(5):
        g = _random_monoid(rng, ctx)
        h = PadicPoly(tuple(int(c) for c in rng.integers(0, ctx.modulus, size=4)), ctx)
        block = weight_block(g, 5, 4)
        expected = weight_action(h, g, 5).coeffs
        assert tuple(int(c) for c in block.dot(np.array(h.coeffs, dtype=object)) % ctx.modulus) == expected


def test_right_action_law_polynomial_model():
    ctx = PrecCtx(7, 6)
    rng = np.random.default_rng(11)
    for _ in range(10):
        g1, g2 = _random_monoid(rng, ctx), _random_monoid(rng, ctx)
        for k in (3, 4, 6):
            lhs = weight_block(g1 @ g2, k, k - 1)
            rhs = mat_mul(weight_block(g2, k, k - 1), weight_block(g1, k, k - 1), ctx)
            assert np.all((lhs - rhs) % ctx.modulus == 0)


def test_right_action_law_series_model():
    # with b = 0 the Mobius series has no constant term and truncation is exact
    ctx = PrecCtx(5, 6)
    rng = np.random.default_rng(5)
    for _ in range(10):
        g1, g2 = _random_monoid(rng, ctx, b_zero=True), _random_monoid(rng, ctx, b_zero=True)
        for k in (1, 0, 3):
            lhs = weight_block(g1 @ g2, k, 7)
            rhs = mat_mul(weight_block(g2, k, 7), weight_block(g1, k, 7), ctx)
            assert np.all((lhs - rhs) % ctx.modulus == 0)


def test_charpoly_diagonal():
    ctx = PrecCtx(7, 4)
    f = charpoly([[2, 0], [0, 3]], ctx)
    assert f.coeffs == (6, ctx.modulus - 5, 1)


def test_charpoly_strips_zero_rows():
    ctx = PrecCtx(7, 4)
    f = charpoly([[0, 0], [1, 2]], ctx)
    assert f.coeffs == (0, ctx.modulus - 2, 1)
    reduced, removed = strip_zero_rows(np.array([[0, 0], [1, 2]], dtype=object), ctx)
    assert removed == 1 and reduced.shape == (1, 1)


def test_charpoly_methods_agree_with_sympy():
    ctx = PrecCtx(7, 6)
    rng = np.random.default_rng(7)
    A = rng.integers(-20, 20, size=(6, 6)).tolist()
    expected = [int(c) % ctx.modulus for c in reversed(Matrix(A).charpoly(x).all_coeffs())]
    assert list(charpoly(A, ctx, method="berkowitz").coeffs) == expected
    assert list(charpoly(A, ctx, method="hessenberg").coeffs) == expected


def test_hessenberg_handles_non_unit_pivots():
    ctx = PrecCtx(5, 8)
    A = [[5 * i + j for j in range(5)] for i in range(5)]
    A = [[5 * a if i > j else a for j, a in enumerate(row)] for i, row in enumerate(A)]
    expected = [int(c) % ctx.modulus for c in reversed(Matrix(A).charpoly(x).all_coeffs())]
    assert list(charpoly(A, ctx, method="hessenberg").coeffs) == expected


def test_solve_pivoted():
    ctx = PrecCtx(7, 5)
    result = solve_pivoted([[2, 1], [1, 1]], [[3], [2]], ctx)
    assert [int(v) for v in result.X[:, 0]] == [1, 1]
    assert result.loss == 0
    scaled = solve_pivoted([[7]], [[14]], ctx)
    assert int(scaled.X[0, 0]) == 2
    # the residual vanishes, but X is only known mod 7^4
    assert scaled.loss == 1


def test_solve_pivoted_loss_counts_every_pivot():
    ctx = PrecCtx(7, 5)
    result = solve_pivoted([[49, 0], [0, 7]], [[49 * 3], [7 * 2]], ctx)
    assert [int(v) % 7**2 for v in result.X[:, 0]] == [3, 2]
    assert result.loss == 3


def test_solve_pivoted_singular():
    with pytest.raises(SingularToPrecision):
        solve_pivoted([[0]], [[1]], PrecCtx(7, 5))


def test_pivot_valuations():
    assert pivot_valuations([[1, 0], [0, 7]], PrecCtx(7, 5)) == [0, 1]
    assert pivot_valuations([[7**5, 0], [0, 0]], PrecCtx(7, 5)) == []


def test_kernel_vector_2x2():
    ctx = PrecCtx(7, 3)
    kx, ky = kernel_vector_2x2([[1, 2], [2, 4]], ctx)
    assert (kx + 2 * ky) % ctx.modulus == 0
    assert (2 * kx + 4 * ky) % ctx.modulus == 0


def test_lower_hull():
    assert lower_hull([(0, 3), (1, 1), (2, 2), (3, 0)]) == [(0, 3), (1, 1), (3, 0)]


def test_newton_slopes_of_split_polynomial():
    ctx = PrecCtx(7, 10)
    f = PadicPoly((-1, 1), ctx) * PadicPoly((-7, 1), ctx) * PadicPoly((-49, 1), ctx)
    slopes = newton_slopes(f)
    assert expand_slopes(slopes) == [0, 1, 2]
    assert sum(s.multiplicity for s in slopes) == f.degree
    assert all(s.reliable for s in slopes)


def test_newton_slopes_vanishing_low_coefficients():
    ctx = PrecCtx(7, 10)
    f = PadicPoly((0, 0, -1, 1), ctx)
    slopes = newton_slopes(f)
    assert expand_slopes(slopes) == [0, 10, 10]
    assert not slopes[-1].reliable


def test_newton_slopes_fractional():
    ctx = PrecCtx(5, 10)
    # x^2 - 5 has two roots of valuation 1/2
    slopes = newton_slopes(PadicPoly((-5, 0, 1), ctx))
    assert expand_slopes(slopes) == [Fraction(1, 2), Fraction(1, 2)]


def test_mat2_product_needs_matching_moduli():
    g = Mat2(1, 2, 7, 3, PrecCtx(7, 4))
    with pytest.raises(ConfigValidationError):
        g @ Mat2.identity(PrecCtx(7, 5))
    with pytest.raises(ConfigValidationError):
        g @ Mat2.identity(PrecCtx(5, 4))
    # only the modulus has to agree
    assert (g @ Mat2.identity(PrecCtx(7, 4, 6))).as_tuple() == g.as_tuple()
