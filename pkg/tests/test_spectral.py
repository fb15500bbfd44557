import pytest
from sympy import Poly, symbols

from quatforms.config import set_config
from quatforms.errors import (
    ConfigValidationError,
    InconsistentRatios,
    IndistinctRoots,
    PrecisionInsufficient,
    RankDeficient,
)
from quatforms.hecke import AutForm, FormSpace, HeckeDescriptor, HeckeOperator, quadratic_character
from quatforms.padic import PrecCtx, expand_slopes, hensel_root, newton_slopes
from quatforms.spectral import (
    binomial_row_bound,
    charpoly_int,
    classicality_evidence,
    eigenvalue_bound,
    extract_eigenvalue,
    has_factor,
    int_poly,
    power_iterate,
    ramanujan_bound,
    required_precision,
    shared_eigenvalues,
    slope_spectrum,
    split_by_W,
)

x = symbols("x")

T3_WEIGHT5 = Poly((x**4 + 288 * x**2 + 20448) * (x**4 + 18 * x**3 + 39 * x**2 - 1242 * x + 4761), x)
U11_WEIGHT3 = Poly((x**2 - 14 * x + 121) * (x**2 + 22 * x + 121) ** 2, x)


def _op(label, space):
    return HeckeOperator(HeckeDescriptor.parse(label), space)


def test_bounds():
    assert required_precision(7, 10) == 2
    assert binomial_row_bound(2, 3) == 9
    assert ramanujan_bound(3, 2) == 4
    assert ramanujan_bound(7, 3) == 14
    assert eigenvalue_bound(HeckeDescriptor.parse("T3"), 5, 7) == 82
    assert eigenvalue_bound(HeckeDescriptor.parse("U7"), 2, 7) == 7


def test_has_factor():
    f = int_poly([-5, 1]) * int_poly([1, 0, 1])
    assert has_factor(f, Poly(x - 5, x))
    assert not has_factor(f, Poly(x + 5, x))


def test_t3_weight5_integer_charpoly(weight5_7):
    lifted = charpoly_int(HeckeDescriptor.parse("T3"), weight5_7)
    assert lifted.as_poly() == T3_WEIGHT5
    assert lifted.as_poly().degree() == 8
    assert lifted.precision >= weight5_7.ctx.N


def test_t3_weight2_splits_into_eisenstein_and_cusp(weight2_7):
    lifted = charpoly_int(HeckeDescriptor.parse("T3"), weight2_7)
    assert lifted.as_poly() == Poly((x - 4) * (x + 2), x)


def test_u5_weight2_one_class(weight2_5):
    assert charpoly_int(HeckeDescriptor.parse("U5"), weight2_5).coeffs == [-5, 1]


def test_charpoly_int_without_auto_precision(weight5_7):
    with pytest.raises(PrecisionInsufficient):
        charpoly_int(HeckeDescriptor.parse("T3"), weight5_7.with_context(N=2), auto_precision=False)


@pytest.mark.slow
def test_u11_weight3_contains_paired_factors(weight3_11):
    lifted = charpoly_int(HeckeDescriptor.parse("U11"), weight3_11)
    poly = lifted.as_poly()
    assert poly.degree() == 30
    assert has_factor(poly, U11_WEIGHT3)


def test_newton_slopes_of_u11_are_nonnegative(weight3_11):
    f = _op("U11", weight3_11).matrix().charpoly()
    values = expand_slopes(newton_slopes(f))
    assert len(values) == f.degree == 30
    assert values == sorted(values)
    assert values[0] >= 0


def test_slope_spectrum_needs_overconvergent_model(weight5_7):
    with pytest.raises(ConfigValidationError):
        slope_spectrum(weight5_7)


def test_slope_spectrum_weight2_one_class(weight2_5):
    space = FormSpace(weight2_5.cs, 2, "overconvergent")
    spectrum = slope_spectrum(space, M=6, N=10, stable_prefix=1)
    # the constant function has U5 eigenvalue 5
    assert 1 in spectrum.values()
    assert sum(s.multiplicity for s in spectrum.slopes) == 6
    assert spectrum.truncation == 6 and spectrum.precision == 10


def test_slopes_p11_weight1_quadratic_character(cs_11_e1):
    space = FormSpace(cs_11_e1, 1, "overconvergent", quadratic_character(11))
    spectrum = slope_spectrum(space, M=20, N=20, stable_prefix=6)
    assert spectrum.lowest(6) == [0, 0, 1, 2, 2, 2]
    assert spectrum.stable


@pytest.mark.slow
def test_slopes_p7_weight1(cs_7):
    space = FormSpace(cs_7, 1, "overconvergent")
    spectrum = slope_spectrum(space, M=20, N=20, stable_prefix=6)
    assert spectrum.lowest(6) == [0, 1, 1, 2, 2, 2]


def test_power_iteration_slope1_on_one_class(weight2_5):
    up = _op("U5", weight2_5)
    result = power_iterate(weight2_5, 1, iters=3, seeds=[1], slope=1, operator=up)
    assert result.precision_loss >= 3
    reading = extract_eigenvalue(result.forms[0], up, known_loss=result.precision_loss)
    assert reading.value.value == 5
    assert reading.precision >= 1


def test_power_iteration_slope0_on_one_class_is_rank_deficient(weight2_5):
    set_config({"rank_retries": 1})
    with pytest.raises(RankDeficient):
        power_iterate(weight2_5, 1, iters=10, seeds=[1])


def test_power_iteration_rejects_exhausted_precision(weight2_5):
    with pytest.raises(ConfigValidationError):
        power_iterate(weight2_5, 1, iters=10, slope=1)


def test_extract_eigenvalue_of_constant_form(weight2_7):
    one = AutForm.constant(weight2_7)
    reading = extract_eigenvalue(one, _op("T3", weight2_7))
    assert reading.value.value == 4
    assert reading.precision == weight2_7.ctx.N
    with pytest.raises(ValueError):
        extract_eigenvalue(AutForm.zero(weight2_7), _op("T3", weight2_7))


def test_extract_eigenvalue_detects_non_eigenforms(weight2_7):
    # constant + 7^5 * e_0 is an eigenform only to five digits
    f = AutForm.constant(weight2_7) + AutForm.basis(weight2_7, 0).scale(7**5)
    op = _op("T3", weight2_7)
    assert 5 <= extract_eigenvalue(f, op, min_agreement=5).precision < 8
    with pytest.raises(InconsistentRatios):
        extract_eigenvalue(f, op, min_agreement=8)


def test_split_by_w_limits(weight2_7):
    w = _op("W", weight2_7)
    assert split_by_W([], w) == []
    (approx,) = split_by_W([AutForm.constant(weight2_7)], w)
    assert approx.eigenvalues["W"].value == 1
    assert approx.precision == weight2_7.ctx.N
    with pytest.raises(ConfigValidationError):
        split_by_W([AutForm.basis(weight2_7, i % 2) for i in range(3)], w)


def test_split_by_w_keeps_indistinct_span_unsplit(weight2_7):
    # <1> is the identity, so its only eigenvalue mod 7 is a double root
    forms = [AutForm.basis(weight2_7, 0), AutForm.basis(weight2_7, 1)]
    approxs = split_by_W(forms, _op("D1", weight2_7))
    assert [a.split for a in approxs] == [False, False]
    assert [a.form for a in approxs] == forms
    assert all("W" not in a.eigenvalues for a in approxs)
    with pytest.raises(IndistinctRoots):
        split_by_W(forms, _op("D1", weight2_7), strict=True)


def test_split_by_w_rejects_exhausted_precision(weight2_7):
    forms = [AutForm.basis(weight2_7, 0), AutForm.basis(weight2_7, 1)]
    with pytest.raises(PrecisionInsufficient):
        split_by_W(forms, _op("W", weight2_7), known_loss=weight2_7.ctx.N)


def test_power_iteration_projects_onto_the_character(weight2_5):
    # weight 2 on one class: every diamond acts trivially
    trivial = FormSpace(weight2_5.cs, 2, character=0)
    up = _op("U5", trivial)
    result = power_iterate(trivial, 1, iters=3, seeds=[1], slope=1, operator=up)
    assert extract_eigenvalue(result.forms[0], up, known_loss=result.precision_loss).value.value == 5
    set_config({"rank_retries": 0})
    odd = FormSpace(weight2_5.cs, 2, character=1)
    with pytest.raises(RankDeficient):
        power_iterate(odd, 1, iters=3, seeds=[1], slope=1)


def test_shared_eigenvalues_on_constant_form(weight2_7):
    ops = [_op(label, weight2_7) for label in ("T3", "T5", "U7")]
    approxs = split_by_W([AutForm.constant(weight2_7)], _op("W", weight2_7))
    shared = shared_eigenvalues(approxs, ops)
    assert shared.agree
    assert {label: [r.value.value for r in readings] for label, readings in shared.table.items()} == {
        "T3": [4],
        "T5": [6],
        "U7": [7],
    }
    assert approxs[0].eigenvalues["W"].value == 1


def test_weight1_pair_at_11_quadratic_character(cs_11_e1):
    space = FormSpace(cs_11_e1.with_context(PrecCtx(11, 15, 15)), 1, "overconvergent", quadratic_character(11))
    up = _op("U11", space)
    result = power_iterate(space, 2, iters=15, seeds=[1, 2], operator=up)
    approxs = split_by_W(result.forms, _op("W", space), known_loss=result.precision_loss, strict=True)
    assert all(approx.split for approx in approxs)
    assert approxs[0].eigenvalues["W"].value % 11 != approxs[1].eigenvalues["W"].value % 11
    shared = shared_eigenvalues(approxs, [_op("T3", space), _op("T5", space), up])
    assert shared.agree and shared.precision >= 10
    modulus = 11**10
    for label, value in (("T3", -1), ("T5", -1), ("U11", 1)):
        assert all((r.value.value - value) % modulus == 0 for r in shared.table[label])


def test_classicality_finds_rational_eigenvalues():
    verdict = classicality_evidence(PrecCtx(7, 10).residue(1), 2, 3, dmax=1)
    assert verdict.matches == [[-1, 1]]
    assert verdict.verdict == "bounded algebraic match"
    assert verdict.bound == 4


def test_classicality_finds_quadratic_eigenvalues():
    # 3 is a square root of -2 mod 11
    ctx = PrecCtx(11, 8)
    verdict = classicality_evidence(ctx.residue(hensel_root([2, 0, 1], ctx, 3)), 2, 3, dmax=2)
    assert [2, 0, 1] in verdict.matches


def test_classicality_reports_no_match():
    verdict = classicality_evidence(PrecCtx(7, 4).residue(1947), 1, 3, dmax=2, bound=2)
    assert verdict.matches == []
    assert verdict.verdict == "no bounded algebraic match"


def test_classicality_degree_limits():
    with pytest.raises(ConfigValidationError):
        classicality_evidence(PrecCtx(7, 4).residue(1), 2, 3, dmax=5)
    with pytest.raises(ConfigValidationError):
        classicality_evidence(PrecCtx(7, 4).residue(1), 2, 3, dmax=0)
