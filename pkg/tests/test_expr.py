import pytest

from degenq.errors import ExprSyntaxError, IndexOutOfRange, MissingGenerator
from degenq.expr import (
    Gen,
    Prod,
    Scalar,
    Sum,
    antipode,
    cartan,
    cartan_inv,
    counit,
    e,
    eval_in_rep,
    expr_to_text,
    f,
    K,
    Kinv,
    make_pow,
    make_prod,
    one,
    parse_expr,
)
from degenq.linalg import SparseMat
from degenq.relations import gamma_monomials, root_vector
from degenq.reps import natural_rep
from degenq.scalars import GLParams, RatFn

P21 = GLParams(2, 1)
P32 = GLParams(3, 2)


# -- parsing ----------------------------------------------------------------------


def test_parse_q_commutator_shape():
    x = parse_expr("e1*e2 - (q^-1)*e2*e1", P21)
    expected = e(1) * e(2) - RatFn.q(-1) * (e(2) * e(1))
    assert x == expected
    assert isinstance(x, Sum) and len(x.terms) == 2
    second = x.terms[1]
    assert isinstance(second, Prod) and isinstance(second.factors[0], Scalar)
    assert second.factors[0].value == RatFn.q(-1, -1)


def test_parse_serre_element():
    x = parse_expr("f1^2*f2 - (q + q^-1)*f1*f2*f1 + f2*f1^2", P21)
    coeff = RatFn.q(1) + RatFn.q(-1)
    expected = f(1) ** 2 * f(2) - coeff * (f(1) * f(2) * f(1)) + f(2) * f(1) ** 2
    assert x == expected


def test_parse_k_inverse_atom():
    assert parse_expr("K3^-1", P21) == Kinv(3)
    assert parse_expr("K3^-2", P21) == make_pow(Kinv(3), 2)
    assert parse_expr("k1", P21) == cartan(1)
    assert parse_expr("k2^-1", P21) == cartan_inv(2)


def test_parse_errors_carry_position():
    with pytest.raises(ExprSyntaxError):
        parse_expr("e1 *", P21)
    with pytest.raises(ExprSyntaxError):
        parse_expr("e1 + + e2$", P21)
    with pytest.raises(ExprSyntaxError):
        parse_expr("e1^-1", P21)
    with pytest.raises(IndexOutOfRange):
        parse_expr("e3", P21)  # e-index must be in I'
    with pytest.raises(IndexOutOfRange):
        parse_expr("K4", P21)
    with pytest.raises(IndexOutOfRange):
        parse_expr("k3", P21)  # k3 expands to K3*K4^-1, out of range


def test_parse_scalar_folding():
    x = parse_expr("(q + q^-1)", P21)
    assert x == Scalar(RatFn.q(1) + RatFn.q(-1))
    y = parse_expr("(2)*(3)", P21)
    assert y == Scalar(RatFn.integer(6))


def test_parse_implicit_coefficient():
    assert parse_expr("2q^3*e1", P21) == RatFn.q(3, 2) * e(1)


# -- printing round trips ------------------------------------------------------------


@pytest.mark.parametrize(
    "text",
    [
        "e1*e2 - (q^-1)*e2*e1",
        "f1^2*f2 - (q + q^-1)*f1*f2*f1 + f2*f1^2",
        "K3^-1",
        "K1*K2^-1",
        "e1",
        "-e1*f1",
        "k1 - k1^-1",
        "(q - q^-1)*e1*f1 + K2^-3*e1^2",
        "2*e1 + 3*q^2*f2",
    ],
)
def test_print_parse_round_trip(text):
    x = parse_expr(text, P21)
    assert parse_expr(expr_to_text(x), P21) == x


def test_round_trip_rational_coefficient():
    coeff = RatFn.one() / (RatFn.q(1) - RatFn.q(-1))
    x = coeff * (e(1) * f(1))
    assert parse_expr(expr_to_text(x), P21) == x


def test_round_trip_catalog_and_root_vectors():
    from degenq.relations import relation_catalog

    for params in (P21, GLParams(2, 2)):
        for entry in relation_catalog(params):
            assert parse_expr(expr_to_text(entry.expr), params) == entry.expr, entry.name


# -- structural helpers ---------------------------------------------------------------


def test_make_prod_folds_scalars():
    x = make_prod([Scalar(RatFn.q(1)), e(1), Scalar(RatFn.q(-1))])
    assert x == e(1)


def test_counit_values():
    assert counit(e(1)) == RatFn.zero()
    assert counit(K(2)) == RatFn.one()
    assert counit(cartan(1) - cartan_inv(1)) == RatFn.zero()
    assert counit(parse_expr("(q+q^-1)*K1*K2", P21)) == RatFn.q(1) + RatFn.q(-1)


def test_antipode_on_generators():
    # S(e_a) = -e_a k_a^-1, S(f_a) = -k_a f_a, S(K) = K^-1
    assert antipode(e(1)) == -(e(1) * cartan_inv(1))
    assert antipode(f(2)) == -(cartan(2) * f(2))
    assert antipode(K(3)) == Kinv(3)
    assert antipode(Kinv(3)) == K(3)


def test_antipode_reverses_products():
    x = e(1) * f(2)
    assert antipode(x) == make_prod([antipode(f(2)), antipode(e(1))])


# -- evaluation ------------------------------------------------------------------------


def test_eval_generator_in_natural_rep():
    rep = natural_rep(P21)
    assert eval_in_rep(e(1), rep) == SparseMat.unit(3, 3, 0, 1)
    assert eval_in_rep(f(2), rep) == SparseMat.unit(3, 3, 2, 1)


def test_eval_cartan_diag():
    rep = natural_rep(P21)
    k1 = eval_in_rep(cartan(1), rep)
    assert k1 == SparseMat.diagonal([RatFn.q(1), RatFn.q(-1), RatFn.one()])


def test_eval_difference_is_zero():
    rep = natural_rep(P21)
    x = parse_expr("e1*e2 - (q^-1)*e2*e1", P21)
    assert eval_in_rep(x - x, rep).is_zero()


def test_eval_missing_generator():
    rep = natural_rep(P21)
    with pytest.raises(MissingGenerator):
        eval_in_rep(Gen("e", 5), rep)


# -- root vectors and gamma monomials ------------------------------------------------------


def test_root_vector_base_cases():
    assert root_vector(2, 1, P21) == f(1)
    assert root_vector(1, 2, P21) == e(1)


def test_root_vector_depth_two():
    assert root_vector(1, 3, P21) == e(1) * e(2) - RatFn.q(-1) * (e(2) * e(1))
    assert root_vector(3, 1, P21) == f(2) * f(1) - RatFn.q(1) * (f(1) * f(2))


def test_root_vector_signed_parameter():
    # For (1, 2), index 2 carries p = -q^-1: E_13 uses -(-q) = +q coefficient.
    x = root_vector(1, 3, GLParams(1, 2))
    assert x == e(1) * e(2) - RatFn.q(1, -1) * (e(2) * e(1))


def test_root_vector_bad_indices():
    with pytest.raises(IndexOutOfRange):
        root_vector(1, 1, P21)
    with pytest.raises(IndexOutOfRange):
        root_vector(0, 2, P21)


def test_gamma_monomial_counts():
    assert len(gamma_monomials(GLParams(1, 1))) == 2
    assert len(gamma_monomials(P21)) == 4
    assert len(gamma_monomials(GLParams(2, 2))) == 16


def test_gamma_monomials_21_contents():
    mons = gamma_monomials(P21)
    e31 = root_vector(3, 1, P21)
    e32 = root_vector(3, 2, P21)
    assert one() in mons
    assert e31 in mons
    assert e32 in mons
    assert make_prod([e31, e32]) in mons


def test_gamma_monomials_11():
    mons = gamma_monomials(GLParams(1, 1))
    assert mons == [one(), f(1)] or mons == [f(1), one()]
