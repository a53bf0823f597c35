import math

import gmpy2
import pytest
import sympy as sp
from conftest import PREC, exppolys, rel_diff, termwise_tol
from gmpy2 import mpc, mpfr
from hypothesis import given
from hypothesis import strategies as st

from hypercyclic.fnalg import (
    AffineMap,
    DiagonalAffineMap,
    DimensionError,
    ExpPoly,
    Polydisc,
    TermOverflowError,
    add,
    antiderivative,
    compose_affine,
    compose_diagonal,
    directional_derivative,
    evaluate,
    integrate_univariate,
    mul,
    negate,
    norm_sampled,
    norm_upper_bound,
    partial_derivative,
    scale,
    sub,
    translate,
)
from hypercyclic.scalar import precision

z = ExpPoly.variable(0, 1, PREC)
z1 = ExpPoly.variable(0, 2, PREC)
z2 = ExpPoly.variable(1, 2, PREC)
one = ExpPoly.constant(1, 1, PREC)


def ez(g=1, dim=1, i=0):
    gamma = [0] * dim
    gamma[i] = g
    return ExpPoly.exp_monomial(gamma, [0] * dim, prec=PREC)


def to_sympy(f, syms):
    expr = 0
    for t in f.terms:
        c = complex(t.coeff)
        term = sp.nsimplify(c.real) + sp.I * sp.nsimplify(c.imag)
        lin = sum(sp.nsimplify(complex(g).real) * s for g, s in zip(t.gamma, syms))
        term *= sp.exp(lin)
        for s, k in zip(syms, t.beta):
            term *= s**k
        expr += term
    return sp.expand(expr)


# ----------------------------------------------------------------------------
# examples


class TestAdd:
    def test_additive_inverse_is_empty(self):
        f = z * z
        assert add(f, negate(f)).terms == ()

    def test_like_terms_merge(self):
        e = ez()
        s = add(e, e)
        assert len(s) == 1 and s.terms[0].coeff == 2

    def test_distinct_variables(self):
        assert len(add(z1, z2)) == 2

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            add(z, z1)


class TestMul:
    def test_square(self):
        assert mul(z, z) == ExpPoly.monomial((2,), prec=PREC)

    def test_frequencies_add(self):
        assert mul(ez(1), ez(2)) == ez(3)

    def test_difference_of_squares(self):
        assert mul(one + z, one - z) == one - z * z

    def test_overflow_reports_partial_size(self):
        f = ExpPoly(1, [(1, None, (k,)) for k in range(30)], PREC)
        g = ExpPoly(1, [(1, (k,), (0,)) for k in range(30)], PREC)
        with pytest.raises(TermOverflowError) as info:
            mul(f, g, cap=100)
        assert info.value.partial_size > 100


class TestPartialDerivative:
    def test_first_derivative(self):
        assert partial_derivative(z * z, (1,)) == 2 * z

    def test_mixed(self):
        f = ExpPoly.monomial((3, 2), prec=PREC)
        assert partial_derivative(f, (2, 1)) == 12 * z1 * z2

    def test_mixed_against_sympy(self):
        a, b = sp.symbols("a b")
        f = ExpPoly(2, [(3, (2, -1), (2, 1)), (1 - 2j, None, (4, 3)), (5, (0, 1), (0, 2))], PREC)
        got = to_sympy(partial_derivative(f, (2, 1)), (a, b))
        want = sp.diff(to_sympy(f, (a, b)), a, 2, b, 1)
        assert sp.simplify(got - want) == 0

    def test_exponential_factor(self):
        g1 = mpc(3, 1)
        f = ExpPoly.exp_monomial((g1, 0), (0, 1), prec=PREC)
        assert partial_derivative(f, (1, 0)) == f * g1


class TestDirectionalDerivative:
    def test_unit_direction(self):
        assert directional_derivative(z1 * z1, (1, 0)) == 2 * z1

    def test_gradient_dot(self):
        assert directional_derivative(z1 * z2, (1, 1)) == z1 + z2

    def test_linear_in_v(self):
        assert directional_derivative(z1 * z1, (2, 0)) == 4 * z1

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            directional_derivative(z1, (0, 0))


class TestComposeAffine:
    def test_linear(self):
        assert compose_affine(z, AffineMap.from_values([[2]], [1], PREC)) == 2 * z + 1

    def test_exponential_law(self):
        got = compose_affine(ez(), AffineMap.from_values([[2]], [1], PREC))
        with precision(PREC):
            want = ez(2) * gmpy2.exp(mpfr(1))
        assert got == want

    def test_swap(self):
        swap = AffineMap.from_values([[0, 1], [1, 0]], [0, 0], PREC)
        assert compose_affine(z1 * z2, swap) == z1 * z2

    def test_against_sympy(self):
        a, b = sp.symbols("a b")
        f = ExpPoly(2, [(2, None, (2, 1)), (1j, None, (0, 3)), (1, None, (1, 0))], PREC)
        phi = AffineMap.from_values([[1, 2], [-1, 3]], [1, -2], PREC)
        got = to_sympy(compose_affine(f, phi), (a, b))
        want = sp.expand(to_sympy(f, (a, b)).subs({a: a + 2 * b + 1, b: -a + 3 * b - 2}, simultaneous=True))
        assert sp.expand(got - want) == 0


class TestComposeDiagonal:
    def test_scaling(self):
        assert compose_diagonal(z * z, DiagonalAffineMap.from_values([2], [0], PREC)) == 4 * z * z

    def test_shift(self):
        assert compose_diagonal(z, DiagonalAffineMap.from_values([1], [3], PREC)) == z + 3

    def test_binomial(self):
        got = compose_diagonal(z * z, DiagonalAffineMap.from_values([1], [1], PREC))
        assert got == z * z + 2 * z + 1


class TestEvaluate:
    def test_square(self):
        assert evaluate(z * z, [3]) == 9

    def test_exp_at_zero(self):
        assert evaluate(ez(), [0]) == 1

    def test_e(self):
        with precision(PREC):
            got = evaluate(ez() * z, [1])
            assert abs(got - gmpy2.exp(mpfr(1))) < mpfr(2) ** (-PREC + 4)
        assert abs(complex(got) - math.e) < 1e-15


class TestNormUpperBound:
    def test_attained_on_monomial(self):
        f = ExpPoly.monomial((2, 1), 3, PREC)
        K = Polydisc.from_values([0, 0], [2, 1], PREC)
        assert abs(norm_upper_bound(f, K) - 12) < mpfr(2) ** (-PREC + 12)

    def test_zero(self):
        assert norm_upper_bound(ExpPoly.zero(1, PREC), Polydisc.ball(1, 3, prec=PREC)) == 0

    def test_triangle_tight(self):
        got = norm_upper_bound(one + z, Polydisc.ball(1, 1, prec=PREC))
        with precision(PREC):
            assert 2 <= got <= 2 * (1 + mpfr(2) ** (-PREC + 10))


class TestNormSampled:
    def test_circle(self):
        v = norm_sampled(z, Polydisc.ball(1, 1, prec=PREC), grid=64)
        assert math.cos(math.pi / 64) <= v <= 1

    def test_constant(self):
        assert norm_sampled(ExpPoly.constant(5, 1, PREC), Polydisc.ball(1, 1, prec=PREC)) == 5

    def test_square_radius_two(self):
        v = norm_sampled(z * z, Polydisc.ball(1, 2, prec=PREC), grid=128)
        assert 4 * math.cos(math.pi / 128) ** 2 <= v <= 4

    def test_grid_too_small(self):
        with pytest.raises(ValueError):
            norm_sampled(z, Polydisc.ball(1, 1, prec=PREC), grid=3)


class TestIntegrate:
    def test_identity(self):
        assert integrate_univariate(z, 0, 1) == mpc("0.5")

    def test_exp(self):
        with precision(PREC):
            got = integrate_univariate(ez(), 0, 1)
            assert abs(got - (gmpy2.exp(mpfr(1)) - 1)) < mpfr(2) ** (-PREC + 8)

    def test_empty_path(self):
        assert integrate_univariate(ez(3) * z, 2, 2) == 0

    def test_antiderivative_inverts_derivative(self):
        f = ExpPoly(1, [(1, (2,), (3,)), (4, None, (2,))], PREC)
        assert rel_diff(partial_derivative(antiderivative(f), (1,)), f) <= termwise_tol()


class TestPolydisc:
    def test_radii_positive(self):
        with pytest.raises(ValueError):
            Polydisc.from_values([0], [0], PREC)

    def test_separation(self):
        a = Polydisc.ball(2, 1, prec=PREC)
        b = Polydisc.from_values([5, 0], [1, 1], PREC)
        assert a.separated_from(b) == [0]


# ----------------------------------------------------------------------------
# properties


@given(exppolys())
def test_canonical_form_negation(f):
    assert add(f, negate(f)).is_zero()


@given(st.data())
def test_leibniz(data):
    dim = data.draw(st.integers(1, 2))
    f = data.draw(exppolys(dim=dim))
    g = data.draw(exppolys(dim=dim))
    i = data.draw(st.integers(0, dim - 1))
    e = tuple(int(j == i) for j in range(dim))
    lhs = partial_derivative(mul(f, g), e)
    rhs = add(mul(partial_derivative(f, e), g), mul(f, partial_derivative(g, e)))
    assert rel_diff(lhs, rhs) <= termwise_tol()


def _affine(data, dim):
    ints = st.integers(-2, 2)
    M = [[data.draw(ints) for _ in range(dim)] for _ in range(dim)]
    b = [data.draw(ints) for _ in range(dim)]
    return AffineMap.from_values(M, b, PREC)


@given(st.data())
def test_composition_functoriality(data):
    dim = data.draw(st.integers(1, 2))
    f = data.draw(exppolys(dim=dim, max_terms=2, max_deg=2))
    psi, phi = _affine(data, dim), _affine(data, dim)
    lhs = compose_affine(compose_affine(f, psi), phi)
    rhs = compose_affine(f, psi.compose(phi))
    assert rel_diff(lhs, rhs) <= termwise_tol(slack=16)


@given(st.data())
def test_diagonal_matches_embedded_affine(data):
    dim = data.draw(st.integers(1, 3))
    f = data.draw(exppolys(dim=dim, max_terms=3, max_deg=3))
    ints = st.integers(-3, 3)
    phi = DiagonalAffineMap.from_values([data.draw(ints) for _ in range(dim)],
                                        [data.draw(ints) for _ in range(dim)], PREC)
    assert compose_diagonal(f, phi) == compose_affine(f, phi.embed())


@given(st.data())
def test_translate_is_shift_composition(data):
    dim = data.draw(st.integers(1, 2))
    f = data.draw(exppolys(dim=dim))
    c = [data.draw(st.integers(-3, 3)) for _ in range(dim)]
    assert translate(f, c) == compose_diagonal(f, DiagonalAffineMap.from_values([1] * dim, c, PREC))


@given(st.data())
def test_evaluate_commutes(data):
    dim = data.draw(st.integers(1, 2))
    f = data.draw(exppolys(dim=dim))
    g = data.draw(exppolys(dim=dim))
    s = data.draw(st.integers(-5, 5))
    pt = [complex(data.draw(st.integers(-3, 3)) / 2, data.draw(st.integers(-3, 3)) / 2) for _ in range(dim)]
    phi = _affine(data, dim)
    with precision(PREC):
        ef, eg = evaluate(f, pt), evaluate(g, pt)
        tol = mpfr(2) ** (-PREC + 40) * (1 + abs(ef)) * (1 + abs(eg))
        assert abs(evaluate(add(f, g), pt) - (ef + eg)) <= tol
        assert abs(evaluate(mul(f, g), pt) - ef * eg) <= tol
        assert abs(evaluate(scale(f, s), pt) - s * ef) <= tol
        img = phi(tuple(mpc(x) for x in pt))
        ec = evaluate(compose_affine(f, phi), pt)
        assert abs(ec - evaluate(f, img)) <= mpfr(2) ** (-PREC + 40) * (1 + abs(ec))


@given(st.data())
def test_derivative_matches_difference_quotient(data):
    f = data.draw(exppolys(dim=1))
    x = complex(data.draw(st.integers(-4, 4)) / 4, data.draw(st.integers(-4, 4)) / 4)
    with precision(PREC):
        h = mpfr(2) ** -60
        num = (evaluate(f, [mpc(x) + h]) - evaluate(f, [mpc(x) - h])) / (2 * h)
        der = evaluate(partial_derivative(f, (1,)), [x])
        assert abs(num - der) <= mpfr(2) ** -90 * (1 + norm_upper_bound(f, Polydisc.ball(1, 3, prec=PREC)))


@given(exppolys(), st.integers(4, 24), st.integers(1, 3), st.integers(-2, 2))
def test_sampled_below_upper_bound(f, grid, r, c):
    K = Polydisc.from_values([c] * f.dim, [r] * f.dim, PREC)
    assert norm_sampled(f, K, grid=grid) <= norm_upper_bound(f, K)
