import math
import random
from fractions import Fraction

import gmpy2
import pytest
from conftest import ORACLE_PREC, PREC, exppolys, rel_diff, termwise_tol
from gmpy2 import mpc, mpfr
from hypothesis import given
from hypothesis import strategies as st

from hypercyclic.fnalg import AffineMap, ExpPoly, Polydisc, evaluate, norm_upper_bound, sub
from hypercyclic.ops import (
    AdmissibilityError,
    DiagonalOperator,
    DirectionalOperator,
    ReducingSubspaceError,
    apply,
    check_admissible,
    conjugate_to_centered,
    directional_iterate_closed,
    directional_right_inverse,
    fixed_point,
    iterate,
    iterate_1d_closed,
    iterate_diag_closed_basis,
    jordan_conjugate,
    jordan_data_exact,
    linear_record,
    monomial_antiderivative,
    poly_right_inverse,
    right_inverse_1d,
    right_inverse_diag,
)
from hypercyclic.scalar import precision
from hypercyclic.witness import eigenvalue

z = ExpPoly.variable(0, 1, PREC)
z1 = ExpPoly.variable(0, 2, PREC)
z2 = ExpPoly.variable(1, 2, PREC)
U1 = Polydisc.ball(1, prec=PREC)


def diag(lam, b, alpha):
    return DiagonalOperator.from_values(lam, b, alpha, PREC)


def mono(*beta, c=1):
    return ExpPoly.monomial(beta, c, PREC)


def small(x, bits=96):
    with precision(PREC):
        return x < mpfr(2) ** -bits


# ----------------------------------------------------------------------------
# examples


class TestApply:
    def test_scaled_derivative(self):
        assert apply(diag([2], [0], [1]), z * z) == 4 * z

    def test_translation(self):
        assert apply(diag([1], [1], [1]), z) == ExpPoly.constant(1, 1, PREC)

    def test_eigen_example(self):
        T = diag([1, 3], [0, 0], [1, 0])
        f = ExpPoly.exp_monomial((1, 0), (0, 1), prec=PREC)
        assert apply(T, f) == 3 * f


class TestIterate:
    def test_zero_steps(self):
        f = ExpPoly(1, [(2, (1,), (3,))], PREC)
        assert iterate(diag([5], [1], [2]), f, 0) is f

    def test_two_steps(self):
        assert iterate(diag([2], [0], [1]), z * z * z, 2) == 48 * z

    def test_convolution(self):
        assert iterate(diag([1], [1], [1]), z * z, 2) == ExpPoly.constant(2, 1, PREC)


class TestIterate1dClosed:
    def test_cubic(self):
        assert iterate_1d_closed(2, z * z * z, 2) == 48 * z

    def test_zero_steps(self):
        f = ExpPoly(1, [(1j, (3,), (1,))], PREC)
        assert iterate_1d_closed("3+i", f, 0) == f

    def test_exponential(self):
        got = iterate_1d_closed("1/2", ExpPoly.exp_monomial((1,), (0,), prec=PREC), 3)
        assert got == ExpPoly.exp_monomial(("1/8",), (0,), "1/8", PREC)


class TestIterateDiagClosed:
    def test_one_step_hand_value(self):
        b1 = Fraction(1, 3)
        g1 = 2
        T = diag([1, 3], [b1, 0], [1, 1])
        got = iterate_diag_closed_basis(T, (g1, 0), (0, 2), 1)
        with precision(PREC):
            c = g1 * gmpy2.exp(mpfr(g1) * mpfr(1) / 3) * 3 * 2
        want = ExpPoly.exp_monomial((g1, 0), (0, 1), c, PREC)
        assert rel_diff(got, want) <= termwise_tol()
        assert rel_diff(got, apply(T, ExpPoly.exp_monomial((g1, 0), (0, 2), prec=PREC))) <= termwise_tol()

    def test_annihilated(self):
        T = diag([1, 3], [0, 0], [0, 2])
        assert iterate_diag_closed_basis(T, (1, 0), (0, 3), 2).is_zero()

    def test_zero_steps(self):
        T = diag([1, 3], [2, 0], [1, 1])
        assert iterate_diag_closed_basis(T, (1, 0), (0, 2), 0) == ExpPoly.exp_monomial((1, 0), (0, 2), prec=PREC)

    def test_rejects_uncentered(self):
        with pytest.raises(AdmissibilityError):
            iterate_diag_closed_basis(diag([1, 3], [0, 1], [1, 1]), (1, 0), (0, 2), 1)

    def test_rejects_bad_support(self):
        with pytest.raises(AdmissibilityError):
            iterate_diag_closed_basis(diag([1, 3], [0, 0], [1, 1]), (1, 1), (0, 2), 1)


def _s1d_oracle(lam: Fraction, k: int, n: int) -> Fraction:
    return Fraction(math.factorial(k), math.factorial(k + n)) / lam ** (n * k + n * (n - 1) // 2)


class TestRightInverse1d:
    def test_hand_value(self):
        assert right_inverse_1d(2, 1, 2, PREC) == mono(3, c=Fraction(1, 48))

    def test_rational_oracle(self):
        for lam in (Fraction(2), Fraction(3, 2), Fraction(-1, 3)):
            for k in range(6):
                for n in range(1, 5):
                    q = _s1d_oracle(lam, k, n)
                    got = right_inverse_1d(str(lam), k, n, PREC)
                    with precision(PREC):
                        want = mpfr(q.numerator) / q.denominator
                        assert len(got) == 1 and got.terms[0].beta == (k + n,)
                        assert abs(got.terms[0].coeff - want) <= abs(want) * mpfr(2) ** (-PREC + 8)

    def test_right_inverse_of_T0(self):
        T0 = diag([2], [0], [1])
        for k in range(21):
            assert apply(T0, right_inverse_1d(2, k, 1, PREC)) == mono(k)

    def test_lambda_one(self):
        assert right_inverse_1d(1, 0, 1, PREC) == z

    def test_lambda_zero(self):
        with pytest.raises(ZeroDivisionError):
            right_inverse_1d(0, 1, 1, PREC)


class TestRightInverseDiag:
    def test_reduces_to_1d(self):
        T = diag(["3/2"], [0], [1])
        for k in range(4):
            for n in range(1, 4):
                assert right_inverse_diag(T, None, (k,), n) == right_inverse_1d("3/2", k, n, PREC)

    def test_laws(self):
        T = diag([1, 2], [3, 0], [1, 1])
        g, b = (2, 0), (0, 1)
        e = ExpPoly.exp_monomial(g, b, prec=PREC)
        assert sub(apply(T, right_inverse_diag(T, g, b, 1)), e).is_zero()
        for n in range(2, 7):
            assert sub(apply(T, right_inverse_diag(T, g, b, n)), right_inverse_diag(T, g, b, n - 1)).is_zero()

    def test_zero_frequency_undefined(self):
        T = diag([1, 2], [3, 0], [1, 1])
        with pytest.raises(AdmissibilityError):
            right_inverse_diag(T, (0, 0), (0, 1), 1)


class TestPolyRightInverse:
    def test_antiderivative_formula(self):
        assert monomial_antiderivative((1, 1), (1, 0), PREC) == mono(2, 1, c=Fraction(1, 2))

    def test_zeroth(self):
        assert monomial_antiderivative((2, 3), (0, 0), PREC) == mono(2, 3)

    def test_round_trip(self):
        T = diag([1, 1], [1, 0], [1, 0])
        assert apply(T, poly_right_inverse(T, z2)) == z2

    def test_rejects_exponentials(self):
        T = diag([1, 1], [1, 0], [1, 0])
        with pytest.raises(AdmissibilityError):
            poly_right_inverse(T, ExpPoly.exp_monomial((1, 0), (0, 0), prec=PREC))

    def test_rejects_zero_lambda(self):
        with pytest.raises(ZeroDivisionError):
            poly_right_inverse(diag([0, 1], [0, 1], [1, 0]), z2)


class TestConjugation:
    def test_one_dimensional(self):
        T = diag([2], [1], [1])
        T0, rec = conjugate_to_centered(T)
        assert rec.data == (mpc(-1),) and T0.b == (mpc(0),)
        rng = random.Random(5)
        for _ in range(5):
            f = ExpPoly(1, [(rng.randint(1, 5), (rng.randint(-2, 2),), (rng.randint(0, 4),))
                            for _ in range(3)], PREC)
            assert rel_diff(rec(apply(T, f)), apply(T0, rec(f))) <= termwise_tol()

    def test_already_centered(self):
        T = diag([2, 3], [0, 0], [1, 1])
        T0, rec = conjugate_to_centered(T)
        assert T0 == T and all(c == 0 for c in rec.data)

    def test_translation_coordinate_kept(self):
        T0, rec = conjugate_to_centered(diag([1, 2], [5, 4], [1, 1]))
        assert rec.data == (mpc(0), mpc(-4))
        assert T0.b == (mpc(5), mpc(0))


class TestFixedPoint:
    def test_convention(self):
        assert fixed_point(diag([2, 1], [1, 0], [1, 1])) == (mpc(-1), mpc(0))

    def test_translation_has_none(self):
        assert fixed_point(diag([1, 2], [1, 0], [1, 1])) is None

    def test_general(self):
        assert fixed_point(AffineMap.from_values([[2]], [3], PREC), prec=PREC) == (mpc(-3),)

    def test_general_inconsistent(self):
        assert fixed_point(AffineMap.from_values([[1, 0], [0, 2]], [1, 0], PREC), prec=PREC) is None


class TestJordan:
    def test_identity_q(self):
        T = DirectionalOperator.from_values([[2, 1], [0, 3]], [1, 2], [1, -1], PREC)
        T2 = jordan_conjugate(T, [[1, 0], [0, 1]], T.A)
        assert T2.A == T.A and T2.b == T.b and T2.v == T.v

    def test_permutation(self):
        T = DirectionalOperator.from_values([[2, 0], [0, 3]], [0, 0], [1, 5], PREC)
        T2 = jordan_conjugate(T, [[0, 1], [1, 0]], [[3, 0], [0, 2]])
        assert T2.v == (mpc(5), mpc(1))

    def test_intertwining(self):
        A = [[1, 2], [3, 4]]
        Q, J = jordan_data_exact(A, PREC)
        T = DirectionalOperator.from_values(A, [1, -1], [1, 2], PREC)
        T2 = jordan_conjugate(T, Q, J)
        rec = linear_record(Q, PREC)
        f = ExpPoly(2, [(1, None, (2, 1)), (2, (1, 0), (0, 1))], PREC)
        lhs, rhs = rec(apply(T, f)), apply(T2, rec(f))
        rng = random.Random(1)
        with precision(PREC):
            for _ in range(5):
                p = (mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)), mpc(rng.uniform(-1, 1), rng.uniform(-1, 1)))
                a, b = evaluate(lhs, p), evaluate(rhs, p)
                assert abs(a - b) < mpfr(2) ** -64 * (1 + abs(a))

    def test_bad_decomposition(self):
        T = DirectionalOperator.from_values([[2, 0], [0, 3]], [0, 0], [1, 0], PREC)
        with pytest.raises(ValueError):
            jordan_conjugate(T, [[1, 0], [0, 1]], [[3, 0], [0, 2]])


class TestDirectional:
    def test_worked_example(self):
        T = DirectionalOperator.from_values([[2, 0], [0, 3]], [0, 0], [1, 0], PREC)
        assert directional_iterate_closed(T, z1 * z1, 2) == ExpPoly.constant(4, 2, PREC)

    def test_zero_and_one_step(self):
        T = DirectionalOperator.from_values([[2, 1], [0, 3]], [1, 0], [1, 1], PREC)
        f = ExpPoly(2, [(1, (1, 0), (1, 1))], PREC)
        assert directional_iterate_closed(T, f, 0) == f
        assert rel_diff(directional_iterate_closed(T, f, 1), apply(T, f)) <= termwise_tol()

    def test_right_inverse_constant(self):
        T = DirectionalOperator.from_values([[2]], [0], [1], PREC)
        S = directional_right_inverse(T, ExpPoly.constant(1, 1, PREC), [[1]])
        assert S == z and apply(T, S) == ExpPoly.constant(1, 1, PREC)

    def test_right_inverse_linear(self):
        T = DirectionalOperator.from_values([[2]], [0], [1], PREC)
        S = directional_right_inverse(T, z, [[1]])
        assert S == mono(2, c=Fraction(1, 4)) and apply(T, S) == z

    def test_right_inverse_zero(self):
        T = DirectionalOperator.from_values([[2]], [0], [1], PREC)
        assert directional_right_inverse(T, ExpPoly.zero(1, PREC), [[1]]).is_zero()

    def test_not_reducing(self):
        T = DirectionalOperator.from_values([[2, 1], [0, 3]], [0, 0], [1, 0], PREC)
        with pytest.raises(ReducingSubspaceError):
            directional_right_inverse(T, z1, [[0, 1]])

    def test_v_outside(self):
        T = DirectionalOperator.from_values([[2, 0], [0, 3]], [0, 0], [1, 1], PREC)
        with pytest.raises(ReducingSubspaceError):
            directional_right_inverse(T, z1, [[1, 0]])

    def test_no_fixed_point(self):
        T = DirectionalOperator.from_values([[1, 0], [0, 2]], [1, 0], [1, 0], PREC)
        with pytest.raises(ValueError):
            directional_right_inverse(T, z1, [[1, 0]])


# ----------------------------------------------------------------------------
# properties

LAMS = ["2", "3", "1/2", "1+i", "-2", "3/2", "2i", "1/3"]


@st.composite
def centered_basis(draw, max_dim=3):
    """(T centered, gamma, beta) with gamma on the translation coordinates, beta off them."""
    dim = draw(st.integers(1, max_dim))
    unit = [draw(st.booleans()) for _ in range(dim)]
    lam = [1 if u else draw(st.sampled_from(LAMS)) for u in unit]
    b = [draw(st.integers(-2, 2)) if u else 0 for u in unit]
    alpha = [draw(st.integers(0, 2)) for _ in range(dim)]
    gamma = [draw(st.sampled_from([1, -1, 2, "1+i", "1/2"])) if u else 0 for u in unit]
    beta = [0 if u else draw(st.integers(0, 5)) for u in unit]
    return DiagonalOperator.from_values(lam, b, alpha, PREC), gamma, beta


@given(centered_basis(), st.integers(0, 6))
def test_closed_diag_iterate_matches_oracle(data, n):
    T, g, b = data
    want = iterate(T, ExpPoly.exp_monomial(g, b, prec=PREC), n)
    assert rel_diff(iterate_diag_closed_basis(T, g, b, n), want) <= termwise_tol()


@given(st.sampled_from(LAMS + ["1"]), exppolys(dim=1, max_deg=5), st.integers(0, 6))
def test_closed_1d_iterate_matches_oracle(lam, f, n):
    T = DiagonalOperator.from_values([lam], [0], [1], PREC)
    assert rel_diff(iterate_1d_closed(lam, f, n), iterate(T, f, n)) <= termwise_tol()


@given(centered_basis(), st.integers(1, 6))
def test_right_inverse_laws(data, n):
    T, g, b = data
    if not any(T.alpha) or any(a and gi == 0 for a, gi in zip(T.alpha1, g)):
        return
    e = ExpPoly.exp_monomial(g, b, prec=PREC)
    assert sub(apply(T, right_inverse_diag(T, g, b, 1)), e).is_zero()
    assert sub(apply(T, right_inverse_diag(T, g, b, n + 1)), right_inverse_diag(T, g, b, n)).is_zero()


@given(st.data())
def test_poly_right_inverse_round_trip(data):
    dim = data.draw(st.integers(1, 3))
    lam = [data.draw(st.sampled_from(["1", "2", "1/2", "1+i", "-3"])) for _ in range(dim)]
    b = [data.draw(st.integers(-2, 2)) for _ in range(dim)]
    alpha = [data.draw(st.integers(0, 2)) for _ in range(dim)]
    T = DiagonalOperator.from_values(lam, b, alpha, PREC)
    g = data.draw(exppolys(dim=dim, exp=False, max_deg=3))
    r = norm_upper_bound(sub(apply(T, poly_right_inverse(T, g)), g), Polydisc.ball(dim, prec=PREC))
    assert small(r)


@given(st.data())
def test_conjugation_laws(data):
    dim = data.draw(st.integers(1, 2))
    lam = [data.draw(st.sampled_from(["1", "2", "1/2", "-3", "1+i"])) for _ in range(dim)]
    b = [data.draw(st.integers(-3, 3)) for _ in range(dim)]
    T = DiagonalOperator.from_values(lam, b, [data.draw(st.integers(0, 2)) for _ in range(dim)], PREC)
    f = data.draw(exppolys(dim=dim, max_terms=2))
    T0, rec = conjugate_to_centered(T)
    assert T0.is_centered
    assert rel_diff(rec.inverse()(rec(f)), f) <= termwise_tol()
    assert rel_diff(rec(apply(T, f)), apply(T0, rec(f))) <= termwise_tol()


@given(st.data())
def test_linear_record_round_trip(data):
    Q = [[data.draw(st.integers(-2, 2)) for _ in range(2)] for _ in range(2)]
    if Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0] == 0:
        return
    f = data.draw(exppolys(dim=2, max_terms=2, max_deg=2))
    rec = linear_record(Q, PREC)
    assert rel_diff(rec.inverse()(rec(f)), f) <= termwise_tol(slack=16)


@given(centered_basis())
def test_eigen_relation(data):
    T, g, b = data
    # same symbol, derivative only in the translation coordinates
    T = DiagonalOperator(T.phi, T.alpha1, PREC, T.lam_exact, T.b_exact)
    e = ExpPoly.exp_monomial(g, b, prec=PREC)
    assert sub(apply(T, e), e * eigenvalue(T, g, b)).is_zero()


@st.composite
def directional_ops(draw):
    """Strictly diagonally dominant A (hence invertible) and a nonzero v."""
    dim = draw(st.integers(2, 3))
    off = st.integers(-1, 1)
    A = [[draw(st.sampled_from([3, -3, 4, "3+i"])) if i == j else draw(off) for j in range(dim)]
         for i in range(dim)]
    b = [draw(st.integers(-2, 2)) for _ in range(dim)]
    v = [draw(st.sampled_from([1, -1, 2]))] + [draw(st.integers(-2, 2)) for _ in range(dim - 1)]
    return A, b, v


@given(directional_ops(), st.integers(0, 5), st.data())
def test_directional_closed_matches_oracle(Abv, k, data):
    T = DirectionalOperator.from_values(*Abv, PREC)
    f = data.draw(exppolys(dim=T.dim, max_terms=2, max_deg=3, gmax=1))
    deep = iterate(DirectionalOperator.from_values(*Abv, ORACLE_PREC), f.with_precision(ORACLE_PREC), k)
    assert rel_diff(directional_iterate_closed(T, f, k).with_precision(ORACLE_PREC), deep) <= termwise_tol()


@given(st.data())
def test_directional_right_inverse_law(data):
    # block-diagonal A with v in the first block: span of the first block reduces A
    a = data.draw(st.sampled_from(["2", "1/2", "3", "1+i", "-2"]))
    c = data.draw(st.sampled_from(["2", "1/3", "-1", "i"]))
    b = [data.draw(st.integers(-2, 2)) for _ in range(2)]
    v0 = data.draw(st.sampled_from([1, 2, "1+i", -3]))
    T = DirectionalOperator.from_values([[a, 0], [0, c]], b, [v0, 0], PREC)
    g = data.draw(exppolys(dim=2, max_terms=2, max_deg=2, gmax=1))
    S = directional_right_inverse(T, g, [[1, 0]])
    r = norm_upper_bound(sub(apply(T, S), g), Polydisc.ball(2, prec=PREC))
    assert small(r * (1 / (1 + norm_upper_bound(g, Polydisc.ball(2, prec=PREC)))))


def test_check_admissible_accepts_pattern():
    check_admissible(diag([1, 2], [3, 0], [1, 1]), (1, 0), (0, 4))
