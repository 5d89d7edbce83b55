import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wignerreg.cli.parser import parse_kernel, parse_ncpoly, parse_polynomial
from wignerreg.opalg import QQi
from wignerreg.opalg.kernel import (
    KernelSpec,
    cohen_bar,
    cohen_tilde,
    kernel_operators,
    left_divide_fourier,
    operator_A,
    q1_tilde,
)
from wignerreg.opalg.ncpoly import (
    NCPolynomial,
    apply_symbolic,
    commutator,
    commute,
    generators,
    multiply,
    normal_order,
    random_operator,
    random_polynomial,
    twisted_laplacian,
)
from wignerreg.opalg.poly import Polynomial
from wignerreg.opalg.substitution import (
    CommutationError,
    SubstitutionMap,
    bar_map,
    identity_map,
    substitute,
    tilde_map,
    wig_bar,
    wig_bar_inverse,
    wig_tilde,
    wig_tilde_inverse,
)

I = QQi(0, 1)


def op(src, n=1):
    return parse_ncpoly(src, n)


class TestQQi:
    def test_arithmetic_is_exact(self):
        a = QQi(1, 2) / 3
        assert a * 3 == QQi(1, 2)
        assert QQi(0, 1) * QQi(0, 1) == QQi(-1)
        assert (QQi(1, 1) * QQi(1, -1)) == QQi(2)

    def test_powers_of_minus_i(self):
        assert [QQi(1).times_minus_i_pow(k) for k in range(4)] == [QQi(1), QQi(0, -1), QQi(-1), QQi(0, 1)]

    def test_coerce_and_text(self):
        assert QQi.coerce(Fraction(1, 2)) == QQi(1) / 2
        assert QQi.coerce(2.5) == QQi(5) / 2
        assert QQi(1, -1).text() == "(1,-1)"


class TestNormalOrder:
    def test_dx_times_x(self):
        x, dx = ("gen", "x", 0), ("gen", "Dx", 0)
        assert normal_order(("mul", dx, x)) == op("x*Dx") - I

    def test_disjoint_variables_commute(self):
        assert normal_order(("mul", ("gen", "x", 0), ("gen", "Dy", 0))) == NCPolynomial.monomial([1], [0], [0], [1])

    def test_square_of_euler_operator(self):
        e = ("mul", ("gen", "x", 0), ("gen", "Dx", 0))
        expected = NCPolynomial.monomial([2], [0], [2], [0]) - NCPolynomial.monomial([1], [0], [1], [0], I)
        assert normal_order(("pow", e, 2)) == expected

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            normal_order(("pow", ("gen", "x", 0), -1))

    def test_dimension_inferred_from_indices(self):
        assert normal_order(("gen", "Dy", 2)).dim_n == 3


class TestMultiply:
    def test_identity_is_neutral(self):
        P = random_operator(2, 4, 5, random.Random(0))
        one = NCPolynomial.identity(2)
        assert multiply(one, P) == P
        assert multiply(P, one) == P

    def test_dx_x(self):
        assert multiply(op("Dx"), op("x")) == NCPolynomial.monomial([1], [0], [1], [0]) - I

    def test_x_dx_is_normal(self):
        assert multiply(op("x"), op("Dx")) == NCPolynomial.monomial([1], [0], [1], [0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            multiply(op("x", 1), op("x", 2))

    def test_associative(self):
        rng = random.Random(3)
        for _ in range(20):
            P, Q, R = (random_operator(1, 3, 3, rng) for _ in range(3))
            assert multiply(multiply(P, Q), R) == multiply(P, multiply(Q, R))

    def test_oracle_against_symbolic_application(self):
        # 200 random (P, Q, u): applying P Q equals applying Q then P
        rng = random.Random(2024)
        for _ in range(200):
            n = rng.choice((1, 2))
            P = random_operator(n, 4, 3, rng)
            Q = random_operator(n, 4, 3, rng)
            u = random_polynomial(2 * n, 4, 4, rng)
            assert apply_symbolic(multiply(P, Q), u) == apply_symbolic(P, apply_symbolic(Q, u))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_oracle_property(self, seed):
        rng = random.Random(seed)
        P, Q = random_operator(1, 3, 3, rng), random_operator(1, 3, 3, rng)
        u = random_polynomial(2, 3, 3, rng)
        assert apply_symbolic(P * Q, u) == apply_symbolic(P, apply_symbolic(Q, u))


class TestApplySymbolic:
    def test_derivative_of_square(self):
        u = parse_polynomial("z1^2", [("z", 1), ("z", 2)])
        assert apply_symbolic(op("Dx"), u) == parse_polynomial("(0,-2)*z1", [("z", 1), ("z", 2)])

    def test_euler_on_linear(self):
        u = parse_polynomial("z1", [("z", 1), ("z", 2)])
        assert apply_symbolic(op("x*Dx"), u) == parse_polynomial("(0,-1)*z1", [("z", 1), ("z", 2)])

    def test_twisted_laplacian_on_constant(self):
        one = Polynomial.constant(2)
        expected = parse_polynomial("(z1^2+z2^2)/4", [("z", 1), ("z", 2)])
        assert apply_symbolic(twisted_laplacian(), one) == expected

    def test_wrong_variable_count(self):
        with pytest.raises(ValueError):
            apply_symbolic(op("x"), Polynomial.constant(3))


class TestGeneratorTables:
    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_bar_table(self, N):
        g = generators(N)
        for j in range(N):
            x, y, dx, dy = g["x"][j], g["y"][j], g["Dx"][j], g["Dy"][j]
            assert wig_bar(x) == (x + y) / 2
            assert wig_bar(y) == (dx - dy) / 2
            assert wig_bar(dx) == dx + dy
            assert wig_bar(dy) == y - x

    @pytest.mark.parametrize("N", [1, 2, 3])
    def test_tilde_table(self, N):
        g = generators(N)
        for j in range(N):
            x, y, dx, dy = g["x"][j], g["y"][j], g["Dx"][j], g["Dy"][j]
            assert wig_tilde(x) == x - dy / 2
            assert wig_tilde(y) == x + dy / 2
            assert wig_tilde(dx) == y + dx / 2
            assert wig_tilde(dy) == dx / 2 - y

    def test_tilde_of_twisted_laplacian(self):
        expected = op("x^2/2 + 2*x*y + 2*y^2 + Dx^2/2 + Dx*Dy/2 + Dy^2/8")
        assert wig_tilde(twisted_laplacian()) == expected

    def test_tilde_of_euler_operator(self):
        g = generators(1)
        x, y, dx, dy = g["x"][0], g["y"][0], g["Dx"][0], g["Dy"][0]
        assert wig_tilde(x * dx) == (x - dy / 2) * (y + dx / 2)

    def test_inverse_of_image(self):
        assert wig_tilde_inverse(op("y + Dx/2")) == op("Dx")
        assert wig_tilde_inverse(NCPolynomial.identity(2)) == NCPolynomial.identity(2)


class TestSubstitution:
    def test_identity_map(self):
        P = random_operator(2, 4, 6, random.Random(5))
        assert substitute(P, identity_map(2)) == P

    def test_round_trips(self):
        rng = random.Random(9)
        for _ in range(30):
            n = rng.choice((1, 2))
            P = random_operator(n, 5, 5, rng)
            assert wig_tilde_inverse(wig_tilde(P)) == P
            assert wig_bar_inverse(wig_bar(P)) == P
            assert wig_tilde(wig_tilde_inverse(P)) == P

    def test_homomorphism(self):
        rng = random.Random(12)
        for _ in range(20):
            P, Q = random_operator(1, 3, 3, rng), random_operator(1, 3, 3, rng)
            for f in (wig_bar, wig_tilde):
                assert f(P * Q) == f(P) * f(Q)

    def test_linearity(self):
        rng = random.Random(13)
        P, Q = random_operator(2, 3, 4, rng), random_operator(2, 3, 4, rng)
        c = QQi(2, -1) / 3
        assert wig_tilde(P * c + Q) == wig_tilde(P) * c + wig_tilde(Q)

    @pytest.mark.parametrize("make", [tilde_map, bar_map])
    def test_commutation_relations_preserved(self, make):
        N = 2
        S = make(N)
        X, Y, DX, DY = S.images
        one = NCPolynomial.identity(N)
        for j in range(N):
            assert commutator(DX[j], X[j]) == one * QQi(0, -1)
            assert commutator(DY[j], Y[j]) == one * QQi(0, -1)
            assert commutator(DX[j], Y[j]).is_zero()
            assert commutator(DY[j], X[j]).is_zero()
        flat = [v for vec in S.images for v in vec]
        for a in range(len(flat)):
            for b in range(len(flat)):
                ja, jb = a % N, b % N
                if ja != jb:
                    assert commutator(flat[a], flat[b]).is_zero()

    def test_non_commuting_images_rejected(self):
        g = generators(1)
        bad = SubstitutionMap(((g["x"][0] + g["Dx"][0],), g["y"], g["Dx"], g["Dy"]), None, "bad")
        # a single entry per vector always commutes; two non-commuting entries must fail
        assert substitute(op("x"), bad) == op("x + Dx")
        g2 = generators(2)
        bad2 = SubstitutionMap(((g2["x"][0], g2["Dx"][0]), g2["y"], g2["Dx"], g2["Dy"]), None, "bad")
        with pytest.raises(CommutationError):
            substitute(NCPolynomial.generator("x", 0, 2), bad2)

    def test_remark_commuting_sums(self):
        # (Df + Ds)^a (Ms - Mf)^b = (Ms - Mf)^b (Df + Ds)^a and the analogous (Df - Ds), (Ms + Mf) identity
        g = generators(1)
        x, y, dx, dy = g["x"][0], g["y"][0], g["Dx"][0], g["Dy"][0]
        for a in range(4):
            for b in range(4):
                assert (dx + dy) ** a * (y - x) ** b == (y - x) ** b * (dx + dy) ** a
                assert (dx - dy) ** a * (y + x) ** b == (y + x) ** b * (dx - dy) ** a


class TestKernelOperators:
    def test_squares(self):
        R, T, Rs, Ts = kernel_operators(parse_kernel("p1=xi^2+eta^2", 1))
        assert R[0] == op("2*Dx")
        assert T[0] == op("2*Dy")
        assert Rs[0] == op("2*(Dx+Dy)")
        assert Ts[0] == op("2*(y-x)")

    def test_zero_kernel(self):
        for vec in kernel_operators(KernelSpec.zero(2)):
            assert all(v.is_zero() for v in vec)

    def test_product_kernel(self):
        R, T, Rs, Ts = kernel_operators(parse_kernel("p1=xi*eta", 1))
        assert R[0] == op("Dy")
        assert T[0] == op("Dx")
        assert Rs[0] == op("y-x")
        assert Ts[0] == op("Dx+Dy")

    def test_vectors_commute(self):
        k = parse_kernel("p1=xi^3+xi*eta;p2=eta^2-xi", 2)
        for vec in kernel_operators(k):
            assert commute(vec)

    def test_complex_kernel_rejected(self):
        with pytest.raises(ValueError):
            parse_kernel("p1=(0,1)*xi", 1)

    def test_fourier_form_of_kernel_derivative(self):
        # i d/dxi kappa_hat = (d1 p)(xi, eta) kappa_hat, checked by central differences
        import numpy as np

        rng = random.Random(4)
        pts = np.random.default_rng(4).uniform(-1, 1, size=(20, 2))
        h = 1e-5
        for _ in range(10):
            p = random_polynomial(2, 4, 4, rng).real_part()
            k = KernelSpec(1, (p,))
            xi, eta = pts[:, 0], pts[:, 1]
            dk = (k.kappa_hat([xi + h], [eta]) - k.kappa_hat([xi - h], [eta])) / (2 * h)
            rhs = np.real(p.derivative(0)(xi, eta)) * k.kappa_hat([xi], [eta])
            assert np.max(np.abs(1j * dk - rhs)) <= 1e-5 * (1 + np.max(np.abs(rhs)))


class TestCohenMaps:
    def test_zero_kernel_reduces_to_wigner(self):
        rng = random.Random(21)
        k = KernelSpec.zero(2)
        for _ in range(10):
            B = random_operator(2, 4, 4, rng)
            assert cohen_tilde(B, k) == wig_tilde(B)
            assert cohen_bar(B, k) == wig_bar(B)

    def test_x_with_square_kernel(self):
        k = parse_kernel("p1=xi^2+eta^2", 1)
        assert cohen_tilde(op("x"), k) == op("x - Dy/2 - 2*Dx")

    def test_bar_inverts_tilde(self):
        rng = random.Random(22)
        k = parse_kernel("p1=xi^2+xi*eta;p2=eta^3", 2)
        for _ in range(10):
            B = random_operator(2, 3, 4, rng)
            assert cohen_bar(cohen_tilde(B, k), k) == B
            assert cohen_tilde(cohen_bar(B, k), k) == B

    def test_generator_images_recover_generators(self):
        # substituting the Q[generator u] images through the bar images returns the generators
        k = parse_kernel("p1=xi^2+eta^2", 1)
        for name in ("x", "y", "Dx", "Dy"):
            assert cohen_bar(cohen_tilde(op(name), k), k) == op(name)

    def test_second_closing_family(self):
        # cohen_tilde of sum c x^a y^b is p(x - Dy/2 - R, x + Dy/2 - R)
        k = parse_kernel("p1=xi^2+eta^2", 1)
        R, _, _, _ = kernel_operators(k)
        p = parse_polynomial("1+z^2+zeta^2+z*zeta", [("z", 1), ("zeta", 1)])
        B = NCPolynomial.from_multiplication(p)
        g = generators(1)
        x, dy = g["x"][0], g["Dy"][0]
        expected = p.substitute_commuting([x - dy / 2 - R[0], x + dy / 2 - R[0]], NCPolynomial.identity(1))
        assert cohen_tilde(B, k) == expected


class TestQ1:
    def test_q_one_is_identity(self):
        k = parse_kernel("p1=xi^2;q=1", 1)
        assert operator_A(k) == NCPolynomial.identity(1)
        B = random_operator(1, 3, 4, random.Random(1))
        assert q1_tilde(B, k) == cohen_tilde(B, k)

    def test_q_square_zero_kernel(self):
        k = parse_kernel("q=1+xi1^2", 1)
        assert q1_tilde(NCPolynomial.identity(1), k) == wig_tilde(op("1 + (Dx+Dy)^2"))

    def test_zero_operator(self):
        k = parse_kernel("p1=xi*eta;q=1+xi1^2", 1)
        assert q1_tilde(NCPolynomial.zero(1), k).is_zero()

    def test_missing_q(self):
        with pytest.raises(ValueError):
            q1_tilde(op("x"), parse_kernel("p1=xi^2", 1))

    def test_a_times_b(self):
        rng = random.Random(31)
        k = parse_kernel("p1=xi^2+eta^2;q=1+xi1^2", 1)
        A = operator_A(k)
        for _ in range(5):
            B = random_operator(1, 3, 3, rng)
            assert q1_tilde(B, k) == cohen_tilde(A * B, k)


class TestLeftDivision:
    def test_recovers_factor(self):
        rng = random.Random(41)
        q = parse_polynomial("1+xi1^2", [("xi", 1), ("eta", 1)])
        qop = NCPolynomial.from_fourier_multiplier(q)
        for _ in range(10):
            B = random_operator(1, 3, 4, rng)
            assert left_divide_fourier(qop * B, q) == B

    def test_not_divisible(self):
        q = parse_polynomial("1+xi1^2", [("xi", 1), ("eta", 1)])
        assert left_divide_fourier(op("x"), q) is None
