#include <cmath>

#include "doctest.h"
#include "germlab/characters.hpp"
#include "germlab/integrate.hpp"
#include "germlab/matrix.hpp"
#include "test_util.hpp"

using namespace germlab;
using test::rand_int;
using test::random_series;

namespace {

ExactValue random_value(int p) {
    ExactValue v(p);
    for (int k = 0; k < 3; ++k)
        v += ExactValue::zeta_power(p, rand_int(0, 4 * p - 1)) *
             Rational(rand_int(-4, 4), rand_int(1, 3));
    return v;
}

MatrixLF random_unipotent(int p, int r) {
    MatrixLF n = MatrixLF::identity(p, r);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) n.set(i, j, random_series(p, -3, 3));
    return n;
}

} // namespace

TEST_CASE("psi is the fixed p-th root character") {
    const int p = 7;
    CHECK(psi_char(ResidueElem(0, p)) == ExactValue::one(p));
    // psi(1) = zeta_p = zeta^4 in Q(zeta_28)
    ExactValue z4 = psi_char(ResidueElem(1, p));
    CHECK(z4 == ExactValue::zeta_power(p, 4));
    CHECK(z4.coeff(4) == Rational(1));
    for (int k = 0; k < z4.dim(); ++k)
        if (k != 4) CHECK(z4.coeff(k) == Rational(0));

    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b)
            CHECK(psi_char(ResidueElem(a, p)) * psi_char(ResidueElem(b, p)) ==
                  psi_char(ResidueElem(a + b, p)));
}

TEST_CASE("Psi has conductor zero") {
    const int p = 7;
    CHECK(Psi_char(LaurentSeries::from_int(p, 5)) == ExactValue::one(p));
    CHECK(Psi_char(LaurentSeries::monomial(p, 2, 3)) == ExactValue::one(p));
    CHECK(Psi_char(LaurentSeries::monomial(p, 1, -1)) == psi_char(ResidueElem(1, p)));
    // 3 t^{-2}: the coefficient at -1 is 0
    CHECK(Psi_char(LaurentSeries::monomial(p, 3, -2)) == ExactValue::one(p));
    // not known mod t^0: unreadable
    CHECK_THROWS_AS(Psi_char(LaurentSeries::monomial(p, 1, -3, -1)), PrecisionError);
}

TEST_CASE("theta on unipotents") {
    const int p = 7;
    CHECK(theta_char(MatrixLF::identity(p, 3)) == ExactValue::one(p));

    MatrixLF n = MatrixLF::identity(p, 2);
    n.set(0, 1, LaurentSeries::monomial(p, 2, -1));
    CHECK(theta_char(n) == ExactValue::zeta_power(p, 4)); // Psi(t^{-1}) = zeta_p

    CHECK_THROWS_AS(theta_char(MatrixLF::antidiag_ones(p, 2)), PreconditionError);

    for (int i = 0; i < 100; ++i) {
        MatrixLF a = random_unipotent(p, 3);
        MatrixLF b = random_unipotent(p, 3);
        CHECK(theta_char(a) * theta_char(b) == theta_char(a * b));
    }
}

TEST_CASE("gauss sums") {
    // p = 3: g = zeta_3 - zeta_3^2 and g^2 = -3
    ExactValue g3 = gauss_sum(3);
    CHECK(g3 == ExactValue::zeta_power(3, 4) - ExactValue::zeta_power(3, 8));
    CHECK(g3 * g3 == ExactValue::from_rational(3, Rational(-3)));
    CHECK(gauss_sum(5) * gauss_sum(5) == ExactValue::from_rational(5, Rational(5)));
    CHECK(gauss_sum(7) * gauss_sum(7) == ExactValue::from_rational(7, Rational(-7)));
    for (int p : {3, 5, 7, 11, 13})
        CHECK(gauss_sum(p) * gauss_sum(p) ==
              ExactValue::from_rational(p, Rational(legendre(-1, p) * p)));
}

TEST_CASE("sqrt_q is the positive square root") {
    for (int p : {3, 5, 7, 11, 13}) {
        ExactValue s = sqrt_q(p);
        CHECK(s * s == ExactValue::from_rational(p, Rational(p)));
        // development-side sign pin under zeta = e^{2 pi i/(4p)}: the value
        // embeds to +sqrt(p); float only appears here, in test code
        long double re = 0, im = 0;
        s.embed(re, im);
        CHECK(std::abs(static_cast<double>(re) - std::sqrt(static_cast<double>(p))) < 1e-9);
        CHECK(std::abs(static_cast<double>(im)) < 1e-9);
    }
    CHECK(sqrt_q(5) == gauss_sum(5));
    // p = 3 mod 4: sqrt_q = -i g = zeta^{3p} g
    CHECK(sqrt_q(3) == ExactValue::zeta_power(3, 9) * gauss_sum(3));
    CHECK(sqrt_q(7) == ExactValue::zeta_power(7, 21) * gauss_sum(7));
}

TEST_CASE("half-integer q powers") {
    for (int p : {5, 7}) {
        CHECK(q_half_power(p, 2) == ExactValue::from_rational(p, Rational(p)));
        CHECK(q_half_power(p, -2) == ExactValue::from_rational(p, Rational(1, p)));
        CHECK(q_half_power(p, 3) * q_half_power(p, -3) == ExactValue::one(p));
        CHECK(q_half_power(p, 1) * q_half_power(p, 1) ==
              ExactValue::from_rational(p, Rational(p)));
    }
}

TEST_CASE("exact value ring laws") {
    const int p = 7;
    for (int i = 0; i < 40; ++i) {
        ExactValue a = random_value(p), b = random_value(p), c = random_value(p);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!a.is_zero()) CHECK(a * a.inverse() == ExactValue::one(p));
    }
    // zeta has exact order 4p
    ExactValue z = ExactValue::zeta_power(p, 1);
    CHECK(z.pow(4 * p) == ExactValue::one(p));
    CHECK(z.pow(2 * p) == -ExactValue::one(p));
}

TEST_CASE("json encoding") {
    ExactValue v = ExactValue::from_rational(7, Rational(1, 7));
    std::string j = v.to_json();
    CHECK(j.substr(0, 40) == std::string("{\"p\":7,\"basis\":\"zeta_28_power\",\"coeffs\":"));
    CHECK(j.find("\"1/7\"") != std::string::npos);
}

TEST_CASE("integrate volumes and character sums") {
    const int p = 7;
    LaurentSeries zero = LaurentSeries::zero(p);
    auto const_one = [p](const std::vector<LaurentSeries>&) { return ExactValue::one(p); };

    DomainSpec d0{{{zero, 0}}, {}, 0};
    CHECK(integrate(p, d0, const_one) == ExactValue::one(p));

    for (int m : {1, 2, 3}) {
        DomainSpec dm{{{zero, m}}, {}, m};
        CHECK(integrate(p, dm, const_one) ==
              ExactValue::from_rational(p, Rational::int_pow(p, -m)));
    }

    // full character sum: int_O Psi(x t^{-1}) dx = 0
    LaurentSeries tinv = LaurentSeries::monomial(p, 1, -1);
    auto psi_x = [&](const std::vector<LaurentSeries>& x) { return Psi_char(x[0] * tinv); };
    DomainSpec d1{{{zero, 0}}, {}, 1};
    CHECK(integrate(p, d1, psi_x).is_zero());

    // stabilization: raising the reduction modulus does not move the value
    DomainSpec d2{{{zero, 0}}, {}, 2};
    CHECK(integrate(p, d2, psi_x) == integrate(p, d1, psi_x));

    // budget guard
    DomainSpec dbig{{{zero, 0}, {zero, 0}, {zero, 0}}, {}, 4};
    CHECK_THROWS_AS(integrate(p, dbig, const_one, 1000), BudgetError);
}

TEST_CASE("integrate respects polynomial constraints") {
    const int p = 5;
    LaurentSeries one = LaurentSeries::from_int(p, 1);
    // x = 1 mod t: the coset 1 + tO has volume q^{-1}
    DomainSpec d;
    d.reduction_modulus = 2;
    d.vars.push_back({LaurentSeries::zero(p), 0});
    d.constraints.push_back({MultiPoly{{{one, {1}},
                                        {LaurentSeries::from_int(p, -1), {0}}}},
                             1});
    auto const_one = [p](const std::vector<LaurentSeries>&) { return ExactValue::one(p); };
    CHECK(integrate(p, d, const_one) == ExactValue::from_rational(p, Rational(1, p)));
}
