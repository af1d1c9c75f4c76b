#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/modular.hpp"
#include "gerbegw/rational.hpp"

using namespace gerbegw;

namespace {

// Floating-point evaluation, used only as an independent oracle here.
std::complex<double> approx(const Cyclotomic& c)
{
    std::complex<double> s = 0;
    const double two_pi = 6.283185307179586;
    for (const auto& [k, r] : c.terms())
        s += r.gmp().get_d() * std::polar(1.0, two_pi * static_cast<double>(k) / c.conductor());
    return s;
}

Cyclotomic random_cyclotomic(std::mt19937& rng)
{
    static const int conductors[] = {1, 3, 4, 5, 8, 12, 15};
    std::uniform_int_distribution<int> pick(0, 6), num(-5, 5), den(1, 4);
    const int n = conductors[pick(rng)];
    std::map<long, Rational> t;
    for (int k = 0; k < n; ++k)
        t[k] = Rational(num(rng), den(rng));
    return Cyclotomic::from_terms(n, t);
}

} // namespace

TEST(Rational, LowestTermsAndParse)
{
    EXPECT_EQ(Rational(6, 4).str(), "3/2");
    EXPECT_EQ(Rational(-6, -4), Rational(3, 2));
    EXPECT_EQ(Rational(4, -2).str(), "-2");
    EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
    EXPECT_THROW(Rational::parse("10/-4"), InvalidInput); // serialized denominators are positive
    EXPECT_EQ(Rational::parse("7"), Rational(7));
    EXPECT_THROW(Rational::parse("1/0"), InvalidInput);
    EXPECT_THROW(Rational::parse("x"), InvalidInput);
    EXPECT_THROW(Rational(1) / Rational(0), InvalidInput);
}

TEST(Rational, PowAndInverse)
{
    EXPECT_EQ(Rational(2, 3).pow(3), Rational(8, 27));
    EXPECT_EQ(Rational(2, 3).pow(-2), Rational(9, 4));
    EXPECT_EQ(Rational(5).pow(0), Rational(1));
    EXPECT_EQ(Rational(-3, 7).inverse(), Rational(-7, 3));
}

TEST(Rational, BigValuesStayExact)
{
    Rational f(1);
    for (int i = 1; i <= 30; ++i)
        f *= Rational(i);
    EXPECT_EQ(f.str(), "265252859812191058636308480000000");
    EXPECT_EQ((f / (f + Rational(1))) * ((f + Rational(1)) / f), Rational(1));
}

TEST(Modular, BasicsAndSolver)
{
    EXPECT_EQ(modular::mod(-7, 5), 3);
    EXPECT_EQ(modular::inv_mod(3, 7), 5);
    EXPECT_THROW(modular::inv_mod(2, 4), Defect);
    EXPECT_EQ(modular::euler_phi(12), 4);
    EXPECT_TRUE(modular::is_prime(97));
    EXPECT_FALSE(modular::is_prime(91));
    EXPECT_EQ(modular::primitive_root(7), 3);

    std::mt19937 rng(7);
    for (int m : {2, 4, 6, 8, 9, 12, 36}) {
        std::uniform_int_distribution<int> v(0, m - 1);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::vector<std::int64_t>> rows(4, std::vector<std::int64_t>(3));
            std::vector<std::int64_t> x{v(rng), v(rng), v(rng)}, rhs(4, 0);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    rows[i][j] = v(rng);
                    rhs[i] = modular::mod(rhs[i] + rows[i][j] * x[j], m);
                }
            auto sol = modular::solve_mod(rows, rhs, m, 3);
            ASSERT_TRUE(sol.has_value());
            for (std::size_t i = 0; i < 4; ++i) {
                std::int64_t s = 0;
                for (std::size_t j = 0; j < 3; ++j)
                    s = modular::mod(s + rows[i][j] * (*sol)[j], m);
                EXPECT_EQ(s, rhs[i]);
            }
        }
    }
    // 2x = 1 has no solution modulo 4.
    EXPECT_FALSE(modular::solve_mod({{2}}, {1}, 4, 1).has_value());
}

TEST(Cyclotomic, RootsOfUnity)
{
    EXPECT_TRUE(Cyclotomic::root_of_unity(1, 0).is_one());
    EXPECT_EQ(Cyclotomic::root_of_unity(2, 1), Cyclotomic(-1));
    const Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
    EXPECT_EQ(i * i, Cyclotomic(-1));
    EXPECT_EQ((Cyclotomic(1) + i) * (Cyclotomic(1) - i), Cyclotomic(2));
    EXPECT_EQ(Cyclotomic::root_of_unity(12, 4), Cyclotomic::root_of_unity(3, 1));
    EXPECT_EQ(Cyclotomic::root_of_unity(5, 1).pow(5), Cyclotomic(1));
    EXPECT_EQ(Cyclotomic::root_of_unity(7, -1), Cyclotomic::root_of_unity(7, 6));
}

TEST(Cyclotomic, MinimalConductor)
{
    // zeta_2 + zeta_3 = -1 + zeta_3 lies in Q(zeta_6) = Q(zeta_3).
    const Cyclotomic s = Cyclotomic::root_of_unity(2, 1) + Cyclotomic::root_of_unity(3, 1);
    EXPECT_EQ(s, Cyclotomic(-1) + Cyclotomic::root_of_unity(3, 1));
    EXPECT_EQ(s.conductor(), 3);
    EXPECT_EQ(Cyclotomic::root_of_unity(6, 1).conductor(), 3);

    const Cyclotomic z8 = Cyclotomic::root_of_unity(8, 1);
    const Cyclotomic sqrt2 = z8 + z8.conj();
    EXPECT_EQ(sqrt2.conductor(), 8);
    EXPECT_EQ(sqrt2 * sqrt2, Cyclotomic(2));
    EXPECT_TRUE((sqrt2 * sqrt2).is_rational());

    const Cyclotomic z5 = Cyclotomic::root_of_unity(5, 1);
    Cyclotomic sum;
    for (int k = 0; k < 5; ++k)
        sum += z5.pow(k);
    EXPECT_TRUE(sum.is_zero());
}

TEST(Cyclotomic, Galois)
{
    const Cyclotomic z5 = Cyclotomic::root_of_unity(5, 1);
    EXPECT_EQ(z5.galois(2), Cyclotomic::root_of_unity(5, 2));
    EXPECT_EQ(z5.galois(-1), Cyclotomic::root_of_unity(5, 4));
    EXPECT_THROW(Cyclotomic::root_of_unity(8, 1).galois(2), InvalidInput);
    // zeta_6 = -zeta_3^2 has conductor 3, so j = 2 is a valid automorphism there.
    EXPECT_EQ(Cyclotomic::root_of_unity(6, 1).galois(2), Cyclotomic::root_of_unity(6, 5));

    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
        const Cyclotomic a = random_cyclotomic(rng);
        for (long j : {7L, 11L, 13L})
            for (long k : {17L, 19L})
                EXPECT_EQ(a.galois(j).galois(k), a.galois(j * k));
    }
}

TEST(Cyclotomic, FieldAxiomsAgainstFloatingPoint)
{
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
        const Cyclotomic a = random_cyclotomic(rng), b = random_cyclotomic(rng), c = random_cyclotomic(rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a - a, Cyclotomic());
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), Cyclotomic(1));
        }
        EXPECT_LT(std::abs(approx(a * b) - approx(a) * approx(b)), 1e-9);
        EXPECT_LT(std::abs(approx(a + b) - (approx(a) + approx(b))), 1e-9);
        EXPECT_LT(std::abs(approx(a.conj()) - std::conj(approx(a))), 1e-9);
        // a times its conjugate is real and nonnegative.
        const std::complex<double> n = approx(a * a.conj());
        EXPECT_LT(std::abs(n.imag()), 1e-9);
        EXPECT_GE(n.real(), -1e-9);
    }
    EXPECT_THROW(Cyclotomic().inverse(), InvalidInput);
}

TEST(Cyclotomic, RationalRoundTripAndOrdering)
{
    const Rational r(-22, 7);
    EXPECT_EQ(Cyclotomic(r).to_rational(), r);
    EXPECT_THROW(Cyclotomic::root_of_unity(3, 1).to_rational(), InvalidInput);
    EXPECT_TRUE(Cyclotomic(3) < Cyclotomic(4) || Cyclotomic(4) < Cyclotomic(3));
    EXPECT_EQ(Cyclotomic::root_of_unity(4, 1).str(), "(1)*z4^1");
}
