#include <random>

#include <gtest/gtest.h>

#include "gerbegw/acceptance.hpp"
#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/counting.hpp"
#include "gerbegw/gw_engine.hpp"

using namespace gerbegw;

namespace {

AlgebraPtr untwisted(const std::string& name) { return TwistedAlgebra::untwisted(share(builtin::by_name(name))); }

long binomial(long n, long k)
{
    long r = 1;
    for (long i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

TEST(GwEngine, TrivialGroup)
{
    const AlgebraPtr A = untwisted("C1");
    EXPECT_EQ(gw_bg(*A, 0, {A->one(), A->one(), A->one()}, {0, 0, 0}), Cyclotomic(1));
    EXPECT_EQ(gw_bg(*A, 1, {A->one()}, {1}), Cyclotomic(Rational(1, 24)));
    EXPECT_EQ(gw_bg(*A, 2, {A->one()}, {4}), Cyclotomic(Rational(1, 1152)));
}

TEST(GwEngine, IdempotentInsertions)
{
    for (const auto& [name, A] : acceptance::test_algebras()) {
        const auto& f = A->idempotents();
        for (int r = 0; r < A->num_irreps(); ++r) {
            const auto& e = f[static_cast<std::size_t>(r)];
            EXPECT_EQ(gw_bg(*A, 0, {e, e, e}, {0, 0, 0}), Cyclotomic(A->nu(r))) << name;
            EXPECT_EQ(lambda_cohft(*A, 2, {e}), Cyclotomic(A->nu(r).pow(-1))) << name;
        }
        if (A->num_irreps() > 1) {
            EXPECT_TRUE(lambda_cohft(*A, 1, {f[0], f[1]}).is_zero()) << name;
        }
    }
}

TEST(GwEngine, ClassSumsCountCovers)
{
    // Lambda on class sums is the normalized count of homomorphisms, checked by enumeration.
    for (const char* name : {"S3", "Q8", "C4"}) {
        const AlgebraPtr A = untwisted(name);
        const FiniteGroup& G = A->group();
        const int nc = G.num_classes();
        for (int g = 0; g <= 1; ++g)
            for_each_tuple(nc, 3 - g, [&](const std::vector<int>& cls) {
                std::vector<AlgebraElement> ins;
                for (int c : cls)
                    ins.push_back(class_sum(*A, c));
                const Rational count = omega_brute_force(G, g, cls);
                EXPECT_EQ(lambda_cohft(*A, g, ins), Cyclotomic(count)) << name;
                for (const auto& a : descendant_tuples(g, static_cast<int>(cls.size())))
                    EXPECT_EQ(gw_bg(*A, g, ins, a), Cyclotomic(count * psi_integral(g, a))) << name;
            });
    }
}

TEST(GwEngine, TorusWithUnit)
{
    for (const auto& [name, A] : acceptance::test_algebras())
        EXPECT_EQ(lambda_cohft(*A, 1, {A->one()}), Cyclotomic(A->num_irreps())) << name;
    const AlgebraPtr A4 = untwisted("A4");
    EXPECT_EQ(lambda_cohft(*A4, 1, {A4->one()}).to_rational(), Rational(4));
}

TEST(GwEngine, UnitAndLinearity)
{
    std::mt19937 rng(3);
    for (const auto& [name, A] : acceptance::test_algebras()) {
        const AlgebraElement x = acceptance::random_central(*A, rng), y = acceptance::random_central(*A, rng);
        const AlgebraElement z = acceptance::random_central(*A, rng);
        // Forgetting a unit insertion.
        EXPECT_EQ(lambda_cohft(*A, 0, {x, y, z, A->one()}), lambda_cohft(*A, 0, {x, y, z})) << name;
        EXPECT_EQ(lambda_cohft(*A, 1, {x, A->one()}), lambda_cohft(*A, 1, {x})) << name;
        // Linearity in the first slot.
        const Cyclotomic s = Cyclotomic::root_of_unity(3, 1) + Cyclotomic(2);
        EXPECT_EQ(lambda_cohft(*A, 1, {x.scaled(s) + y, z}),
                  s * lambda_cohft(*A, 1, {x, z}) + lambda_cohft(*A, 1, {y, z}))
            << name;
    }
}

TEST(GwEngine, RejectsBadInsertions)
{
    const AlgebraPtr A = untwisted("S3");
    EXPECT_THROW(lambda_cohft(*A, 0, {A->one(), A->one()}), InvalidInput);
    EXPECT_THROW(lambda_cohft(*A, 0, {A->one(), A->one(), A->basis_element(1)}), InvalidInput);
    EXPECT_THROW(gw_bg(*A, 1, {A->one()}, {0, 1}), InvalidInput);
    EXPECT_THROW(gw_bg(*A, -1, {A->one()}, {0}), InvalidInput);
    EXPECT_TRUE(gw_bg(*A, 1, {A->one()}, {0}).is_zero());
}

TEST(GwEngine, CohftAxioms)
{
    for (const auto& A : {untwisted("C1"), untwisted("S3"), acceptance::twisted_klein_four()}) {
        const CohftReport r = cohft_axioms_check(*A, 2, 3);
        EXPECT_FALSE(r.rows.empty());
        EXPECT_TRUE(r.ok()) << A->group().name() << ": " << r.failures() << " failures";
    }
}

TEST(GwEngine, InversePairing)
{
    for (const auto& [name, A] : acceptance::test_algebras()) {
        const auto& B = A->center_basis();
        const auto eta = inverse_pairing(*A);
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j) {
                Cyclotomic s;
                for (std::size_t k = 0; k < B.size(); ++k)
                    s += A->pairing(B[i], B[k]) * eta[k][j];
                EXPECT_EQ(s, Cyclotomic(i == j ? 1 : 0)) << name;
            }
    }
}

TEST(GwEngine, TransformOnQuaternionClasses)
{
    const GerbeDecomposition D = GerbeDecomposition::of_center(share(builtin::quaternion8()));
    ASSERT_EQ(D.num_sectors(), 2u);
    EXPECT_TRUE(D.sector(0).is_untwisted());
    EXPECT_FALSE(D.sector(1).is_untwisted());
    const TwistedAlgebra& U = D.untwisted();
    const auto id = D.transform_I(U.one());
    for (std::size_t l = 0; l < 2; ++l)
        EXPECT_EQ(id[l], D.sector(l).one());
    for (int cl = 0; cl < U.group().num_classes(); ++cl) {
        if (U.group().classes()[static_cast<std::size_t>(cl)].size() != 2)
            continue;
        // delta = 1_{(i)}: twice a basis element in the trivial sector, zero in the other.
        const auto parts = D.transform_I(class_sum(U, cl));
        const Elem k = D.extension().projection[static_cast<std::size_t>(U.group().classes()[static_cast<std::size_t>(cl)].representative)];
        EXPECT_EQ(parts[0], D.sector(0).basis_element(k, Cyclotomic(2)));
        EXPECT_TRUE(parts[1].is_zero());
    }
    EXPECT_THROW(D.transform_I(U.basis_element(2)), InvalidInput);
}

TEST(GwEngine, IdempotentsLandInOneSector)
{
    for (const char* name : {"Q8", "D4", "Heis3"}) {
        const GerbeDecomposition D = GerbeDecomposition::of_center(share(builtin::by_name(name)));
        for (const auto& f : D.untwisted().idempotents()) {
            const auto parts = D.transform_I(f);
            int nonzero = 0;
            for (std::size_t l = 0; l < parts.size(); ++l) {
                if (parts[l].is_zero())
                    continue;
                ++nonzero;
                EXPECT_EQ(parts[l] * parts[l], parts[l]) << name;
            }
            EXPECT_EQ(nonzero, 1) << name;
        }
    }
}

TEST(GwEngine, TransformsAreInverse)
{
    std::mt19937 rng(11);
    for (const char* name : {"Q8", "D4", "A4", "C2xC2"}) {
        const GerbeDecomposition D = GerbeDecomposition::of_center(share(builtin::by_name(name)));
        for (int t = 0; t < 5; ++t) {
            const AlgebraElement d = acceptance::random_central(D.untwisted(), rng);
            EXPECT_EQ(D.transform_J(D.transform_I(d)), d) << name;
            std::vector<AlgebraElement> beta;
            for (std::size_t l = 0; l < D.num_sectors(); ++l)
                beta.push_back(acceptance::random_central(D.sector(l), rng));
            EXPECT_EQ(D.transform_I(D.transform_J(beta)), beta) << name;
        }
        std::vector<AlgebraElement> zeros;
        for (std::size_t l = 0; l < D.num_sectors(); ++l)
            zeros.push_back(D.sector(l).zero());
        EXPECT_TRUE(D.transform_J(zeros).is_zero());
        zeros.pop_back();
        EXPECT_THROW(D.transform_J(zeros), InvalidInput);
    }
}

TEST(GwEngine, DecompositionSmallCases)
{
    DecompositionOptions opt;
    opt.max_genus = 1;
    opt.max_points = 3;
    for (const char* name : {"C2xC2", "C4", "Q8", "D4", "S3"}) {
        const GerbeDecomposition D = GerbeDecomposition::of_center(share(builtin::by_name(name)));
        std::size_t streamed = 0;
        const DecompositionSummary s = verify_decomposition(D, opt, [&](const DecompositionRow& r) {
            ++streamed;
            EXPECT_TRUE(r.ok()) << name;
        });
        EXPECT_TRUE(s.ok()) << name;
        EXPECT_EQ(streamed, s.rows);
        EXPECT_GT(s.rows, 0u);
        EXPECT_EQ(s.center_order * s.quotient_order, D.group().order());
    }
}

TEST(GwEngine, ProductTheorem)
{
    const ProductSummary trivial = verify_product(untwisted("S3"), untwisted("C1"), 1, 3);
    EXPECT_TRUE(trivial.ok());
    EXPECT_EQ(trivial.mixed_zero_rows, 0u);
    const ProductSummary s = verify_product(acceptance::twisted_klein_four(), untwisted("C2"), 1, 2);
    EXPECT_TRUE(s.ok());
    EXPECT_GT(s.mixed_zero_rows, 0u);
}

TEST(GwEngine, DescendantTuples)
{
    for (int g = 0; g <= 3; ++g)
        for (int n = 1; n <= 4; ++n) {
            if (2 * g - 2 + n <= 0)
                continue;
            const int d = 3 * g - 3 + n;
            const auto t = descendant_tuples(g, n);
            EXPECT_EQ(static_cast<long>(t.size()), binomial(d + n - 1, n - 1));
            for (const auto& a : t) {
                int sum = 0;
                for (int x : a)
                    sum += x;
                EXPECT_EQ(sum, d);
            }
        }
    bool truncated = false;
    EXPECT_EQ(descendant_tuples(2, 3, 4, &truncated).size(), 4u);
    EXPECT_TRUE(truncated);
    descendant_tuples(1, 1, 4, &truncated);
    EXPECT_FALSE(truncated);

    DecompositionOptions opt;
    opt.max_genus = 2;
    opt.max_points = 2;
    opt.descendant_budget = 1;
    const DecompositionSummary s = verify_decomposition(GerbeDecomposition::of_center(share(builtin::quaternion8())), opt);
    EXPECT_TRUE(s.truncated);
    EXPECT_TRUE(s.ok());
}
