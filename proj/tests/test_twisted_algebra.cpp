#include <random>

#include <gtest/gtest.h>

#include "gerbegw/acceptance.hpp"
#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/character_table.hpp"
#include "gerbegw/twisted_algebra.hpp"

using namespace gerbegw;

namespace {

AlgebraElement random_element(const TwistedAlgebra& A, std::mt19937& rng)
{
    std::uniform_int_distribution<int> v(-3, 3);
    std::vector<Cyclotomic> c;
    for (int i = 0; i < A.order(); ++i)
        c.emplace_back(v(rng));
    return A.from_coeffs(std::move(c));
}

} // namespace

TEST(TwistedAlgebra, ProductIsAssociative)
{
    std::mt19937 rng(1);
    for (const auto& [name, A] : acceptance::test_algebras()) {
        for (int t = 0; t < 3; ++t) {
            const AlgebraElement a = random_element(*A, rng), b = random_element(*A, rng), c = random_element(*A, rng);
            EXPECT_EQ((a * b) * c, a * (b * c)) << name;
            EXPECT_EQ(A->one() * a, a) << name;
        }
    }
}

TEST(TwistedAlgebra, UntwistedIdempotentsMatchCharacterFormula)
{
    // f_rho = (dim/|G|) sum_g chi(g^{-1}) g, computed here from the character table.
    for (const char* name : {"S3", "Q8", "A4"}) {
        auto G = share(builtin::by_name(name));
        const CharacterTable T = CharacterTable::compute(G);
        const AlgebraPtr A = TwistedAlgebra::untwisted(G);
        ASSERT_EQ(A->num_irreps(), T.size());
        EXPECT_EQ(A->c_regular_classes().size(), static_cast<std::size_t>(G->num_classes()));
        for (int a = 0; a < T.size(); ++a) {
            std::vector<Cyclotomic> v;
            for (Elem g = 0; g < G->order(); ++g)
                v.push_back(Cyclotomic(Rational(T.dim(a), G->order())) * T.value(a, G->inv(g)));
            const AlgebraElement f = A->from_coeffs(v);
            bool found = false;
            for (const auto& e : A->idempotents())
                found = found || e == f;
            EXPECT_TRUE(found) << name << " irrep " << a;
        }
    }
}

TEST(TwistedAlgebra, TwistedKleinFour)
{
    const AlgebraPtr V = acceptance::twisted_klein_four();
    EXPECT_EQ(V->order(), 4);
    EXPECT_FALSE(V->is_untwisted());
    ASSERT_EQ(V->c_regular_classes().size(), 1u);
    EXPECT_EQ(V->c_regular_classes()[0], 0);
    ASSERT_EQ(V->num_irreps(), 1);
    EXPECT_EQ(V->irreps()[0].dim, 2);
    // With a single block the idempotent is the unit.
    EXPECT_EQ(V->idempotents()[0], V->one());
    EXPECT_EQ(V->pairing(V->one(), V->one()), Cyclotomic(Rational(1, 4)));
    // Non-identity basis elements anticommute in pairs.
    const AlgebraElement x = V->basis_element(1), y = V->basis_element(2);
    EXPECT_EQ(x * y, (y * x).scaled(Cyclotomic(-1)));
}

TEST(TwistedAlgebra, IdempotentRelations)
{
    for (const auto& [name, A] : acceptance::test_algebras()) {
        long sq = 0;
        for (const auto& ir : A->irreps())
            sq += static_cast<long>(ir.dim) * ir.dim;
        EXPECT_EQ(sq, A->order()) << name;
        EXPECT_EQ(A->num_irreps(), static_cast<int>(A->c_regular_classes().size())) << name;
        AlgebraElement s = A->zero();
        for (int i = 0; i < A->num_irreps(); ++i) {
            const auto& fi = A->idempotents()[static_cast<std::size_t>(i)];
            s += fi;
            EXPECT_TRUE(A->is_central(fi)) << name;
            for (int j = 0; j < A->num_irreps(); ++j) {
                const auto& fj = A->idempotents()[static_cast<std::size_t>(j)];
                EXPECT_EQ(fi * fj, i == j ? fi : A->zero()) << name;
                EXPECT_EQ(A->pairing(fi, fj), i == j ? Cyclotomic(A->nu(i)) : Cyclotomic()) << name;
            }
        }
        EXPECT_EQ(s, A->one()) << name;
    }
}

TEST(TwistedAlgebra, CenterBasisAndExpansion)
{
    std::mt19937 rng(9);
    for (const auto& [name, A] : acceptance::test_algebras()) {
        EXPECT_EQ(A->center_basis().size(), A->c_regular_classes().size()) << name;
        for (const auto& b : A->center_basis())
            EXPECT_TRUE(A->is_central(b)) << name;
        AlgebraElement z = A->zero();
        std::uniform_int_distribution<int> v(-4, 4);
        for (const auto& b : A->center_basis())
            z += b.scaled(Cyclotomic(v(rng)));
        const auto e = A->expand_in_idempotents(z);
        AlgebraElement back = A->zero();
        for (std::size_t r = 0; r < e.size(); ++r)
            back += A->idempotents()[r].scaled(e[r]);
        EXPECT_EQ(back, z) << name;
    }
    const AlgebraPtr S3 = TwistedAlgebra::untwisted(share(builtin::symmetric3()));
    EXPECT_THROW(S3->expand_in_idempotents(S3->basis_element(1)), InvalidInput);
}

TEST(TwistedAlgebra, ElementsOfDifferentAlgebrasDoNotMix)
{
    const AlgebraPtr A = TwistedAlgebra::untwisted(share(builtin::cyclic(2)));
    const AlgebraPtr B = TwistedAlgebra::untwisted(share(builtin::cyclic(2)));
    EXPECT_THROW(A->multiply(A->one(), B->one()), InvalidInput);
    EXPECT_THROW(A->from_coeffs({Cyclotomic(1)}), InvalidInput);
}
