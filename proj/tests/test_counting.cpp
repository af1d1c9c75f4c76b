#include <gtest/gtest.h>

#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/counting.hpp"

using namespace gerbegw;

namespace {

SurfaceCounter counter(const std::string& name)
{
    auto G = share(builtin::by_name(name));
    return SurfaceCounter(std::make_shared<const CharacterTable>(CharacterTable::compute(G)));
}

/// Sizes of pi(l) times fiber classes must add up to |l|.
void expect_tiling(const FiberExtension& e)
{
    for (int cl = 0; cl < e.total->num_classes(); ++cl) {
        const FiberClassData d = fiber_classes(e, cl);
        const std::size_t image = e.base->classes()[static_cast<std::size_t>(d.base_class)].size();
        std::size_t covered = 0;
        for (int f : d.fiber_classes)
            covered += e.fiber->classes()[static_cast<std::size_t>(f)].size() * image;
        EXPECT_EQ(covered, e.total->classes()[static_cast<std::size_t>(cl)].size()) << e.total->name() << " class " << cl;
    }
}

} // namespace

TEST(Counting, OmegaMatchesBruteForce)
{
    for (const char* name : {"C2", "C3", "S3", "D4", "Q8"}) {
        const SurfaceCounter S = counter(name);
        const FiniteGroup& G = S.group();
        const int nc = G.num_classes();
        for (int g = 0; g <= 1; ++g)
            for (int a = 0; a < nc; ++a)
                for (int b = 0; b < nc; ++b) {
                    for (Elem c : G.center())
                        EXPECT_EQ(S.omega(g, {a, b}, c), omega_brute_force(G, g, {a, b}, c)) << name;
                }
        for (int a = 0; a < nc; ++a)
            EXPECT_EQ(S.omega(2, {a}), omega_brute_force(G, 2, {a})) << name;
    }
}

TEST(Counting, TorusCountsClasses)
{
    EXPECT_EQ(counter("C2").omega(1, {0}), Rational(2));
    EXPECT_EQ(counter("S3").omega(1, {0}), Rational(3));
    EXPECT_EQ(counter("A4").omega(1, {0}), Rational(4));
}

TEST(Counting, SphereWithTwoPoints)
{
    // A sphere with points in (g) and (h) admits maps only when h = g^{-1}.
    const SurfaceCounter S = counter("S3");
    const FiniteGroup& G = S.group();
    for (int a = 0; a < G.num_classes(); ++a)
        for (int b = 0; b < G.num_classes(); ++b) {
            const bool inverse = G.inverse_class(a) == b;
            EXPECT_EQ(S.omega(0, {a, b}).is_zero(), !inverse);
        }
}

TEST(Counting, DegreeSumsOverSelections)
{
    for (const char* name : {"S3", "Q8"}) {
        const SurfaceCounter S = counter(name);
        const int nc = S.group().num_classes();
        const std::vector<int> sel1{0, 1}, sel2{1, nc - 1};
        for (int g = 0; g <= 2; ++g) {
            Rational expect;
            for (int a : sel1)
                for (int b : sel2)
                    expect += S.omega(g, {a, b});
            EXPECT_EQ(S.degree(g, {sel1, sel2}), expect) << name << " g=" << g;
        }
    }
    EXPECT_THROW(counter("S3").degree(1, {}), InvalidInput);
    EXPECT_THROW(counter("S3").degree(1, {{7}}), InvalidInput);
}

TEST(Counting, AbelianClosedForm)
{
    for (const char* name : {"C2", "C4", "C2xC2", "C6"}) {
        const SurfaceCounter S = counter(name);
        const FiniteGroup& G = S.group();
        const int n = G.order();
        for (int g = 0; g <= 2; ++g)
            for (Elem c = 0; c < n; ++c) {
                const std::vector<std::vector<int>> sel{{0, 1}, {n - 1}, {1, 2 % n}};
                EXPECT_EQ(S.degree(g, sel, c), abelian_degree(G, g, sel, c)) << name;
            }
    }
    // |G|^{2g-1} #{c prod g = 1}: on C2 with both points at the generator and c = 0 there is one solution.
    const FiniteGroup C2 = builtin::cyclic(2);
    EXPECT_EQ(abelian_degree(C2, 1, {{1}, {1}}, 0), Rational(2));
    EXPECT_EQ(abelian_degree(C2, 0, {{1}, {1}}, 1), Rational(0));
    EXPECT_THROW(abelian_degree(builtin::symmetric3(), 0, {{1}}, 0), InvalidInput);
}

TEST(Counting, FiberClassesOfQuaternionGroup)
{
    auto G = share(builtin::quaternion8());
    auto [ext, nu] = extract_cocycle(G, CentralSubgroup::center_of(*G));
    const FiberExtension e = fiber_view(ext);
    for (int cl = 0; cl < G->num_classes(); ++cl) {
        const auto& members = G->classes()[static_cast<std::size_t>(cl)].members;
        const FiberClassData d = fiber_classes(e, cl);
        if (members.size() == 2) {
            // {i, -i} is tiled by the center classes {1} and {-1}.
            EXPECT_EQ(d.fiber_classes.size(), 2u);
        } else {
            EXPECT_EQ(d.fiber_classes.size(), 1u);
        }
    }
    expect_tiling(e);
}

TEST(Counting, FiberClassTilings)
{
    for (const char* name : {"D4", "Heis3", "C2xC2"}) {
        auto G = share(builtin::by_name(name));
        auto [ext, nu] = extract_cocycle(G, CentralSubgroup::center_of(*G));
        expect_tiling(fiber_view(ext));
    }
    // Nonabelian fiber: Q8 extended by C2 with t^2 = -1 gives the Pauli group.
    auto Q8 = share(builtin::quaternion8());
    const AbelianBasis basis = decompose_abelian(*Q8, Q8->center());
    TwoCocycleA tau{share(builtin::cyclic(2)), basis.coeff, {0, 0, 0, 1}};
    const FiberExtension e = build_fiber_extension(Q8, tau, basis);
    EXPECT_EQ(e.total->order(), 16);
    EXPECT_EQ(e.total->center().size(), 4u);
    EXPECT_EQ(e.total->num_classes(), 10);
    expect_tiling(e);
    EXPECT_THROW(fiber_classes(e, 99), InvalidInput);
}

TEST(Counting, GluingIdentities)
{
    for (const char* name : {"S3", "Q8", "C4"}) {
        const SurfaceCounter S = counter(name);
        const int nc = S.group().num_classes();
        for (int a = 0; a < nc; ++a) {
            EXPECT_TRUE(gluing_identity_check(S, 1, {a}).ok()) << name;
            for (int b = 0; b < nc; ++b)
                EXPECT_TRUE(gluing_identity_check(S, 1, {a, b}).ok()) << name;
        }
        const GluingReport r = gluing_identity_check(S, 2, {nc - 1});
        EXPECT_FALSE(r.rows.empty());
        EXPECT_TRUE(r.ok()) << name;
    }
}

TEST(Counting, RejectsBadInput)
{
    const SurfaceCounter S = counter("S3");
    EXPECT_THROW(S.omega(-1, {0}), InvalidInput);
    EXPECT_THROW(S.omega(0, {}), InvalidInput);
    EXPECT_THROW(S.omega(0, {0, 5}), InvalidInput);
    EXPECT_THROW(S.omega(0, {0, 0}, 1), InvalidInput); // 1 is not central in S3
    Limits tiny;
    tiny.max_enumeration = 1000;
    EXPECT_THROW(omega_brute_force(builtin::symmetric4(), 2, {0}, 0, tiny), CapExceeded);
}
