#include <map>

#include <gtest/gtest.h>

#include "gerbegw/abelian.hpp"
#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/rational.hpp"

using namespace gerbegw;

namespace {

std::map<int, int> order_histogram(const FiniteGroup& G)
{
    std::map<int, int> h;
    for (Elem g = 0; g < G.order(); ++g)
        ++h[G.element_order(g)];
    return h;
}

} // namespace

TEST(FiniteGroup, RejectsInvalidTables)
{
    EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), InvalidInput);           // not a Latin square
    EXPECT_THROW(FiniteGroup({{1, 0}, {0, 1}}), InvalidInput);           // identity not at 0
    EXPECT_THROW(FiniteGroup({{0, 1}, {1, 2}}), InvalidInput);           // out of range
    EXPECT_THROW(FiniteGroup({{0, 1, 2}, {1, 0}, {2, 1, 0}}), InvalidInput); // ragged
    // A Latin square with identity 0 that is not associative (order 5 loop).
    const std::vector<std::vector<Elem>> loop{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    EXPECT_THROW(FiniteGroup{loop}, InvalidInput);
    Limits small;
    small.max_group_order = 3;
    EXPECT_THROW(FiniteGroup(builtin::cyclic(4).table(), "C4", small), CapExceeded);
}

TEST(FiniteGroup, BuiltinInvariants)
{
    const std::map<std::string, std::pair<int, int>> expected{
        {"C1", {1, 1}},  {"C2", {2, 2}}, {"C3", {3, 3}}, {"C4", {4, 4}}, {"C6", {6, 6}},   {"C2xC2", {4, 4}},
        {"S3", {6, 3}},  {"D4", {8, 5}}, {"Q8", {8, 5}}, {"A4", {12, 4}}, {"S4", {24, 5}}, {"Heis3", {27, 11}}};
    for (const auto& name : builtin::catalog()) {
        const FiniteGroup G = builtin::by_name(name);
        ASSERT_TRUE(expected.count(name)) << name;
        EXPECT_EQ(G.order(), expected.at(name).first) << name;
        EXPECT_EQ(G.num_classes(), expected.at(name).second) << name;
        // Burnside: the number of classes is the average centralizer order.
        long total = 0;
        for (Elem g = 0; g < G.order(); ++g)
            total += G.centralizer_order(g);
        EXPECT_EQ(total, static_cast<long>(G.num_classes()) * G.order()) << name;
        // Classes partition the group and are sorted by element index.
        std::size_t sum = 0;
        for (const auto& c : G.classes()) {
            sum += c.size();
            EXPECT_EQ(c.representative, c.members.front());
            EXPECT_TRUE(std::is_sorted(c.members.begin(), c.members.end()));
        }
        EXPECT_EQ(sum, static_cast<std::size_t>(G.order()));
    }
}

TEST(FiniteGroup, ElementOrdersDistinguishQ8AndD4)
{
    const FiniteGroup Q = builtin::quaternion8(), D = builtin::dihedral8();
    EXPECT_EQ(order_histogram(Q), (std::map<int, int>{{1, 1}, {2, 1}, {4, 6}}));
    EXPECT_EQ(order_histogram(D), (std::map<int, int>{{1, 1}, {2, 5}, {4, 2}}));
    EXPECT_FALSE(isomorphic(Q, D));
    EXPECT_EQ(Q.center().size(), 2u);
    EXPECT_EQ(D.center().size(), 2u);
    EXPECT_FALSE(Q.is_abelian());
}

TEST(FiniteGroup, PermutationClosure)
{
    const FiniteGroup S3 = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3");
    EXPECT_EQ(S3.order(), 6);
    EXPECT_TRUE(isomorphic(S3, builtin::symmetric3()));
    const FiniteGroup S4 = FiniteGroup::from_permutations({{1, 0, 2, 3}, {1, 2, 3, 0}});
    EXPECT_EQ(S4.order(), 24);
    EXPECT_THROW(FiniteGroup::from_permutations({{0, 0, 1}}), InvalidInput);
}

TEST(FiniteGroup, Arithmetic)
{
    const FiniteGroup G = builtin::symmetric4();
    for (Elem a = 0; a < G.order(); ++a) {
        EXPECT_EQ(G.mul(a, G.inv(a)), 0);
        EXPECT_EQ(G.power(a, G.element_order(a)), 0);
        for (Elem b = 0; b < G.order(); ++b) {
            EXPECT_EQ(G.class_of(G.conjugate(a, b)), G.class_of(b));
            EXPECT_EQ(G.conjugate(a, b), G.mul(G.mul(a, b), G.inv(a)));
            EXPECT_EQ(G.commute(a, b), G.commutator(a, b) == 0);
        }
    }
    EXPECT_EQ(G.exponent(), 12);
}

TEST(FiniteGroup, ProductsAndQuotients)
{
    const FiniteGroup V = direct_product(builtin::cyclic(2), builtin::cyclic(2));
    EXPECT_EQ(V.order(), 4);
    EXPECT_TRUE(V.is_abelian());
    EXPECT_FALSE(isomorphic(V, builtin::cyclic(4)));
    EXPECT_TRUE(isomorphic(direct_product(builtin::cyclic(2), builtin::cyclic(3)), builtin::cyclic(6)));

    for (const char* name : {"Q8", "D4"}) {
        const FiniteGroup G = builtin::by_name(name);
        const CentralQuotient q = central_quotient(G, CentralSubgroup::center_of(G));
        EXPECT_TRUE(isomorphic(q.K, V)) << name;
        for (Elem a = 0; a < G.order(); ++a)
            for (Elem b = 0; b < G.order(); ++b)
                EXPECT_EQ(q.projection[static_cast<std::size_t>(G.mul(a, b))],
                          q.K.mul(q.projection[static_cast<std::size_t>(a)], q.projection[static_cast<std::size_t>(b)]));
    }
    const FiniteGroup S3 = builtin::symmetric3();
    EXPECT_THROW(CentralSubgroup::of(S3, {0, 1}), InvalidInput);
}

TEST(FiniteGroup, Heisenberg)
{
    const FiniteGroup H = builtin::heisenberg(3);
    EXPECT_EQ(H.order(), 27);
    EXPECT_EQ(H.center().size(), 3u);
    EXPECT_EQ(H.exponent(), 3);
    const CentralQuotient q = central_quotient(H, CentralSubgroup::center_of(H));
    EXPECT_TRUE(isomorphic(q.K, direct_product(builtin::cyclic(3), builtin::cyclic(3))));
}

TEST(Abelian, DecompositionFindsBasis)
{
    const FiniteGroup G = direct_product(builtin::cyclic(4), builtin::cyclic(6));
    std::vector<Elem> all(static_cast<std::size_t>(G.order()));
    for (Elem g = 0; g < G.order(); ++g)
        all[static_cast<std::size_t>(g)] = g;
    const AbelianBasis b = decompose_abelian(G, all);
    EXPECT_EQ(b.coeff.size(), 24);
    int prod = 1;
    for (int m : b.coeff.moduli())
        prod *= m;
    EXPECT_EQ(prod, 24);
    for (int x = 0; x < b.coeff.size(); ++x)
        for (int y = 0; y < b.coeff.size(); ++y)
            EXPECT_EQ(b.element(b.coeff.add(x, y)), G.mul(b.element(x), b.element(y)));
    EXPECT_THROW(decompose_abelian(builtin::symmetric3(), {0, 1, 2, 3, 4, 5}), InvalidInput);
}
