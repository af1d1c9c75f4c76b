#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/character_table.hpp"
#include "gerbegw/cocycles.hpp"
#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/rational.hpp"

namespace gerbegw {

/// Omega_{g,c}^G((g_1),...,(g_n)) = |{(a,b,s) : prod [a_i,b_i] = c prod s_j, s_j in (g_j)}| / |G|
/// via the Frobenius character formula.  Holds the character table and
/// caches central characters.
class SurfaceCounter {
public:
    explicit SurfaceCounter(std::shared_ptr<const CharacterTable> table) : T_(std::move(table)) {}

    const CharacterTable& table() const { return *T_; }
    const FiniteGroup& group() const { return T_->group(); }

    Rational omega(int genus, const std::vector<int>& classes, Elem c = 0) const
    {
        check(genus, classes, c);
        const FiniteGroup& G = group();
        const std::vector<Cyclotomic>& ac = central_characters(c);
        Cyclotomic total;
        for (int a = 0; a < T_->size(); ++a) {
            Cyclotomic prod = ac[static_cast<std::size_t>(a)];
            for (int cl : classes) {
                prod *= T_->irrep(a).values[static_cast<std::size_t>(cl)];
                if (prod.is_zero())
                    break;
            }
            if (prod.is_zero())
                continue;
            const Rational w = Rational(T_->dim(a), G.order()).pow(2 - 2 * genus - static_cast<long>(classes.size()));
            total += prod * Cyclotomic(w);
        }
        Rational denom(1);
        for (int cl : classes)
            denom *= Rational(G.centralizer_order(G.classes()[static_cast<std::size_t>(cl)].representative));
        if (!total.is_rational())
            throw Defect("character sum for Omega is not rational");
        return total.to_rational() / denom;
    }

    /// Degree of the lifting map: the sum of Omega_{g,c} over all choices of
    /// one class from each selection, evaluated in factored character form.
    Rational degree(int genus, const std::vector<std::vector<int>>& selections, Elem c = 0) const
    {
        if (selections.empty())
            throw InvalidInput("degree: at least one marked point is required");
        check(genus, {0}, c);
        const FiniteGroup& G = group();
        const std::vector<Cyclotomic>& ac = central_characters(c);
        const long n = static_cast<long>(selections.size());
        Cyclotomic total;
        for (int a = 0; a < T_->size(); ++a) {
            Cyclotomic prod = ac[static_cast<std::size_t>(a)];
            for (const auto& sel : selections) {
                Cyclotomic s;
                for (int cl : sel) {
                    if (cl < 0 || cl >= G.num_classes())
                        throw InvalidInput("class index out of range");
                    s += Cyclotomic(static_cast<long>(G.classes()[static_cast<std::size_t>(cl)].size()))
                         * T_->irrep(a).values[static_cast<std::size_t>(cl)];
                }
                prod *= s;
            }
            const Rational dim(T_->dim(a));
            const Rational w = dim.pow(-n) * Rational(T_->dim(a), G.order()).pow(2 - 2L * genus);
            total += prod * Cyclotomic(w);
        }
        if (!total.is_rational())
            throw Defect("character sum for the degree is not rational");
        return total.to_rational();
    }

    /// alpha_c for every irrep.
    const std::vector<Cyclotomic>& central_characters(Elem c) const
    {
        std::lock_guard lock(mutex_);
        auto it = central_.find(c);
        if (it == central_.end()) {
            std::vector<Cyclotomic> v;
            for (int a = 0; a < T_->size(); ++a)
                v.push_back(T_->central_character(a, c));
            it = central_.emplace(c, std::move(v)).first;
        }
        return it->second;
    }

private:
    void check(int genus, const std::vector<int>& classes, Elem c) const
    {
        const FiniteGroup& G = group();
        if (genus < 0)
            throw InvalidInput("genus must be nonnegative");
        if (classes.empty())
            throw InvalidInput("at least one class is required");
        for (int cl : classes)
            if (cl < 0 || cl >= G.num_classes())
                throw InvalidInput("class index out of range");
        if (c < 0 || c >= G.order() || !G.is_central(c))
            throw InvalidInput("twist element is not central");
    }

    std::shared_ptr<const CharacterTable> T_;
    mutable std::mutex mutex_;
    mutable std::map<Elem, std::vector<Cyclotomic>> central_;
};

/// Direct enumeration of the defining tuples; the independent oracle for omega.
inline Rational omega_brute_force(const FiniteGroup& G, int genus, const std::vector<int>& classes, Elem c = 0,
                                  const Limits& limits = default_limits())
{
    if (genus < 0 || classes.empty())
        throw InvalidInput("omega_brute_force: need genus >= 0 and at least one class");
    if (c < 0 || c >= G.order() || !G.is_central(c))
        throw InvalidInput("twist element is not central");
    for (int cl : classes)
        if (cl < 0 || cl >= G.num_classes())
            throw InvalidInput("class index out of range");
    const int n = G.order();
    long double size = 1;
    for (std::size_t i = 0; i < 2 * static_cast<std::size_t>(genus) + classes.size(); ++i)
        size *= n;
    if (size > static_cast<long double>(limits.max_enumeration))
        throw CapExceeded("enumeration of |G|^(2g+n) tuples exceeds the cap; use the character formula");
    // Histogram of commutator products over all (a_1,b_1,...,a_g,b_g).
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(n), 0);
    std::function<void(int, Elem)> comm = [&](int left, Elem acc) {
        if (left == 0) {
            ++hist[static_cast<std::size_t>(acc)];
            return;
        }
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                comm(left - 1, G.mul(acc, G.commutator(a, b)));
    };
    comm(genus, 0);
    // Sum over class members of hist[c * s_1 ... s_n].
    std::uint64_t count = 0;
    std::function<void(std::size_t, Elem)> members = [&](std::size_t j, Elem acc) {
        if (j == classes.size()) {
            count += hist[static_cast<std::size_t>(acc)];
            return;
        }
        for (Elem s : G.classes()[static_cast<std::size_t>(classes[j])].members)
            members(j + 1, G.mul(acc, s));
    };
    members(0, c);
    return Rational(static_cast<unsigned long>(count)) / Rational(n);
}

/// Abelian closed form (1/|G|)^{1-2g} #{g_i in l_i : g_1 ... g_n c = 1}.
inline Rational abelian_degree(const FiniteGroup& G, int genus, const std::vector<std::vector<int>>& selections,
                               Elem c = 0)
{
    if (!G.is_abelian())
        throw InvalidInput("abelian_degree requires an abelian group");
    std::uint64_t count = 0;
    std::function<void(std::size_t, Elem)> walk = [&](std::size_t j, Elem acc) {
        if (j == selections.size()) {
            count += acc == 0;
            return;
        }
        for (int cl : selections[j])
            walk(j + 1, G.mul(acc, G.classes()[static_cast<std::size_t>(cl)].representative));
    };
    walk(0, c);
    return Rational(G.order()).pow(2L * genus - 1) * Rational(static_cast<unsigned long>(count));
}

/// Stabilizer-type extension E = G x_tau Q of a base group Q by a fiber
/// group G with tau valued in Z(G).  Elements are pairs (g,q) numbered
/// q |G| + g, with (g1,q1)(g2,q2) = (g1 g2 tau(q1,q2), q1 q2).
struct FiberExtension {
    GroupPtr total;
    GroupPtr fiber;
    GroupPtr base;
    std::vector<Elem> projection;                 // total -> base
    std::vector<std::vector<Elem>> pair_to_total; // [q][g] -> total element of (g,q)
};

/// tau is given with coefficients identified with Z(G) through `basis`.
inline FiberExtension build_fiber_extension(GroupPtr G, const TwoCocycleA& tau, const AbelianBasis& basis,
                                            const Limits& limits = default_limits())
{
    const FiniteGroup& Q = *tau.K;
    if (!(basis.coeff == tau.A))
        throw InvalidInput("cocycle coefficients do not match the basis");
    for (Elem z : basis.element_of)
        if (!G->is_central(z))
            throw InvalidInput("cocycle values must be central in the fiber group");
    if (!validate_cocycle(tau).ok())
        throw InvalidInput("not a cocycle");
    const int g = G->order(), q = Q.order();
    const long n = static_cast<long>(g) * q;
    if (n > static_cast<long>(limits.max_group_order))
        throw CapExceeded("extension order exceeds cap");
    std::vector<Elem> flat(static_cast<std::size_t>(n * n));
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) {
            const int q1 = static_cast<int>(x / g), g1 = static_cast<int>(x % g);
            const int q2 = static_cast<int>(y / g), g2 = static_cast<int>(y % g);
            const Elem t = basis.element(tau(q1, q2));
            flat[static_cast<std::size_t>(x * n + y)] = Q.mul(q1, q2) * g + G->mul(G->mul(g1, g2), t);
        }
    FiberExtension e;
    e.total = share(FiniteGroup::trusted(std::move(flat), static_cast<int>(n), G->name() + "." + Q.name()));
    e.fiber = std::move(G);
    e.base = tau.K;
    for (long x = 0; x < n; ++x)
        e.projection.push_back(static_cast<Elem>(x / g));
    e.pair_to_total.assign(static_cast<std::size_t>(q), std::vector<Elem>(static_cast<std::size_t>(g)));
    for (int qq = 0; qq < q; ++qq)
        for (int gg = 0; gg < g; ++gg)
            e.pair_to_total[static_cast<std::size_t>(qq)][static_cast<std::size_t>(gg)] = qq * g + gg;
    return e;
}

/// Views a central extension A -> E -> K as a fiber extension with fiber A.
inline FiberExtension fiber_view(const CentralExtension& ext)
{
    FiberExtension e;
    e.total = ext.G;
    e.fiber = share(ext.basis.coeff.as_group());
    e.base = ext.K;
    e.projection = ext.projection;
    const int a = ext.basis.coeff.size();
    e.pair_to_total.assign(ext.section.size(), std::vector<Elem>(static_cast<std::size_t>(a)));
    for (std::size_t k = 0; k < ext.section.size(); ++k)
        for (int code = 0; code < a; ++code)
            e.pair_to_total[k][static_cast<std::size_t>(code)] = ext.G->mul(ext.basis.element(code), ext.section[k]);
    return e;
}

struct FiberClassData {
    int total_class = 0;               // class of the total group
    int base_class = 0;                // its image in the base
    std::vector<int> fiber_classes;    // classes (g_i) of the fiber with (g_i) x pi(l) inside l
};

/// Decomposes a class l of the total group as the disjoint union of
/// (g_i) x pi(l) over fiber classes (g_i); the tiling is verified exactly.
inline FiberClassData fiber_classes(const FiberExtension& e, int total_class)
{
    const FiniteGroup& E = *e.total;
    const FiniteGroup& G = *e.fiber;
    const FiniteGroup& Q = *e.base;
    if (total_class < 0 || total_class >= E.num_classes())
        throw InvalidInput("class index out of range");
    const ConjClass& l = E.classes()[static_cast<std::size_t>(total_class)];
    FiberClassData d;
    d.total_class = total_class;
    d.base_class = Q.class_of(e.projection[static_cast<std::size_t>(l.representative)]);
    const auto& pil = Q.classes()[static_cast<std::size_t>(d.base_class)].members;
    std::vector<bool> in_l(static_cast<std::size_t>(E.order()), false);
    for (Elem x : l.members)
        in_l[static_cast<std::size_t>(x)] = true;
    std::vector<bool> covered(static_cast<std::size_t>(E.order()), false);
    std::size_t covered_count = 0;
    for (int gc = 0; gc < G.num_classes(); ++gc) {
        bool inside = true;
        for (Elem g : G.classes()[static_cast<std::size_t>(gc)].members)
            for (Elem q : pil)
                if (!in_l[static_cast<std::size_t>(e.pair_to_total[static_cast<std::size_t>(q)][static_cast<std::size_t>(g)])])
                    inside = false;
        if (!inside)
            continue;
        d.fiber_classes.push_back(gc);
        for (Elem g : G.classes()[static_cast<std::size_t>(gc)].members)
            for (Elem q : pil) {
                const Elem x = e.pair_to_total[static_cast<std::size_t>(q)][static_cast<std::size_t>(g)];
                if (covered[static_cast<std::size_t>(x)])
                    throw Defect("fiber tiles overlap");
                covered[static_cast<std::size_t>(x)] = true;
                ++covered_count;
            }
    }
    if (covered_count != l.members.size())
        throw Defect("fiber classes do not tile the class");
    return d;
}

struct GluingReport {
    struct Row {
        std::string kind; // "loop" or "split"
        int genus = 0;
        std::vector<int> classes;
        Rational lhs, rhs;
        bool equal = false;
    };
    std::vector<Row> rows;
    bool ok() const
    {
        return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.equal; });
    }
};

/// Loop gluing sum_zeta |C(zeta)| Omega_{g-1}(..., zeta, zeta^-1) = Omega_g(...)
/// and every separating split with both sides stable.
inline GluingReport gluing_identity_check(const SurfaceCounter& S, int genus, const std::vector<int>& classes)
{
    const FiniteGroup& G = S.group();
    GluingReport rep;
    auto stable = [](int g, std::size_t n) { return n >= 1 && 2 * g - 2 + static_cast<int>(n) > 0; };
    auto weight = [&](int z) {
        return Rational(G.centralizer_order(G.classes()[static_cast<std::size_t>(z)].representative));
    };
    if (genus >= 1) {
        Rational rhs;
        for (int z = 0; z < G.num_classes(); ++z) {
            auto cl = classes;
            cl.push_back(z);
            cl.push_back(G.inverse_class(z));
            rhs += weight(z) * S.omega(genus - 1, cl);
        }
        Rational lhs = S.omega(genus, classes);
        rep.rows.push_back({"loop", genus, classes, lhs, rhs, lhs == rhs});
    }
    const std::size_t n = classes.size();
    const Rational lhs = S.omega(genus, classes);
    for (int g1 = 0; g1 <= genus; ++g1)
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> I, J;
            for (std::size_t i = 0; i < n; ++i)
                ((mask >> i) & 1u ? I : J).push_back(classes[i]);
            const int g2 = genus - g1;
            if (!stable(g1, I.size() + 1) || !stable(g2, J.size() + 1))
                continue;
            Rational rhs;
            for (int z = 0; z < G.num_classes(); ++z) {
                auto a = I;
                a.push_back(z);
                auto b = J;
                b.push_back(G.inverse_class(z));
                rhs += weight(z) * S.omega(g1, a) * S.omega(g2, b);
            }
            rep.rows.push_back({"split", genus, classes, lhs, rhs, lhs == rhs});
        }
    return rep;
}

} // namespace gerbegw
