#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/errors.hpp"

namespace gerbegw {

using Elem = int;

struct ConjClass {
    Elem representative = 0;     // minimal index in the class
    std::vector<Elem> members;   // sorted
    std::size_t size() const { return members.size(); }
};

/// Finite group given by its full multiplication table.  Element 0 is the
/// identity.  Immutable once constructed.
class FiniteGroup {
public:
    FiniteGroup() : FiniteGroup(std::vector<std::vector<Elem>>{{0}}, "1") {}

    /// Validates the table: square, entries in range, Latin square, identity
    /// at index 0, two-sided inverses and associativity.
    explicit FiniteGroup(const std::vector<std::vector<Elem>>& table, std::string name = {},
                         const Limits& limits = default_limits())
        : name_(std::move(name))
    {
        const std::size_t n = table.size();
        if (n == 0)
            throw InvalidInput("group table is empty");
        if (n > limits.max_group_order)
            throw CapExceeded("group order " + std::to_string(n) + " exceeds cap "
                              + std::to_string(limits.max_group_order));
        n_ = static_cast<int>(n);
        mul_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (table[i].size() != n)
                throw InvalidInput("group table is not square");
            for (std::size_t j = 0; j < n; ++j) {
                Elem v = table[i][j];
                if (v < 0 || v >= n_)
                    throw InvalidInput("group table entry out of range");
                mul_[i * n + j] = v;
            }
        }
        validate();
        finish();
    }

    /// Builds from a flat table already known to be a group (products,
    /// quotients, permutation closures); skips the associativity check.
    static FiniteGroup trusted(std::vector<Elem> flat, int n, std::string name)
    {
        FiniteGroup g(Tag{});
        g.n_ = n;
        g.mul_ = std::move(flat);
        g.name_ = std::move(name);
        g.build_inverses();
        g.finish();
        return g;
    }

    /// Closure of a set of permutations of {0..d-1}.  Product convention
    /// (g*h)(x) = g(h(x)).  Elements are numbered identity first, then in
    /// breadth-first discovery order by right multiplication with generators.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                         std::string name = {},
                                         const Limits& limits = default_limits())
    {
        std::size_t d = gens.empty() ? 0 : gens.front().size();
        for (const auto& p : gens) {
            if (p.size() != d)
                throw InvalidInput("permutations act on different sets");
            std::vector<bool> seen(d, false);
            for (int x : p) {
                if (x < 0 || static_cast<std::size_t>(x) >= d || seen[static_cast<std::size_t>(x)])
                    throw InvalidInput("generator is not a permutation");
                seen[static_cast<std::size_t>(x)] = true;
            }
        }
        auto compose = [d](const std::vector<int>& g, const std::vector<int>& h) {
            std::vector<int> r(d);
            for (std::size_t x = 0; x < d; ++x)
                r[x] = g[static_cast<std::size_t>(h[x])];
            return r;
        };
        std::vector<int> id(d);
        std::iota(id.begin(), id.end(), 0);
        std::vector<std::vector<int>> elems{id};
        std::map<std::vector<int>, int> index{{id, 0}};
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (const auto& s : gens) {
                auto p = compose(elems[i], s);
                if (index.emplace(p, static_cast<int>(elems.size())).second) {
                    elems.push_back(std::move(p));
                    if (elems.size() > limits.max_group_order)
                        throw CapExceeded("permutation closure exceeds order cap "
                                          + std::to_string(limits.max_group_order));
                }
            }
        const int n = static_cast<int>(elems.size());
        std::vector<Elem> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                flat[static_cast<std::size_t>(a * n + b)] = index.at(compose(elems[static_cast<std::size_t>(a)],
                                                                             elems[static_cast<std::size_t>(b)]));
        return trusted(std::move(flat), n, std::move(name));
    }

    int order() const { return n_; }
    const std::string& name() const { return name_; }
    FiniteGroup renamed(std::string name) const
    {
        FiniteGroup g = *this;
        g.name_ = std::move(name);
        return g;
    }

    Elem identity() const { return 0; }
    Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a * n_ + b)]; }
    Elem inv(Elem a) const { return inv_[static_cast<std::size_t>(a)]; }
    Elem conjugate(Elem x, Elem g) const { return mul(mul(x, g), inv(x)); } // x g x^-1
    Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

    Elem power(Elem g, long k) const
    {
        if (k < 0) {
            g = inv(g);
            k = -k;
        }
        Elem r = 0;
        while (k) {
            if (k & 1)
                r = mul(r, g);
            g = mul(g, g);
            k >>= 1;
        }
        return r;
    }

    int element_order(Elem g) const { return orders_[static_cast<std::size_t>(g)]; }
    int exponent() const { return exponent_; }
    bool is_abelian() const { return static_cast<int>(classes_.size()) == n_; }

    const std::vector<ConjClass>& classes() const { return classes_; }
    int num_classes() const { return static_cast<int>(classes_.size()); }
    int class_of(Elem g) const { return class_of_[static_cast<std::size_t>(g)]; }
    /// Class containing the inverses of the given class.
    int inverse_class(int c) const { return class_of(inv(classes_[static_cast<std::size_t>(c)].representative)); }
    /// Class of g^k for g in class c.
    int power_class(int c, long k) const
    {
        return class_of(power(classes_[static_cast<std::size_t>(c)].representative, k));
    }

    std::vector<Elem> centralizer(Elem g) const
    {
        std::vector<Elem> out;
        for (Elem h = 0; h < n_; ++h)
            if (commute(g, h))
                out.push_back(h);
        return out;
    }
    int centralizer_order(Elem g) const
    {
        return n_ / static_cast<int>(classes_[static_cast<std::size_t>(class_of(g))].size());
    }

    std::vector<Elem> center() const
    {
        std::vector<Elem> out;
        for (const auto& c : classes_)
            if (c.size() == 1)
                out.push_back(c.representative);
        return out;
    }
    bool is_central(Elem g) const { return classes_[static_cast<std::size_t>(class_of(g))].size() == 1; }

    const std::vector<Elem>& flat_table() const { return mul_; }
    std::vector<std::vector<Elem>> table() const
    {
        std::vector<std::vector<Elem>> t(static_cast<std::size_t>(n_));
        for (int a = 0; a < n_; ++a)
            t[static_cast<std::size_t>(a)].assign(mul_.begin() + a * n_, mul_.begin() + (a + 1) * n_);
        return t;
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.mul_ == b.mul_; }

    /// True iff S is a subgroup (contains identity, closed under products and inverses).
    bool is_subgroup(const std::vector<Elem>& S) const
    {
        std::vector<bool> in(static_cast<std::size_t>(n_), false);
        for (Elem s : S) {
            if (s < 0 || s >= n_)
                return false;
            in[static_cast<std::size_t>(s)] = true;
        }
        if (!in[0])
            return false;
        for (Elem a : S) {
            if (!in[static_cast<std::size_t>(inv(a))])
                return false;
            for (Elem b : S)
                if (!in[static_cast<std::size_t>(mul(a, b))])
                    return false;
        }
        return true;
    }

private:
    struct Tag {};
    explicit FiniteGroup(Tag) {}

    void validate()
    {
        const int n = n_;
        for (int i = 0; i < n; ++i)
            if (mul(0, i) != i || mul(i, 0) != i)
                throw InvalidInput("element 0 is not a two-sided identity");
        for (int i = 0; i < n; ++i) {
            std::vector<bool> row(static_cast<std::size_t>(n), false), col(static_cast<std::size_t>(n), false);
            for (int j = 0; j < n; ++j) {
                row[static_cast<std::size_t>(mul(i, j))] = true;
                col[static_cast<std::size_t>(mul(j, i))] = true;
            }
            for (int j = 0; j < n; ++j)
                if (!row[static_cast<std::size_t>(j)] || !col[static_cast<std::size_t>(j)])
                    throw InvalidInput("element " + std::to_string(i) + " has no inverse");
        }
        build_inverses();
        // Light's associativity test over a generating set.
        std::vector<Elem> gens;
        std::vector<bool> reached(static_cast<std::size_t>(n), false);
        reached[0] = true;
        std::vector<Elem> span{0};
        for (Elem cand = 1; cand < n; ++cand) {
            if (reached[static_cast<std::size_t>(cand)])
                continue;
            gens.push_back(cand);
            std::deque<Elem> fresh{cand};
            reached[static_cast<std::size_t>(cand)] = true;
            span.push_back(cand);
            while (!fresh.empty()) {
                Elem x = fresh.front();
                fresh.pop_front();
                const std::size_t cur = span.size();
                for (std::size_t k = 0; k < cur; ++k) {
                    for (Elem y : {mul(x, span[k]), mul(span[k], x)})
                        if (!reached[static_cast<std::size_t>(y)]) {
                            reached[static_cast<std::size_t>(y)] = true;
                            span.push_back(y);
                            fresh.push_back(y);
                        }
                }
            }
        }
        for (Elem g : gens)
            for (int x = 0; x < n; ++x)
                for (int y = 0; y < n; ++y)
                    if (mul(mul(x, g), y) != mul(x, mul(g, y)))
                        throw InvalidInput("group table is not associative");
    }

    void build_inverses()
    {
        inv_.assign(static_cast<std::size_t>(n_), -1);
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                if (mul(a, b) == 0) {
                    if (mul(b, a) != 0)
                        throw InvalidInput("inverse is not two-sided");
                    inv_[static_cast<std::size_t>(a)] = b;
                    break;
                }
        for (Elem v : inv_)
            if (v < 0)
                throw InvalidInput("missing inverse");
    }

    void finish()
    {
        class_of_.assign(static_cast<std::size_t>(n_), -1);
        classes_.clear();
        for (Elem g = 0; g < n_; ++g) {
            if (class_of_[static_cast<std::size_t>(g)] >= 0)
                continue;
            ConjClass c;
            c.representative = g;
            for (Elem x = 0; x < n_; ++x)
                c.members.push_back(conjugate(x, g));
            std::sort(c.members.begin(), c.members.end());
            c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
            for (Elem m : c.members)
                class_of_[static_cast<std::size_t>(m)] = static_cast<int>(classes_.size());
            classes_.push_back(std::move(c));
        }
        orders_.assign(static_cast<std::size_t>(n_), 1);
        exponent_ = 1;
        for (Elem g = 0; g < n_; ++g) {
            int k = 1;
            for (Elem x = g; x != 0; x = mul(x, g))
                ++k;
            orders_[static_cast<std::size_t>(g)] = g == 0 ? 1 : k;
            exponent_ = std::lcm(exponent_, orders_[static_cast<std::size_t>(g)]);
        }
    }

    int n_ = 1;
    std::vector<Elem> mul_;
    std::vector<Elem> inv_;
    std::string name_;
    std::vector<ConjClass> classes_;
    std::vector<int> class_of_;
    std::vector<int> orders_;
    int exponent_ = 1;
};

/// G x H with (g,h) numbered g*|H| + h.
inline FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& H,
                                  const Limits& limits = default_limits())
{
    const int m = H.order();
    const long n = static_cast<long>(G.order()) * m;
    if (n > static_cast<long>(limits.max_group_order))
        throw CapExceeded("direct product order " + std::to_string(n) + " exceeds cap");
    std::vector<Elem> flat(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flat[static_cast<std::size_t>(a * n + b)] = G.mul(a / m, b / m) * m + H.mul(a % m, b % m);
    return FiniteGroup::trusted(std::move(flat), static_cast<int>(n), G.name() + "x" + H.name());
}

/// Central subgroup together with the witness that it is central.
struct CentralSubgroup {
    std::vector<Elem> elements; // sorted

    static CentralSubgroup of(const FiniteGroup& G, std::vector<Elem> elems)
    {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        if (!G.is_subgroup(elems))
            throw InvalidInput("not a subgroup");
        for (Elem a : elems)
            if (!G.is_central(a))
                throw InvalidInput("subgroup is not central");
        return CentralSubgroup{std::move(elems)};
    }
    static CentralSubgroup center_of(const FiniteGroup& G) { return of(G, G.center()); }
    int order() const { return static_cast<int>(elements.size()); }
};

/// Quotient G/A by a central subgroup.  Cosets are numbered by their
/// minimal element; the section picks that minimal element.
struct CentralQuotient {
    FiniteGroup K;
    std::vector<Elem> projection; // G -> K
    std::vector<Elem> section;    // K -> G
};

inline CentralQuotient central_quotient(const FiniteGroup& G, const CentralSubgroup& A)
{
    CentralQuotient q;
    const int n = G.order();
    q.projection.assign(static_cast<std::size_t>(n), -1);
    for (Elem g = 0; g < n; ++g) {
        if (q.projection[static_cast<std::size_t>(g)] >= 0)
            continue;
        const Elem idx = static_cast<Elem>(q.section.size());
        q.section.push_back(g);
        for (Elem a : A.elements)
            q.projection[static_cast<std::size_t>(G.mul(a, g))] = idx;
    }
    const int k = static_cast<int>(q.section.size());
    if (k * A.order() != n)
        throw Defect("coset sizes do not tile the group");
    std::vector<Elem> flat(static_cast<std::size_t>(k * k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            flat[static_cast<std::size_t>(a * k + b)] =
                q.projection[static_cast<std::size_t>(G.mul(q.section[static_cast<std::size_t>(a)],
                                                            q.section[static_cast<std::size_t>(b)]))];
    q.K = FiniteGroup::trusted(std::move(flat), k, G.name() + "/Z");
    return q;
}

/// Isomorphism search: maps a greedy generating set of G to elements of H of
/// matching orders and checks the induced map.  Returns the element map.
inline std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& G, const FiniteGroup& H)
{
    if (G.order() != H.order())
        return std::nullopt;
    const int n = G.order();
    // Greedy generators of G, each outside the subgroup generated so far.
    auto closure = [](const FiniteGroup& X, const std::vector<Elem>& gens) {
        std::vector<Elem> elems{0};
        std::vector<bool> in(static_cast<std::size_t>(X.order()), false);
        in[0] = true;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (Elem s : gens) {
                Elem p = X.mul(elems[i], s);
                if (!in[static_cast<std::size_t>(p)]) {
                    in[static_cast<std::size_t>(p)] = true;
                    elems.push_back(p);
                }
            }
        return in;
    };
    std::vector<Elem> gens;
    {
        auto in = closure(G, gens);
        for (Elem g = 1; g < n; ++g)
            if (!in[static_cast<std::size_t>(g)]) {
                gens.push_back(g);
                in = closure(G, gens);
            }
    }
    // Words: every element of G as (parent, generator) in BFS order.
    std::vector<Elem> parent(static_cast<std::size_t>(n), -1), via(static_cast<std::size_t>(n), -1);
    std::vector<Elem> orderlist{0};
    parent[0] = 0;
    for (std::size_t i = 0; i < orderlist.size(); ++i)
        for (std::size_t s = 0; s < gens.size(); ++s) {
            Elem p = G.mul(orderlist[i], gens[s]);
            if (parent[static_cast<std::size_t>(p)] < 0) {
                parent[static_cast<std::size_t>(p)] = orderlist[i];
                via[static_cast<std::size_t>(p)] = static_cast<Elem>(s);
                orderlist.push_back(p);
            }
        }
    std::vector<Elem> images(gens.size());
    std::optional<std::vector<Elem>> result;
    auto attempt = [&]() -> bool {
        std::vector<Elem> phi(static_cast<std::size_t>(n), -1);
        phi[0] = 0;
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        used[0] = true;
        for (std::size_t i = 1; i < orderlist.size(); ++i) {
            Elem g = orderlist[i];
            Elem v = H.mul(phi[static_cast<std::size_t>(parent[static_cast<std::size_t>(g)])],
                           images[static_cast<std::size_t>(via[static_cast<std::size_t>(g)])]);
            if (used[static_cast<std::size_t>(v)])
                return false;
            used[static_cast<std::size_t>(v)] = true;
            phi[static_cast<std::size_t>(g)] = v;
        }
        for (Elem a = 0; a < n; ++a)
            for (Elem b = 0; b < n; ++b)
                if (phi[static_cast<std::size_t>(G.mul(a, b))]
                    != H.mul(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]))
                    return false;
        result = phi;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == gens.size())
            return attempt();
        for (Elem h = 0; h < n; ++h) {
            if (H.element_order(h) != G.element_order(gens[i]))
                continue;
            images[i] = h;
            if (self(self, i + 1))
                return true;
        }
        return false;
    };
    rec(rec, 0);
    return result;
}

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline GroupPtr share(FiniteGroup G) { return std::make_shared<const FiniteGroup>(std::move(G)); }

inline bool isomorphic(const FiniteGroup& G, const FiniteGroup& H) { return find_isomorphism(G, H).has_value(); }

} // namespace gerbegw
