#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/modular.hpp"

namespace gerbegw {

/// Finite abelian group Z/m_1 x ... x Z/m_r.  Elements are encoded as
/// mixed-radix integers with the last coordinate varying fastest, so code 0
/// is the identity.
class CoefficientGroup {
public:
    CoefficientGroup() = default;
    explicit CoefficientGroup(std::vector<int> moduli) : moduli_(std::move(moduli))
    {
        for (int m : moduli_)
            if (m < 1)
                throw InvalidInput("cyclic factor order must be positive");
        size_ = 1;
        for (int m : moduli_)
            size_ *= m;
    }

    const std::vector<int>& moduli() const { return moduli_; }
    int rank() const { return static_cast<int>(moduli_.size()); }
    int size() const { return size_; }
    int exponent() const
    {
        int e = 1;
        for (int m : moduli_)
            e = std::lcm(e, m);
        return e;
    }

    std::vector<int> coords(int code) const
    {
        std::vector<int> c(moduli_.size());
        for (std::size_t i = moduli_.size(); i-- > 0;) {
            c[i] = code % moduli_[i];
            code /= moduli_[i];
        }
        return c;
    }
    int encode(const std::vector<int>& c) const
    {
        int code = 0;
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            code = code * moduli_[i] + static_cast<int>(modular::mod(c[i], moduli_[i]));
        return code;
    }
    int add(int a, int b) const
    {
        auto x = coords(a), y = coords(b);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += y[i];
        return encode(x);
    }
    int neg(int a) const
    {
        auto x = coords(a);
        for (auto& v : x)
            v = -v;
        return encode(x);
    }
    int sub(int a, int b) const { return add(a, neg(b)); }
    int scale(int a, long k) const
    {
        auto x = coords(a);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = static_cast<int>(modular::mod(static_cast<long>(x[i]) * k, moduli_[i]));
        return encode(x);
    }

    /// The group as an explicit table (codes are element indices).
    FiniteGroup as_group() const
    {
        std::vector<Elem> flat(static_cast<std::size_t>(size_) * static_cast<std::size_t>(size_));
        for (int a = 0; a < size_; ++a)
            for (int b = 0; b < size_; ++b)
                flat[static_cast<std::size_t>(a * size_ + b)] = add(a, b);
        std::string name;
        for (int m : moduli_)
            name += (name.empty() ? "C" : "xC") + std::to_string(m);
        return FiniteGroup::trusted(std::move(flat), size_, name.empty() ? "C1" : name);
    }

    friend bool operator==(const CoefficientGroup& a, const CoefficientGroup& b) { return a.moduli_ == b.moduli_; }

private:
    std::vector<int> moduli_;
    int size_ = 1;
};

/// Identification of an abelian subgroup of an ambient group with a
/// CoefficientGroup: generators[i] has order moduli[i] and every subgroup
/// element is a unique product of generator powers.
struct AbelianBasis {
    CoefficientGroup coeff;
    std::vector<Elem> generators;
    std::vector<Elem> element_of;     // code -> ambient element
    std::map<Elem, int> code_of;      // ambient element -> code

    int code(Elem g) const
    {
        auto it = code_of.find(g);
        if (it == code_of.end())
            throw InvalidInput("element is not in the abelian subgroup");
        return it->second;
    }
    Elem element(int code) const { return element_of[static_cast<std::size_t>(code)]; }

    /// Builds the tables from chosen generators; throws if they are not a basis.
    static AbelianBasis from_generators(const FiniteGroup& G, const std::vector<Elem>& gens)
    {
        AbelianBasis b;
        std::vector<int> moduli;
        for (Elem g : gens)
            moduli.push_back(G.element_order(g));
        b.coeff = CoefficientGroup(moduli);
        b.generators = gens;
        b.element_of.resize(static_cast<std::size_t>(b.coeff.size()));
        for (int code = 0; code < b.coeff.size(); ++code) {
            auto c = b.coeff.coords(code);
            Elem x = 0;
            for (std::size_t i = 0; i < gens.size(); ++i)
                x = G.mul(x, G.power(gens[i], c[i]));
            if (!b.code_of.emplace(x, code).second)
                throw InvalidInput("generators are not independent");
            b.element_of[static_cast<std::size_t>(code)] = x;
        }
        return b;
    }
};

/// Finds a basis of the abelian subgroup S of G.  Factors are grouped by
/// prime (ascending) and, within a prime, by decreasing order; candidates are
/// tried in increasing element index.
inline AbelianBasis decompose_abelian(const FiniteGroup& G, std::vector<Elem> S)
{
    std::sort(S.begin(), S.end());
    for (Elem a : S)
        for (Elem b : S)
            if (!G.commute(a, b))
                throw InvalidInput("subgroup is not abelian");
    const int n = static_cast<int>(S.size());
    std::vector<int> target_orders;
    for (auto [p, e] : modular::factorize(n)) {
        // Sylow p-part type from counts of elements with order dividing p^k.
        std::vector<int> pows{1};
        for (int k = 1; k <= e; ++k)
            pows.push_back(pows.back() * static_cast<int>(p));
        std::vector<int> logcount(static_cast<std::size_t>(e) + 1, 0);
        for (int k = 1; k <= e; ++k) {
            int cnt = 0;
            for (Elem a : S)
                if (pows[static_cast<std::size_t>(k)] % G.element_order(a) == 0)
                    ++cnt;
            int l = 0;
            while (cnt > 1) {
                cnt /= static_cast<int>(p);
                ++l;
            }
            logcount[static_cast<std::size_t>(k)] = l;
        }
        // Number of factors with exponent >= k is logcount[k] - logcount[k-1].
        std::vector<int> exps;
        for (int k = e; k >= 1; --k) {
            const int ge_k = logcount[static_cast<std::size_t>(k)] - logcount[static_cast<std::size_t>(k) - 1];
            const int ge_k1 = k < e ? logcount[static_cast<std::size_t>(k) + 1] - logcount[static_cast<std::size_t>(k)] : 0;
            for (int t = 0; t < ge_k - ge_k1; ++t)
                exps.push_back(k);
        }
        for (int k : exps)
            target_orders.push_back(pows[static_cast<std::size_t>(k)]);
    }
    std::vector<Elem> chosen;
    auto span_size = [&](const std::vector<Elem>& gens) {
        std::vector<Elem> elems{0};
        std::vector<bool> in(static_cast<std::size_t>(G.order()), false);
        in[0] = true;
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (Elem s : gens) {
                Elem p = G.mul(elems[i], s);
                if (!in[static_cast<std::size_t>(p)]) {
                    in[static_cast<std::size_t>(p)] = true;
                    elems.push_back(p);
                }
            }
        return static_cast<long>(elems.size());
    };
    auto rec = [&](auto&& self, std::size_t i, long expected) -> bool {
        if (i == target_orders.size())
            return true;
        for (Elem a : S) {
            if (G.element_order(a) != target_orders[i])
                continue;
            chosen.push_back(a);
            const long want = expected * target_orders[i];
            if (span_size(chosen) == want && self(self, i + 1, want))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0, 1))
        throw Defect("abelian basis search failed");
    AbelianBasis b = AbelianBasis::from_generators(G, chosen);
    for (Elem a : S)
        if (!b.code_of.count(a))
            throw Defect("abelian basis does not span the subgroup");
    return b;
}

} // namespace gerbegw
