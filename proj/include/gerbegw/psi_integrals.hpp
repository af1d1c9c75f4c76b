#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "gerbegw/errors.hpp"
#include "gerbegw/rational.hpp"

namespace gerbegw {

/// Descendant integrals <tau_{a_1} ... tau_{a_n}>_g over the moduli space of
/// stable curves, by the Virasoro (DVV) recursion.  Results are memoized per
/// (genus, sorted exponents); the memo stops growing at the entry cap.
class PsiIntegrals {
public:
    explicit PsiIntegrals(std::size_t max_entries = default_limits().max_memo_entries) : cap_(max_entries) {}

    Rational operator()(int g, const std::vector<int>& a) const
    {
        check(g, a);
        auto s = a;
        std::sort(s.rbegin(), s.rend());
        return eval(g, s);
    }

    /// Runs the top level of the recursion with position `index` of `a` as
    /// the distinguished insertion.  Equal to operator() for every index.
    Rational via_index(int g, const std::vector<int>& a, std::size_t index) const
    {
        check(g, a);
        if (index >= a.size())
            throw InvalidInput("distinguished index out of range");
        if (!dimension_ok(g, a))
            return Rational();
        if (auto b = base_value(g, a))
            return *b;
        std::vector<int> rest;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != index)
                rest.push_back(a[i]);
        std::sort(rest.rbegin(), rest.rend());
        return recurse(g, a[index], rest);
    }

    std::size_t memo_size() const
    {
        std::lock_guard lock(mutex_);
        return memo_.size();
    }

    static bool stable(int g, std::size_t n) { return n >= 1 && 2 * g - 2 + static_cast<int>(n) > 0; }

    static bool dimension_ok(int g, const std::vector<int>& a)
    {
        const long sum = std::accumulate(a.begin(), a.end(), 0L);
        return sum == 3L * g - 3 + static_cast<long>(a.size());
    }

private:
    static void check(int g, const std::vector<int>& a)
    {
        if (g < 0)
            throw InvalidInput("genus must be nonnegative");
        for (int x : a)
            if (x < 0)
                throw InvalidInput("psi exponents must be nonnegative");
        if (!stable(g, a.size()))
            throw InvalidInput("unstable");
    }

    static mpz_class double_factorial(long k) // k odd or -1
    {
        mpz_class r = 1;
        for (long i = k; i > 1; i -= 2)
            r *= i;
        return r;
    }

    static std::optional<Rational> base_value(int g, const std::vector<int>& a)
    {
        if (g == 0 && a.size() == 3)
            return Rational(1); // dimension already checked: all zero
        if (g == 1 && a.size() == 1)
            return Rational(1, 24);
        return std::nullopt;
    }

    /// Value for a stable insertion list with exponents sorted in decreasing order.
    Rational eval(int g, const std::vector<int>& s) const
    {
        if (!dimension_ok(g, s))
            return Rational();
        if (auto b = base_value(g, s))
            return *b;
        const auto key = std::make_pair(g, s);
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(key); it != memo_.end())
                return it->second;
        }
        std::vector<int> rest(s.begin() + 1, s.end());
        Rational v = recurse(g, s[0], rest);
        {
            std::lock_guard lock(mutex_);
            if (memo_.size() < cap_)
                memo_.emplace(key, v);
        }
        return v;
    }

    /// Evaluates a possibly unstable or wrong-degree insertion list as zero.
    Rational term(int g, std::vector<int> a) const
    {
        if (g < 0 || !stable(g, a.size()))
            return Rational();
        std::sort(a.rbegin(), a.rend());
        return eval(g, a);
    }

    /// One application of the recursion with distinguished exponent k and
    /// the remaining exponents `rest` (sorted decreasing).
    Rational recurse(int g, int k, const std::vector<int>& rest) const
    {
        Rational total;
        // Merge terms.
        for (std::size_t j = 0; j < rest.size(); ++j) {
            if (j > 0 && rest[j] == rest[j - 1])
                continue; // handled with multiplicity below
            std::size_t mult = 0;
            for (int x : rest)
                mult += x == rest[j];
            const int merged = k + rest[j] - 1;
            if (merged < 0)
                continue;
            std::vector<int> a;
            a.push_back(merged);
            bool skipped = false;
            for (int x : rest) {
                if (x == rest[j] && !skipped) {
                    skipped = true;
                    continue;
                }
                a.push_back(x);
            }
            Rational coef(double_factorial(2L * (k + rest[j]) - 1), double_factorial(2L * rest[j] - 1));
            total += Rational(static_cast<long>(mult)) * coef * term(g, std::move(a));
        }
        if (k >= 2) {
            // Multiset of the remaining exponents for the separating sum.
            std::vector<std::pair<int, int>> counts;
            for (int x : rest) {
                if (!counts.empty() && counts.back().first == x)
                    ++counts.back().second;
                else
                    counts.emplace_back(x, 1);
            }
            Rational quad;
            for (int b = 0; b <= k - 2; ++b) {
                const int c = k - 2 - b;
                const Rational w(mpz_class(double_factorial(2L * b + 1) * double_factorial(2L * c + 1)));
                std::vector<int> a{b, c};
                a.insert(a.end(), rest.begin(), rest.end());
                Rational inner = term(g - 1, a);
                // Sub-multisets I of rest, J the complement.
                std::vector<int> take(counts.size(), 0);
                std::function<void(std::size_t, mpz_class)> walk = [&](std::size_t i, mpz_class weight) {
                    if (i == counts.size()) {
                        std::vector<int> I{b}, J{c};
                        for (std::size_t t = 0; t < counts.size(); ++t) {
                            for (int r = 0; r < take[t]; ++r)
                                I.push_back(counts[t].first);
                            for (int r = take[t]; r < counts[t].second; ++r)
                                J.push_back(counts[t].first);
                        }
                        // Genus of the first factor is forced by its dimension.
                        const long sI = std::accumulate(I.begin(), I.end(), 0L) - static_cast<long>(I.size()) + 3;
                        if (sI % 3 != 0)
                            return;
                        const int g1 = static_cast<int>(sI / 3);
                        const int g2 = g - g1;
                        if (g1 < 0 || g2 < 0)
                            return;
                        Rational x = term(g1, I);
                        if (x.is_zero())
                            return;
                        Rational y = term(g2, J);
                        if (!y.is_zero())
                            inner += Rational(weight) * x * y;
                        return;
                    }
                    for (int t = 0; t <= counts[i].second; ++t) {
                        take[i] = t;
                        mpz_class binom;
                        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(counts[i].second),
                                     static_cast<unsigned long>(t));
                        walk(i + 1, weight * binom);
                    }
                };
                walk(0, 1);
                quad += w * inner;
            }
            total += quad * Rational(1, 2);
        }
        return total / Rational(double_factorial(2L * k + 1));
    }

    std::size_t cap_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, std::vector<int>>, Rational> memo_;
};

/// Shared evaluator used by the engine and the command line.
inline const PsiIntegrals& psi_integrals()
{
    static const PsiIntegrals instance;
    return instance;
}

inline Rational psi_integral(int g, const std::vector<int>& a) { return psi_integrals()(g, a); }

} // namespace gerbegw
