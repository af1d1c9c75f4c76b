#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/character_table.hpp"
#include "gerbegw/cocycles.hpp"
#include "gerbegw/counting.hpp"
#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/linalg.hpp"
#include "gerbegw/psi_integrals.hpp"
#include "gerbegw/rational.hpp"
#include "gerbegw/twisted_algebra.hpp"

namespace gerbegw {

using Expansion = std::vector<Cyclotomic>; // coefficients in the idempotent basis

/// Lambda_{g,n} from idempotent expansions: sum_rho prod_j e_rho(delta_j) nu_rho^{1-g}.
inline Cyclotomic lambda_from_expansions(const TwistedAlgebra& A, int genus, const std::vector<const Expansion*>& ins)
{
    Cyclotomic total;
    for (int rho = 0; rho < A.num_irreps(); ++rho) {
        Cyclotomic prod(A.nu(rho).pow(1 - genus));
        for (const Expansion* e : ins) {
            prod *= (*e)[static_cast<std::size_t>(rho)];
            if (prod.is_zero())
                break;
        }
        total += prod;
    }
    return total;
}

inline void check_cohft_stable(int genus, std::size_t n)
{
    if (genus < 0)
        throw InvalidInput("genus must be nonnegative");
    if (2 * genus - 2 + static_cast<int>(n) <= 0)
        throw InvalidInput("unstable");
}

/// Degree-zero part Lambda of the theory at genus g; insertions must be central.
inline Cyclotomic lambda_cohft(const TwistedAlgebra& A, int genus, const std::vector<AlgebraElement>& insertions)
{
    check_cohft_stable(genus, insertions.size());
    std::vector<Expansion> ex;
    ex.reserve(insertions.size());
    for (const auto& a : insertions)
        ex.push_back(A.expand_in_idempotents(a));
    std::vector<const Expansion*> ptrs;
    for (const auto& e : ex)
        ptrs.push_back(&e);
    return lambda_from_expansions(A, genus, ptrs);
}

/// <tau_{a_1}(alpha_1) ... tau_{a_n}(alpha_n)>_g of BG twisted by the algebra's cocycle.
inline Cyclotomic gw_bg(const TwistedAlgebra& A, int genus, const std::vector<AlgebraElement>& insertions,
                        const std::vector<int>& exponents)
{
    if (insertions.size() != exponents.size())
        throw InvalidInput("insertions and descendant exponents differ in length");
    check_cohft_stable(genus, insertions.size());
    const Rational psi = psi_integral(genus, exponents);
    Cyclotomic lam = lambda_cohft(A, genus, insertions);
    return lam * Cyclotomic(psi);
}

/// Every exponent tuple (a_1..a_n) with sum 3g-3+n, in lexicographic order.
/// A nonzero budget caps the count; `truncated` reports whether it bit.
inline std::vector<std::vector<int>> descendant_tuples(int genus, int n, std::size_t budget = 0,
                                                       bool* truncated = nullptr)
{
    std::vector<std::vector<int>> out;
    const int d = 3 * genus - 3 + n;
    if (truncated)
        *truncated = false;
    if (d < 0 || n < 1)
        return out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    bool stop = false;
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (stop)
            return;
        if (i == n - 1) {
            cur[static_cast<std::size_t>(i)] = left;
            if (budget && out.size() >= budget) {
                stop = true;
                if (truncated)
                    *truncated = true;
                return;
            }
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(i)] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, d);
    return out;
}

/// Every length-n tuple over {0..k-1}, last slot fastest.
inline void for_each_tuple(int k, int n, const std::function<void(const std::vector<int>&)>& f)
{
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    while (true) {
        f(t);
        int i = n - 1;
        while (i >= 0 && ++t[static_cast<std::size_t>(i)] == k) {
            t[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0)
            return;
    }
}

/// Inverse Gram matrix of the pairing on the center basis.
inline std::vector<std::vector<Cyclotomic>> inverse_pairing(const TwistedAlgebra& A)
{
    const auto& B = A.center_basis();
    linalg::Matrix<Cyclotomic> gram(B.size(), std::vector<Cyclotomic>(B.size()));
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            gram[i][j] = A.pairing(B[i], B[j]);
    auto inv = linalg::invert(gram);
    if (!inv)
        throw Defect("pairing on the center is degenerate");
    return *inv;
}

struct CohftReport {
    struct Row {
        std::string axiom; // "forget", "loop", "edge"
        int genus = 0;
        std::vector<int> basis;
        Cyclotomic lhs, rhs;
        bool equal = false;
    };
    std::vector<Row> rows;
    std::size_t failures() const
    {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const Row& r) { return !r.equal; }));
    }
    bool ok() const { return failures() == 0; }
};

/// Forgetting tails, cutting loops and cutting edges for Lambda over every
/// tuple of center-basis elements with g <= max_g and n <= max_n.
inline CohftReport cohft_axioms_check(const TwistedAlgebra& A, int max_g, int max_n)
{
    CohftReport rep;
    const auto& B = A.center_basis();
    const int r = static_cast<int>(B.size());
    std::vector<Expansion> ex;
    for (const auto& b : B)
        ex.push_back(A.expand_in_idempotents(b));
    const Expansion unit = A.expand_in_idempotents(A.one());
    const auto eta = inverse_pairing(A);
    auto lam = [&](int g, const std::vector<int>& idx, const std::vector<const Expansion*>& extra) {
        std::vector<const Expansion*> p;
        for (int i : idx)
            p.push_back(&ex[static_cast<std::size_t>(i)]);
        p.insert(p.end(), extra.begin(), extra.end());
        return lambda_from_expansions(A, g, p);
    };
    auto stable = [](int g, int n) { return 2 * g - 2 + n > 0; };
    for (int g = 0; g <= max_g; ++g)
        for (int n = 0; n <= max_n; ++n) {
            if (!stable(g, n))
                continue;
            for_each_tuple(r, n, [&](const std::vector<int>& t) {
                const Cyclotomic lhs = lam(g, t, {});
                {
                    const Cyclotomic rhs = lam(g, t, {&unit});
                    rep.rows.push_back({"forget", g, t, rhs, lhs, lhs == rhs});
                }
                if (g >= 1) {
                    Cyclotomic rhs;
                    for (int a = 0; a < r; ++a)
                        for (int b = 0; b < r; ++b) {
                            const Cyclotomic& w = eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                            if (!w.is_zero())
                                rhs += w * lam(g - 1, t, {&ex[static_cast<std::size_t>(a)], &ex[static_cast<std::size_t>(b)]});
                        }
                    rep.rows.push_back({"loop", g, t, lhs, rhs, lhs == rhs});
                }
                for (int g1 = 0; g1 <= g; ++g1)
                    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                        std::vector<int> I, J;
                        for (int i = 0; i < n; ++i)
                            ((mask >> i) & 1u ? I : J).push_back(t[static_cast<std::size_t>(i)]);
                        const int g2 = g - g1;
                        if (!stable(g1, static_cast<int>(I.size()) + 1) || !stable(g2, static_cast<int>(J.size()) + 1))
                            continue;
                        Cyclotomic rhs;
                        for (int a = 0; a < r; ++a) {
                            const Cyclotomic left = lam(g1, I, {&ex[static_cast<std::size_t>(a)]});
                            if (left.is_zero())
                                continue;
                            for (int b = 0; b < r; ++b) {
                                const Cyclotomic& w = eta[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                                if (!w.is_zero())
                                    rhs += left * w * lam(g2, J, {&ex[static_cast<std::size_t>(b)]});
                            }
                        }
                        rep.rows.push_back({"edge", g, t, lhs, rhs, lhs == rhs});
                    }
            });
        }
    return rep;
}

/// Banded Z-gerbe data for G over K = G/Z, with Z central: the extension,
/// its cocycle nu, the characters of Z and one twisted algebra C*(K, lambda o nu)
/// per character.
class GerbeDecomposition {
public:
    GerbeDecomposition(GroupPtr G, const CentralSubgroup& Z, const Limits& limits = default_limits())
    {
        auto [ext, nu] = extract_cocycle(G, Z);
        ext_ = std::move(ext);
        nu_ = std::move(nu);
        table_ = std::make_shared<CharacterTable>(CharacterTable::compute(G));
        untwisted_ = TwistedAlgebra::untwisted(G);
        lambdas_ = AbelianCharacter::all(ext_.basis.coeff);
        for (const auto& l : lambdas_)
            sectors_.push_back(TwistedAlgebra::create(push_by_character(nu_, l), limits));
    }

    /// Z = Z(G).
    static GerbeDecomposition of_center(GroupPtr G, const Limits& limits = default_limits())
    {
        const CentralSubgroup Z = CentralSubgroup::center_of(*G);
        return GerbeDecomposition(std::move(G), Z, limits);
    }

    const FiniteGroup& group() const { return *ext_.G; }
    const CentralExtension& extension() const { return ext_; }
    const TwoCocycleA& cocycle() const { return nu_; }
    const CharacterTable& table() const { return *table_; }
    std::shared_ptr<const CharacterTable> table_ptr() const { return table_; }
    const TwistedAlgebra& untwisted() const { return *untwisted_; }
    const AlgebraPtr& untwisted_ptr() const { return untwisted_; }
    const std::vector<AbelianCharacter>& characters() const { return lambdas_; }
    const TwistedAlgebra& sector(std::size_t i) const { return *sectors_[i]; }
    const AlgebraPtr& sector_ptr(std::size_t i) const { return sectors_[i]; }
    std::size_t num_sectors() const { return sectors_.size(); }
    int center_order() const { return ext_.basis.coeff.size(); }

    /// I(delta)_lambda(k) = sum_z delta(z s(k)) lambda(z) for every lambda.
    std::vector<AlgebraElement> transform_I(const AlgebraElement& delta) const
    {
        if (delta.algebra() != untwisted_)
            throw InvalidInput("transform_I: input is not in the untwisted algebra of G");
        if (!untwisted_->is_central(delta))
            throw InvalidInput("transform_I: input is not central");
        const FiniteGroup& G = group();
        const int k = ext_.K->order(), z = center_order();
        std::vector<AlgebraElement> out;
        for (std::size_t l = 0; l < lambdas_.size(); ++l) {
            std::vector<Cyclotomic> v(static_cast<std::size_t>(k));
            for (int q = 0; q < k; ++q)
                for (int code = 0; code < z; ++code) {
                    const Elem x = G.mul(ext_.basis.element(code), ext_.section[static_cast<std::size_t>(q)]);
                    const Cyclotomic& c = delta.coeff(x);
                    if (!c.is_zero())
                        v[static_cast<std::size_t>(q)] += c * lambdas_[l](code);
                }
            AlgebraElement e = sectors_[l]->from_coeffs(std::move(v));
            if (!sectors_[l]->is_central(e))
                throw Defect("transform_I produced a non-central element");
            out.push_back(std::move(e));
        }
        return out;
    }

    /// J({beta})(z s(k)) = sum_lambda (1/|Z|) beta_lambda(k) lambda(z^{-1}).
    AlgebraElement transform_J(const std::vector<AlgebraElement>& beta) const
    {
        if (beta.size() != lambdas_.size())
            throw InvalidInput("transform_J: one sector element per character is required");
        for (std::size_t l = 0; l < beta.size(); ++l) {
            if (beta[l].algebra() != sectors_[l])
                throw InvalidInput("transform_J: sector element belongs to a different algebra");
            if (!sectors_[l]->is_central(beta[l]))
                throw InvalidInput("transform_J: sector input is not central");
        }
        const FiniteGroup& G = group();
        const int k = ext_.K->order(), z = center_order();
        const Cyclotomic w(Rational(1, z));
        std::vector<Cyclotomic> v(static_cast<std::size_t>(G.order()));
        for (int q = 0; q < k; ++q)
            for (int code = 0; code < z; ++code) {
                const Elem x = G.mul(ext_.basis.element(code), ext_.section[static_cast<std::size_t>(q)]);
                const int inv = ext_.basis.coeff.neg(code);
                Cyclotomic s;
                for (std::size_t l = 0; l < beta.size(); ++l) {
                    const Cyclotomic& b = beta[l].coeff(q);
                    if (!b.is_zero())
                        s += b * lambdas_[l](inv);
                }
                v[static_cast<std::size_t>(x)] = s * w;
            }
        return untwisted_->from_coeffs(std::move(v));
    }

private:
    CentralExtension ext_;
    TwoCocycleA nu_;
    std::shared_ptr<const CharacterTable> table_;
    AlgebraPtr untwisted_;
    std::vector<AbelianCharacter> lambdas_;
    std::vector<AlgebraPtr> sectors_;
};

/// Class sum 1_{(g)} of conjugacy class `cls` in an algebra over K.
inline AlgebraElement class_sum(const TwistedAlgebra& A, int cls)
{
    const FiniteGroup& K = A.group();
    if (cls < 0 || cls >= K.num_classes())
        throw InvalidInput("class index out of range");
    std::vector<Cyclotomic> v(static_cast<std::size_t>(K.order()));
    for (Elem x : K.classes()[static_cast<std::size_t>(cls)].members)
        v[static_cast<std::size_t>(x)] = Cyclotomic(1);
    return A.from_coeffs(std::move(v));
}

struct DecompositionOptions {
    int max_genus = 2;
    int max_points = 4;
    int max_weight = 0;              // if positive, also require 2g + n <= max_weight
    std::size_t descendant_budget = 0; // per (g,n) cap on exponent tuples, 0 = unlimited
};

struct DecompositionRow {
    int genus = 0;
    std::vector<int> classes;
    std::vector<int> exponents;
    Cyclotomic lhs, rhs_abelian, rhs_full;
    bool abelian_equal = false;
    bool full_equal = false;
    bool ok() const { return abelian_equal && full_equal; }
};

struct DecompositionSummary {
    std::string group;
    int center_order = 0;
    int quotient_order = 0;
    std::size_t rows = 0;
    std::size_t failures = 0;
    std::size_t lambda_failures = 0; // class tuples whose degree-zero parts disagree
    bool truncated = false;
    bool ok() const { return failures == 0 && lambda_failures == 0; }
};

/// Both sides of the decomposition identity for every class-sum tuple and
/// every descendant tuple meeting the dimension gate.  The left side is
/// evaluated in the untwisted algebra of G, the abelian route through the
/// sectors C*(K, lambda o nu) with weight (1/|Z|)^{2-2g}, and the full
/// route from the character table of G with weight (dim/|G|)^{2-2g}.
/// Rows are streamed to `sink` in (g, n, classes, exponents) order.
inline DecompositionSummary verify_decomposition(const GerbeDecomposition& D, const DecompositionOptions& opt,
                                                 const std::function<void(const DecompositionRow&)>& sink = {})
{
    const FiniteGroup& G = D.group();
    const TwistedAlgebra& U = D.untwisted();
    const CharacterTable& T = D.table();
    const int nc = G.num_classes();
    const int z = D.center_order();

    // Per-class expansions for the three routes.
    std::vector<Expansion> lhs_ex, full_ex;
    std::vector<std::vector<Expansion>> sector_ex(static_cast<std::size_t>(nc));
    for (int c = 0; c < nc; ++c) {
        const AlgebraElement s = class_sum(U, c);
        lhs_ex.push_back(U.expand_in_idempotents(s));
        Expansion f;
        const Rational size(static_cast<long>(G.classes()[static_cast<std::size_t>(c)].size()));
        for (int rho = 0; rho < T.size(); ++rho)
            f.push_back(Cyclotomic(size / Rational(T.dim(rho))) * T.irrep(rho).values[static_cast<std::size_t>(c)]);
        full_ex.push_back(std::move(f));
        const auto parts = D.transform_I(s);
        for (std::size_t l = 0; l < parts.size(); ++l)
            sector_ex[static_cast<std::size_t>(c)].push_back(D.sector(l).expand_central(parts[l]));
    }

    DecompositionSummary sum;
    sum.group = G.name();
    sum.center_order = z;
    sum.quotient_order = D.extension().K->order();
    for (int g = 0; g <= opt.max_genus; ++g)
        for (int n = 1; n <= opt.max_points; ++n) {
            if (2 * g - 2 + n <= 0)
                continue;
            if (opt.max_weight > 0 && 2 * g + n > opt.max_weight)
                continue;
            bool trunc = false;
            const auto exps = descendant_tuples(g, n, opt.descendant_budget, &trunc);
            sum.truncated = sum.truncated || trunc;
            std::vector<Rational> psi;
            for (const auto& a : exps)
                psi.push_back(psi_integral(g, a));
            const Rational full_weight_base(1, G.order());
            for_each_tuple(nc, n, [&](const std::vector<int>& cls) {
                std::vector<const Expansion*> p;
                for (int c : cls)
                    p.push_back(&lhs_ex[static_cast<std::size_t>(c)]);
                const Cyclotomic lam_lhs = lambda_from_expansions(U, g, p);

                Cyclotomic lam_full;
                for (int rho = 0; rho < T.size(); ++rho) {
                    Cyclotomic prod(Rational(T.dim(rho), G.order()).pow(2 - 2L * g));
                    for (int c : cls)
                        prod *= full_ex[static_cast<std::size_t>(c)][static_cast<std::size_t>(rho)];
                    lam_full += prod;
                }

                Cyclotomic lam_ab;
                const Cyclotomic zw(Rational(1, z).pow(2 - 2L * g));
                for (std::size_t l = 0; l < D.num_sectors(); ++l) {
                    std::vector<const Expansion*> q;
                    for (int c : cls)
                        q.push_back(&sector_ex[static_cast<std::size_t>(c)][l]);
                    lam_ab += zw * lambda_from_expansions(D.sector(l), g, q);
                }
                if (lam_lhs != lam_full || lam_lhs != lam_ab)
                    ++sum.lambda_failures;

                for (std::size_t i = 0; i < exps.size(); ++i) {
                    DecompositionRow row;
                    row.genus = g;
                    row.classes = cls;
                    row.exponents = exps[i];
                    const Cyclotomic ps(psi[i]);
                    row.lhs = lam_lhs * ps;
                    row.rhs_abelian = lam_ab * ps;
                    row.rhs_full = lam_full * ps;
                    row.abelian_equal = row.lhs == row.rhs_abelian;
                    row.full_equal = row.lhs == row.rhs_full;
                    ++sum.rows;
                    if (!row.ok())
                        ++sum.failures;
                    if (sink)
                        sink(row);
                }
            });
        }
    return sum;
}

struct ProductRow {
    std::string form; // "idempotent" or "class-sum"
    int genus = 0;
    std::vector<int> first;  // center-basis indices in the first algebra
    std::vector<int> second; // idempotent or regular-class indices in the second
    std::vector<int> exponents;
    Cyclotomic lhs, rhs;
    bool equal = false;
};

struct ProductSummary {
    std::size_t rows = 0;
    std::size_t failures = 0;
    std::size_t mixed_zero_rows = 0; // rows with distinct idempotents, expected 0
    bool truncated = false;
    bool ok() const { return failures == 0; }
};

/// Product theorem over (K1 x K2, c1 x c2).  Idempotent form: insertions
/// alpha_i (x) f_{rho_i} give (dim/|K2|)^{2-2g} times the (K1,c1) invariant
/// when all rho_i agree and 0 otherwise.  Class-sum form: alpha_i (x) 1_{(g_i)}
/// gives the (K1,c1) invariant times Lambda^{K2,c2}(1_{(g_i)}).
inline ProductSummary verify_product(const AlgebraPtr& A1, const AlgebraPtr& A2, int max_g, int max_n,
                                     std::size_t descendant_budget = 0,
                                     const std::function<void(const ProductRow&)>& sink = {},
                                     const Limits& limits = default_limits())
{
    const AlgebraPtr P = TwistedAlgebra::create(product_cocycle(A1->cocycle(), A2->cocycle()), limits);
    const int h = A2->order();
    auto tensor = [&](const AlgebraElement& a, const AlgebraElement& b) {
        std::vector<Cyclotomic> v(static_cast<std::size_t>(P->order()));
        for (Elem x = 0; x < A1->order(); ++x) {
            if (a.coeff(x).is_zero())
                continue;
            for (Elem y = 0; y < h; ++y)
                if (!b.coeff(y).is_zero())
                    v[static_cast<std::size_t>(x * h + y)] = a.coeff(x) * b.coeff(y);
        }
        return P->from_coeffs(std::move(v));
    };
    const auto& B1 = A1->center_basis();
    const int r1 = static_cast<int>(B1.size());
    const int r2 = A2->num_irreps();
    const auto& reg2 = A2->c_regular_classes();
    const int s2 = static_cast<int>(reg2.size());

    std::vector<Expansion> ex1;
    for (const auto& b : B1)
        ex1.push_back(A1->expand_in_idempotents(b));
    // Expansions of the tensor products in the product algebra.
    std::vector<std::vector<Expansion>> ex_f(static_cast<std::size_t>(r1)), ex_c(static_cast<std::size_t>(r1));
    std::vector<Expansion> ex2;
    for (int c = 0; c < s2; ++c)
        ex2.push_back(A2->expand_in_idempotents(class_sum(*A2, reg2[static_cast<std::size_t>(c)])));
    for (int i = 0; i < r1; ++i) {
        for (int rho = 0; rho < r2; ++rho)
            ex_f[static_cast<std::size_t>(i)].push_back(
                P->expand_in_idempotents(tensor(B1[static_cast<std::size_t>(i)], A2->idempotents()[static_cast<std::size_t>(rho)])));
        for (int c = 0; c < s2; ++c)
            ex_c[static_cast<std::size_t>(i)].push_back(
                P->expand_in_idempotents(tensor(B1[static_cast<std::size_t>(i)], class_sum(*A2, reg2[static_cast<std::size_t>(c)]))));
    }

    ProductSummary sum;
    auto emit = [&](ProductRow&& row) {
        ++sum.rows;
        if (!row.equal)
            ++sum.failures;
        if (sink)
            sink(row);
    };
    for (int g = 0; g <= max_g; ++g)
        for (int n = 1; n <= max_n; ++n) {
            if (2 * g - 2 + n <= 0)
                continue;
            bool trunc = false;
            const auto exps = descendant_tuples(g, n, descendant_budget, &trunc);
            sum.truncated = sum.truncated || trunc;
            std::vector<Rational> psi;
            for (const auto& a : exps)
                psi.push_back(psi_integral(g, a));
            for_each_tuple(r1, n, [&](const std::vector<int>& t1) {
                std::vector<const Expansion*> p1;
                for (int i : t1)
                    p1.push_back(&ex1[static_cast<std::size_t>(i)]);
                const Cyclotomic base = lambda_from_expansions(*A1, g, p1);
                for_each_tuple(r2, n, [&](const std::vector<int>& t2) {
                    std::vector<const Expansion*> p;
                    for (int j = 0; j < n; ++j)
                        p.push_back(&ex_f[static_cast<std::size_t>(t1[static_cast<std::size_t>(j)])]
                                         [static_cast<std::size_t>(t2[static_cast<std::size_t>(j)])]);
                    const Cyclotomic lam = lambda_from_expansions(*P, g, p);
                    const bool same = std::all_of(t2.begin(), t2.end(), [&](int x) { return x == t2[0]; });
                    Cyclotomic expect;
                    if (same)
                        expect = Cyclotomic(Rational(A2->irreps()[static_cast<std::size_t>(t2[0])].dim, h).pow(2 - 2L * g)) * base;
                    else
                        ++sum.mixed_zero_rows;
                    for (std::size_t e = 0; e < exps.size(); ++e) {
                        const Cyclotomic ps(psi[e]);
                        ProductRow row{"idempotent", g, t1, t2, exps[e], lam * ps, expect * ps, false};
                        row.equal = row.lhs == row.rhs;
                        emit(std::move(row));
                    }
                });
                for_each_tuple(s2, n, [&](const std::vector<int>& t2) {
                    std::vector<const Expansion*> p, p2;
                    for (int j = 0; j < n; ++j) {
                        p.push_back(&ex_c[static_cast<std::size_t>(t1[static_cast<std::size_t>(j)])]
                                         [static_cast<std::size_t>(t2[static_cast<std::size_t>(j)])]);
                        p2.push_back(&ex2[static_cast<std::size_t>(t2[static_cast<std::size_t>(j)])]);
                    }
                    const Cyclotomic lam = lambda_from_expansions(*P, g, p);
                    const Cyclotomic expect = base * lambda_from_expansions(*A2, g, p2);
                    for (std::size_t e = 0; e < exps.size(); ++e) {
                        const Cyclotomic ps(psi[e]);
                        ProductRow row{"class-sum", g, t1, t2, exps[e], lam * ps, expect * ps, false};
                        row.equal = row.lhs == row.rhs;
                        emit(std::move(row));
                    }
                });
            });
        }
    return sum;
}

} // namespace gerbegw
