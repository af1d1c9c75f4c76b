#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/linalg.hpp"
#include "gerbegw/modular.hpp"

namespace gerbegw {

struct Irrep {
    int dim = 1;
    std::vector<Cyclotomic> values; // one per conjugacy class
};

namespace detail {

/// Ordering used to label irreps: conductor ascending, then coefficients
/// descending.  Under it the constant 1 precedes every other root of unity,
/// so the trivial character is always row 0.
inline bool value_less(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.conductor() != b.conductor())
        return a.conductor() < b.conductor();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i])
            return y[i] < x[i];
    return false;
}

inline bool irrep_less(const Irrep& a, const Irrep& b)
{
    if (a.dim != b.dim)
        return a.dim < b.dim;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (value_less(a.values[i], b.values[i]))
            return true;
        if (value_less(b.values[i], a.values[i]))
            return false;
    }
    return false;
}

} // namespace detail

/// Complex character table of a finite group, exact over Q(zeta_e).
class CharacterTable {
public:
    CharacterTable(GroupPtr G, std::vector<Irrep> irreps) : G_(std::move(G)), irreps_(std::move(irreps)) {}

    /// Computes the table with Dixon's modular method and verifies it.
    static CharacterTable compute(GroupPtr G)
    {
        CharacterTable t(G, dixon(*G));
        t.verify();
        return t;
    }

    /// Verifies an externally supplied table instead of computing one.
    static CharacterTable cross_check(GroupPtr G, std::vector<Irrep> irreps)
    {
        CharacterTable t(std::move(G), std::move(irreps));
        t.verify();
        return t;
    }

    const FiniteGroup& group() const { return *G_; }
    const GroupPtr& group_ptr() const { return G_; }
    int size() const { return static_cast<int>(irreps_.size()); }
    const std::vector<Irrep>& irreps() const { return irreps_; }
    const Irrep& irrep(int i) const { return irreps_[static_cast<std::size_t>(i)]; }
    int dim(int i) const { return irrep(i).dim; }
    const Cyclotomic& value(int i, Elem g) const
    {
        return irrep(i).values[static_cast<std::size_t>(G_->class_of(g))];
    }

    /// alpha_z = chi(z)/chi(1), checked against chi(z g) = alpha_z chi(g).
    Cyclotomic central_character(int i, Elem z) const
    {
        if (!G_->is_central(z))
            throw InvalidInput("central_character: element is not central");
        Cyclotomic a = value(i, z) / Cyclotomic(dim(i));
        for (Elem g = 0; g < G_->order(); ++g)
            if (value(i, G_->mul(z, g)) != a * value(i, g))
                throw Defect("central_character: scalar relation fails");
        return a;
    }

    /// Checks both orthogonality relations, sum of squared dims, divisibility
    /// and chi(1) = dim.  Throws VerificationFailure on any mismatch.
    void verify() const
    {
        const FiniteGroup& G = *G_;
        const int r = G.num_classes();
        const int n = G.order();
        if (size() != r)
            throw VerificationFailure("number of irreps differs from number of classes");
        long sq = 0;
        for (const auto& ir : irreps_) {
            if (static_cast<int>(ir.values.size()) != r)
                throw VerificationFailure("irrep has wrong number of values");
            if (ir.values[0] != Cyclotomic(ir.dim))
                throw VerificationFailure("chi(1) differs from dim");
            if (n % ir.dim != 0)
                throw VerificationFailure("dim does not divide |G|");
            sq += static_cast<long>(ir.dim) * ir.dim;
        }
        if (sq != n)
            throw VerificationFailure("sum of squared dims differs from |G|");
        std::vector<std::vector<Cyclotomic>> conj(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i)
            for (const auto& v : irrep(i).values)
                conj[static_cast<std::size_t>(i)].push_back(v.conj());
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) {
                Cyclotomic s;
                for (int k = 0; k < r; ++k)
                    s += Cyclotomic(static_cast<long>(G.classes()[static_cast<std::size_t>(k)].size()))
                         * irrep(i).values[static_cast<std::size_t>(k)] * conj[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (s != Cyclotomic(i == j ? n : 0))
                    throw VerificationFailure("row orthogonality fails");
            }
        for (int k = 0; k < r; ++k)
            for (int l = k; l < r; ++l) {
                Cyclotomic s;
                for (int i = 0; i < r; ++i)
                    s += irrep(i).values[static_cast<std::size_t>(k)] * conj[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
                const long c = k == l ? G.centralizer_order(G.classes()[static_cast<std::size_t>(k)].representative) : 0;
                if (s != Cyclotomic(c))
                    throw VerificationFailure("column orthogonality fails");
            }
    }

    /// Prime used by Dixon's method for a group of this order and exponent.
    static std::int64_t dixon_prime(int order, int exponent)
    {
        std::int64_t root = 0;
        while (root * root < order)
            ++root;
        const std::int64_t bound = 2 * root;
        std::int64_t p = exponent + 1;
        while (!(p > bound && modular::is_prime(p)))
            p += exponent;
        return p;
    }

private:
    static std::vector<Irrep> dixon(const FiniteGroup& G)
    {
        using modular::mod;
        using modular::mul_mod;
        const int r = G.num_classes();
        const int n = G.order();
        const int e = G.exponent();
        const std::int64_t p = dixon_prime(n, e);
        const auto& cls = G.classes();
        const std::size_t R = static_cast<std::size_t>(r);

        // Class matrices: (M_j)_{ik} = #{x in C_j : x^-1 g_k in C_i}.
        std::vector<linalg::Matrix<std::int64_t>> M(R, linalg::Matrix<std::int64_t>(R, std::vector<std::int64_t>(R, 0)));
        for (std::size_t j = 0; j < R; ++j)
            for (Elem x : cls[j].members)
                for (std::size_t k = 0; k < R; ++k) {
                    Elem y = G.mul(G.inv(x), cls[k].representative);
                    M[j][static_cast<std::size_t>(G.class_of(y))][k] += 1;
                }

        // Simultaneous eigenspaces, each stored as a list of basis column vectors.
        using Space = std::vector<std::vector<std::int64_t>>;
        std::vector<Space> spaces;
        {
            Space full;
            for (std::size_t i = 0; i < R; ++i) {
                std::vector<std::int64_t> v(R, 0);
                v[i] = 1;
                full.push_back(std::move(v));
            }
            spaces.push_back(std::move(full));
        }
        for (std::size_t j = 0; j < R; ++j) {
            bool all_lines = true;
            for (const auto& s : spaces)
                if (s.size() > 1)
                    all_lines = false;
            if (all_lines)
                break;
            std::vector<Space> next;
            for (auto& S : spaces) {
                if (S.size() == 1) {
                    next.push_back(std::move(S));
                    continue;
                }
                const std::size_t d = S.size();
                // Image M_j * B, as R x d.
                linalg::Matrix<std::int64_t> MB(R, std::vector<std::int64_t>(d, 0));
                for (std::size_t i = 0; i < R; ++i)
                    for (std::size_t c = 0; c < d; ++c) {
                        std::int64_t acc = 0;
                        for (std::size_t k = 0; k < R; ++k)
                            if (M[j][i][k])
                                acc = mod(acc + M[j][i][k] * S[c][k], p);
                        MB[i][c] = acc;
                    }
                std::size_t found = 0;
                for (std::int64_t lambda = 0; lambda < p && found < d; ++lambda) {
                    linalg::Matrix<std::int64_t> A = MB;
                    for (std::size_t i = 0; i < R; ++i)
                        for (std::size_t c = 0; c < d; ++c)
                            A[i][c] = mod(A[i][c] - mul_mod(lambda, S[c][i], p), p);
                    auto ker = linalg::kernel_mod_p(std::move(A), p, d);
                    if (ker.empty())
                        continue;
                    Space sub;
                    for (const auto& kv : ker) {
                        std::vector<std::int64_t> v(R, 0);
                        for (std::size_t c = 0; c < d; ++c)
                            if (kv[c])
                                for (std::size_t i = 0; i < R; ++i)
                                    v[i] = mod(v[i] + mul_mod(kv[c], S[c][i], p), p);
                        sub.push_back(std::move(v));
                    }
                    found += sub.size();
                    next.push_back(std::move(sub));
                }
                if (found != d)
                    throw Defect("Dixon: class matrix not diagonalizable over F_p");
            }
            spaces = std::move(next);
        }
        if (spaces.size() != R)
            throw Defect("Dixon: eigenspaces did not split into lines");

        const std::int64_t a = modular::primitive_root(p);
        const std::int64_t z = modular::pow_mod(a, static_cast<std::uint64_t>((p - 1) / e), p);
        const std::int64_t inv_e = modular::inv_mod(e, p);
        std::vector<Cyclotomic> zeta_pows;
        for (int i = 0; i < e; ++i)
            zeta_pows.push_back(Cyclotomic::root_of_unity(e, i));

        std::vector<Irrep> out;
        for (const auto& S : spaces) {
            std::vector<std::int64_t> w = S[0];
            if (w[0] == 0)
                throw Defect("Dixon: eigenvector vanishes at the identity class");
            const std::int64_t s = modular::inv_mod(w[0], p);
            for (auto& x : w)
                x = mul_mod(x, s, p);
            // d^2 = |G| / sum_k w_k w_{k*} / |C_k|.
            std::int64_t sum = 0;
            for (std::size_t k = 0; k < R; ++k) {
                const std::size_t kstar = static_cast<std::size_t>(G.inverse_class(static_cast<int>(k)));
                sum = mod(sum + mul_mod(mul_mod(w[k], w[kstar], p),
                                        modular::inv_mod(static_cast<std::int64_t>(cls[k].size()), p), p), p);
            }
            const std::int64_t d2 = mul_mod(n, modular::inv_mod(sum, p), p);
            int dim = 0;
            for (std::int64_t d = 1; 2 * d < p; ++d)
                if (mul_mod(d, d, p) == d2) {
                    dim = static_cast<int>(d);
                    break;
                }
            if (dim == 0)
                throw Defect("Dixon: no square root for the degree");
            std::vector<std::int64_t> theta(R);
            for (std::size_t k = 0; k < R; ++k)
                theta[k] = mul_mod(mul_mod(dim, w[k], p), modular::inv_mod(static_cast<std::int64_t>(cls[k].size()), p), p);
            Irrep ir;
            ir.dim = dim;
            for (std::size_t k = 0; k < R; ++k) {
                std::map<long, Rational> terms;
                long total = 0;
                for (int i = 0; i < e; ++i) {
                    std::int64_t m = 0;
                    for (int jj = 0; jj < e; ++jj) {
                        const std::size_t cj = static_cast<std::size_t>(G.power_class(static_cast<int>(k), jj));
                        m = mod(m + mul_mod(theta[cj], modular::pow_mod(z, static_cast<std::uint64_t>(mod(-static_cast<std::int64_t>(i) * jj, e)), p), p), p);
                    }
                    m = mul_mod(m, inv_e, p);
                    if (m > dim)
                        throw Defect("Dixon: eigenvalue multiplicity out of range");
                    total += m;
                    if (m)
                        terms[i] = Rational(static_cast<long>(m));
                }
                if (total != dim)
                    throw Defect("Dixon: multiplicities do not sum to the degree");
                Cyclotomic v;
                for (const auto& [i, c] : terms)
                    v += zeta_pows[static_cast<std::size_t>(i)] * Cyclotomic(c);
                ir.values.push_back(std::move(v));
            }
            out.push_back(std::move(ir));
        }
        std::sort(out.begin(), out.end(), detail::irrep_less);
        return out;
    }

    GroupPtr G_;
    std::vector<Irrep> irreps_;
};

using TablePtr = std::shared_ptr<const CharacterTable>;

} // namespace gerbegw
