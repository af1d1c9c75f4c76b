#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/abelian.hpp"
#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/modular.hpp"

namespace gerbegw {

/// 2-cochain K x K -> A with A a product of cyclic groups (trivial action).
struct TwoCocycleA {
    GroupPtr K;
    CoefficientGroup A;
    std::vector<int> values; // codes, row-major |K| x |K|

    int operator()(Elem a, Elem b) const { return values[static_cast<std::size_t>(a * K->order() + b)]; }

    static TwoCocycleA trivial(GroupPtr K, CoefficientGroup A)
    {
        const std::size_t n = static_cast<std::size_t>(K->order());
        return TwoCocycleA{std::move(K), std::move(A), std::vector<int>(n * n, 0)};
    }
};

/// 2-cochain K x K -> mu_m, stored as exponents: the value at (a,b) is zeta_m^{e(a,b)}.
struct U1Cocycle {
    GroupPtr K;
    long m = 1;
    std::vector<long> exps; // row-major |K| x |K|, each in [0, m)

    long operator()(Elem a, Elem b) const { return exps[static_cast<std::size_t>(a * K->order() + b)]; }
    Cyclotomic value(Elem a, Elem b) const { return Cyclotomic::root_of_unity(static_cast<int>(m), (*this)(a, b)); }

    bool is_trivial_table() const
    {
        return std::all_of(exps.begin(), exps.end(), [](long e) { return e == 0; });
    }

    static U1Cocycle trivial(GroupPtr K)
    {
        const std::size_t n = static_cast<std::size_t>(K->order());
        return U1Cocycle{std::move(K), 1, std::vector<long>(n * n, 0)};
    }
};

struct CocycleReport {
    std::vector<std::array<Elem, 3>> violations; // triples breaking the cocycle identity
    bool normalized = true;
    bool ok() const { return violations.empty(); }
};

namespace detail {

template <class Get, class Eq>
CocycleReport check_cocycle(int n, Get get, Eq equal)
{
    CocycleReport r;
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c)
                if (!equal(a, b, c))
                    r.violations.push_back({a, b, c});
    for (Elem k = 0; k < n; ++k)
        if (get(0, k) != 0 || get(k, 0) != 0)
            r.normalized = false;
    return r;
}

} // namespace detail

/// nu(a,b) nu(ab,c) = nu(b,c) nu(a,bc) for every triple, plus normalization.
inline CocycleReport validate_cocycle(const TwoCocycleA& nu)
{
    const FiniteGroup& K = *nu.K;
    const CoefficientGroup& A = nu.A;
    return detail::check_cocycle(
        K.order(), [&](Elem a, Elem b) { return nu(a, b); },
        [&](Elem a, Elem b, Elem c) {
            return A.add(nu(a, b), nu(K.mul(a, b), c)) == A.add(nu(b, c), nu(a, K.mul(b, c)));
        });
}

inline CocycleReport validate_cocycle(const U1Cocycle& c)
{
    const FiniteGroup& K = *c.K;
    return detail::check_cocycle(
        K.order(), [&](Elem a, Elem b) { return c(a, b); },
        [&](Elem a, Elem b, Elem x) {
            return modular::mod(c(a, b) + c(K.mul(a, b), x) - c(b, x) - c(a, K.mul(b, x)), c.m) == 0;
        });
}

/// Checks the identity and shifts by the constant nu(1,1)^{-1} so that the
/// result is normalized.  Throws InvalidInput when the identity fails.
inline TwoCocycleA normalize_cocycle(TwoCocycleA nu)
{
    if (nu.values.size() != static_cast<std::size_t>(nu.K->order()) * static_cast<std::size_t>(nu.K->order()))
        throw InvalidInput("cocycle table has the wrong size");
    for (int v : nu.values)
        if (v < 0 || v >= nu.A.size())
            throw InvalidInput("cocycle value out of range");
    if (!validate_cocycle(nu).ok())
        throw InvalidInput("table violates the cocycle identity");
    const int shift = nu.A.neg(nu(0, 0));
    for (auto& v : nu.values)
        v = nu.A.add(v, shift);
    return nu;
}

inline U1Cocycle normalize_cocycle(U1Cocycle c)
{
    if (c.m < 1)
        throw InvalidInput("u1 modulus must be positive");
    if (c.exps.size() != static_cast<std::size_t>(c.K->order()) * static_cast<std::size_t>(c.K->order()))
        throw InvalidInput("cocycle table has the wrong size");
    for (auto& e : c.exps)
        e = modular::mod(e, c.m);
    if (!validate_cocycle(c).ok())
        throw InvalidInput("table violates the cocycle identity");
    const long shift = c(0, 0);
    for (auto& e : c.exps)
        e = modular::mod(e - shift, c.m);
    return c;
}

/// Central extension 1 -> A -> G -> K -> 1 together with the chosen
/// identification of A with a product of cyclic groups.
struct CentralExtension {
    GroupPtr G;
    CentralSubgroup A;
    AbelianBasis basis; // coordinates on A
    GroupPtr K;
    std::vector<Elem> projection;
    std::vector<Elem> section;
};

/// Group of pairs (a,k) with (a1,k1)(a2,k2) = (a1 + a2 + nu(k1,k2), k1 k2),
/// numbered k |A| + a.  The section is k -> (0,k).
inline CentralExtension build_extension(const TwoCocycleA& nu, const Limits& limits = default_limits())
{
    auto rep = validate_cocycle(nu);
    if (!rep.ok())
        throw InvalidInput("build_extension: not a cocycle");
    if (!rep.normalized)
        throw InvalidInput("build_extension: cocycle is not normalized");
    const FiniteGroup& K = *nu.K;
    const CoefficientGroup& A = nu.A;
    const int a = A.size(), k = K.order();
    const long n = static_cast<long>(a) * k;
    if (n > static_cast<long>(limits.max_group_order))
        throw CapExceeded("extension order " + std::to_string(n) + " exceeds cap");
    // Precompute addition in A.
    std::vector<int> addt(static_cast<std::size_t>(a * a));
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < a; ++y)
            addt[static_cast<std::size_t>(x * a + y)] = A.add(x, y);
    std::vector<Elem> flat(static_cast<std::size_t>(n * n));
    for (long x = 0; x < n; ++x)
        for (long y = 0; y < n; ++y) {
            const int k1 = static_cast<int>(x / a), a1 = static_cast<int>(x % a);
            const int k2 = static_cast<int>(y / a), a2 = static_cast<int>(y % a);
            const int s = addt[static_cast<std::size_t>(addt[static_cast<std::size_t>(a1 * a + a2)] * a + nu(k1, k2))];
            flat[static_cast<std::size_t>(x * n + y)] = K.mul(k1, k2) * a + s;
        }
    CentralExtension ext;
    ext.G = share(FiniteGroup::trusted(std::move(flat), static_cast<int>(n), A.as_group().name() + "." + K.name()));
    std::vector<Elem> asub(static_cast<std::size_t>(a));
    std::iota(asub.begin(), asub.end(), 0);
    ext.A = CentralSubgroup::of(*ext.G, asub);
    // Generators: unit coordinate vectors.
    std::vector<Elem> gens;
    for (int i = 0; i < A.rank(); ++i) {
        std::vector<int> c(static_cast<std::size_t>(A.rank()), 0);
        c[static_cast<std::size_t>(i)] = 1;
        gens.push_back(A.encode(c));
    }
    ext.basis = AbelianBasis::from_generators(*ext.G, gens);
    ext.K = nu.K;
    ext.projection.resize(static_cast<std::size_t>(n));
    for (long x = 0; x < n; ++x)
        ext.projection[static_cast<std::size_t>(x)] = static_cast<Elem>(x / a);
    for (int kk = 0; kk < k; ++kk)
        ext.section.push_back(kk * a);
    return ext;
}

/// nu(k1,k2) = s(k1) s(k2) s(k1 k2)^{-1} for the extension's section.
inline TwoCocycleA cocycle_of(const CentralExtension& ext)
{
    const FiniteGroup& G = *ext.G;
    const int k = ext.K->order();
    TwoCocycleA nu{ext.K, ext.basis.coeff, std::vector<int>(static_cast<std::size_t>(k * k))};
    for (Elem a = 0; a < k; ++a)
        for (Elem b = 0; b < k; ++b) {
            Elem x = G.mul(G.mul(ext.section[static_cast<std::size_t>(a)], ext.section[static_cast<std::size_t>(b)]),
                           G.inv(ext.section[static_cast<std::size_t>(ext.K->mul(a, b))]));
            nu.values[static_cast<std::size_t>(a * k + b)] = ext.basis.code(x);
        }
    return nu;
}

/// Extension data for G over the central subgroup A with the minimal-index
/// section, plus its cocycle.  An explicit basis of A may be supplied.
inline std::pair<CentralExtension, TwoCocycleA> extract_cocycle(GroupPtr G, const CentralSubgroup& A,
                                                                std::optional<AbelianBasis> basis = std::nullopt)
{
    for (Elem a : A.elements)
        if (!G->is_central(a))
            throw InvalidInput("extract_cocycle: subgroup is not central");
    CentralQuotient q = central_quotient(*G, A);
    CentralExtension ext;
    ext.G = G;
    ext.A = A;
    ext.basis = basis ? std::move(*basis) : decompose_abelian(*G, A.elements);
    ext.K = share(std::move(q.K));
    ext.projection = std::move(q.projection);
    ext.section = std::move(q.section);
    auto nu = cocycle_of(ext);
    return {std::move(ext), std::move(nu)};
}

/// delta(phi)(a,b) = phi(a) + phi(b) - phi(ab).
inline TwoCocycleA coboundary(GroupPtr K, const CoefficientGroup& A, const std::vector<int>& phi)
{
    const int n = K->order();
    TwoCocycleA nu{K, A, std::vector<int>(static_cast<std::size_t>(n * n))};
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            nu.values[static_cast<std::size_t>(a * n + b)] =
                A.sub(A.add(phi[static_cast<std::size_t>(a)], phi[static_cast<std::size_t>(b)]),
                      phi[static_cast<std::size_t>(K->mul(a, b))]);
    return nu;
}

inline U1Cocycle coboundary(GroupPtr K, long m, const std::vector<long>& phi)
{
    const int n = K->order();
    U1Cocycle c{K, m, std::vector<long>(static_cast<std::size_t>(n * n))};
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            c.exps[static_cast<std::size_t>(a * n + b)] =
                modular::mod(phi[static_cast<std::size_t>(a)] + phi[static_cast<std::size_t>(b)]
                                 - phi[static_cast<std::size_t>(K->mul(a, b))],
                             m);
    return c;
}

template <class Phi>
struct CoboundaryResult {
    bool is_coboundary = false;
    std::optional<Phi> witness;
};

namespace detail {

/// Solves phi(a) + phi(b) - phi(ab) = rhs(a,b) over Z/m.
inline std::optional<std::vector<std::int64_t>> solve_coboundary(const FiniteGroup& K, std::int64_t m,
                                                                  const std::vector<std::int64_t>& rhs)
{
    const int n = K.order();
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<std::int64_t> b;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            std::vector<std::int64_t> row(static_cast<std::size_t>(n), 0);
            row[static_cast<std::size_t>(x)] += 1;
            row[static_cast<std::size_t>(y)] += 1;
            row[static_cast<std::size_t>(K.mul(x, y))] -= 1;
            rows.push_back(std::move(row));
            b.push_back(rhs[static_cast<std::size_t>(x * n + y)]);
        }
    return modular::solve_mod(rows, b, m, static_cast<std::size_t>(n));
}

} // namespace detail

/// Decides whether nu = delta(phi) for some phi : K -> A; returns phi when so.
inline CoboundaryResult<std::vector<int>> is_coboundary(const TwoCocycleA& nu)
{
    const int n = nu.K->order();
    std::vector<std::vector<int>> phi_coords(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(nu.A.rank())));
    for (int i = 0; i < nu.A.rank(); ++i) {
        const int m = nu.A.moduli()[static_cast<std::size_t>(i)];
        std::vector<std::int64_t> rhs;
        for (int v : nu.values)
            rhs.push_back(nu.A.coords(v)[static_cast<std::size_t>(i)]);
        auto sol = detail::solve_coboundary(*nu.K, m, rhs);
        if (!sol)
            return {};
        for (int k = 0; k < n; ++k)
            phi_coords[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = static_cast<int>((*sol)[static_cast<std::size_t>(k)]);
    }
    std::vector<int> phi;
    for (const auto& c : phi_coords)
        phi.push_back(nu.A.encode(c));
    if (coboundary(nu.K, nu.A, phi).values != nu.values)
        throw Defect("coboundary witness does not reproduce the cocycle");
    return {true, phi};
}

/// U(1) version.  A coboundary witness may need values in mu_{m exp(K)},
/// so the witness is returned as exponents modulo N = m * exp(K).
struct U1Witness {
    long modulus = 1;
    std::vector<long> exps;
};

inline CoboundaryResult<U1Witness> is_coboundary(const U1Cocycle& c)
{
    const long t = c.K->exponent();
    const long N = c.m * t;
    std::vector<std::int64_t> rhs;
    for (long e : c.exps)
        rhs.push_back(e * t);
    auto sol = detail::solve_coboundary(*c.K, N, rhs);
    if (!sol)
        return {};
    U1Witness w{N, std::vector<long>(sol->begin(), sol->end())};
    auto back = coboundary(c.K, N, w.exps);
    for (std::size_t i = 0; i < back.exps.size(); ++i)
        if (back.exps[i] != modular::mod(c.exps[i] * t, N))
            throw Defect("coboundary witness does not reproduce the cocycle");
    return {true, std::move(w)};
}

/// A character of a CoefficientGroup: lambda(x) = prod_i zeta_{m_i}^{l_i x_i}.
struct AbelianCharacter {
    CoefficientGroup A;
    std::vector<int> exps; // l_i modulo m_i

    /// Exponent of lambda(x) as a power of zeta_M, M = exponent of A.
    long exponent_at(int code) const
    {
        const long M = A.exponent();
        const auto x = A.coords(code);
        long s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += static_cast<long>(exps[i]) * x[i] * (M / A.moduli()[i]);
        return modular::mod(s, M);
    }
    Cyclotomic operator()(int code) const { return Cyclotomic::root_of_unity(A.exponent(), exponent_at(code)); }
    /// Order of the image.
    long image_order() const
    {
        long o = 1;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            const long m = A.moduli()[i];
            o = std::lcm(o, m / std::gcd(m, static_cast<long>(exps[i])));
        }
        return o;
    }
    bool is_trivial() const
    {
        return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    }

    /// All characters, exponent vectors in lexicographic order; index 0 is trivial.
    static std::vector<AbelianCharacter> all(const CoefficientGroup& A)
    {
        std::vector<AbelianCharacter> out;
        for (int code = 0; code < A.size(); ++code)
            out.push_back(AbelianCharacter{A, A.coords(code)});
        return out;
    }

    /// Recovers the exponent vector from values on every element, checking
    /// that the table is a homomorphism.
    static AbelianCharacter from_values(const CoefficientGroup& A, const std::vector<Cyclotomic>& values)
    {
        if (static_cast<int>(values.size()) != A.size())
            throw InvalidInput("character table has the wrong length");
        for (const auto& cand : all(A)) {
            bool match = true;
            for (int code = 0; code < A.size() && match; ++code)
                match = cand(code) == values[static_cast<std::size_t>(code)];
            if (match)
                return cand;
        }
        throw InvalidInput("values do not define a homomorphism to roots of unity");
    }
};

/// c(a,b) = lambda(nu(a,b)), with modulus the order of lambda's image.
inline U1Cocycle push_by_character(const TwoCocycleA& nu, const AbelianCharacter& lambda)
{
    if (!(lambda.A == nu.A))
        throw InvalidInput("character is defined on a different coefficient group");
    const long M = nu.A.exponent();
    const long m = lambda.image_order();
    U1Cocycle c{nu.K, m, {}};
    c.exps.reserve(nu.values.size());
    for (int v : nu.values)
        c.exps.push_back(lambda.exponent_at(v) / (M / m));
    return c;
}

/// c1 x c2 on K1 x K2: c((g1,h1),(g2,h2)) = c1(g1,g2) c2(h1,h2).
inline U1Cocycle product_cocycle(const U1Cocycle& c1, const U1Cocycle& c2)
{
    auto K = share(direct_product(*c1.K, *c2.K));
    const long M = std::lcm(c1.m, c2.m);
    const int n = K->order(), h = c2.K->order();
    U1Cocycle c{K, M, std::vector<long>(static_cast<std::size_t>(n) * static_cast<std::size_t>(n))};
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            c.exps[static_cast<std::size_t>(x * n + y)] =
                modular::mod(c1(x / h, y / h) * (M / c1.m) + c2(x % h, y % h) * (M / c2.m), M);
    return c;
}

/// tau(q,q) tau(q,q^2) ... tau(q,q^{d-1}) with d the order of q.
inline int holonomy_cyclic(const TwoCocycleA& tau, Elem q)
{
    const FiniteGroup& K = *tau.K;
    int acc = 0;
    Elem qi = q;
    for (int i = 1; i < K.element_order(q); ++i) {
        acc = tau.A.add(acc, tau(q, qi));
        qi = K.mul(qi, q);
    }
    return acc;
}

/// Exponent (modulo m) of the holonomy of a root-of-unity cocycle.
inline long holonomy_cyclic(const U1Cocycle& c, Elem q)
{
    const FiniteGroup& K = *c.K;
    long acc = 0;
    Elem qi = q;
    for (int i = 1; i < K.element_order(q); ++i) {
        acc = modular::mod(acc + c(q, qi), c.m);
        qi = K.mul(qi, q);
    }
    return acc;
}

} // namespace gerbegw
