#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "gerbegw/errors.hpp"

namespace gerbegw::modular {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mul_mod(i64 a, i64 b, i64 m)
{
    return static_cast<i64>((static_cast<__int128>(mod(a, m)) * mod(b, m)) % m);
}

inline i64 pow_mod(i64 base, u64 exp, i64 m)
{
    i64 result = 1 % m;
    base = mod(base, m);
    while (exp) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m; a must be a unit.
inline i64 inv_mod(i64 a, i64 m)
{
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        i64 q = g / a1;
        std::tie(g, a1) = std::pair{a1, g - q * a1};
        std::tie(x, x1) = std::pair{x1, x - q * x1};
    }
    if (g != 1)
        throw Defect("inv_mod: not a unit");
    return mod(x, m);
}

inline bool is_prime(i64 n)
{
    if (n < 2)
        return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Prime factorization as (prime, exponent) pairs, primes increasing.
inline std::vector<std::pair<i64, int>> factorize(i64 n)
{
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

inline i64 euler_phi(i64 n)
{
    i64 r = n;
    for (auto [p, e] : factorize(n))
        r = r / p * (p - 1);
    return r;
}

/// Smallest primitive root modulo the prime p.
inline i64 primitive_root(i64 p)
{
    if (p == 2)
        return 1;
    auto fs = factorize(p - 1);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (auto [q, e] : fs)
            if (pow_mod(g, static_cast<u64>((p - 1) / q), p) == 1) {
                ok = false;
                break;
            }
        if (ok)
            return g;
    }
    throw Defect("no primitive root");
}

inline int valuation(i64 a, i64 p)
{
    if (a == 0)
        return -1;
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

/// Solves M x = b over Z/p^e by diagonalizing with full pivoting on minimal
/// p-adic valuation.  Returns nullopt when inconsistent.
inline std::optional<std::vector<i64>> solve_prime_power(std::vector<std::vector<i64>> rows,
                                                         std::vector<i64> rhs, i64 p, int e,
                                                         std::size_t ncols)
{
    i64 q = 1;
    for (int i = 0; i < e; ++i)
        q *= p;
    const std::size_t nrows = rows.size();
    for (auto& r : rows)
        for (auto& x : r)
            x = mod(x, q);
    for (auto& x : rhs)
        x = mod(x, q);

    // x = V y; V starts as the identity and records column operations.
    std::vector<std::vector<i64>> V(ncols, std::vector<i64>(ncols, 0));
    for (std::size_t i = 0; i < ncols; ++i)
        V[i][i] = 1;

    std::size_t rank = 0;
    std::vector<int> pivot_val;
    std::vector<i64> pivot_unit_inv;
    for (std::size_t t = 0; t < std::min(nrows, ncols); ++t) {
        int best = -1;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < nrows && best != 0; ++i)
            for (std::size_t j = t; j < ncols; ++j) {
                if (rows[i][j] == 0)
                    continue;
                int v = valuation(rows[i][j], p);
                if (best < 0 || v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                    if (v == 0)
                        break;
                }
            }
        if (best < 0)
            break;
        std::swap(rows[t], rows[bi]);
        std::swap(rhs[t], rhs[bi]);
        if (bj != t) {
            for (auto& r : rows)
                std::swap(r[t], r[bj]);
            for (auto& r : V)
                std::swap(r[t], r[bj]);
        }
        i64 pv = 1;
        for (int k = 0; k < best; ++k)
            pv *= p;
        const i64 unit_inv = inv_mod(rows[t][t] / pv, q);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == t || rows[i][t] == 0)
                continue;
            i64 f = mul_mod(rows[i][t] / pv, unit_inv, q);
            for (std::size_t j = t; j < ncols; ++j)
                if (rows[t][j])
                    rows[i][j] = mod(rows[i][j] - mul_mod(f, rows[t][j], q), q);
            rhs[i] = mod(rhs[i] - mul_mod(f, rhs[t], q), q);
        }
        for (std::size_t j = t + 1; j < ncols; ++j) {
            if (rows[t][j] == 0)
                continue;
            i64 f = mul_mod(rows[t][j] / pv, unit_inv, q);
            rows[t][j] = 0;
            for (std::size_t i = 0; i < ncols; ++i)
                V[i][j] = mod(V[i][j] - mul_mod(f, V[i][t], q), q);
        }
        pivot_val.push_back(best);
        pivot_unit_inv.push_back(unit_inv);
        ++rank;
    }
    for (std::size_t i = rank; i < nrows; ++i)
        if (rhs[i] != 0)
            return std::nullopt;
    std::vector<i64> y(ncols, 0);
    for (std::size_t t = 0; t < rank; ++t) {
        i64 pv = 1;
        for (int k = 0; k < pivot_val[t]; ++k)
            pv *= p;
        if (rhs[t] % pv != 0)
            return std::nullopt;
        y[t] = mul_mod(rhs[t] / pv, pivot_unit_inv[t], q);
    }
    std::vector<i64> x(ncols, 0);
    for (std::size_t i = 0; i < ncols; ++i) {
        i64 s = 0;
        for (std::size_t j = 0; j < ncols; ++j)
            if (V[i][j] && y[j])
                s = mod(s + mul_mod(V[i][j], y[j], q), q);
        x[i] = s;
    }
    return x;
}

/// Solves M x = b over Z/m, splitting m into prime powers and recombining
/// with the Chinese remainder theorem.
inline std::optional<std::vector<i64>> solve_mod(const std::vector<std::vector<i64>>& rows,
                                                 const std::vector<i64>& rhs, i64 m, std::size_t ncols)
{
    std::vector<i64> x(ncols, 0);
    if (m == 1)
        return x;
    i64 acc_mod = 1;
    for (auto [p, e] : factorize(m)) {
        auto part = solve_prime_power(rows, rhs, p, e, ncols);
        if (!part)
            return std::nullopt;
        i64 q = 1;
        for (int k = 0; k < e; ++k)
            q *= p;
        // Combine x (mod acc_mod) with part (mod q).
        i64 inv = inv_mod(acc_mod % q, q);
        for (std::size_t i = 0; i < ncols; ++i) {
            i64 t = mul_mod((*part)[i] - x[i], inv, q);
            x[i] = x[i] + acc_mod * t;
        }
        acc_mod *= q;
        for (auto& v : x)
            v = mod(v, acc_mod);
    }
    return x;
}

} // namespace gerbegw::modular
