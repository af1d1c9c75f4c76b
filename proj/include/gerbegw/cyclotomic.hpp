#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/errors.hpp"
#include "gerbegw/modular.hpp"
#include "gerbegw/rational.hpp"

namespace gerbegw {

namespace detail {

using IntPoly = std::vector<std::int64_t>; // low degree first

/// Exact division of a by the monic polynomial b.
inline IntPoly divide_monic(IntPoly a, const IntPoly& b)
{
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size())
        throw Defect("divide_monic: degree");
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        std::int64_t c = a[i];
        q[i - db] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            a[i - db + j] -= c * b[j];
    }
    for (std::size_t i = 0; i < db; ++i)
        if (a[i] != 0)
            throw Defect("divide_monic: nonzero remainder");
    return q;
}

inline std::mutex& cyclo_mutex()
{
    static std::mutex m;
    return m;
}

/// The n-th cyclotomic polynomial, cached.
inline const IntPoly& cyclotomic_polynomial(int n)
{
    static std::map<int, std::unique_ptr<IntPoly>> cache;
    {
        std::lock_guard lock(cyclo_mutex());
        if (auto it = cache.find(n); it != cache.end())
            return *it->second;
    }
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0)
            p = divide_monic(std::move(p), cyclotomic_polynomial(d));
    std::lock_guard lock(cyclo_mutex());
    auto [it, inserted] = cache.emplace(n, std::make_unique<IntPoly>(std::move(p)));
    return *it->second;
}

/// Reduces p modulo the n-th cyclotomic polynomial, returning phi(n) coefficients.
inline std::vector<Rational> reduce_mod_phi(std::vector<Rational> p, int n)
{
    const IntPoly& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = p.size(); i-- > deg;) {
        if (p[i].is_zero())
            continue;
        Rational c = p[i];
        for (std::size_t j = 0; j < deg; ++j)
            if (phi[j] != 0)
                p[i - deg + j] -= c * Rational(static_cast<long>(phi[j]));
        p[i] = Rational();
    }
    p.resize(deg);
    return p;
}

/// Canonical conductor: conductors congruent to 2 mod 4 collapse to the odd half.
inline int canonical_conductor(int n)
{
    return n % 4 == 2 ? n / 2 : n;
}

/// Data to test whether an element of Q(zeta_n) lies in Q(zeta_d).  The
/// embedding matrix E (phi(n) x phi(d)) has full column rank; `pivots`
/// picks phi(d) independent rows and `inv` is the inverse of that square block.
struct Descent {
    std::vector<std::vector<Rational>> embed; // embed[j] = column j (image of zeta_d^j)
    std::vector<std::size_t> pivots;
    std::vector<std::vector<Rational>> inv;
};

inline const Descent& descent_data(int n, int d)
{
    static std::map<std::pair<int, int>, std::unique_ptr<Descent>> cache;
    static std::mutex m;
    {
        std::lock_guard lock(m);
        if (auto it = cache.find({n, d}); it != cache.end())
            return *it->second;
    }
    const std::size_t fn = static_cast<std::size_t>(modular::euler_phi(n));
    const std::size_t fd = static_cast<std::size_t>(modular::euler_phi(d));
    auto D = std::make_unique<Descent>();
    for (std::size_t j = 0; j < fd; ++j) {
        std::vector<Rational> poly(static_cast<std::size_t>(n), Rational());
        poly[(j * static_cast<std::size_t>(n / d)) % static_cast<std::size_t>(n)] = Rational(1);
        D->embed.push_back(reduce_mod_phi(std::move(poly), n));
    }
    // Row-reduce the transpose-free matrix to choose pivot rows.
    std::vector<std::vector<Rational>> rows(fn, std::vector<Rational>(fd));
    for (std::size_t i = 0; i < fn; ++i)
        for (std::size_t j = 0; j < fd; ++j)
            rows[i][j] = D->embed[j][i];
    // Greedy row selection: keep row i if it is independent of the kept rows.
    std::vector<std::vector<Rational>> basis; // echelon copies
    std::vector<std::size_t> lead;
    for (std::size_t i = 0; i < fn && D->pivots.size() < fd; ++i) {
        std::vector<Rational> v = rows[i];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (v[lead[b]].is_zero())
                continue;
            Rational f = v[lead[b]] / basis[b][lead[b]];
            for (std::size_t j = 0; j < fd; ++j)
                v[j] -= f * basis[b][j];
        }
        std::size_t l = 0;
        while (l < fd && v[l].is_zero())
            ++l;
        if (l == fd)
            continue;
        basis.push_back(std::move(v));
        lead.push_back(l);
        D->pivots.push_back(i);
    }
    if (D->pivots.size() != fd)
        throw Defect("descent: embedding not injective");
    // Invert the square block by Gauss-Jordan.
    std::vector<std::vector<Rational>> a(fd, std::vector<Rational>(2 * fd));
    for (std::size_t r = 0; r < fd; ++r) {
        for (std::size_t j = 0; j < fd; ++j)
            a[r][j] = rows[D->pivots[r]][j];
        a[r][fd + r] = Rational(1);
    }
    for (std::size_t c = 0; c < fd; ++c) {
        std::size_t p = c;
        while (a[p][c].is_zero())
            ++p;
        std::swap(a[p], a[c]);
        Rational s = a[c][c].inverse();
        for (auto& x : a[c])
            x *= s;
        for (std::size_t r = 0; r < fd; ++r) {
            if (r == c || a[r][c].is_zero())
                continue;
            Rational f = a[r][c];
            for (std::size_t j = 0; j < 2 * fd; ++j)
                a[r][j] -= f * a[c][j];
        }
    }
    D->inv.assign(fd, std::vector<Rational>(fd));
    for (std::size_t r = 0; r < fd; ++r)
        for (std::size_t j = 0; j < fd; ++j)
            D->inv[r][j] = a[r][fd + j];
    std::lock_guard lock(m);
    auto [it, inserted] = cache.emplace(std::pair{n, d}, std::move(D));
    return *it->second;
}

} // namespace detail

/// Exact element of the cyclotomic field Q(zeta_n), stored in the power
/// basis modulo Phi_n at the smallest conductor that contains it.
class Cyclotomic {
public:
    Cyclotomic() : conductor_(1), coeffs_{Rational()} {}
    Cyclotomic(const Rational& r) : conductor_(1), coeffs_{r} {}
    Cyclotomic(int r) : Cyclotomic(Rational(r)) {}
    Cyclotomic(long r) : Cyclotomic(Rational(r)) {}

    /// zeta_n^k.
    static Cyclotomic root_of_unity(int n, long k)
    {
        if (n < 1)
            throw InvalidInput("root_of_unity: n must be positive");
        k = static_cast<long>(modular::mod(k, n));
        const int g = std::gcd(n, static_cast<int>(k));
        int m = n / g;
        long e = k / g;
        Rational sign(1);
        if (m % 4 == 2) {
            // zeta_{2h} = -zeta_h^{(h+1)/2} for odd h.
            const int h = m / 2;
            if (e % 2)
                sign = Rational(-1);
            e = (e * ((h + 1) / 2)) % h;
            m = h;
        }
        std::vector<Rational> poly(static_cast<std::size_t>(m), Rational());
        poly[static_cast<std::size_t>(e)] = sign;
        return Cyclotomic(m, detail::reduce_mod_phi(std::move(poly), m));
    }

    /// Sum of c_k zeta_n^k over the given terms; any conductor accepted.
    static Cyclotomic from_terms(int n, const std::map<long, Rational>& terms)
    {
        if (n < 1)
            throw InvalidInput("cyclotomic: conductor must be positive");
        Cyclotomic acc;
        for (const auto& [k, c] : terms)
            if (!c.is_zero())
                acc += root_of_unity(n, k) * Cyclotomic(c);
        return acc;
    }

    /// Builds from a power-basis coefficient vector at conductor n (n not 2 mod 4).
    static Cyclotomic from_basis(int n, std::vector<Rational> coeffs)
    {
        if (n % 4 == 2) {
            std::map<long, Rational> t;
            for (std::size_t k = 0; k < coeffs.size(); ++k)
                t[static_cast<long>(k)] = coeffs[k];
            return from_terms(n, t);
        }
        if (coeffs.size() > static_cast<std::size_t>(modular::euler_phi(n)))
            return Cyclotomic(n, detail::reduce_mod_phi(std::move(coeffs), n));
        coeffs.resize(static_cast<std::size_t>(modular::euler_phi(n)));
        return Cyclotomic(n, std::move(coeffs));
    }

    int conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_rational() const { return conductor_ == 1; }
    bool is_zero() const { return conductor_ == 1 && coeffs_[0].is_zero(); }
    bool is_one() const { return conductor_ == 1 && coeffs_[0].is_one(); }

    Rational to_rational() const
    {
        if (!is_rational())
            throw InvalidInput("cyclotomic value is not rational");
        return coeffs_[0];
    }

    Cyclotomic operator-() const
    {
        Cyclotomic r = *this;
        for (auto& c : r.coeffs_)
            c = -c;
        return r;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = add(*this, o, false); }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = add(*this, o, true); }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = mul(*this, o); }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = mul(*this, o.inverse()); }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) { return add(a, b, false); }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return add(a, b, true); }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) { return mul(a, b); }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return mul(a, b.inverse()); }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b)
    {
        return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
    }

    /// Total order: by conductor, then coefficients lexicographically.
    friend std::strong_ordering operator<=>(const Cyclotomic& a, const Cyclotomic& b)
    {
        if (auto c = a.conductor_ <=> b.conductor_; c != 0)
            return c;
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0)
                return c;
        return std::strong_ordering::equal;
    }

    /// Applies zeta -> zeta^j.
    Cyclotomic galois(long j) const
    {
        const int n = conductor_;
        if (std::gcd(static_cast<long>(n), j < 0 ? -j : j) != 1)
            throw InvalidInput("galois: exponent not coprime to conductor");
        if (n == 1)
            return *this;
        const long jj = static_cast<long>(modular::mod(j, n));
        std::vector<Rational> poly(static_cast<std::size_t>(n), Rational());
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero())
                poly[static_cast<std::size_t>((static_cast<long>(k) * jj) % n)] += coeffs_[k];
        return Cyclotomic(n, detail::reduce_mod_phi(std::move(poly), n));
    }

    Cyclotomic conj() const { return galois(-1); }

    Cyclotomic inverse() const
    {
        if (is_zero())
            throw InvalidInput("division by zero");
        if (conductor_ == 1)
            return Cyclotomic(coeffs_[0].inverse());
        Cyclotomic others(1);
        for (long j = 2; j < conductor_; ++j)
            if (std::gcd(static_cast<long>(conductor_), j) == 1)
                others *= galois(j);
        const Rational norm = (*this * others).to_rational();
        return others * Cyclotomic(norm.inverse());
    }

    Cyclotomic pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        Cyclotomic result(1), base = *this;
        while (e) {
            if (e & 1)
                result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    /// Nonzero coefficients keyed by exponent.
    std::map<long, Rational> terms() const
    {
        std::map<long, Rational> out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (!coeffs_[k].is_zero())
                out.emplace(static_cast<long>(k), coeffs_[k]);
        return out;
    }

    std::string str() const
    {
        if (conductor_ == 1)
            return coeffs_[0].str();
        std::string s;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k].is_zero())
                continue;
            if (!s.empty())
                s += " + ";
            s += "(" + coeffs_[k].str() + ")";
            if (k > 0)
                s += "*z" + std::to_string(conductor_) + "^" + std::to_string(k);
        }
        return s.empty() ? "0" : s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.str(); }

private:
    Cyclotomic(int n, std::vector<Rational> coeffs) : conductor_(n), coeffs_(std::move(coeffs))
    {
        normalize();
    }

    /// Coefficient vector of *this re-expressed at conductor L (a multiple of conductor_).
    std::vector<Rational> lifted(int L) const
    {
        if (L == conductor_)
            return coeffs_;
        const std::size_t step = static_cast<std::size_t>(L / conductor_);
        std::vector<Rational> poly(static_cast<std::size_t>(L), Rational());
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            poly[k * step] = coeffs_[k];
        return detail::reduce_mod_phi(std::move(poly), L);
    }

    static int common_conductor(int a, int b)
    {
        return detail::canonical_conductor(std::lcm(a, b));
    }

    static Cyclotomic add(const Cyclotomic& a, const Cyclotomic& b, bool subtract)
    {
        if (a.conductor_ == 1 && b.conductor_ == 1)
            return Cyclotomic(subtract ? a.coeffs_[0] - b.coeffs_[0] : a.coeffs_[0] + b.coeffs_[0]);
        const int L = common_conductor(a.conductor_, b.conductor_);
        std::vector<Rational> x = a.lifted(L);
        const std::vector<Rational> y = b.lifted(L);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!y[i].is_zero()) {
                if (subtract)
                    x[i] -= y[i];
                else
                    x[i] += y[i];
            }
        return Cyclotomic(L, std::move(x));
    }

    static Cyclotomic mul(const Cyclotomic& a, const Cyclotomic& b)
    {
        if (a.conductor_ == 1 && b.conductor_ == 1)
            return Cyclotomic(a.coeffs_[0] * b.coeffs_[0]);
        if (a.is_zero() || b.is_zero())
            return Cyclotomic();
        if (a.conductor_ == 1 || b.conductor_ == 1) {
            const Cyclotomic& scalar = a.conductor_ == 1 ? a : b;
            Cyclotomic r = a.conductor_ == 1 ? b : a;
            for (auto& c : r.coeffs_)
                c *= scalar.coeffs_[0];
            return r;
        }
        const int L = common_conductor(a.conductor_, b.conductor_);
        const std::vector<Rational> x = a.lifted(L);
        const std::vector<Rational> y = b.lifted(L);
        std::vector<Rational> prod(x.size() + y.size() - 1, Rational());
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].is_zero())
                continue;
            for (std::size_t j = 0; j < y.size(); ++j)
                if (!y[j].is_zero())
                    prod[i + j] += x[i] * y[j];
        }
        return Cyclotomic(L, detail::reduce_mod_phi(std::move(prod), L));
    }

    /// Tries to express the value at conductor d.
    std::optional<std::vector<Rational>> descend(int d) const
    {
        const detail::Descent& D = detail::descent_data(conductor_, d);
        const std::size_t fd = D.pivots.size();
        std::vector<Rational> x(fd);
        for (std::size_t r = 0; r < fd; ++r)
            for (std::size_t j = 0; j < fd; ++j)
                if (!D.inv[r][j].is_zero() && !coeffs_[D.pivots[j]].is_zero())
                    x[r] += D.inv[r][j] * coeffs_[D.pivots[j]];
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            Rational s;
            for (std::size_t j = 0; j < fd; ++j)
                if (!x[j].is_zero() && !D.embed[j][i].is_zero())
                    s += x[j] * D.embed[j][i];
            if (s != coeffs_[i])
                return std::nullopt;
        }
        return x;
    }

    void normalize()
    {
        for (;;) {
            if (conductor_ == 1)
                return;
            bool rational = true;
            for (std::size_t k = 1; k < coeffs_.size(); ++k)
                if (!coeffs_[k].is_zero()) {
                    rational = false;
                    break;
                }
            if (rational) {
                coeffs_.resize(1);
                conductor_ = 1;
                return;
            }
            bool moved = false;
            for (auto [p, e] : modular::factorize(conductor_)) {
                const int d = detail::canonical_conductor(conductor_ / static_cast<int>(p));
                if (d == conductor_)
                    continue;
                if (auto x = descend(d)) {
                    coeffs_ = std::move(*x);
                    conductor_ = d;
                    moved = true;
                    break;
                }
            }
            if (!moved)
                return;
        }
    }

    int conductor_;
    std::vector<Rational> coeffs_;
};

} // namespace gerbegw
