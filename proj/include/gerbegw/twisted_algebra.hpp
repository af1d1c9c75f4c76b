#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/character_table.hpp"
#include "gerbegw/cocycles.hpp"
#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/linalg.hpp"

namespace gerbegw {

class TwistedAlgebra;
using AlgebraPtr = std::shared_ptr<const TwistedAlgebra>;

/// Element of C*(K,c), stored densely with one coefficient per group element.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(AlgebraPtr alg, std::vector<Cyclotomic> coeffs) : alg_(std::move(alg)), coeffs_(std::move(coeffs)) {}

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Cyclotomic>& coeffs() const { return coeffs_; }
    const Cyclotomic& coeff(Elem g) const { return coeffs_[static_cast<std::size_t>(g)]; }
    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Cyclotomic& c) { return c.is_zero(); });
    }

    AlgebraElement& operator+=(const AlgebraElement& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!o.coeffs_[i].is_zero())
                coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!o.coeffs_[i].is_zero())
                coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    AlgebraElement scaled(const Cyclotomic& s) const
    {
        AlgebraElement r = *this;
        for (auto& c : r.coeffs_)
            if (!c.is_zero())
                c *= s;
        return r;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const Cyclotomic& s, const AlgebraElement& a) { return a.scaled(s); }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b)
    {
        return a.alg_ == b.alg_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check_same(const AlgebraElement& o) const
    {
        if (alg_ != o.alg_)
            throw InvalidInput("algebra elements belong to different algebras");
    }

    AlgebraPtr alg_;
    std::vector<Cyclotomic> coeffs_;
};

/// Irreducible projective character of (K,c), one value per group element.
struct TwistedIrrep {
    std::string label;
    int dim = 1;
    std::vector<Cyclotomic> values;
};

/// Twisted group algebra C*(K,c) with product g o h = c(g,h) gh.  All
/// structure (c-regular classes, center basis, irreps, idempotents) is
/// computed once at construction.
class TwistedAlgebra : public std::enable_shared_from_this<TwistedAlgebra> {
public:
    static AlgebraPtr create(U1Cocycle c, const Limits& limits = default_limits())
    {
        auto alg = std::shared_ptr<TwistedAlgebra>(new TwistedAlgebra(normalize_cocycle(std::move(c))));
        alg->build(limits);
        return alg;
    }

    static AlgebraPtr untwisted(GroupPtr K) { return create(U1Cocycle::trivial(std::move(K))); }

    const FiniteGroup& group() const { return *c_.K; }
    const GroupPtr& group_ptr() const { return c_.K; }
    const U1Cocycle& cocycle() const { return c_; }
    int order() const { return c_.K->order(); }
    bool is_untwisted() const { return c_.is_trivial_table(); }

    const Cyclotomic& c_value(Elem a, Elem b) const { return roots_[static_cast<std::size_t>(c_(a, b))]; }
    const Cyclotomic& root(long e) const { return roots_[static_cast<std::size_t>(modular::mod(e, c_.m))]; }

    AlgebraElement zero() const { return AlgebraElement(self(), std::vector<Cyclotomic>(static_cast<std::size_t>(order()))); }
    AlgebraElement basis_element(Elem g, const Cyclotomic& coeff = Cyclotomic(1)) const
    {
        AlgebraElement e = zero();
        std::vector<Cyclotomic> v = e.coeffs();
        v[static_cast<std::size_t>(g)] = coeff;
        return AlgebraElement(self(), std::move(v));
    }
    AlgebraElement one() const { return basis_element(0); }
    AlgebraElement from_coeffs(std::vector<Cyclotomic> coeffs) const
    {
        if (static_cast<int>(coeffs.size()) != order())
            throw InvalidInput("coefficient vector has the wrong length");
        return AlgebraElement(self(), std::move(coeffs));
    }

    AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const
    {
        if (a.algebra().get() != this || b.algebra().get() != this)
            throw InvalidInput("multiply: elements belong to a different algebra");
        const int n = order();
        std::vector<Cyclotomic> out(static_cast<std::size_t>(n));
        for (Elem x = 0; x < n; ++x) {
            const Cyclotomic& ax = a.coeff(x);
            if (ax.is_zero())
                continue;
            for (Elem y = 0; y < n; ++y) {
                const Cyclotomic& by = b.coeff(y);
                if (by.is_zero())
                    continue;
                out[static_cast<std::size_t>(group().mul(x, y))] += ax * by * c_value(x, y);
            }
        }
        return AlgebraElement(self(), std::move(out));
    }

    /// Scalar s with x o g o x^{-1} = s (x g x^{-1}) in the algebra.
    Cyclotomic conjugation_scalar(Elem x, Elem g) const
    {
        const FiniteGroup& K = group();
        const Elem xi = K.inv(x);
        return root(c_(x, g) + c_(K.mul(x, g), xi) - c_(x, xi));
    }

    bool is_c_regular(Elem g) const
    {
        for (Elem h = 0; h < order(); ++h)
            if (group().commute(g, h) && c_(g, h) != c_(h, g))
                return false;
        return true;
    }

    /// Indices (into group().classes()) of the c-regular classes.
    const std::vector<int>& c_regular_classes() const { return regular_; }
    const std::vector<AlgebraElement>& center_basis() const { return center_basis_; }
    const std::vector<TwistedIrrep>& irreps() const { return irreps_; }
    const std::vector<AlgebraElement>& idempotents() const { return idempotents_; }
    int num_irreps() const { return static_cast<int>(irreps_.size()); }

    /// nu_rho = (dim / |K|)^2.
    Rational nu(int rho) const
    {
        Rational r(irreps_[static_cast<std::size_t>(rho)].dim, order());
        return r * r;
    }

    /// (a,b) = (1/|K|) * coefficient of the identity in a o b.
    Cyclotomic pairing(const AlgebraElement& a, const AlgebraElement& b) const
    {
        if (a.algebra().get() != this || b.algebra().get() != this)
            throw InvalidInput("pairing: elements belong to a different algebra");
        const FiniteGroup& K = group();
        Cyclotomic s;
        for (Elem x = 0; x < order(); ++x) {
            const Elem xi = K.inv(x);
            if (a.coeff(x).is_zero() || b.coeff(xi).is_zero())
                continue;
            s += a.coeff(x) * b.coeff(xi) * c_value(x, xi);
        }
        return s * Cyclotomic(Rational(1, order()));
    }

    bool is_central(const AlgebraElement& a) const
    {
        for (Elem g = 1; g < order(); ++g) {
            AlgebraElement e = basis_element(g);
            if (multiply(a, e) != multiply(e, a))
                return false;
        }
        return true;
    }

    /// Coefficients e_rho with a = sum_rho e_rho f_rho; a must be central.
    std::vector<Cyclotomic> expand_in_idempotents(const AlgebraElement& a) const
    {
        if (!is_central(a))
            throw InvalidInput("expand_in_idempotents: element is not central");
        return expand_central(a);
    }

    /// Same as expand_in_idempotents but trusts the caller on centrality;
    /// the reconstruction check still guards the result.
    std::vector<Cyclotomic> expand_central(const AlgebraElement& a) const
    {
        const std::size_t r = regular_.size();
        std::vector<Cyclotomic> e(r);
        for (std::size_t rho = 0; rho < r; ++rho)
            for (std::size_t k = 0; k < r; ++k) {
                const Elem rep = group().classes()[static_cast<std::size_t>(regular_[k])].representative;
                if (!expansion_inverse_[rho][k].is_zero() && !a.coeff(rep).is_zero())
                    e[rho] += expansion_inverse_[rho][k] * a.coeff(rep);
            }
        AlgebraElement back = zero();
        for (std::size_t rho = 0; rho < r; ++rho)
            if (!e[rho].is_zero())
                back += idempotents_[rho].scaled(e[rho]);
        if (back != a)
            throw InvalidInput("element is not in the span of the central idempotents");
        return e;
    }

private:
    explicit TwistedAlgebra(U1Cocycle c) : c_(std::move(c))
    {
        for (long e = 0; e < c_.m; ++e)
            roots_.push_back(Cyclotomic::root_of_unity(static_cast<int>(c_.m), e));
    }

    AlgebraPtr self() const { return shared_from_this(); }

    void build(const Limits& limits)
    {
        const FiniteGroup& K = group();
        const int n = order();
        for (int ci = 0; ci < K.num_classes(); ++ci)
            if (is_c_regular(K.classes()[static_cast<std::size_t>(ci)].representative))
                regular_.push_back(ci);

        for (int ci : regular_) {
            const ConjClass& cl = K.classes()[static_cast<std::size_t>(ci)];
            std::vector<Cyclotomic> v(static_cast<std::size_t>(n));
            std::vector<bool> set(static_cast<std::size_t>(n), false);
            for (Elem x = 0; x < n; ++x) {
                const Elem g2 = K.conjugate(x, cl.representative);
                if (set[static_cast<std::size_t>(g2)])
                    continue;
                set[static_cast<std::size_t>(g2)] = true;
                v[static_cast<std::size_t>(g2)] = conjugation_scalar(x, cl.representative);
            }
            AlgebraElement z(self(), std::move(v));
            if (!is_central(z))
                throw Defect("center basis element is not central");
            center_basis_.push_back(std::move(z));
        }

        build_irreps(limits);
        if (irreps_.size() != regular_.size())
            throw Defect("number of twisted irreps differs from number of c-regular classes");
        long sq = 0;
        for (const auto& ir : irreps_)
            sq += static_cast<long>(ir.dim) * ir.dim;
        if (sq != n)
            throw Defect("sum of squared twisted dims differs from |K|");

        for (const auto& ir : irreps_) {
            std::vector<Cyclotomic> v(static_cast<std::size_t>(n));
            const Cyclotomic pref(Rational(ir.dim, n));
            for (Elem g = 0; g < n; ++g) {
                const Elem gi = K.inv(g);
                const Cyclotomic& chi = ir.values[static_cast<std::size_t>(gi)];
                if (chi.is_zero())
                    continue;
                v[static_cast<std::size_t>(g)] = pref * chi / c_value(g, gi);
            }
            idempotents_.emplace_back(self(), std::move(v));
        }

        const std::size_t r = regular_.size();
        linalg::Matrix<Cyclotomic> M(r, std::vector<Cyclotomic>(r));
        for (std::size_t k = 0; k < r; ++k) {
            const Elem rep = K.classes()[static_cast<std::size_t>(regular_[k])].representative;
            for (std::size_t rho = 0; rho < r; ++rho)
                M[k][rho] = idempotents_[rho].coeff(rep);
        }
        auto inv = linalg::invert(M);
        if (!inv)
            throw Defect("idempotent coordinate matrix is singular");
        expansion_inverse_ = std::move(*inv);
    }

    void build_irreps(const Limits& limits)
    {
        const FiniteGroup& K = group();
        const int n = order();
        const int m = static_cast<int>(c_.m);
        TwoCocycleA nu{c_.K, CoefficientGroup({m}), {}};
        for (long e : c_.exps)
            nu.values.push_back(static_cast<int>(e));
        CentralExtension ext = build_extension(nu, limits);
        CharacterTable table = CharacterTable::compute(ext.G);
        const Cyclotomic zeta = Cyclotomic::root_of_unity(m, 1);
        const Elem generator = m > 1 ? 1 : 0; // (1, identity)
        for (int i = 0; i < table.size(); ++i) {
            if (table.central_character(i, generator) != zeta)
                continue;
            TwistedIrrep ir;
            ir.dim = table.dim(i);
            for (Elem k = 0; k < n; ++k)
                ir.values.push_back(table.value(i, k * m));
            irreps_.push_back(std::move(ir));
        }
        std::sort(irreps_.begin(), irreps_.end(), [](const TwistedIrrep& a, const TwistedIrrep& b) {
            if (a.dim != b.dim)
                return a.dim < b.dim;
            for (std::size_t i = 0; i < a.values.size(); ++i) {
                if (detail::value_less(a.values[i], b.values[i]))
                    return true;
                if (detail::value_less(b.values[i], a.values[i]))
                    return false;
            }
            return false;
        });
        for (std::size_t i = 0; i < irreps_.size(); ++i) {
            irreps_[i].label = "rho" + std::to_string(i);
            if (!is_untwisted())
                for (Elem g = 0; g < n; ++g)
                    if (!irreps_[i].values[static_cast<std::size_t>(g)].is_zero()
                        && !is_c_regular(g))
                        throw Defect("twisted character is nonzero off the c-regular classes");
            if (irreps_[i].values[0] != Cyclotomic(irreps_[i].dim))
                throw Defect("twisted character at identity differs from dim");
        }
        (void)K;
    }

    U1Cocycle c_;
    std::vector<Cyclotomic> roots_;
    std::vector<int> regular_;
    std::vector<AlgebraElement> center_basis_;
    std::vector<TwistedIrrep> irreps_;
    std::vector<AlgebraElement> idempotents_;
    linalg::Matrix<Cyclotomic> expansion_inverse_;
};

inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b)
{
    if (!a.algebra())
        throw InvalidInput("multiply: empty element");
    return a.algebra()->multiply(a, b);
}

} // namespace gerbegw
