#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "gerbegw/errors.hpp"

namespace gerbegw {

/// Exact rational number backed by GMP.  Always in lowest terms with a
/// positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : value_(n) {}
    Rational(int n) : value_(n) {}
    Rational(unsigned long n) : value_(n) {}
    Rational(unsigned n) : value_(n) {}
    Rational(long long n) : value_(mpz_class(std::to_string(n))) {}
    Rational(unsigned long long n) : value_(mpz_class(std::to_string(n))) {}
    Rational(const mpz_class& num, const mpz_class& den)
    {
        if (den == 0)
            throw InvalidInput("division by zero");
        value_ = mpq_class(num, den);
        value_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : value_(n) {}
    explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

    /// Parses "p", "-p", "p/q".
    static Rational parse(std::string_view text)
    {
        std::string s(text);
        auto bad = [&] { return InvalidInput("not a rational: '" + s + "'"); };
        if (s.empty())
            throw bad();
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos)
                return Rational(mpz_class(s));
            mpz_class num(s.substr(0, slash));
            mpz_class den(s.substr(slash + 1));
            if (den <= 0)
                throw bad();
            return Rational(num, den);
        } catch (const std::invalid_argument&) {
            throw bad();
        }
    }

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& gmp() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    Rational operator-() const { return Rational(mpq_class(-value_)); }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o)
    {
        if (o.is_zero())
            throw InvalidInput("division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rational inverse() const
    {
        if (is_zero())
            throw InvalidInput("division by zero");
        return Rational(mpq_class(1 / value_));
    }

    /// Integer power; negative exponents invert.
    Rational pow(long e) const
    {
        if (e < 0)
            return inverse().pow(-e);
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
        return Rational(num, den);
    }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const
    {
        if (is_integer())
            return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_{0};
};

} // namespace gerbegw
