#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gerbegw/errors.hpp"
#include "gerbegw/modular.hpp"

namespace gerbegw::linalg {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Basis of the right kernel of A (rows x cols) over F_p.
inline Matrix<std::int64_t> kernel_mod_p(Matrix<std::int64_t> A, std::int64_t p, std::size_t cols)
{
    using modular::mod;
    using modular::mul_mod;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < A.size(); ++c) {
        std::size_t piv = r;
        while (piv < A.size() && mod(A[piv][c], p) == 0)
            ++piv;
        if (piv == A.size())
            continue;
        std::swap(A[piv], A[r]);
        const std::int64_t s = modular::inv_mod(A[r][c], p);
        for (auto& x : A[r])
            x = mul_mod(x, s, p);
        for (std::size_t i = 0; i < A.size(); ++i) {
            if (i == r || mod(A[i][c], p) == 0)
                continue;
            const std::int64_t f = mod(A[i][c], p);
            for (std::size_t j = 0; j < cols; ++j)
                A[i][j] = mod(A[i][j] - mul_mod(f, A[r][j], p), p);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col)
        is_pivot[c] = true;
    Matrix<std::int64_t> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<std::int64_t> v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = mod(-A[i][f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Inverse of a square matrix over an exact field; nullopt if singular.
template <class T>
std::optional<Matrix<T>> invert(const Matrix<T>& M)
{
    const std::size_t n = M.size();
    Matrix<T> a(n, std::vector<T>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = M[i][j];
        a[i][n + i] = T(1);
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c].is_zero())
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(a[p], a[c]);
        const T s = T(1) / a[c][c];
        for (auto& x : a[c])
            if (!x.is_zero())
                x = x * s;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c].is_zero())
                continue;
            const T f = a[r][c];
            for (std::size_t j = 0; j < 2 * n; ++j)
                if (!a[c][j].is_zero())
                    a[r][j] = a[r][j] - f * a[c][j];
        }
    }
    Matrix<T> inv(n, std::vector<T>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = a[i][n + j];
    return inv;
}

} // namespace gerbegw::linalg
