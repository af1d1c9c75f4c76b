#pragma once

#include <cctype>
#include <regex>
#include <string>
#include <vector>

#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/modular.hpp"

namespace gerbegw::builtin {

inline FiniteGroup cyclic(int n)
{
    if (n < 1)
        throw InvalidInput("cyclic group order must be positive");
    if (n > static_cast<int>(default_limits().max_group_order))
        throw CapExceeded("cyclic group order exceeds cap");
    std::vector<Elem> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            flat[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
    return FiniteGroup::trusted(std::move(flat), n, "C" + std::to_string(n));
}

/// Dihedral group of order 8; element r^a s^b has index 4b + a.
inline FiniteGroup dihedral8()
{
    std::vector<Elem> flat(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int a = x % 4, b = x / 4, c = y % 4, d = y / 4;
            int ra = (a + (b ? 4 - c : c)) % 4;
            flat[static_cast<std::size_t>(x * 8 + y)] = ((b + d) % 2) * 4 + ra;
        }
    return FiniteGroup::trusted(std::move(flat), 8, "D4");
}

/// Quaternion group; elements in the order 1, -1, i, -i, j, -j, k, -k.
inline FiniteGroup quaternion8()
{
    // Units 1,i,j,k as 0..3; unit product table with signs.
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    std::vector<Elem> flat(64);
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            int u = x / 2, v = y / 2;
            int s = (x % 2 + y % 2 + sign[u][v]) % 2;
            flat[static_cast<std::size_t>(x * 8 + y)] = unit[u][v] * 2 + s;
        }
    return FiniteGroup::trusted(std::move(flat), 8, "Q8");
}

inline FiniteGroup symmetric3()
{
    return FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}, "S3");
}

inline FiniteGroup symmetric4()
{
    return FiniteGroup::from_permutations({{1, 0, 2, 3}, {1, 2, 3, 0}}, "S4");
}

inline FiniteGroup alternating4()
{
    return FiniteGroup::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4");
}

/// Heisenberg group over Z/p: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab'),
/// element index a p^2 + b p + c.
inline FiniteGroup heisenberg(int p)
{
    if (!modular::is_prime(p))
        throw InvalidInput("Heis(p) requires a prime p");
    const int n = p * p * p;
    if (n > static_cast<int>(default_limits().max_group_order))
        throw CapExceeded("Heis(p) order exceeds cap");
    std::vector<Elem> flat(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int a = x / (p * p), b = (x / p) % p, c = x % p;
            int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
            int ra = (a + a2) % p, rb = (b + b2) % p, rc = (c + c2 + a * b2) % p;
            flat[static_cast<std::size_t>(x * n + y)] = ra * p * p + rb * p + rc;
        }
    return FiniteGroup::trusted(std::move(flat), n, "Heis" + std::to_string(p));
}

/// Looks up a catalog name: C<n>, C<a>xC<b>, D4, Q8, S3, S4, A4, Heis<p>.
/// Parenthesized forms such as C(2)xC(2) and Heis(3) are accepted too.
inline FiniteGroup by_name(const std::string& raw)
{
    std::string name;
    for (char ch : raw)
        if (ch != '(' && ch != ')' && !std::isspace(static_cast<unsigned char>(ch)))
            name += ch == 'X' || ch == '*' ? 'x' : ch;
    static const std::regex cyc(R"(C(\d+))"), cyc2(R"(C(\d+)xC(\d+))"), heis(R"(Heis(\d+))");
    std::smatch m;
    if (name == "trivial" || name == "1")
        return cyclic(1);
    if (name == "D4" || name == "D8")
        return dihedral8();
    if (name == "Q8")
        return quaternion8();
    if (name == "S3")
        return symmetric3();
    if (name == "S4")
        return symmetric4();
    if (name == "A4")
        return alternating4();
    if (std::regex_match(name, m, cyc))
        return cyclic(std::stoi(m[1]));
    if (std::regex_match(name, m, cyc2))
        return direct_product(cyclic(std::stoi(m[1])), cyclic(std::stoi(m[2])));
    if (std::regex_match(name, m, heis))
        return heisenberg(std::stoi(m[1]));
    throw InvalidInput("unknown builtin group '" + raw + "'");
}

/// The groups every catalog-wide property is checked on.
inline std::vector<std::string> catalog()
{
    return {"C1", "C2", "C3", "C4", "C6", "C2xC2", "S3", "D4", "Q8", "A4", "S4", "Heis3"};
}

} // namespace gerbegw::builtin
