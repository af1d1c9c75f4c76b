#pragma once

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/character_table.hpp"
#include "gerbegw/cocycles.hpp"
#include "gerbegw/counting.hpp"
#include "gerbegw/gw_engine.hpp"
#include "gerbegw/psi_integrals.hpp"
#include "gerbegw/twisted_algebra.hpp"

namespace gerbegw::acceptance {

struct Criterion {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
};

inline const std::vector<std::string>& counting_groups()
{
    static const std::vector<std::string> g{"C2", "C3", "C4", "C2xC2", "C6", "S3", "D4", "Q8", "A4"};
    return g;
}

inline const std::vector<std::string>& abelian_groups()
{
    static const std::vector<std::string> g{"C1", "C2", "C3", "C4", "C2xC2", "C6"};
    return g;
}

/// C*(K, lambda o nu) for K = G/Z(G) and the character of Z(G) with index `lambda`.
inline AlgebraPtr pushed_center_algebra(const std::string& group, std::size_t lambda)
{
    auto G = share(builtin::by_name(group));
    auto [ext, nu] = extract_cocycle(G, CentralSubgroup::center_of(*G));
    const auto chars = AbelianCharacter::all(ext.basis.coeff);
    if (lambda >= chars.size())
        throw InvalidInput("character index out of range");
    return TwistedAlgebra::create(push_by_character(nu, chars[lambda]));
}

/// Klein four group with the nontrivial class pushed from the center of Q8.
inline AlgebraPtr twisted_klein_four() { return pushed_center_algebra("Q8", 1); }

/// Algebras the structural checks run over, twisted and untwisted.
inline std::vector<std::pair<std::string, AlgebraPtr>> test_algebras()
{
    std::vector<std::pair<std::string, AlgebraPtr>> out;
    for (const char* name : {"C1", "C2", "C3", "S3", "D4", "Q8", "A4"})
        out.emplace_back(name, TwistedAlgebra::untwisted(share(builtin::by_name(name))));
    out.emplace_back("C2xC2 twisted", twisted_klein_four());
    out.emplace_back("C3xC3 twisted", pushed_center_algebra("Heis3", 1));
    {
        auto V = twisted_klein_four();
        auto C2 = TwistedAlgebra::untwisted(share(builtin::cyclic(2)));
        out.emplace_back("C2xC2 twisted x C2", TwistedAlgebra::create(product_cocycle(V->cocycle(), C2->cocycle())));
    }
    return out;
}

namespace detail {

inline std::string count_text(std::size_t n, const std::string& what)
{
    return std::to_string(n) + " " + what;
}

} // namespace detail

/// omega by the character formula equals direct enumeration.
inline Criterion counting_oracle()
{
    Criterion c{"AC1", "counting formula equals brute-force enumeration", true, {}};
    std::size_t checked = 0;
    const std::vector<std::pair<int, int>> shapes{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {2, 1}};
    for (const auto& name : counting_groups()) {
        auto G = share(builtin::by_name(name));
        SurfaceCounter S(std::make_shared<CharacterTable>(CharacterTable::compute(G)));
        for (Elem z : G->center())
            for (auto [g, n] : shapes)
                for_each_tuple(G->num_classes(), n, [&](const std::vector<int>& cls) {
                    ++checked;
                    if (S.omega(g, cls, z) != omega_brute_force(*G, g, cls, z)) {
                        c.passed = false;
                        c.detail = "mismatch on " + name;
                    }
                });
    }
    if (c.passed)
        c.detail = detail::count_text(checked, "instances");
    return c;
}

/// Omega_0((1)) = 1/|G| and Omega_0((g),(g^-1)) = |(g)|/|G|.
inline Criterion special_cases()
{
    Criterion c{"AC2", "genus-zero special values", true, {}};
    std::size_t checked = 0;
    for (const auto& name : counting_groups()) {
        auto G = share(builtin::by_name(name));
        SurfaceCounter S(std::make_shared<CharacterTable>(CharacterTable::compute(G)));
        ++checked;
        if (S.omega(0, {0}) != Rational(1, G->order()))
            c.passed = false;
        for (int k = 0; k < G->num_classes(); ++k) {
            ++checked;
            const Rational want(static_cast<long>(G->classes()[static_cast<std::size_t>(k)].size()), G->order());
            if (S.omega(0, {k, G->inverse_class(k)}) != want)
                c.passed = false;
        }
    }
    c.detail = c.passed ? detail::count_text(checked, "values") : "a special value differs";
    return c;
}

/// Fixed values, string and dilaton equations, and agreement between recursion paths.
inline Criterion psi_values()
{
    Criterion c{"AC3", "psi-class intersection numbers", true, {}};
    const PsiIntegrals& P = psi_integrals();
    std::ostringstream why;
    auto expect = [&](int g, std::vector<int> a, Rational v) {
        if (P(g, a) != v) {
            c.passed = false;
            why << "value at genus " << g << " differs; ";
        }
    };
    expect(0, {0, 0, 0}, Rational(1));
    expect(1, {1}, Rational(1, 24));
    expect(1, {0, 2}, Rational(1, 24));
    expect(2, {4}, Rational(1, 1152));

    std::size_t string_checks = 0, dilaton_checks = 0, path_checks = 0;
    // Partitions of d into exactly n nonnegative parts, nonincreasing.
    std::function<void(int, int, int, std::vector<int>&, const std::function<void(const std::vector<int>&)>&)> parts =
        [&](int left, int slots, int cap, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
            if (slots == 0) {
                if (left == 0)
                    f(cur);
                return;
            }
            for (int v = std::min(left, cap); v >= 0; --v) {
                cur.push_back(v);
                parts(left - v, slots - 1, v, cur, f);
                cur.pop_back();
            }
        };
    for (int g = 0; 3 * g - 3 + 1 <= 12; ++g)
        for (int n = 1; 3 * g - 3 + n + 1 <= 12; ++n) {
            if (!PsiIntegrals::stable(g, static_cast<std::size_t>(n)))
                continue;
            std::vector<int> cur;
            // String equation: insertions summing to d + 1 on n points plus tau_0.
            const int d = 3 * g - 3 + n;
            parts(d + 1, n, d + 1, cur, [&](const std::vector<int>& a) {
                std::vector<int> big = a;
                big.push_back(0);
                Rational rhs;
                for (std::size_t j = 0; j < a.size(); ++j)
                    if (a[j] > 0) {
                        auto b = a;
                        --b[j];
                        rhs += P(g, b);
                    }
                ++string_checks;
                if (P(g, big) != rhs)
                    c.passed = false;
            });
            // Dilaton equation.
            parts(d, n, d, cur, [&](const std::vector<int>& a) {
                std::vector<int> big = a;
                big.push_back(1);
                ++dilaton_checks;
                if (P(g, big) != Rational(2 * g - 2 + n) * P(g, a))
                    c.passed = false;
                // Every distinguished insertion gives the same value.
                const Rational v = P(g, big);
                for (std::size_t i = 0; i < big.size(); ++i) {
                    if (i > 0 && big[i] == big[i - 1])
                        continue;
                    ++path_checks;
                    if (P.via_index(g, big, i) != v)
                        c.passed = false;
                }
            });
        }
    if (!c.passed)
        why << "string, dilaton or path agreement failed";
    c.detail = c.passed ? std::to_string(string_checks) + " string, " + std::to_string(dilaton_checks) + " dilaton, "
                              + std::to_string(path_checks) + " path checks"
                        : why.str();
    return c;
}

/// Row and column orthogonality, sum of squared dimensions, and the Q8 table.
inline Criterion character_tables()
{
    Criterion c{"AC4", "character tables", true, {}};
    for (const auto& name : builtin::catalog()) {
        auto G = share(builtin::by_name(name));
        const CharacterTable T = CharacterTable::compute(G);
        const int r = T.size();
        long sq = 0;
        for (int a = 0; a < r; ++a)
            sq += static_cast<long>(T.dim(a)) * T.dim(a);
        if (sq != G->order() || r != G->num_classes()) {
            c.passed = false;
            c.detail = name + ": dimensions";
        }
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                Cyclotomic s;
                for (Elem x = 0; x < G->order(); ++x)
                    s += T.value(a, x) * T.value(b, x).conj();
                if (s != Cyclotomic(a == b ? G->order() : 0)) {
                    c.passed = false;
                    c.detail = name + ": row orthogonality";
                }
            }
        for (int k = 0; k < r; ++k)
            for (int l = 0; l < r; ++l) {
                Cyclotomic s;
                for (int a = 0; a < r; ++a)
                    s += T.irrep(a).values[static_cast<std::size_t>(k)] * T.irrep(a).values[static_cast<std::size_t>(l)].conj();
                const int want = k == l ? G->centralizer_order(G->classes()[static_cast<std::size_t>(k)].representative) : 0;
                if (s != Cyclotomic(want)) {
                    c.passed = false;
                    c.detail = name + ": column orthogonality";
                }
            }
    }
    const CharacterTable Q = CharacterTable::compute(share(builtin::quaternion8()));
    std::vector<int> dims;
    for (int a = 0; a < Q.size(); ++a)
        dims.push_back(Q.dim(a));
    const std::vector<Cyclotomic> row{Cyclotomic(2), Cyclotomic(-2), Cyclotomic(0), Cyclotomic(0), Cyclotomic(0)};
    if (dims != std::vector<int>{1, 1, 1, 1, 2} || Q.irrep(4).values != row) {
        c.passed = false;
        c.detail = "Q8 table";
    }
    if (c.passed)
        c.detail = detail::count_text(builtin::catalog().size(), "groups");
    return c;
}

/// Twisted Klein four group structure and idempotent relations everywhere.
inline Criterion twisted_algebras()
{
    Criterion c{"AC5", "twisted group algebras", true, {}};
    auto V = twisted_klein_four();
    if (is_coboundary(V->cocycle()).is_coboundary || V->c_regular_classes().size() != 1 || V->num_irreps() != 1
        || V->irreps()[0].dim != 2) {
        c.passed = false;
        c.detail = "twisted C2xC2 structure";
    }
    std::size_t checked = 0;
    for (const auto& [name, A] : test_algebras()) {
        const auto& f = A->idempotents();
        AlgebraElement total = A->zero();
        for (int i = 0; i < A->num_irreps(); ++i) {
            total += f[static_cast<std::size_t>(i)];
            for (int j = 0; j < A->num_irreps(); ++j) {
                ++checked;
                const AlgebraElement p = A->multiply(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
                if (p != (i == j ? f[static_cast<std::size_t>(i)] : A->zero())) {
                    c.passed = false;
                    c.detail = name + ": idempotent product";
                }
                const Cyclotomic pr = A->pairing(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)]);
                const Rational d(A->irreps()[static_cast<std::size_t>(i)].dim, A->order());
                if (pr != (i == j ? Cyclotomic(d * d) : Cyclotomic())) {
                    c.passed = false;
                    c.detail = name + ": pairing";
                }
            }
        }
        if (total != A->one()) {
            c.passed = false;
            c.detail = name + ": idempotents do not sum to 1";
        }
    }
    if (c.passed)
        c.detail = detail::count_text(checked, "idempotent pairs");
    return c;
}

/// Forgetting tails, cutting loops and edges, plus the gluing identity for Omega.
inline Criterion cohft_axioms()
{
    Criterion c{"AC6", "CohFT axioms and gluing", true, {}};
    std::size_t rows = 0;
    for (const auto& [name, A] : test_algebras()) {
        const CohftReport r = cohft_axioms_check(*A, 2, 3);
        rows += r.rows.size();
        if (!r.ok()) {
            c.passed = false;
            c.detail = name + ": CohFT identity failed";
        }
    }
    for (const auto& name : counting_groups()) {
        auto G = share(builtin::by_name(name));
        SurfaceCounter S(std::make_shared<CharacterTable>(CharacterTable::compute(G)));
        for (int g = 1; g <= 2; ++g)
            for (int n = 1; n <= 2; ++n)
                for_each_tuple(G->num_classes(), n, [&](const std::vector<int>& cls) {
                    const GluingReport r = gluing_identity_check(S, g, cls);
                    rows += r.rows.size();
                    if (!r.ok()) {
                        c.passed = false;
                        c.detail = name + ": gluing identity failed";
                    }
                });
    }
    if (c.passed)
        c.detail = detail::count_text(rows, "identities");
    return c;
}

/// LHS = RHS (abelian route) = RHS (full route) for Q8 and D4.
inline Criterion decomposition()
{
    Criterion c{"AC7", "decomposition theorem for Q8 and D4", true, {}};
    std::size_t rows = 0;
    for (const char* name : {"Q8", "D4"}) {
        const GerbeDecomposition D = GerbeDecomposition::of_center(share(builtin::by_name(name)));
        DecompositionOptions opt;
        opt.max_genus = 2;
        opt.max_points = 6;
        opt.max_weight = 6;
        const DecompositionSummary s = verify_decomposition(D, opt);
        rows += s.rows;
        if (!s.ok() || s.truncated || s.rows == 0) {
            c.passed = false;
            c.detail = std::string(name) + ": " + std::to_string(s.failures) + " failing rows";
        }
    }
    if (c.passed)
        c.detail = detail::count_text(rows, "rows");
    return c;
}

/// Product theorem including vanishing on mixed idempotents.
inline Criterion product_theorem()
{
    Criterion c{"AC8", "product theorem", true, {}};
    auto V = twisted_klein_four();
    auto C2 = TwistedAlgebra::untwisted(share(builtin::cyclic(2)));
    auto S3 = TwistedAlgebra::untwisted(share(builtin::symmetric3()));
    const std::vector<std::pair<AlgebraPtr, AlgebraPtr>> pairs{{C2, V}, {S3, V}, {C2, S3}, {V, C2}};
    std::size_t rows = 0, zeros = 0;
    for (const auto& [A1, A2] : pairs) {
        const ProductSummary s = verify_product(A1, A2, 2, 3);
        rows += s.rows;
        zeros += s.mixed_zero_rows;
        if (!s.ok()) {
            c.passed = false;
            c.detail = A1->group().name() + " x " + A2->group().name() + ": failing rows";
        }
    }
    if (zeros == 0) {
        c.passed = false;
        c.detail = "no mixed-idempotent rows were exercised";
    }
    if (c.passed)
        c.detail = detail::count_text(rows, "rows") + ", " + detail::count_text(zeros, "mixed-idempotent tuples");
    return c;
}

/// Random central element of the untwisted algebra with small rational coefficients.
inline AlgebraElement random_central(const TwistedAlgebra& A, std::mt19937& rng)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    AlgebraElement e = A.zero();
    for (const auto& b : A.center_basis())
        e += b.scaled(Cyclotomic(Rational(num(rng), den(rng))));
    return e;
}

/// Abelian degree formula against the closed form; I and J are inverse.
inline Criterion degree_and_transforms()
{
    Criterion c{"AC9", "degree formula and I/J round trips", true, {}};
    std::size_t degrees = 0, trips = 0;
    for (const auto& name : abelian_groups()) {
        auto G = share(builtin::by_name(name));
        SurfaceCounter S(std::make_shared<CharacterTable>(CharacterTable::compute(G)));
        const int k = G->num_classes();
        const int max_n = G->order() <= 4 ? 3 : 2;
        for (int n = 1; n <= max_n; ++n) {
            // Each point selects a nonempty set of classes, encoded as a bit mask.
            for_each_tuple((1 << k) - 1, n, [&](const std::vector<int>& masks) {
                std::vector<std::vector<int>> sel;
                for (int m : masks) {
                    std::vector<int> s;
                    for (int i = 0; i < k; ++i)
                        if (((m + 1) >> i) & 1)
                            s.push_back(i);
                    sel.push_back(std::move(s));
                }
                for (int g = 0; g <= 2; ++g)
                    for (Elem z = 0; z < G->order(); ++z) {
                        ++degrees;
                        if (S.degree(g, sel, z) != abelian_degree(*G, g, sel, z)) {
                            c.passed = false;
                            c.detail = name + ": degree differs from closed form";
                        }
                    }
            });
        }
    }
    std::mt19937 rng(20240601u);
    for (const char* name : {"Q8", "D4", "Heis3", "C2xC2", "A4"}) {
        const GerbeDecomposition D = GerbeDecomposition::of_center(share(builtin::by_name(name)));
        for (int t = 0; t < 100; ++t) {
            const AlgebraElement d = random_central(D.untwisted(), rng);
            ++trips;
            if (D.transform_J(D.transform_I(d)) != d) {
                c.passed = false;
                c.detail = std::string(name) + ": J(I(d)) != d";
            }
            std::vector<AlgebraElement> beta;
            for (std::size_t l = 0; l < D.num_sectors(); ++l)
                beta.push_back(random_central(D.sector(l), rng));
            ++trips;
            if (D.transform_I(D.transform_J(beta)) != beta) {
                c.passed = false;
                c.detail = std::string(name) + ": I(J(b)) != b";
            }
        }
    }
    if (c.passed)
        c.detail = detail::count_text(degrees, "degrees") + ", " + detail::count_text(trips, "round trips");
    return c;
}

/// Runs every criterion in order, reporting each as soon as it finishes.
/// Exceptions count as failures.
inline std::vector<Criterion> run_all(const std::function<void(const Criterion&)>& report = {})
{
    const std::vector<std::pair<std::string, std::function<Criterion()>>> all{
        {"AC1", counting_oracle},  {"AC2", special_cases},   {"AC3", psi_values},
        {"AC4", character_tables}, {"AC5", twisted_algebras}, {"AC6", cohft_axioms},
        {"AC7", decomposition},    {"AC8", product_theorem}, {"AC9", degree_and_transforms}};
    std::vector<Criterion> out;
    for (const auto& [id, f] : all) {
        Criterion c;
        try {
            c = f();
        } catch (const std::exception& e) {
            c = Criterion{id, "exception", false, e.what()};
        }
        if (report)
            report(c);
        out.push_back(std::move(c));
    }
    return out;
}

inline std::string format(const Criterion& c)
{
    return c.id + " " + (c.passed ? "PASS" : "FAIL") + " " + c.title + ": " + c.detail;
}

} // namespace gerbegw::acceptance
