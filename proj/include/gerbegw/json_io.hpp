#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/character_table.hpp"
#include "gerbegw/cocycles.hpp"
#include "gerbegw/cyclotomic.hpp"
#include "gerbegw/errors.hpp"
#include "gerbegw/finite_group.hpp"
#include "gerbegw/rational.hpp"
#include "gerbegw/twisted_algebra.hpp"

namespace gerbegw::json_io {

using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j)
{
    if (j.is_string())
        return Rational::parse(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw InvalidInput("rational must be a string \"p/q\" or an integer");
}

/// {"conductor": n, "coeffs": {"k": "p/q", ...}} over the power basis.
inline Json to_json(const Cyclotomic& c)
{
    Json coeffs = Json::object();
    const auto& v = c.coeffs();
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero())
            coeffs[std::to_string(k)] = v[k].str();
    return Json{{"conductor", c.conductor()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const Json& j)
{
    if (j.is_string() || j.is_number_integer())
        return Cyclotomic(rational_from_json(j));
    if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
        throw InvalidInput("cyclotomic value needs \"conductor\" and \"coeffs\"");
    const int n = j.at("conductor").get<int>();
    if (n < 1)
        throw InvalidInput("conductor must be positive");
    std::vector<Rational> v;
    for (const auto& [key, val] : j.at("coeffs").items()) {
        const long k = std::stol(key);
        if (k < 0)
            throw InvalidInput("negative basis exponent");
        if (static_cast<std::size_t>(k) >= v.size())
            v.resize(static_cast<std::size_t>(k) + 1);
        v[static_cast<std::size_t>(k)] = rational_from_json(val);
    }
    return Cyclotomic::from_basis(n, std::move(v));
}

/// Rational values print as "p/q"; everything else as a cyclotomic record.
inline Json exact_value(const Cyclotomic& c) { return c.is_rational() ? Json(c.to_rational().str()) : to_json(c); }

inline Json to_json(const FiniteGroup& G)
{
    return Json{{"kind", "table"}, {"name", G.name()}, {"table", G.table()}};
}

inline FiniteGroup group_from_json(const Json& j, const Limits& limits = default_limits());

inline TwoCocycleA two_cocycle_from_json(const Json& j, const Limits& limits = default_limits());

/// Group JSON kinds: table, permutations, builtin, product, extension.
inline FiniteGroup group_from_json(const Json& j, const Limits& limits)
{
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.rfind("builtin:", 0) == 0)
            s = s.substr(8);
        FiniteGroup G = builtin::by_name(s);
        if (G.order() > static_cast<int>(limits.max_group_order))
            throw CapExceeded("group order exceeds cap");
        return G;
    }
    const std::string kind = j.value("kind", "");
    const std::string name = j.value("name", "");
    if (kind == "table")
        return FiniteGroup(j.at("table").get<std::vector<std::vector<Elem>>>(), name, limits);
    if (kind == "permutations")
        return FiniteGroup::from_permutations(j.at("generators").get<std::vector<std::vector<int>>>(), name, limits);
    if (kind == "builtin") {
        FiniteGroup G = builtin::by_name(j.at("name").get<std::string>());
        if (G.order() > static_cast<int>(limits.max_group_order))
            throw CapExceeded("group order exceeds cap");
        return G;
    }
    if (kind == "product") {
        const auto& f = j.at("factors");
        if (!f.is_array() || f.empty())
            throw InvalidInput("product needs a nonempty \"factors\" array");
        FiniteGroup G = group_from_json(f[0], limits);
        for (std::size_t i = 1; i < f.size(); ++i)
            G = direct_product(G, group_from_json(f[i], limits));
        if (G.order() > static_cast<int>(limits.max_group_order))
            throw CapExceeded("group order exceeds cap");
        return name.empty() ? G : G.renamed(name);
    }
    if (kind == "extension") {
        const TwoCocycleA nu = two_cocycle_from_json(j.at("cocycle"), limits);
        FiniteGroup G = *build_extension(normalize_cocycle(nu), limits).G;
        return name.empty() ? G : G.renamed(name);
    }
    throw InvalidInput("unknown group kind '" + kind + "'");
}

/// Reads a whole file; "-" is not accepted here.
inline Json load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot read '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
    }
}

/// Command-line group argument: "builtin:NAME", a bare builtin name, or a JSON file.
inline FiniteGroup group_from_arg(const std::string& arg, const Limits& limits = default_limits())
{
    if (arg.rfind("builtin:", 0) == 0)
        return group_from_json(Json(arg), limits);
    std::ifstream probe(arg);
    if (probe)
        return group_from_json(load_file(arg), limits);
    return group_from_json(Json(arg), limits);
}

inline Json to_json(const CharacterTable& T)
{
    const FiniteGroup& G = T.group();
    Json classes = Json::array();
    for (const auto& c : G.classes())
        classes.push_back(Json{{"representative", c.representative}, {"members", c.members}});
    Json irreps = Json::array();
    for (const auto& ir : T.irreps()) {
        Json vals = Json::array();
        for (const auto& v : ir.values)
            vals.push_back(to_json(v));
        irreps.push_back(Json{{"dim", ir.dim}, {"values", vals}});
    }
    return Json{{"group", to_json(G)}, {"classes", classes}, {"irreps", irreps}};
}

/// Parses a table and verifies it against its group (cross-check mode).
inline CharacterTable table_from_json(const Json& j, const Limits& limits = default_limits())
{
    auto G = share(group_from_json(j.at("group"), limits));
    std::vector<Irrep> irreps;
    for (const auto& ir : j.at("irreps")) {
        Irrep r;
        r.dim = ir.at("dim").get<int>();
        for (const auto& v : ir.at("values"))
            r.values.push_back(cyclotomic_from_json(v));
        irreps.push_back(std::move(r));
    }
    return CharacterTable::cross_check(std::move(G), std::move(irreps));
}

/// {"group": ..., "coeff": {"cyclic": [m...]}, "exponents": [[...]]}.  With
/// one cyclic factor an entry is an integer; otherwise a coordinate list.
inline Json to_json(const TwoCocycleA& nu)
{
    const int n = nu.K->order();
    Json rows = Json::array();
    for (Elem a = 0; a < n; ++a) {
        Json row = Json::array();
        for (Elem b = 0; b < n; ++b) {
            if (nu.A.rank() == 1)
                row.push_back(nu(a, b));
            else
                row.push_back(nu.A.coords(nu(a, b)));
        }
        rows.push_back(row);
    }
    return Json{{"group", to_json(*nu.K)}, {"coeff", Json{{"cyclic", nu.A.moduli()}}}, {"exponents", rows}};
}

inline Json to_json(const U1Cocycle& c)
{
    const int n = c.K->order();
    Json rows = Json::array();
    for (Elem a = 0; a < n; ++a) {
        Json row = Json::array();
        for (Elem b = 0; b < n; ++b)
            row.push_back(c(a, b));
        rows.push_back(row);
    }
    return Json{{"group", to_json(*c.K)}, {"coeff", Json{{"u1", c.m}}}, {"exponents", rows}};
}

namespace detail {
inline std::vector<std::vector<Json>> exponent_rows(const Json& j, int n)
{
    const auto& rows = j.at("exponents");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw InvalidInput("exponents must be a |K| x |K| array");
    std::vector<std::vector<Json>> out;
    for (const auto& r : rows) {
        if (!r.is_array() || static_cast<int>(r.size()) != n)
            throw InvalidInput("exponents must be a |K| x |K| array");
        out.emplace_back(r.begin(), r.end());
    }
    return out;
}
} // namespace detail

inline TwoCocycleA two_cocycle_from_json(const Json& j, const Limits& limits)
{
    auto K = share(group_from_json(j.at("group"), limits));
    const Json& coeff = j.at("coeff");
    if (!coeff.contains("cyclic"))
        throw InvalidInput("expected a \"cyclic\" coefficient group");
    CoefficientGroup A(coeff.at("cyclic").get<std::vector<int>>());
    const int n = K->order();
    TwoCocycleA nu{K, A, {}};
    for (const auto& row : detail::exponent_rows(j, n))
        for (const auto& v : row) {
            if (v.is_array())
                nu.values.push_back(A.encode(v.get<std::vector<int>>()));
            else if (A.rank() == 1)
                nu.values.push_back(A.encode({v.get<int>()}));
            else
                throw InvalidInput("multi-factor coefficients need coordinate lists");
        }
    return nu;
}

inline U1Cocycle u1_cocycle_from_json(const Json& j, const Limits& limits = default_limits())
{
    auto K = share(group_from_json(j.at("group"), limits));
    const Json& coeff = j.at("coeff");
    if (!coeff.contains("u1"))
        throw InvalidInput("expected a \"u1\" coefficient");
    const long m = coeff.at("u1").get<long>();
    if (m < 1)
        throw InvalidInput("u1 modulus must be positive");
    U1Cocycle c{K, m, {}};
    for (const auto& row : detail::exponent_rows(j, K->order()))
        for (const auto& v : row)
            c.exps.push_back(modular::mod(v.get<long>(), m));
    return c;
}

/// {"coeffs": {"index": Cyclotomic, ...}}, zero coefficients omitted.
inline Json to_json(const AlgebraElement& a)
{
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        if (!a.coeffs()[i].is_zero())
            coeffs[std::to_string(i)] = to_json(a.coeffs()[i]);
    return Json{{"coeffs", coeffs}};
}

inline AlgebraElement algebra_element_from_json(const TwistedAlgebra& A, const Json& j)
{
    std::vector<Cyclotomic> v(static_cast<std::size_t>(A.order()));
    for (const auto& [key, val] : j.at("coeffs").items()) {
        const long i = std::stol(key);
        if (i < 0 || i >= A.order())
            throw InvalidInput("algebra element index out of range");
        v[static_cast<std::size_t>(i)] = cyclotomic_from_json(val);
    }
    return A.from_coeffs(std::move(v));
}

} // namespace gerbegw::json_io
