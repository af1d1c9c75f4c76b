#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gerbegw/acceptance.hpp"
#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/character_table.hpp"
#include "gerbegw/cocycles.hpp"
#include "gerbegw/counting.hpp"
#include "gerbegw/errors.hpp"
#include "gerbegw/gw_engine.hpp"
#include "gerbegw/json_io.hpp"
#include "gerbegw/psi_integrals.hpp"
#include "gerbegw/twisted_algebra.hpp"

namespace gerbegw::cli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, BadInput = 2, CapHit = 3 };

using json_io::Json;

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stoi(item, &pos));
            if (pos != item.size())
                throw InvalidInput("");
        } catch (const std::exception&) {
            throw InvalidInput("expected a comma-separated integer list, got '" + s + "'");
        }
    }
    return out;
}

/// "0,1;2" -> {{0,1},{2}}.
inline std::vector<std::vector<int>> parse_selections(const std::string& s)
{
    std::vector<std::vector<int>> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ';'))
        out.push_back(parse_int_list(part));
    return out;
}

/// Untwisted C[G], the sector of G/Z(G) for a central character, or a U(1) cocycle file.
inline AlgebraPtr algebra_from_args(const std::string& group, const std::string& cocycle, int center_character,
                                    const Limits& limits)
{
    if (!cocycle.empty())
        return TwistedAlgebra::create(json_io::u1_cocycle_from_json(json_io::load_file(cocycle), limits), limits);
    if (group.empty())
        throw InvalidInput("a group or a cocycle file is required");
    auto G = share(json_io::group_from_arg(group, limits));
    if (center_character < 0)
        return TwistedAlgebra::untwisted(std::move(G));
    auto [ext, nu] = extract_cocycle(G, CentralSubgroup::center_of(*G));
    const auto chars = AbelianCharacter::all(ext.basis.coeff);
    if (static_cast<std::size_t>(center_character) >= chars.size())
        throw InvalidInput("central character index out of range");
    return TwistedAlgebra::create(push_by_character(nu, chars[static_cast<std::size_t>(center_character)]), limits);
}

} // namespace detail

/// Parses the arguments, dispatches to the modules and maps errors onto
/// exit codes.  All numeric output is exact.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Orbifold Gromov-Witten invariants of classifying stacks and gerbe decomposition checks", "gerbegw"};
    app.require_subcommand(1);
    Limits limits;
    app.add_option("--max-group-order", limits.max_group_order, "Largest group order accepted")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-enumeration", limits.max_enumeration, "Largest brute-force tuple count")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-memo-entries", limits.max_memo_entries, "Psi-integral memo size")
        ->check(CLI::PositiveNumber);
    std::string output = "-";
    app.add_option("--output", output, "Output file, '-' for standard output");

    std::string group, cocycle, cross_check, classes_arg, selections_arg, exps_arg, idem_arg;
    int genus = 0, center_char = -1, max_genus = 1, max_points = 3, max_weight = 0;
    long central = 0;
    std::size_t budget = 0;
    bool brute = false, center_flag = false;

    auto* sc_group = app.add_subcommand("group", "Print a group with its classes");
    sc_group->add_option("--group", group, "builtin:NAME or group JSON file")->required();

    auto* sc_table = app.add_subcommand("chartable", "Character table of a group");
    sc_table->add_option("--group", group, "builtin:NAME or group JSON file");
    sc_table->add_option("--cross-check", cross_check, "Verify a table JSON file instead of computing");

    auto* sc_cocycle = app.add_subcommand("cocycle", "Validate, normalize and classify a cocycle");
    sc_cocycle->add_option("--cocycle", cocycle, "Cocycle JSON file");
    sc_cocycle->add_option("--group", group, "Group whose center defines the extension (with --center)");
    sc_cocycle->add_flag("--center", center_flag, "Extract the cocycle of G over G/Z(G)");

    auto* sc_omega = app.add_subcommand("omega", "Omega_{g,c}^G((g_1),...,(g_n))");
    sc_omega->add_option("--group", group)->required();
    sc_omega->add_option("--genus", genus)->required()->check(CLI::NonNegativeNumber);
    sc_omega->add_option("--classes", classes_arg, "Comma-separated class indices")->required();
    sc_omega->add_option("--central", central, "Central twist element");
    sc_omega->add_flag("--check-brute-force", brute, "Also enumerate and compare");

    auto* sc_degree = app.add_subcommand("degree", "Degree of the lifting map");
    sc_degree->add_option("--group", group)->required();
    sc_degree->add_option("--genus", genus)->required()->check(CLI::NonNegativeNumber);
    sc_degree->add_option("--selections", selections_arg, "Class sets per point, e.g. '0,1;2'")->required();
    sc_degree->add_option("--central", central, "Central twist element");

    auto* sc_psi = app.add_subcommand("psi", "Descendant integral <tau_{a_1}...tau_{a_n}>_g");
    sc_psi->add_option("--g", genus)->required()->check(CLI::NonNegativeNumber);
    sc_psi->add_option("--a", exps_arg, "Comma-separated exponents")->required();

    auto* sc_gw = app.add_subcommand("gw", "Twisted Gromov-Witten invariant of BG");
    sc_gw->add_option("--group", group);
    sc_gw->add_option("--cocycle", cocycle, "U(1) cocycle JSON file");
    sc_gw->add_option("--center-character", center_char, "Use G/Z(G) twisted by this character of Z(G)");
    sc_gw->add_option("--genus", genus)->required()->check(CLI::NonNegativeNumber);
    sc_gw->add_option("--classes", classes_arg, "Class-sum insertions (c-regular class indices)");
    sc_gw->add_option("--idempotents", idem_arg, "Idempotent insertions (irrep indices)");
    sc_gw->add_option("--a", exps_arg, "Descendant exponents (default all zero)");

    auto* sc_dec = app.add_subcommand("decompose", "Verify the decomposition theorem for G over G/Z(G)");
    sc_dec->add_option("--group", group)->required();
    sc_dec->add_option("--max-genus", max_genus)->check(CLI::NonNegativeNumber);
    sc_dec->add_option("--max-points", max_points)->check(CLI::PositiveNumber);
    sc_dec->add_option("--max-weight", max_weight, "Also require 2g+n <= this (0 = off)");
    sc_dec->add_option("--budget", budget, "Descendant tuples per (g,n), 0 = unlimited");

    std::string first, second, first_cocycle, second_cocycle;
    int first_char = -1, second_char = -1;
    auto* sc_prod = app.add_subcommand("product-check", "Verify the product theorem");
    sc_prod->add_option("--first", first, "First group");
    sc_prod->add_option("--first-cocycle", first_cocycle);
    sc_prod->add_option("--first-center-character", first_char);
    sc_prod->add_option("--second", second, "Second group");
    sc_prod->add_option("--second-cocycle", second_cocycle);
    sc_prod->add_option("--second-center-character", second_char);
    sc_prod->add_option("--max-genus", max_genus)->check(CLI::NonNegativeNumber);
    sc_prod->add_option("--max-points", max_points)->check(CLI::PositiveNumber);
    sc_prod->add_option("--budget", budget, "Descendant tuples per (g,n), 0 = unlimited");

    auto* sc_self = app.add_subcommand("selftest", "Run the acceptance matrix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : BadInput;
    }

    std::ofstream file;
    if (output != "-") {
        file.open(output);
        if (!file) {
            err << "error: cannot write '" << output << "'\n";
            return BadInput;
        }
    }
    std::ostream& os = output == "-" ? out : file;

    try {
        if (sc_group->parsed()) {
            const FiniteGroup G = json_io::group_from_arg(group, limits);
            Json classes = Json::array();
            for (const auto& c : G.classes())
                classes.push_back(Json{{"representative", c.representative},
                                       {"members", c.members},
                                       {"centralizer_order", G.centralizer_order(c.representative)}});
            os << Json{{"group", json_io::to_json(G)},
                       {"order", G.order()},
                       {"abelian", G.is_abelian()},
                       {"center", G.center()},
                       {"classes", classes}}
                      .dump()
               << "\n";
            return Ok;
        }
        if (sc_table->parsed()) {
            if (!cross_check.empty()) {
                const CharacterTable T = json_io::table_from_json(json_io::load_file(cross_check), limits);
                os << json_io::to_json(T).dump() << "\n";
                return Ok;
            }
            if (group.empty())
                throw InvalidInput("--group or --cross-check is required");
            const CharacterTable T = CharacterTable::compute(share(json_io::group_from_arg(group, limits)));
            os << json_io::to_json(T).dump() << "\n";
            return Ok;
        }
        if (sc_cocycle->parsed()) {
            if (center_flag) {
                if (group.empty())
                    throw InvalidInput("--center needs --group");
                auto G = share(json_io::group_from_arg(group, limits));
                auto [ext, nu] = extract_cocycle(G, CentralSubgroup::center_of(*G));
                os << Json{{"cocycle", json_io::to_json(nu)},
                           {"coboundary", is_coboundary(nu).is_coboundary},
                           {"extension_isomorphic", isomorphic(*build_extension(nu, limits).G, *G)}}
                          .dump()
                   << "\n";
                return Ok;
            }
            if (cocycle.empty())
                throw InvalidInput("--cocycle or --center is required");
            const Json j = json_io::load_file(cocycle);
            Json rep;
            auto report = [&](const CocycleReport& r) {
                rep["valid"] = r.ok();
                rep["normalized"] = r.normalized;
                rep["violations"] = r.violations.size();
            };
            if (j.at("coeff").contains("u1")) {
                const U1Cocycle c = json_io::u1_cocycle_from_json(j, limits);
                const CocycleReport r = validate_cocycle(c);
                report(r);
                if (r.ok()) {
                    const U1Cocycle n = normalize_cocycle(c);
                    rep["cocycle"] = json_io::to_json(n);
                    rep["coboundary"] = is_coboundary(n).is_coboundary;
                }
            } else {
                const TwoCocycleA nu = json_io::two_cocycle_from_json(j, limits);
                const CocycleReport r = validate_cocycle(nu);
                report(r);
                if (r.ok()) {
                    const TwoCocycleA n = normalize_cocycle(nu);
                    rep["cocycle"] = json_io::to_json(n);
                    rep["coboundary"] = is_coboundary(n).is_coboundary;
                    rep["extension_order"] = build_extension(n, limits).G->order();
                }
            }
            os << rep.dump() << "\n";
            return rep["valid"].get<bool>() ? Ok : BadInput;
        }
        if (sc_omega->parsed()) {
            auto G = share(json_io::group_from_arg(group, limits));
            SurfaceCounter S(std::make_shared<CharacterTable>(CharacterTable::compute(G)));
            const auto cls = detail::parse_int_list(classes_arg);
            const Rational v = S.omega(genus, cls, static_cast<Elem>(central));
            os << v << "\n";
            if (brute) {
                const Rational b = omega_brute_force(*G, genus, cls, static_cast<Elem>(central), limits);
                if (b != v) {
                    err << "verification failed: brute force gives " << b << "\n";
                    return VerificationFailed;
                }
            }
            return Ok;
        }
        if (sc_degree->parsed()) {
            auto G = share(json_io::group_from_arg(group, limits));
            SurfaceCounter S(std::make_shared<CharacterTable>(CharacterTable::compute(G)));
            const auto sel = detail::parse_selections(selections_arg);
            const Rational d = S.degree(genus, sel, static_cast<Elem>(central));
            os << d << "\n";
            if (G->is_abelian() && abelian_degree(*G, genus, sel, static_cast<Elem>(central)) != d) {
                err << "verification failed: closed form disagrees\n";
                return VerificationFailed;
            }
            return Ok;
        }
        if (sc_psi->parsed()) {
            const PsiIntegrals P(limits.max_memo_entries);
            os << P(genus, detail::parse_int_list(exps_arg)) << "\n";
            return Ok;
        }
        if (sc_gw->parsed()) {
            const AlgebraPtr A = detail::algebra_from_args(group, cocycle, center_char, limits);
            std::vector<AlgebraElement> ins;
            if (!classes_arg.empty() == !idem_arg.empty())
                throw InvalidInput("give exactly one of --classes and --idempotents");
            for (int c : detail::parse_int_list(classes_arg))
                ins.push_back(class_sum(*A, c));
            for (int r : detail::parse_int_list(idem_arg)) {
                if (r < 0 || r >= A->num_irreps())
                    throw InvalidInput("idempotent index out of range");
                ins.push_back(A->idempotents()[static_cast<std::size_t>(r)]);
            }
            std::vector<int> a = exps_arg.empty() ? std::vector<int>(ins.size(), 0) : detail::parse_int_list(exps_arg);
            const Cyclotomic v = gw_bg(*A, genus, ins, a);
            os << Json{{"genus", genus}, {"exponents", a}, {"value", json_io::exact_value(v)}}.dump() << "\n";
            return Ok;
        }
        if (sc_dec->parsed()) {
            const GerbeDecomposition D = GerbeDecomposition::of_center(share(json_io::group_from_arg(group, limits)), limits);
            DecompositionOptions opt;
            opt.max_genus = max_genus;
            opt.max_points = max_points;
            opt.max_weight = max_weight;
            opt.descendant_budget = budget;
            const DecompositionSummary s = verify_decomposition(D, opt, [&](const DecompositionRow& r) {
                os << Json{{"genus", r.genus},
                           {"classes", r.classes},
                           {"exponents", r.exponents},
                           {"lhs", json_io::exact_value(r.lhs)},
                           {"rhs_abelian", json_io::exact_value(r.rhs_abelian)},
                           {"rhs_full", json_io::exact_value(r.rhs_full)},
                           {"abelian_equal", r.abelian_equal},
                           {"full_equal", r.full_equal}}
                          .dump()
                   << "\n";
            });
            os << Json{{"summary", true},
                       {"group", s.group},
                       {"center_order", s.center_order},
                       {"quotient_order", s.quotient_order},
                       {"rows", s.rows},
                       {"failures", s.failures},
                       {"lambda_failures", s.lambda_failures},
                       {"truncated", s.truncated},
                       {"ok", s.ok()}}
                      .dump()
               << "\n";
            return s.ok() ? Ok : VerificationFailed;
        }
        if (sc_prod->parsed()) {
            const AlgebraPtr A1 = detail::algebra_from_args(first, first_cocycle, first_char, limits);
            const AlgebraPtr A2 = detail::algebra_from_args(second, second_cocycle, second_char, limits);
            const ProductSummary s = verify_product(A1, A2, max_genus, max_points, budget, [&](const ProductRow& r) {
                os << Json{{"form", r.form},
                           {"genus", r.genus},
                           {"first", r.first},
                           {"second", r.second},
                           {"exponents", r.exponents},
                           {"lhs", json_io::exact_value(r.lhs)},
                           {"rhs", json_io::exact_value(r.rhs)},
                           {"equal", r.equal}}
                          .dump()
                   << "\n";
            }, limits);
            os << Json{{"summary", true},
                       {"rows", s.rows},
                       {"failures", s.failures},
                       {"mixed_zero_rows", s.mixed_zero_rows},
                       {"truncated", s.truncated},
                       {"ok", s.ok()}}
                      .dump()
               << "\n";
            return s.ok() ? Ok : VerificationFailed;
        }
        if (sc_self->parsed()) {
            bool all = true;
            acceptance::run_all([&](const acceptance::Criterion& c) {
                os << acceptance::format(c) << std::endl;
                all = all && c.passed;
            });
            return all ? Ok : VerificationFailed;
        }
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return BadInput;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return CapHit;
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << "\n";
        return VerificationFailed;
    } catch (const Defect& e) {
        err << "internal check failed: " << e.what() << "\n";
        return VerificationFailed;
    } catch (const nlohmann::json::exception& e) {
        err << "invalid input: " << e.what() << "\n";
        return BadInput;
    }
    return BadInput;
}

} // namespace gerbegw::cli
