#include <array>
#include <cstdio>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "gerbegw/builtin_groups.hpp"
#include "gerbegw/cli.hpp"
#include "gerbegw/json_io.hpp"

using namespace gerbegw;
using json_io::Json;

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "gerbegw");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

/// Runs the installed binary through the shell and returns its exit status.
int run_binary(const std::string& args)
{
    const std::string cmd = std::string(GERBEGW_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string data(const std::string& file) { return std::string(GERBEGW_DATA_DIR) + "/" + file; }

} // namespace

TEST(JsonIo, GroupRoundTrip)
{
    for (const auto& name : builtin::catalog()) {
        const FiniteGroup G = builtin::by_name(name);
        const Json j = json_io::to_json(G);
        const FiniteGroup back = json_io::group_from_json(Json::parse(j.dump()));
        EXPECT_EQ(back.table(), G.table()) << name;
        EXPECT_EQ(json_io::to_json(back).dump(), j.dump()) << name;
    }
    EXPECT_EQ(json_io::group_from_json(Json{{"kind", "permutations"}, {"generators", {{1, 0, 2}, {1, 2, 0}}}}).order(), 6);
    EXPECT_EQ(json_io::group_from_json(Json{{"kind", "product"}, {"factors", {"C2", "S3"}}}).order(), 12);
    EXPECT_THROW(json_io::group_from_json(Json{{"kind", "nope"}}), InvalidInput);
    Limits small;
    small.max_group_order = 10;
    EXPECT_THROW(json_io::group_from_json(Json("Heis3"), small), CapExceeded);
}

TEST(JsonIo, ExactValues)
{
    const Cyclotomic z = Cyclotomic::root_of_unity(12, 5) * Cyclotomic(Rational(-3, 7)) + Cyclotomic(Rational(1, 2));
    EXPECT_EQ(json_io::cyclotomic_from_json(Json::parse(json_io::to_json(z).dump())), z);
    EXPECT_EQ(json_io::rational_from_json(json_io::to_json(Rational(-22, 6))), Rational(-11, 3));
    EXPECT_EQ(json_io::exact_value(Cyclotomic(Rational(5, 3))), Json("5/3"));
    EXPECT_TRUE(json_io::exact_value(Cyclotomic::root_of_unity(4, 1)).is_object());
    EXPECT_THROW(json_io::rational_from_json(Json("1/0")), InvalidInput);
}

TEST(JsonIo, TablesAndCocycles)
{
    const CharacterTable T = CharacterTable::compute(share(builtin::alternating4()));
    const CharacterTable back = json_io::table_from_json(Json::parse(json_io::to_json(T).dump()));
    EXPECT_EQ(back.size(), T.size());
    for (int a = 0; a < T.size(); ++a)
        EXPECT_EQ(back.irrep(a).values, T.irrep(a).values);

    auto G = share(builtin::heisenberg(3));
    auto [ext, nu] = extract_cocycle(G, CentralSubgroup::center_of(*G));
    const TwoCocycleA nu2 = json_io::two_cocycle_from_json(Json::parse(json_io::to_json(nu).dump()));
    EXPECT_EQ(nu2.values, nu.values);
    const U1Cocycle c = push_by_character(nu, AbelianCharacter::all(ext.basis.coeff)[1]);
    const U1Cocycle c2 = json_io::u1_cocycle_from_json(Json::parse(json_io::to_json(c).dump()));
    EXPECT_EQ(c2.exps, c.exps);
    EXPECT_EQ(c2.m, c.m);
}

TEST(JsonIo, DataFiles)
{
    EXPECT_EQ(json_io::group_from_arg(data("q8.json")).table(), builtin::quaternion8().table());
    const TwoCocycleA nu = json_io::two_cocycle_from_json(json_io::load_file(data("q8_over_klein.json")));
    EXPECT_TRUE(isomorphic(*build_extension(nu).G, builtin::quaternion8()));
    const U1Cocycle c = json_io::u1_cocycle_from_json(json_io::load_file(data("klein_twisted.json")));
    EXPECT_FALSE(is_coboundary(c).is_coboundary);
    EXPECT_THROW(json_io::load_file(data("missing.json")), InvalidInput);
}

TEST(Cli, ScalarCommands)
{
    Result r = run({"psi", "--g", "1", "--a", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1/24\n");
    r = run({"psi", "--g", "2", "--a", "2,3"});
    EXPECT_EQ(r.out, "29/5760\n");
    r = run({"omega", "--group", "builtin:S3", "--genus", "1", "--classes", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "3\n");
    r = run({"omega", "--group", "Q8", "--genus", "0", "--classes", "1,1,1", "--central", "1", "--check-brute-force"});
    EXPECT_EQ(r.code, 0);
    r = run({"degree", "--group", "builtin:C4", "--genus", "1", "--selections", "1,3;2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, json_io::to_json(abelian_degree(builtin::cyclic(4), 1, {{1, 3}, {2}})).get<std::string>() + "\n");
}

TEST(Cli, GwCommand)
{
    Result r = run({"gw", "--group", "builtin:C1", "--genus", "0", "--classes", "0,0,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("value"), Json("1"));
    r = run({"gw", "--group", "Q8", "--center-character", "1", "--genus", "0", "--idempotents", "0,0,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("value"), Json("1/4"));
    r = run({"gw", "--cocycle", data("klein_twisted.json"), "--genus", "1", "--classes", "0", "--a", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("value"), Json("1/24"));
    r = run({"gw", "--group", "S3", "--genus", "0", "--classes", "0,0"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, DecomposeAndProduct)
{
    Result r = run({"decompose", "--group", "builtin:Q8", "--max-genus", "1", "--max-points", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line, last;
    std::size_t count = 0;
    while (std::getline(lines, line)) {
        last = line;
        ++count;
    }
    const Json summary = Json::parse(last);
    EXPECT_TRUE(summary.at("summary").get<bool>());
    EXPECT_TRUE(summary.at("ok").get<bool>());
    EXPECT_EQ(summary.at("rows").get<std::size_t>() + 1, count);

    r = run({"product-check", "--first", "S3", "--second", "C2", "--max-genus", "1", "--max-points", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run({"cocycle", "--group", "D4", "--center"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(Json::parse(r.out).at("extension_isomorphic").get<bool>());
}

TEST(Cli, OutputIsDeterministicAndExact)
{
    const std::vector<std::string> args{"decompose", "--group", "D4", "--max-genus", "1", "--max-points", "2"};
    const Result a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    // No floating-point literals anywhere in the output.
    EXPECT_FALSE(std::regex_search(a.out, std::regex(R"([0-9]\.[0-9]|[0-9]e[-+]?[0-9])")));
    const Result t = run({"chartable", "--group", "A4"});
    EXPECT_FALSE(std::regex_search(t.out, std::regex(R"([0-9]\.[0-9])")));
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_binary("psi --g 1 --a 1"), 0);
    EXPECT_EQ(run_binary("psi --g 0 --a 0,0"), 2);
    EXPECT_EQ(run_binary("omega --group NotAGroup --genus 0 --classes 0"), 2);
    EXPECT_EQ(run_binary("omega --group S3 --genus 0 --classes 0,0,9"), 2);
    EXPECT_EQ(run_binary("--no-such-flag"), 2);
    EXPECT_EQ(run_binary("--max-group-order 10 omega --group Heis3 --genus 0 --classes 0,0,0"), 3);
    EXPECT_EQ(run_binary("--max-enumeration 100 omega --group S4 --genus 2 --classes 0 --check-brute-force"), 3);
    EXPECT_EQ(run_binary("chartable --cross-check " + data("q8.json")), 2);
    EXPECT_EQ(run_binary("--help"), 0);
}
