// tatecoh: command-line front end for the H^-1 workbench.
//
// Exit codes: 0 ok, 1 check failure or table mismatch, 2 usage,
// 3 resource bound, 4 I/O / schema / unsupported fixture, 5 inconsistency.

#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tatecoh/abelian.hpp"
#include "tatecoh/cohomology_ranks.hpp"
#include "tatecoh/errors.hpp"
#include "tatecoh/fixtures.hpp"
#include "tatecoh/gmodule.hpp"
#include "tatecoh/table.hpp"

using namespace tatecoh;
using json = nlohmann::json;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, resource = 3, io = 4, inconsistent = 5 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    bool quiet = false;

    std::size_t d = 0;
    std::size_t q = 0;
    std::int64_t p = 2;
    std::string invariants;
    bool oracle = false;

    std::string fixture;
    std::string element;
    bool h0 = false;
    std::string fixtures_dir;
    std::string spec;
};

json integer_json(Integer const& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

json group_json(GroupStructure const& g)
{
    json inv = json::array();
    for (auto const& n : g.invariant_factors)
        inv.push_back(integer_json(n));
    return {{"invariants", inv}, {"free_rank", g.free_rank}, {"text", format_group(g)}};
}

json vector_json(IntVector const& v)
{
    json a = json::array();
    for (auto const& x : v)
        a.push_back(integer_json(x));
    return a;
}

std::vector<std::int64_t> parse_invariants(std::string const& text)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (std::exception const&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw UsageError("--invariants: '" + item + "' is not an integer");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("--invariants: empty list");
    return out;
}

/* text lines and a json object; exactly one of them is printed */
struct Output {
    std::string text;
    json obj = json::object();
    int code = ok;
};

Output cmd_ranks(Options const& o)
{
    if (o.d < 1)
        throw UsageError("--d must be >= 1");
    Output out;
    Integer formula = mod_p_cohomology_rank(o.d, o.q);
    out.obj = {{"d", o.d}, {"q", o.q}, {"p", o.p}, {"rank", integer_json(formula)}};
    if (!o.oracle) {
        if (!o.invariants.empty())
            throw UsageError("--invariants only makes sense with --oracle");
        out.text = formula.get_str();
        return out;
    }
    if (o.invariants.empty())
        throw UsageError("--oracle needs --invariants");
    auto inv = parse_invariants(o.invariants);
    if (inv.size() != o.d)
        throw UsageError("--invariants lists " + std::to_string(inv.size()) + " factors but --d is "
                         + std::to_string(o.d));
    std::size_t oracle;
    try {
        oracle = bar_resolution_mod_p_rank(inv, o.p, o.q);
    } catch (std::invalid_argument const& e) {
        throw UsageError(e.what());
    }
    out.obj["oracle"] = oracle;
    out.obj["agree"] = formula == static_cast<unsigned long>(oracle);
    out.text = "formula=" + formula.get_str() + " oracle=" + std::to_string(oracle);
    if (formula != static_cast<unsigned long>(oracle))
        out.code = inconsistent;
    return out;
}

Output cmd_predict(Options const& o)
{
    if (o.d < 1)
        throw UsageError("--d must be >= 1");
    Output out;
    Integer r = h4_z_rank(o.d);
    out.text = r.get_str();
    out.obj = {{"d", o.d}, {"h4_z_rank", integer_json(r)}};
    return out;
}

Output cmd_tate(Options const& o)
{
    Fixture f = load_fixture(o.fixture);
    Output out;
    out.obj["label"] = f.label;
    if (o.h0) {
        if (f.nonabelian_unsupported)
            throw UnsupportedFixtureError(f.label + ": Gal(M/K) is nonabelian; H^0 over it is not computed");
        GroupStructure h = h_hat_zero(f.module());
        out.obj["h_hat_zero"] = group_json(h);
        out.obj["p_primary"] = group_json(h.p_primary_part(f.p));
        out.text = format_group(h);
        return out;
    }
    if (!o.element.empty()) {
        if (f.nonabelian_unsupported)
            throw UnsupportedFixtureError(f.label + ": Gal(M/K) is nonabelian; H^-1 over it is not computed");
        auto it = f.frobenius_units.find(o.element);
        if (it == f.frobenius_units.end())
            throw UsageError("--element: fixture has no frobenius unit labelled '" + o.element + "'");
        TateCohomology tate(f.module());
        HMinusOneClass c = tate.class_of(it->second);
        out.obj["element"] = o.element;
        out.obj["h_minus_one"] = group_json(tate.structure());
        if (!c.in_kernel)
            throw InconsistencyError(o.element + " is not in ker N_G: N_G(x) = " + to_string(c.norm_image));
        out.obj["coordinates"] = vector_json(c.coordinates);
        out.text = to_string(c.coordinates) + " in " + format_group(tate.structure());
        return out;
    }
    TateSummary s = compute_h_minus_one(f);
    out.obj["h_minus_one"] = group_json(s.full);
    out.obj["p_primary"] = group_json(s.p_primary);
    out.text = format_group(s.full);
    return out;
}

Output cmd_verify(Options const& o)
{
    Fixture f = load_fixture(o.fixture);
    Output out;
    out.obj["label"] = f.label;
    out.obj["checks"] = json::array();
    std::ostringstream text;
    bool first = true;
    for (auto const& r : verify_fixture(f)) {
        if (r.status == CheckStatus::fail)
            out.code = check_failed;
        out.obj["checks"].push_back({{"check", r.check},
                                     {"status", to_string(r.status)},
                                     {"computed", r.computed},
                                     {"expected", r.expected},
                                     {"explanation", r.explanation}});
        if (!first)
            text << '\n';
        first = false;
        text << r.check << ": " << to_string(r.status);
        if (r.status == CheckStatus::not_applicable)
            text << " (" << r.explanation << ")";
        else
            text << " (computed " << r.computed << "; expected " << r.expected << ")";
    }
    out.text = text.str();
    return out;
}

Output cmd_table(Options const& o)
{
    TableReport t = reproduce_table(o.fixtures_dir);
    Output out;
    std::string s = t.render();
    if (!s.empty() && s.back() == '\n')
        s.pop_back();
    out.text = s;
    json rows = json::array();
    char const* names[5] = {"cl_k", "cl_k1", "h_k1", "cl_k2", "h_k2"};
    for (auto const& r : t.rows) {
        json row = {{"discriminant", r.discriminant}};
        for (std::size_t i = 0; i < 5; ++i) {
            TableCell const& c = r.cells[i];
            json cell = {{"rendered", c.render()}, {"mismatch", c.mismatch()}};
            if (c.state == TableCell::State::computed)
                cell["computed"] = group_json(c.value);
            if (c.expected.kind == ExpectedCell::Kind::value)
                cell["expected"] = group_json(c.expected.value);
            row[names[i]] = cell;
        }
        if (r.rank_observation) {
            row["rank_observation"] = *r.rank_observation;
            row["rank_observation_source"] = r.rank_observation_source;
        }
        rows.push_back(row);
    }
    out.obj = {{"rows", rows},
               {"mismatches", t.mismatches},
               {"class_group_mismatches", t.class_group_mismatches},
               {"missing", t.missing},
               {"nonabelian", t.unsupported},
               {"errors", t.errors},
               {"extra_fixtures", t.extra_fixtures}};
    out.code = t.mismatches == 0 ? ok : check_failed;
    return out;
}

Output cmd_oracle(Options const& o)
{
    GModule m = load_module_spec(o.spec);
    if (m.free_rank > 0)
        throw ResourceError("module has free rank " + std::to_string(m.free_rank)
                            + "; the enumeration oracle needs a finite module");
    Output out;
    GroupStructure snf = o.h0 ? h_hat_zero(m) : h_minus_one(m);
    GroupStructure oracle = o.h0 ? enumerate_h_hat_zero_oracle(m) : enumerate_h_minus_one_oracle(m);
    bool agree = snf == oracle;
    out.obj = {{"group", o.h0 ? "h_hat_zero" : "h_minus_one"},
               {"snf", group_json(snf)},
               {"oracle", group_json(oracle)},
               {"agree", agree}};
    out.text = "snf=" + format_group(snf) + " oracle=" + format_group(oracle) + " agree=" + (agree ? "true" : "false");
    if (!agree)
        out.code = inconsistent;
    return out;
}

int emit_error(Options const& o, int code, std::string const& msg)
{
    if (o.json)
        std::cout << json{{"error", msg}, {"exit_code", code}}.dump() << '\n';
    else
        std::cerr << "tatecoh: " << msg << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    Options o;
    CLI::App app{"Tate cohomology H^-1(G, M) workbench"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "print a single JSON object");
    app.add_flag("--quiet", o.quiet, "print nothing; report through the exit code only");

    auto* ranks = app.add_subcommand("ranks", "dim H^q(G, Z/p) for an abelian p-group of rank d");
    ranks->add_option("--d", o.d, "p-rank of G")->required();
    ranks->add_option("--q", o.q, "cohomological degree")->required();
    ranks->add_option("--p", o.p, "prime for the oracle");
    ranks->add_option("--invariants", o.invariants, "cyclic orders of G, comma separated");
    ranks->add_flag("--oracle", o.oracle, "also compute the rank from the bar resolution");

    auto* predict = app.add_subcommand("predict", "d(d^2+5)/6, the p-rank of H^-1(G, E_M) for principal M");
    predict->add_option("--d", o.d, "p-rank of G")->required();

    auto* tate = app.add_subcommand("tate", "H^-1(G, E_M) of a fixture");
    tate->add_option("--fixture", o.fixture, "fixture JSON file")->required();
    auto* element = tate->add_option("--element", o.element, "print the class of this frobenius unit");
    tate->add_flag("--h0", o.h0, "print H^0(G, E_M) instead")->excludes(element);

    auto* verify = app.add_subcommand("verify", "run all checkers on a fixture");
    verify->add_option("--fixture", o.fixture, "fixture JSON file")->required();

    auto* table = app.add_subcommand("table", "reproduce the class field tower table");
    table->add_option("--fixtures", o.fixtures_dir, "directory of fixture files")->required();

    auto* oracle = app.add_subcommand("oracle", "compare SNF and brute-force H^-1 on a finite module");
    oracle->add_option("--spec", o.spec, "module JSON file")->required();
    oracle->add_flag("--h0", o.h0, "compare H^0 instead");

    try {
        app.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return app.exit(e);
    } catch (CLI::CallForAllHelp const& e) {
        return app.exit(e);
    } catch (CLI::ParseError const& e) {
        return emit_error(o, usage, e.what());
    }

    Output out;
    try {
        if (*ranks)
            out = cmd_ranks(o);
        else if (*predict)
            out = cmd_predict(o);
        else if (*tate)
            out = cmd_tate(o);
        else if (*verify)
            out = cmd_verify(o);
        else if (*table)
            out = cmd_table(o);
        else
            out = cmd_oracle(o);
    } catch (UsageError const& e) {
        return emit_error(o, usage, e.what());
    } catch (std::invalid_argument const& e) {
        return emit_error(o, usage, e.what());
    } catch (ResourceError const& e) {
        return emit_error(o, resource, e.what());
    } catch (SchemaError const& e) {
        return emit_error(o, io, e.what());
    } catch (UnsupportedFixtureError const& e) {
        return emit_error(o, io, e.what());
    } catch (InconsistencyError const& e) {
        return emit_error(o, inconsistent, e.what());
    } catch (std::exception const& e) {
        return emit_error(o, inconsistent, e.what());
    }

    if (!o.quiet) {
        if (o.json) {
            out.obj["exit_code"] = out.code;
            std::cout << out.obj.dump() << '\n';
        } else {
            std::cout << out.text << '\n';
        }
    }
    return out.code;
}
