#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tatecoh/errors.hpp"
#include "tatecoh/fixtures.hpp"

using namespace tatecoh;
using json = nlohmann::json;

namespace {

GroupStructure gs(std::initializer_list<long> f)
{
    IntVector v;
    for (long x : f)
        v.emplace_back(x);
    return GroupStructure::from_cyclic_orders(v);
}

std::string fixture_path(std::string const& name) { return std::string(TATECOH_FIXTURES_DIR) + "/" + name; }

json read_json(std::string const& path)
{
    std::ifstream in(path);
    REQUIRE(in);
    return json::parse(in);
}

/* imaginary quadratic K, G = Z/2 acting by -1 on E_M = Z (w = 1) */
json sign_fixture()
{
    return json{{"label", "synthetic_sign"},
                {"p", 2},
                {"base_field", {{"discriminant", -4}, {"signature", {0, 1}}, {"class_group", {2}}}},
                {"tower_level", 1},
                {"galois", {{"invariants", {2}}, {"nonabelian_unsupported", false}}},
                {"unit_group", {{"free_rank", 1}, {"torsion_order", 1}}},
                {"action", {{{-1}}}},
                {"class_group_M", json::array()},
                {"capitulation_kernel", {2}},
                {"frobenius_units", {{"g", {1}}}}};
}

Fixture parse(json const& j) { return parse_fixture(j.dump(), "test"); }

std::string schema_error(json const& j)
{
    try {
        parse(j);
    } catch (SchemaError const& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("loading the -84 fixture")
{
    Fixture f = load_fixture(fixture_path("disc_-84_L1.json"));
    CHECK(f.label == "disc_-84_L1");
    CHECK(f.galois.order() == 4);
    CHECK(f.unit_free_rank == 3);
    CHECK(f.torsion_order == 12);
    CHECK(f.base_field.class_group == gs({2, 2}));
    CHECK(f.class_group_M.is_trivial());
    CHECK(f.degree_over_base() == 4);
    CHECK(f.frobenius_units.size() == 3);
}

TEST_CASE("schema violations")
{
    json j = read_json(fixture_path("disc_-84_L1.json"));

    json bad = j;
    bad["unit_group"]["free_rank"] = 2;
    std::string msg = schema_error(bad);
    CHECK(msg.find("free_rank is 2") != std::string::npos);
    CHECK(msg.find("= 3") != std::string::npos);

    bad = j;
    bad["action"][1] = json{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    msg = schema_error(bad);
    CHECK(msg.find("do not commute") != std::string::npos);

    bad = j;
    bad.erase("galois");
    CHECK(schema_error(bad).find("missing field galois") != std::string::npos);

    bad = j;
    bad["base_field"]["signature"] = {0};
    CHECK(schema_error(bad).find("signature") != std::string::npos);

    bad = j;
    bad["galois"]["invariants"] = {4};
    CHECK(schema_error(bad).find("not a quotient") != std::string::npos);

    bad = j;
    bad["galois"]["nonabelian_unsupported"] = true;
    CHECK(schema_error(bad).find("nonabelian_unsupported") != std::string::npos);

    bad = j;
    bad["frobenius_units"]["g1"] = {1, 2};
    CHECK(schema_error(bad).find("expected 4 exponents") != std::string::npos);

    bad = j;
    bad["p"] = 4;
    CHECK(schema_error(bad).find("not prime") != std::string::npos);

    bad = j;
    bad["tower_level"] = 3;
    CHECK_FALSE(schema_error(bad).empty());

    bad = j;
    bad["action"][0][1] = {0, -1, 0};
    CHECK(schema_error(bad).find("ragged") != std::string::npos);

    CHECK_THROWS_AS(parse_fixture("{not json", "x"), SchemaError);
    CHECK_THROWS_AS(parse_fixture("[]", "x"), SchemaError);
    CHECK_THROWS_AS(load_fixture(fixture_path("no_such_file.json")), SchemaError);
}

TEST_CASE("integers: numbers up to 2^53 or decimal strings")
{
    json j = sign_fixture();
    j["base_field"]["discriminant"] = "-4";
    j["unit_group"]["free_rank"] = "1";
    CHECK(parse(j).base_field.discriminant == -4);

    j = sign_fixture();
    j["base_field"]["discriminant"] = "-123456789012345678901234567890";
    CHECK(parse(j).base_field.discriminant == Integer("-123456789012345678901234567890"));

    j = sign_fixture();
    j["base_field"]["discriminant"] = -(std::int64_t{1} << 60);
    CHECK(schema_error(j).find("2^53") != std::string::npos);

    j = sign_fixture();
    j["base_field"]["discriminant"] = "12a";
    CHECK(schema_error(j).find("not a decimal integer") != std::string::npos);

    j = sign_fixture();
    j["base_field"]["discriminant"] = 1.5;
    CHECK_FALSE(schema_error(j).empty());
}

TEST_CASE("module specs")
{
    GModule m = parse_module_spec(R"({"galois": {"invariants": [2]},
                                      "unit_group": {"free_rank": 0, "torsion_orders": [4, 2]},
                                      "action": [[[1, 2], [0, 1]]]})");
    CHECK(m.torsion_orders == IntVector{4, 2});
    CHECK(h_minus_one(m) == enumerate_h_minus_one_oracle(m));

    m = parse_module_spec(R"({"galois": {"invariants": [2]}, "p": 2,
                              "unit_group": {"free_rank": 0, "torsion_order": 4},
                              "action": [[[1]]]})");
    CHECK(m.group.p == 2);
    CHECK(h_minus_one(m) == gs({2}));
    CHECK_THROWS_AS(parse_module_spec(R"({"galois": {"invariants": [2]},
                                          "unit_group": {"free_rank": 1, "torsion_order": 1},
                                          "action": [[[2]]]})"),
                    SchemaError);
}

TEST_CASE("H^-1 of the published fixtures")
{
    CHECK(compute_h_minus_one(load_fixture(fixture_path("disc_-84_L1.json"))).full == gs({2, 2, 2}));
    CHECK(compute_h_minus_one(load_fixture(fixture_path("disc_-260_L1.json"))).full == gs({2, 4}));
    TateSummary s = compute_h_minus_one(load_fixture(fixture_path("disc_-420_L1.json")));
    CHECK(s.full == gs({2, 2, 2, 4}));
    CHECK(s.p_primary == s.full);
    CHECK_THROWS_AS(compute_h_minus_one(load_fixture(fixture_path("disc_-120_L2.json"))), UnsupportedFixtureError);
}

TEST_CASE("capitulation order checker")
{
    VerificationReport r = check_proposition1(parse(sign_fixture()));
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.computed == "2");

    json j = sign_fixture();
    j["capitulation_kernel"] = {4};
    r = check_proposition1(parse(j));
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.computed == "2");
    CHECK(r.expected == "4");

    j = sign_fixture();
    j.erase("capitulation_kernel");
    r = check_proposition1(parse(j));
    CHECK(r.status == CheckStatus::not_applicable);
    CHECK(r.explanation.find("capitulation_kernel") != std::string::npos);

    r = check_proposition1(load_fixture(fixture_path("disc_-84_L1.json")));
    CHECK(r.status == CheckStatus::not_applicable);
    CHECK(r.explanation.find("not cyclic") != std::string::npos);

    // generated cyclic fields: H^-1 matches the capitulation kernel
    for (char const* name : {"disc_-15_L1.json", "disc_-20_L1.json", "disc_-39_L1.json", "disc_-56_L1.json"}) {
        CAPTURE(name);
        Fixture f = load_fixture(std::string(TATECOH_TEST_DATA_DIR) + "/cyclic/" + name);
        CHECK(check_proposition1(f).status == CheckStatus::pass);
        // M principal and G cyclic: everything capitulates, H^-1 = Cl(K)
        CHECK(compute_h_minus_one(f).full == f.base_field.class_group);
    }
}

TEST_CASE("p-rank checker")
{
    for (char const* name : {"disc_-84_L1.json", "disc_-308_L1.json", "disc_-399_L1.json"}) {
        CAPTURE(name);
        VerificationReport r = check_proposition6(load_fixture(fixture_path(name)));
        CHECK(r.status == CheckStatus::pass);
        CHECK(r.computed.rfind("3 ", 0) == 0);
    }
    VerificationReport r = check_proposition6(load_fixture(fixture_path("disc_-120_L1.json")));
    CHECK(r.status == CheckStatus::not_applicable);
    CHECK(r.explanation.find("not principal") != std::string::npos);
    CHECK(check_proposition6(load_fixture(fixture_path("disc_-408_L2.json"))).status == CheckStatus::not_applicable);

    // a principal M whose H^-1 has the wrong rank
    json j = sign_fixture();
    j["action"] = {{{1}}};
    j["base_field"]["class_group"] = {2};
    r = check_proposition6(parse(j));
    CHECK(r.status == CheckStatus::fail);
}

TEST_CASE("frobenius basis checker")
{
    CHECK(check_frobenius_basis(parse(sign_fixture())).status == CheckStatus::pass);
    CHECK(check_frobenius_basis(load_fixture(fixture_path("disc_-84_L1.json"))).status == CheckStatus::pass);

    // augmentation elements (A_1 - I) y in place of the units
    json j = read_json(fixture_path("disc_-84_L1.json"));
    Fixture f = parse(j);
    IntMatrix aug = f.action[0] - IntMatrix::identity(4);
    for (auto const& [label, col] : {std::pair{"g1", 1}, std::pair{"g2", 2}, std::pair{"g1g2", 3}}) {
        IntVector v = aug.column(static_cast<std::size_t>(col));
        json a = json::array();
        for (auto const& x : v)
            a.push_back(x.get_si());
        j["frobenius_units"][label] = a;
    }
    VerificationReport r = check_frobenius_basis(parse(j));
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.explanation.find("proper subgroup") != std::string::npos);

    // a unit outside ker N_G is bad data, reported as such
    j = sign_fixture();
    j["action"] = {{{1}}};
    j["frobenius_units"]["g"] = {1};
    r = check_frobenius_basis(parse(j));
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.explanation.find("bad fixture data") != std::string::npos);

    j = read_json(fixture_path("disc_-84_L1.json"));
    j["frobenius_units"].erase("g1g2");
    r = check_frobenius_basis(parse(j));
    CHECK(r.status == CheckStatus::not_applicable);
    CHECK(r.explanation.find("g1g2") != std::string::npos);

    CHECK(check_frobenius_basis(load_fixture(fixture_path("disc_-120_L1.json"))).status == CheckStatus::not_applicable);
}

TEST_CASE("Dirichlet bound checker")
{
    VerificationReport r = check_dirichlet_bound(load_fixture(fixture_path("disc_-84_L1.json")));
    CHECK(r.status == CheckStatus::pass);
    CHECK(check_dirichlet_bound(parse(sign_fixture())).status == CheckStatus::pass);

    // trivial action on Z/2 + Z: H^0 = 2x2, rank 2 > r1 + r2 = 1
    json j = sign_fixture();
    j["unit_group"]["torsion_order"] = 2;
    j["action"] = {{{1, 0}, {0, 1}}};
    j["frobenius_units"]["g"] = {0, 0};
    r = check_dirichlet_bound(parse(j));
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.computed.rfind("2 ", 0) == 0);
}

TEST_CASE("nonabelian fixtures are loaded and left alone")
{
    Fixture f = load_fixture(fixture_path("disc_-280_L2.json"));
    CHECK(f.nonabelian_unsupported);
    CHECK(f.degree_over_base() == 16);
    for (auto const& r : verify_fixture(f))
        CHECK(r.status == CheckStatus::not_applicable);
}

TEST_CASE("fixture-wide properties")
{
    for (char const* name : {"disc_-84_L1.json", "disc_-120_L1.json", "disc_-260_L1.json", "disc_-280_L1.json",
                             "disc_-308_L1.json", "disc_-399_L1.json", "disc_-408_L1.json", "disc_-420_L1.json"}) {
        CAPTURE(name);
        Fixture f = load_fixture(fixture_path(name));
        TateCohomology t(f.module());
        for (auto const& [label, x] : f.frobenius_units)
            CHECK(t.class_of(x).in_kernel);
        // p = 2: the 2-rank is the number of even invariant factors
        std::size_t even = 0;
        for (auto const& x : t.structure().invariant_factors)
            even += x % 2 == 0;
        CHECK(t.structure().p_rank(2) == even);
        if (f.capitulation_kernel)
            CHECK(is_quotient_shape(f.base_field.class_group, *f.capitulation_kernel));
        for (auto const& r : verify_fixture(f))
            CHECK(r.status != CheckStatus::fail);
    }
}
