#include "tatecoh/fixtures.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tatecoh/errors.hpp"

namespace tatecoh {

using json = nlohmann::json;

namespace {

constexpr std::int64_t max_exact_json = std::int64_t{1} << 53;

[[noreturn]] void schema_fail(std::string const& source, std::string const& msg)
{
    throw SchemaError(source + ": " + msg);
}

json const& field(json const& obj, char const* key, std::string const& path, std::string const& source)
{
    if (!obj.is_object())
        schema_fail(source, path + ": expected an object");
    auto it = obj.find(key);
    if (it == obj.end())
        schema_fail(source, "missing field " + path + (path.empty() ? "" : ".") + key);
    return *it;
}

/* JSON numbers up to 2^53 in magnitude, or decimal strings */
Integer to_integer(json const& v, std::string const& path, std::string const& source)
{
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) {
            auto u = v.get<std::uint64_t>();
            if (u > static_cast<std::uint64_t>(max_exact_json))
                schema_fail(source, path + ": integer beyond 2^53 must be a decimal string");
            return Integer(static_cast<unsigned long>(u));
        }
        auto i = v.get<std::int64_t>();
        if (i > max_exact_json || i < -max_exact_json)
            schema_fail(source, path + ": integer beyond 2^53 must be a decimal string");
        return Integer(static_cast<long>(i));
    }
    if (v.is_string()) {
        auto s = v.get<std::string>();
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        bool ok = s.size() > start;
        for (std::size_t i = start; i < s.size(); ++i)
            ok = ok && std::isdigit(static_cast<unsigned char>(s[i]));
        if (!ok)
            schema_fail(source, path + ": '" + s + "' is not a decimal integer");
        return Integer(s[0] == '+' ? s.substr(1) : s);
    }
    schema_fail(source, path + ": expected an integer, got " + std::string(v.type_name()));
}

std::int64_t to_small(json const& v, std::string const& path, std::string const& source, std::int64_t lo)
{
    Integer x = to_integer(v, path, source);
    if (!x.fits_slong_p() || x < lo)
        schema_fail(source, path + ": expected an integer >= " + std::to_string(lo) + ", got " + x.get_str());
    return x.get_si();
}

IntVector to_vector(json const& v, std::string const& path, std::string const& source)
{
    if (!v.is_array())
        schema_fail(source, path + ": expected an array of integers");
    IntVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(to_integer(v[i], path + "[" + std::to_string(i) + "]", source));
    return out;
}

GroupStructure to_structure(json const& v, std::string const& path, std::string const& source)
{
    IntVector f = to_vector(v, path, source);
    for (auto const& x : f)
        if (x < 1)
            schema_fail(source, path + ": cyclic orders must be positive");
    return GroupStructure::from_cyclic_orders(f);
}

IntMatrix to_matrix(json const& v, std::string const& path, std::string const& source)
{
    if (!v.is_array())
        schema_fail(source, path + ": expected a matrix as a list of rows");
    std::size_t const rows = v.size();
    std::size_t cols = 0;
    std::vector<IntVector> rs;
    for (std::size_t i = 0; i < rows; ++i) {
        rs.push_back(to_vector(v[i], path + "[" + std::to_string(i) + "]", source));
        if (i == 0)
            cols = rs[0].size();
        else if (rs[i].size() != cols)
            schema_fail(source, path + ": ragged matrix (row " + std::to_string(i) + ")");
    }
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rs[i][j];
    return m;
}

std::vector<IntMatrix> to_action(json const& v, std::string const& source)
{
    if (!v.is_array())
        schema_fail(source, "action: expected a list of matrices");
    std::vector<IntMatrix> out;
    for (std::size_t j = 0; j < v.size(); ++j)
        out.push_back(to_matrix(v[j], "action[" + std::to_string(j) + "]", source));
    return out;
}

json parse_json(std::string const& text, std::string const& source)
{
    try {
        return json::parse(text);
    } catch (json::parse_error const& e) {
        schema_fail(source, std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SchemaError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GroupSpec to_group_spec(json const& galois, std::string const& source)
{
    GroupSpec g;
    json const& inv = field(galois, "invariants", "galois", source);
    if (!inv.is_array())
        schema_fail(source, "galois.invariants: expected an array of integers");
    for (std::size_t i = 0; i < inv.size(); ++i)
        g.invariants.push_back(to_small(inv[i], "galois.invariants[" + std::to_string(i) + "]", source, 2));
    return g;
}

GroupStructure galois_structure(GroupSpec const& g)
{
    IntVector inv;
    for (auto n : g.invariants)
        inv.emplace_back(static_cast<long>(n));
    return GroupStructure::from_cyclic_orders(inv);
}

} // namespace

// -------------------------------------------------------------------- Fixture

GModule Fixture::module() const
{
    GroupSpec g = galois;
    g.p = p;
    return GModule::unit_group(torsion_order, unit_free_rank, action, g);
}

Integer Fixture::degree_over_base() const
{
    Integer n = static_cast<unsigned long>(galois.order());
    if (nonabelian_unsupported)
        n *= base_field.class_group.torsion_order();
    return n;
}

Fixture parse_fixture(std::string const& text, std::string const& source)
{
    json const doc = parse_json(text, source);
    if (!doc.is_object())
        schema_fail(source, "top level: expected an object");
    Fixture f;

    json const& label = field(doc, "label", "", source);
    if (!label.is_string())
        schema_fail(source, "label: expected a string");
    f.label = label.get<std::string>();
    f.p = to_small(field(doc, "p", "", source), "p", source, 2);

    json const& base = field(doc, "base_field", "", source);
    f.base_field.discriminant = to_integer(field(base, "discriminant", "base_field", source), "base_field.discriminant", source);
    IntVector sig = to_vector(field(base, "signature", "base_field", source), "base_field.signature", source);
    if (sig.size() != 2 || !sig[0].fits_slong_p() || !sig[1].fits_slong_p())
        schema_fail(source, "base_field.signature: expected [r1, r2]");
    f.base_field.signature = {sig[0].get_si(), sig[1].get_si()};
    f.base_field.class_group = to_structure(field(base, "class_group", "base_field", source), "base_field.class_group", source);

    f.tower_level = static_cast<int>(to_small(field(doc, "tower_level", "", source), "tower_level", source, 1));
    json const& galois = field(doc, "galois", "", source);
    f.galois = to_group_spec(galois, source);
    f.galois.p = f.p;
    json const& flag = field(galois, "nonabelian_unsupported", "galois", source);
    if (!flag.is_boolean())
        schema_fail(source, "galois.nonabelian_unsupported: expected a boolean");
    f.nonabelian_unsupported = flag.get<bool>();

    json const& units = field(doc, "unit_group", "", source);
    f.unit_free_rank = static_cast<std::size_t>(to_small(field(units, "free_rank", "unit_group", source), "unit_group.free_rank", source, 0));
    f.torsion_order = to_integer(field(units, "torsion_order", "unit_group", source), "unit_group.torsion_order", source);
    if (f.torsion_order < 1)
        schema_fail(source, "unit_group.torsion_order: expected an integer >= 1");

    f.action = to_action(field(doc, "action", "", source), source);
    f.class_group_M = to_structure(field(doc, "class_group_M", "", source), "class_group_M", source);
    if (auto it = doc.find("capitulation_kernel"); it != doc.end())
        f.capitulation_kernel = to_structure(*it, "capitulation_kernel", source);
    if (auto it = doc.find("frobenius_units"); it != doc.end()) {
        if (!it->is_object())
            schema_fail(source, "frobenius_units: expected an object mapping labels to exponent vectors");
        for (auto const& [k, v] : it->items())
            f.frobenius_units[k] = to_vector(v, "frobenius_units." + k, source);
    }

    // invariants
    for (std::int64_t q = 2; q * q <= f.p; ++q)
        if (f.p % q == 0)
            schema_fail(source, "p: " + std::to_string(f.p) + " is not prime");
    if (f.tower_level != 1 && f.tower_level != 2)
        schema_fail(source, "tower_level: expected 1 or 2, got " + std::to_string(f.tower_level));
    if (!f.base_field.signature.valid())
        schema_fail(source, "base_field.signature: r1, r2 must be >= 0 and not both 0");
    if (f.nonabelian_unsupported && f.tower_level == 1)
        schema_fail(source, "galois.nonabelian_unsupported: Gal(K^1/K) is always abelian");
    if (!f.base_field.class_group.is_finite())
        schema_fail(source, "base_field.class_group: must be finite");

    Integer expected_rank = f.base_field.signature.places() * f.degree_over_base() - 1;
    if (expected_rank != static_cast<unsigned long>(f.unit_free_rank))
        schema_fail(source, "unit_group.free_rank is " + std::to_string(f.unit_free_rank)
                                + " but (r1 + r2) [M:K] - 1 = " + expected_rank.get_str());

    if (f.tower_level == 1) {
        GroupStructure g = galois_structure(f.galois);
        if (!is_quotient_shape(f.base_field.class_group, g))
            schema_fail(source, "galois: " + format_group(g) + " is not a quotient of Cl(K) = "
                                    + format_group(f.base_field.class_group));
    }

    GModule m = f.module();
    ValidationResult vr = validate_gmodule(m);
    if (!vr.valid())
        schema_fail(source, "invalid unit-group module: " + vr.summary());
    for (auto& [k, v] : f.frobenius_units) {
        if (v.size() != m.rank())
            schema_fail(source, "frobenius_units." + k + ": expected " + std::to_string(m.rank())
                                    + " exponents, got " + std::to_string(v.size()));
        v = m.canonical(v);
    }
    return f;
}

Fixture load_fixture(std::filesystem::path const& path)
{
    return parse_fixture(read_file(path), path.string());
}

GModule parse_module_spec(std::string const& text, std::string const& source)
{
    json const doc = parse_json(text, source);
    if (!doc.is_object())
        schema_fail(source, "top level: expected an object");
    GModule m;
    json const& galois = field(doc, "galois", "", source);
    m.group = to_group_spec(galois, source);
    if (auto it = doc.find("p"); it != doc.end())
        m.group.p = to_small(*it, "p", source, 2);
    json const& units = field(doc, "unit_group", "", source);
    m.free_rank = static_cast<std::size_t>(to_small(field(units, "free_rank", "unit_group", source), "unit_group.free_rank", source, 0));
    if (auto it = units.find("torsion_orders"); it != units.end()) {
        m.torsion_orders = to_vector(*it, "unit_group.torsion_orders", source);
    } else {
        Integer w = to_integer(field(units, "torsion_order", "unit_group", source), "unit_group.torsion_order", source);
        if (w < 1)
            schema_fail(source, "unit_group.torsion_order: expected an integer >= 1");
        if (w > 1)
            m.torsion_orders.push_back(w);
    }
    m.action = to_action(field(doc, "action", "", source), source);
    ValidationResult vr = validate_gmodule(m);
    if (!vr.valid())
        schema_fail(source, "invalid module: " + vr.summary());
    return m;
}

GModule load_module_spec(std::filesystem::path const& path)
{
    return parse_module_spec(read_file(path), path.string());
}

// ----------------------------------------------------------------- checkers

char const* to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not_applicable";
    }
    return "unknown";
}

TateSummary compute_h_minus_one(Fixture const& f)
{
    if (f.nonabelian_unsupported)
        throw UnsupportedFixtureError(f.label + ": Gal(M/K) is nonabelian; H^-1 over it is not computed");
    GroupStructure full = h_minus_one(f.module());
    return {full, full.p_primary_part(f.p)};
}

namespace {

VerificationReport not_applicable(std::string check, std::string why)
{
    VerificationReport r;
    r.check = std::move(check);
    r.status = CheckStatus::not_applicable;
    r.explanation = std::move(why);
    return r;
}

} // namespace

VerificationReport check_proposition1(Fixture const& f)
{
    char const* name = "proposition1";
    if (f.nonabelian_unsupported)
        return not_applicable(name, "Gal(M/K) is nonabelian");
    if (!f.galois.is_cyclic())
        return not_applicable(name, "G = " + format_group(galois_structure(f.galois)) + " is not cyclic");
    if (!f.capitulation_kernel)
        return not_applicable(name, "no capitulation_kernel recorded");
    VerificationReport r;
    r.check = name;
    GroupStructure h = compute_h_minus_one(f).full;
    r.computed = format_group(h);
    r.expected = format_group(*f.capitulation_kernel);
    r.status = h == *f.capitulation_kernel ? CheckStatus::pass : CheckStatus::fail;
    r.explanation = r.status == CheckStatus::pass
        ? "H^-1(G, E_M) is isomorphic to Ker(Cl(K) -> Cl(M))"
        : "H^-1(G, E_M) and the capitulation kernel differ";
    return r;
}

VerificationReport check_proposition6(Fixture const& f)
{
    char const* name = "proposition6";
    if (f.nonabelian_unsupported)
        return not_applicable(name, "Gal(M/K) is nonabelian");
    if (!f.class_group_M.is_trivial())
        return not_applicable(name, "M is not principal: Cl(M) = " + format_group(f.class_group_M));
    std::size_t const d = f.galois.rank();
    VerificationReport r;
    r.check = name;
    TateSummary t = compute_h_minus_one(f);
    std::size_t rank = t.full.p_rank(f.p);
    Integer predicted = h4_z_rank(d);
    r.computed = std::to_string(rank) + " (H^-1 = " + format_group(t.full) + ")";
    r.expected = predicted.get_str() + " = d(d^2+5)/6 with d = " + std::to_string(d);
    r.status = predicted == static_cast<unsigned long>(rank) ? CheckStatus::pass : CheckStatus::fail;
    r.explanation = "p-rank of H^-1(G, E_M) against d(d^2+5)/6";
    return r;
}

VerificationReport check_frobenius_basis(Fixture const& f)
{
    char const* name = "frobenius_basis";
    if (f.nonabelian_unsupported)
        return not_applicable(name, "Gal(M/K) is nonabelian");
    if (f.frobenius_units.empty())
        return not_applicable(name, "no frobenius_units recorded");
    if (!f.class_group_M.is_trivial())
        return not_applicable(name, "M is not principal: Cl(M) = " + format_group(f.class_group_M));
    std::size_t const d = f.galois.rank();
    if (d != 1 && d != 2)
        return not_applicable(name, "needs d in {1, 2}, got d = " + std::to_string(d));
    std::vector<std::string> const labels = d == 1 ? std::vector<std::string>{"g"}
                                                   : std::vector<std::string>{"g1", "g2", "g1g2"};
    std::string absent;
    for (auto const& l : labels)
        if (!f.frobenius_units.count(l))
            absent += (absent.empty() ? "" : ", ") + l;
    if (!absent.empty())
        return not_applicable(name, "missing frobenius_units: " + absent);

    VerificationReport r;
    r.check = name;
    TateCohomology tate(f.module());
    GroupStructure const& h = tate.structure();
    std::size_t const k = h.invariant_factors.size();
    IntMatrix rel(k, labels.size() + k);
    for (std::size_t j = 0; j < labels.size(); ++j) {
        HMinusOneClass c = tate.class_of(f.frobenius_units.at(labels[j]));
        if (!c.in_kernel) {
            r.status = CheckStatus::fail;
            r.computed = "N_G(" + labels[j] + ") = " + to_string(c.norm_image);
            r.expected = "0";
            r.explanation = "bad fixture data: a frobenius unit is not in ker(N_G)";
            return r;
        }
        for (std::size_t i = 0; i < k; ++i)
            rel(i, j) = c.coordinates[i];
    }
    for (std::size_t i = 0; i < k; ++i)
        rel(i, labels.size() + i) = h.invariant_factors[i];
    GroupStructure rest = cokernel_structure(rel);
    r.computed = "H^-1 / <classes> = " + format_group(rest);
    r.expected = "1 (H^-1 = " + format_group(h) + ")";
    r.status = rest.is_trivial() ? CheckStatus::pass : CheckStatus::fail;
    r.explanation = r.status == CheckStatus::pass
        ? "the classes of g(pi)/pi generate H^-1(G, E_M)"
        : "the classes of g(pi)/pi generate a proper subgroup";
    return r;
}

VerificationReport check_dirichlet_bound(Fixture const& f)
{
    char const* name = "dirichlet_bound";
    if (f.nonabelian_unsupported)
        return not_applicable(name, "Gal(M/K) is nonabelian");
    VerificationReport r;
    r.check = name;
    GroupStructure h0 = h_hat_zero(f.module());
    std::size_t rank = h0.p_rank(f.p);
    r.computed = std::to_string(rank) + " (H^0 = " + format_group(h0) + ")";
    r.expected = "<= " + std::to_string(f.base_field.signature.places()) + " = r1 + r2";
    r.status = static_cast<std::int64_t>(rank) <= f.base_field.signature.places() ? CheckStatus::pass : CheckStatus::fail;
    r.explanation = "p-rank of H^0(G, E_M) against r1 + r2 of K";
    return r;
}

std::vector<VerificationReport> verify_fixture(Fixture const& f)
{
    return {check_proposition1(f), check_proposition6(f), check_frobenius_basis(f), check_dirichlet_bound(f)};
}

} // namespace tatecoh
