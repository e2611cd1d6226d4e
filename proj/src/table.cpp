#include "tatecoh/table.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tatecoh/errors.hpp"
#include "tatecoh/fixtures.hpp"

namespace tatecoh {

namespace {

ExpectedCell val(std::initializer_list<long> orders)
{
    IntVector v;
    for (long n : orders)
        v.emplace_back(n);
    return {ExpectedCell::Kind::value, GroupStructure::from_cyclic_orders(v)};
}

ExpectedCell const blank{ExpectedCell::Kind::blank, {}};
ExpectedCell const unknown{ExpectedCell::Kind::unknown, {}};

std::size_t two_rank(GroupStructure const& g) { return g.p_rank(2); }

} // namespace

std::vector<ExpectedRow> const& expected_table()
{
    // disc, Cl(K), Cl(K^1), H^-1(E_K1), Cl(K^2), H^-1(E_K2)
    static std::vector<ExpectedRow> const rows{
        {-84, val({2, 2}), val({}), val({2, 2, 2}), blank, blank},
        {-120, val({2, 2}), val({2}), val({4}), val({}), val({8})},
        {-260, val({2, 4}), val({2}), val({2, 4}), val({}), val({2, 8})},
        {-280, val({2, 2}), val({4}), val({4}), val({}), val({16})},
        {-308, val({2, 4}), val({}), val({2, 2, 4}), blank, blank},
        {-399, val({2, 8}), val({}), val({2, 2, 8}), blank, blank},
        {-408, val({2, 2}), val({2}), val({2, 2, 2}), val({}), val({2, 2, 4})},
        {-420, val({2, 2, 2}), val({2, 2}), val({2, 2, 2, 4}), val({}), unknown},
    };
    return rows;
}

bool TableCell::mismatch() const
{
    return state == State::computed && expected.kind == ExpectedCell::Kind::value && !(value == expected.value);
}

std::string TableCell::render() const
{
    switch (state) {
    case State::computed:
        return mismatch() ? format_group(value) + " != " + format_group(expected.value) : format_group(value);
    case State::missing:
        return expected.kind == ExpectedCell::Kind::blank ? "-" : "unknown";
    case State::unsupported:
        return "nonabelian";
    case State::error:
        return "error";
    }
    return "?";
}

std::string TableReport::render() const
{
    std::vector<std::array<std::string, 6>> lines;
    lines.push_back({"dis(K)", "Cl(K)", "Cl(K^1)", "H^-1(E_K1)", "Cl(K^2)", "H^-1(E_K2)"});
    for (auto const& r : rows) {
        std::array<std::string, 6> l;
        l[0] = std::to_string(r.discriminant);
        for (std::size_t i = 0; i < 5; ++i)
            l[i + 1] = r.cells[i].render();
        lines.push_back(l);
    }
    std::array<std::size_t, 6> width{};
    for (auto const& l : lines)
        for (std::size_t i = 0; i < 6; ++i)
            width[i] = std::max(width[i], l[i].size());

    std::ostringstream out;
    for (auto const& l : lines) {
        std::string s;
        for (std::size_t i = 0; i < 6; ++i) {
            s += l[i];
            if (i + 1 < 6)
                s += std::string(width[i] - l[i].size() + 2, ' ');
        }
        while (!s.empty() && s.back() == ' ')
            s.pop_back();
        out << s << '\n';
    }
    out << '\n';
    for (auto const& r : rows) {
        if (!r.rank_observation)
            continue;
        out << "d_2 H^-1(E_K1) = d_2 H^-1(E_K2) for " << r.discriminant << ": "
            << (*r.rank_observation ? "holds" : "fails") << " (" << r.rank_observation_source << ")\n";
    }
    for (auto const& e : errors)
        out << "error: " << e << '\n';
    for (auto const& e : extra_fixtures)
        out << "extra fixture: " << e << '\n';
    out << "mismatches: " << mismatches << "  class group mismatches: " << class_group_mismatches
        << "  missing: " << missing << "  nonabelian: " << unsupported << '\n';
    return out.str();
}

TableReport reproduce_table(std::filesystem::path const& dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw SchemaError(dir.string() + ": not a readable directory");

    std::vector<fs::path> files;
    for (auto const& entry : fs::directory_iterator(dir, ec))
        if (entry.path().extension() == ".json")
            files.push_back(entry.path());
    if (ec)
        throw SchemaError(dir.string() + ": " + ec.message());
    std::sort(files.begin(), files.end());

    TableReport report;
    std::map<long, std::size_t> row_of;
    for (auto const& e : expected_table()) {
        TableRow row;
        row.discriminant = e.discriminant;
        ExpectedCell const* exp[5] = {&e.cl_k, &e.cl_k1, &e.h_k1, &e.cl_k2, &e.h_k2};
        for (std::size_t i = 0; i < 5; ++i)
            row.cells[i].expected = *exp[i];
        row_of[e.discriminant] = report.rows.size();
        report.rows.push_back(row);
    }

    std::map<std::pair<long, int>, std::string> seen;
    for (auto const& file : files) {
        std::string const name = file.filename().string();
        Fixture f;
        try {
            f = load_fixture(file);
        } catch (Error const& e) {
            report.errors.push_back(name + ": " + e.what());
            continue;
        }
        if (!f.base_field.discriminant.fits_slong_p() || !row_of.count(f.base_field.discriminant.get_si())) {
            report.extra_fixtures.push_back(name + " (discriminant " + f.base_field.discriminant.get_str() + ")");
            continue;
        }
        long const disc = f.base_field.discriminant.get_si();
        auto key = std::make_pair(disc, f.tower_level);
        if (auto it = seen.find(key); it != seen.end()) {
            report.errors.push_back(name + ": duplicate fixture for discriminant " + std::to_string(disc)
                                    + " level " + std::to_string(f.tower_level) + " (already read " + it->second + ")");
            continue;
        }
        seen[key] = name;

        TableRow& row = report.rows[row_of[disc]];
        bool const level1 = f.tower_level == 1;
        TableCell& cl_k = row.cells[static_cast<std::size_t>(TableColumn::cl_k)];
        TableCell& cl_m = row.cells[static_cast<std::size_t>(level1 ? TableColumn::cl_k1 : TableColumn::cl_k2)];
        TableCell& h = row.cells[static_cast<std::size_t>(level1 ? TableColumn::h_k1 : TableColumn::h_k2)];

        if (level1 || cl_k.state != TableCell::State::computed) {
            cl_k.state = TableCell::State::computed;
            cl_k.value = f.base_field.class_group;
        }
        cl_m.state = TableCell::State::computed;
        cl_m.value = f.class_group_M;
        if (f.nonabelian_unsupported) {
            h.state = TableCell::State::unsupported;
            continue;
        }
        try {
            h.value = compute_h_minus_one(f).full;
            h.state = TableCell::State::computed;
        } catch (Error const& e) {
            h.state = TableCell::State::error;
            h.error = e.what();
            report.errors.push_back(name + ": " + e.what());
        }
    }

    for (auto& row : report.rows) {
        for (auto c : {TableColumn::cl_k, TableColumn::cl_k1, TableColumn::cl_k2})
            if (row.cell(c).mismatch())
                ++report.class_group_mismatches;
        for (auto c : {TableColumn::h_k1, TableColumn::h_k2}) {
            TableCell const& cell = row.cell(c);
            if (cell.mismatch())
                ++report.mismatches;
            if (cell.state == TableCell::State::unsupported)
                ++report.unsupported;
        }
        for (TableCell const& cell : row.cells)
            if (cell.state == TableCell::State::missing && cell.expected.kind == ExpectedCell::Kind::value)
                ++report.missing;

        // computed values where available, published ones otherwise
        auto known = [](TableCell const& c, bool& from_fixture) -> std::optional<GroupStructure> {
            if (c.state == TableCell::State::computed) {
                from_fixture = true;
                return c.value;
            }
            from_fixture = false;
            if (c.expected.kind == ExpectedCell::Kind::value)
                return c.expected.value;
            return std::nullopt;
        };
        bool c1 = false, c2 = false;
        auto h1 = known(row.cell(TableColumn::h_k1), c1);
        auto h2 = known(row.cell(TableColumn::h_k2), c2);
        if (h1 && h2) {
            row.rank_observation = two_rank(*h1) == two_rank(*h2);
            row.rank_observation_source = c1 && c2 ? "computed" : (!c1 && !c2 ? "published" : "mixed");
        }
    }
    return report;
}

} // namespace tatecoh
