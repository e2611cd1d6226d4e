#ifndef TATECOH_TABLE_HPP_
#define TATECOH_TABLE_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tatecoh/abelian.hpp"

namespace tatecoh {

/* What the published table says about a cell. */
struct ExpectedCell {
    enum class Kind { value, blank, unknown };
    Kind kind = Kind::blank;
    GroupStructure value;
};

struct ExpectedRow {
    long discriminant;
    ExpectedCell cl_k, cl_k1, h_k1, cl_k2, h_k2;
};

/* the eight rows, in published order */
std::vector<ExpectedRow> const& expected_table();

struct TableCell {
    enum class State {
        computed,     // value holds data from a fixture
        missing,      // no fixture for this level
        unsupported,  // fixture is nonabelian_unsupported
        error,        // fixture failed to load or compute
    };
    State state = State::missing;
    GroupStructure value;
    std::string error;
    ExpectedCell expected;

    /* computed and contradicting a published value */
    bool mismatch() const;
    std::string render() const;
};

enum class TableColumn { cl_k = 0, cl_k1, h_k1, cl_k2, h_k2 };

struct TableRow {
    long discriminant;
    std::array<TableCell, 5> cells;
    /* d_2 H^-1(E_K1) == d_2 H^-1(E_K2), when both levels are known */
    std::optional<bool> rank_observation;
    std::string rank_observation_source;  // "computed", "published" or "mixed"

    TableCell const& cell(TableColumn c) const { return cells[static_cast<std::size_t>(c)]; }
};

struct TableReport {
    std::vector<TableRow> rows;
    std::size_t mismatches = 0;              // H^-1 columns only
    std::size_t class_group_mismatches = 0;  // Cl columns against the published values
    std::size_t missing = 0;                 // cells with a published value but no fixture
    std::size_t unsupported = 0;
    std::vector<std::string> errors;          // "file: message"
    std::vector<std::string> extra_fixtures;  // fixtures for discriminants outside the table

    std::string render() const;
};

/* Loads every *.json in dir. Unreadable fixtures become row-level errors;
 * only a missing or unreadable directory throws (SchemaError).
 */
TableReport reproduce_table(std::filesystem::path const& dir);

} // namespace tatecoh

#endif /* TATECOH_TABLE_HPP_ */
