#ifndef TATECOH_FIXTURES_HPP_
#define TATECOH_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatecoh/abelian.hpp"
#include "tatecoh/cohomology_ranks.hpp"
#include "tatecoh/gmodule.hpp"

namespace tatecoh {

struct BaseField {
    Integer discriminant;
    SignatureData signature;
    GroupStructure class_group;
};

/* Unit group E_M of a field M in the p-class field tower of a base field K,
 * with its Galois action and class-group data. See the README for the file
 * format.
 *
 * For nonabelian_unsupported fixtures (level 2 with Gal(M/K) nonabelian)
 * `galois` describes Gal(M/K^1) and the action is that of Gal(M/K^1); the
 * table renders them but no H^-1 over Gal(M/K) is computed.
 */
struct Fixture {
    std::string label;
    std::int64_t p = 2;
    BaseField base_field;
    int tower_level = 1;
    GroupSpec galois;
    bool nonabelian_unsupported = false;
    std::size_t unit_free_rank = 0;
    Integer torsion_order = 1;
    std::vector<IntMatrix> action;
    GroupStructure class_group_M;
    std::optional<GroupStructure> capitulation_kernel;
    std::map<std::string, IntVector> frobenius_units;

    GModule module() const;
    /* [M : K] */
    Integer degree_over_base() const;
};

/* throws SchemaError (I/O, malformed JSON, schema or invariant violation) */
Fixture load_fixture(std::filesystem::path const& path);
Fixture parse_fixture(std::string const& json_text, std::string const& source = "<string>");

/* The GModule block alone: "galois", "unit_group", "action". "unit_group"
 * may carry "torsion_orders" (a list) in place of "torsion_order".
 */
GModule parse_module_spec(std::string const& json_text, std::string const& source = "<string>");
GModule load_module_spec(std::filesystem::path const& path);

struct TateSummary {
    GroupStructure full;
    GroupStructure p_primary;
};

/* throws UnsupportedFixtureError for nonabelian_unsupported fixtures */
TateSummary compute_h_minus_one(Fixture const& f);

enum class CheckStatus { pass, fail, not_applicable };
char const* to_string(CheckStatus s);

struct VerificationReport {
    std::string check;
    CheckStatus status = CheckStatus::not_applicable;
    std::string computed;
    std::string expected;
    std::string explanation;
};

VerificationReport check_proposition1(Fixture const& f);
VerificationReport check_proposition6(Fixture const& f);
VerificationReport check_frobenius_basis(Fixture const& f);
VerificationReport check_dirichlet_bound(Fixture const& f);

std::vector<VerificationReport> verify_fixture(Fixture const& f);

} // namespace tatecoh

#endif /* TATECOH_FIXTURES_HPP_ */
