#ifndef TATECOH_GMODULE_HPP_
#define TATECOH_GMODULE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tatecoh/abelian.hpp"
#include "tatecoh/int_matrix.hpp"

namespace tatecoh {

/* G = Z/n_1 x ... x Z/n_d with distinguished generators g_1, ..., g_d. */
struct GroupSpec {
    static constexpr std::size_t max_order = 1000000;

    std::vector<std::int64_t> invariants;
    std::optional<std::int64_t> p;

    std::size_t rank() const { return invariants.size(); }
    /* saturates at max_order + 1 */
    std::size_t order() const;
    bool is_cyclic() const { return invariants.size() == 1; }
};

/* A finitely generated Z[G]-module presented as
 *     Z/t_1 + ... + Z/t_k + Z^r
 * together with one action matrix per generator of G. Columns are images of
 * module generators; torsion rows are meaningful modulo their order.
 *
 * The unit group of a number field is the case k <= 1: t_1 = w is the
 * number of roots of unity and r the Dirichlet rank. The written-additively
 * dictionary is u = zeta^{x_0} * eps_1^{x_1} * ... <-> (x_0, x_1, ...).
 */
struct GModule {
    IntVector torsion_orders;  // each >= 2
    std::size_t free_rank = 0;
    std::vector<IntMatrix> action;
    GroupSpec group;

    /* w = 1 drops the torsion generator entirely */
    static GModule unit_group(Integer const& w, std::size_t free_rank,
                              std::vector<IntMatrix> action, GroupSpec group);

    std::size_t torsion_count() const { return torsion_orders.size(); }
    std::size_t rank() const { return torsion_orders.size() + free_rank; }
    /* per-row moduli: torsion orders then zeros */
    IntVector row_moduli() const;
    FgAbPresentation presentation() const;
    /* torsion coordinates reduced into [0, t_i) */
    IntVector canonical(IntVector x) const;
};

struct Violation {
    enum class Kind {
        group_invariant,
        group_order,
        shape,
        torsion_column,
        ill_defined,
        torsion_not_invertible,
        non_unimodular,
        non_commuting,
        generator_order,
    };
    Kind kind;
    std::string message;
};

char const* to_string(Violation::Kind k);

struct ValidationResult {
    std::vector<Violation> violations;

    bool valid() const { return violations.empty(); }
    bool has(Violation::Kind k) const;
    std::string summary() const;
};

ValidationResult validate_gmodule(GModule const& m);

/* A_1^{e_1} ... A_d^{e_d}, torsion rows reduced; exponents are taken mod n_j */
IntMatrix element_action_matrix(GModule const& m, std::span<std::int64_t const> exponents);

/* sum over all |G| elements of their action matrices */
IntMatrix norm_matrix(GModule const& m);
/* prod_j (I + A_j + ... + A_j^{n_j - 1}); must agree with norm_matrix */
IntMatrix norm_matrix_factored(GModule const& m);

enum class AugmentationGenerators {
    group_generators,  // (g_j - 1) M for the d generators
    all_elements,      // (g - 1) M for every g in G
};

struct HMinusOneClass {
    bool in_kernel = false;
    IntVector norm_image;   // N_G(x), canonical; nonzero iff !in_kernel
    IntVector coordinates;  // over the canonical cyclic basis, when in_kernel
};

/* H^-1(G, M) = ker(N_G) / I_G M, kept together with its canonical basis so
 * that classes of individual elements can be computed.
 */
class TateCohomology {
public:
    explicit TateCohomology(GModule m,
                            AugmentationGenerators aug = AugmentationGenerators::group_generators);

    GModule const& module() const { return module_; }
    IntMatrix const& norm() const { return norm_; }
    GroupStructure const& structure() const { return quotient_.structure(); }
    std::vector<IntVector> generators() const { return quotient_.generators(); }

    HMinusOneClass class_of(IntVector const& x) const;

private:
    GModule module_;
    IntMatrix norm_;
    Subquotient quotient_;
};

GroupStructure h_minus_one(GModule const& m);
/* M^G / N_G(M) */
GroupStructure h_hat_zero(GModule const& m);
HMinusOneClass class_in_h_minus_one(GModule const& m, IntVector const& x);

/* Brute-force H^-1 and H^0 for finite modules (free_rank 0, |M| <= 10^6). */
GroupStructure enumerate_h_minus_one_oracle(GModule const& m);
GroupStructure enumerate_h_hat_zero_oracle(GModule const& m);

} // namespace tatecoh

#endif /* TATECOH_GMODULE_HPP_ */
