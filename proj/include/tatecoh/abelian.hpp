#ifndef TATECOH_ABELIAN_HPP_
#define TATECOH_ABELIAN_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tatecoh/int_matrix.hpp"

namespace tatecoh {

/* Invariant factors d_1 | d_2 | ... | d_k (each >= 2) plus a free rank.
 * The trivial group is the empty list with free_rank 0, so two groups are
 * isomorphic iff their GroupStructures compare equal.
 */
struct GroupStructure {
    IntVector invariant_factors;
    std::size_t free_rank = 0;

    /* normalizes an arbitrary list of cyclic orders (1s dropped, 0 = Z) */
    static GroupStructure from_cyclic_orders(IntVector const& orders, std::size_t extra_free_rank = 0);

    bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }
    bool is_finite() const { return free_rank == 0; }
    /* order of the torsion part */
    Integer torsion_order() const;
    /* number of invariant factors divisible by p */
    std::size_t p_rank(Integer const& p) const;
    GroupStructure p_primary_part(Integer const& p) const;

    friend bool operator==(GroupStructure const&, GroupStructure const&) = default;
};

/* "1", "2x4", "2x2x2 + Z^3", "Z^2" */
std::string format_group(GroupStructure const& g);
/* Accepts the format_group output and the "2·4" notation; the result is canonical. */
GroupStructure parse_group(std::string_view text);

/* True iff some quotient of `a` is isomorphic to `b` (finite groups only). */
bool is_quotient_shape(GroupStructure const& a, GroupStructure const& b);

/* Z^ngens modulo the column lattice of `relations`. */
struct FgAbPresentation {
    std::size_t ngens = 0;
    IntMatrix relations;  // ngens x k

    FgAbPresentation() = default;
    explicit FgAbPresentation(std::size_t n) : ngens(n), relations(n, 0) {}
    FgAbPresentation(std::size_t n, IntMatrix rels);

    /* Z/o_1 + ... + Z/o_k + Z^free with diagonal relations */
    static FgAbPresentation from_orders(IntVector const& orders, std::size_t free_rank = 0);
    /* direct sum of `copies` copies of this presentation */
    FgAbPresentation power(std::size_t copies) const;
};

struct SmithForm {
    IntMatrix D;      // diagonal, ascending divisibility, nonnegative
    IntMatrix U;      // unimodular, rows x rows
    IntMatrix V;      // unimodular, cols x cols
    IntMatrix U_inv;
    IntMatrix V_inv;
    std::size_t rank = 0;

    IntVector diagonal() const;
};

/* U * A * V = D. Pivoting is on the smallest nonzero entry; only D is canonical. */
SmithForm smith_normal_form(IntMatrix const& a);

GroupStructure cokernel_structure(IntMatrix const& relations);
GroupStructure structure(FgAbPresentation const& p);

/* A lattice in Z^n given by generators, with a basis and a coordinate map. */
class Lattice {
public:
    Lattice(std::size_t n, IntMatrix const& generators);

    std::size_t ambient_dim() const { return n_; }
    std::size_t rank() const { return rank_; }
    /* basis vectors as columns (n x rank) */
    IntMatrix basis() const;
    bool contains(IntVector const& x) const;
    /* coordinates with respect to basis(), if x lies in the lattice */
    std::optional<IntVector> coordinates(IntVector const& x) const;

private:
    std::size_t n_;
    std::size_t rank_ = 0;
    IntMatrix U_;
    IntMatrix U_inv_;
    IntVector diag_;
};

class Hom {
public:
    /* throws IllDefinedHomError unless matrix * source relations lies in the target lattice */
    Hom(FgAbPresentation source, FgAbPresentation target, IntMatrix matrix);

    FgAbPresentation const& source() const { return source_; }
    FgAbPresentation const& target() const { return target_; }
    IntMatrix const& matrix() const { return matrix_; }

private:
    FgAbPresentation source_;
    FgAbPresentation target_;
    IntMatrix matrix_;
};

/* A lattice basis (in source coordinates) of {x : f(x) = 0} + source relations. */
std::vector<IntVector> hom_kernel_generators(Hom const& f);

/* <A>/<B> inside an ambient presentation, with enough data to express the
 * class of an element of <A> in the canonical cyclic decomposition.
 */
class Subquotient {
public:
    /* throws ContainmentError naming the first generator of B outside <A> */
    Subquotient(FgAbPresentation const& ambient,
                std::vector<IntVector> const& gens_a,
                std::vector<IntVector> const& gens_b);

    GroupStructure const& structure() const { return structure_; }

    /* Coordinates of the class of x in Z/d_1 + ... + Z/d_k + Z^r, where the
     * d_i are structure().invariant_factors. Torsion coordinates lie in
     * [0, d_i). Empty optional when x is not in <A> + relations.
     */
    std::optional<IntVector> class_of(IntVector const& x) const;

    /* ambient-coordinate representatives of the canonical generators */
    std::vector<IntVector> generators() const;

private:
    Lattice lattice_a_;
    SmithForm quotient_snf_;
    std::vector<std::size_t> kept_;  // indices of SNF diagonal entries != 1
    GroupStructure structure_;
};

GroupStructure subquotient_structure(FgAbPresentation const& ambient,
                                     std::vector<IntVector> const& gens_a,
                                     std::vector<IntVector> const& gens_b);

} // namespace tatecoh

#endif /* TATECOH_ABELIAN_HPP_ */
