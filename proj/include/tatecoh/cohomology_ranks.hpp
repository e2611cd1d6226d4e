#ifndef TATECOH_COHOMOLOGY_RANKS_HPP_
#define TATECOH_COHOMOLOGY_RANKS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tatecoh/int_matrix.hpp"

namespace tatecoh {

struct SignatureData {
    std::int64_t r1 = 0;  // real places
    std::int64_t r2 = 0;  // complex places

    /* r1, r2 >= 0 and not both zero */
    bool valid() const { return r1 >= 0 && r2 >= 0 && r1 + r2 > 0; }
    std::int64_t places() const { return r1 + r2; }
};

/* dim_{F_p} H^q(G, Z/p) for an abelian p-group of p-rank d:
 * binomial(q + d - 1, d - 1). Each cyclic factor contributes one dimension in
 * every degree and the Kunneth formula convolves them.
 */
Integer mod_p_cohomology_rank(std::size_t d, std::size_t q);

/* d_p H^q(G, Z) for q = 2, 3, 4, read off the long exact sequence of
 * 0 -> Z -p-> Z -> Z/p -> 0 from the mod-p ranks h1, h2, h3.
 */
struct IntegralRanks {
    Integer h2_z;
    Integer h3_z;
    Integer h4_z;
};
IntegralRanks integral_ranks_from_mod_p(Integer const& h1, Integer const& h2, Integer const& h3);

/* d(d^2 + 5)/6 = d_p H^4(G, Z) = d_p H^-1(G, E_M) for principal M.
 * Cross-checks the closed form against the exact-sequence bookkeeping and
 * throws std::logic_error if they ever disagree.
 */
Integer h4_z_rank(std::size_t d);

/* dim of H^q of the unnormalized inhomogeneous cochain complex of
 * G = Z/n_1 x ... x Z/n_d with trivial coefficients F_p.
 * Requires |G|^(q+1) <= 10^6 (ResourceError otherwise).
 */
std::size_t bar_resolution_mod_p_rank(std::vector<std::int64_t> const& invariants, std::int64_t p, std::size_t q);

/* d(d-1)/2 <= r1 + r2: what a principal top field forces on d */
bool serre_bound_check(std::size_t d, SignatureData const& sig);

/* d^2 - d > r1 + r2 - 1, taken literally as the infinite-tower condition.
 * The classical Golod-Shafarevich threshold is 2 + 2 sqrt(r1 + r2 + 1) and is
 * not what this evaluates; see the README.
 */
bool gs_tower_criterion(std::size_t d, SignatureData const& sig);

} // namespace tatecoh

#endif /* TATECOH_COHOMOLOGY_RANKS_HPP_ */
