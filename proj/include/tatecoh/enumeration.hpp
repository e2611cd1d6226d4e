#ifndef TATECOH_ENUMERATION_HPP_
#define TATECOH_ENUMERATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tatecoh/abelian.hpp"

namespace tatecoh {

/* Z/o_1 x ... x Z/o_k with elements numbered in mixed radix. Everything here
 * is plain enumeration with machine integers; it shares no code with the
 * Smith-form path and serves as its independent check.
 */
class FiniteAbelianGroup {
public:
    static constexpr std::size_t max_order = 1000000;

    /* throws ResourceError when the order exceeds max_order */
    explicit FiniteAbelianGroup(std::vector<std::int64_t> orders);

    std::size_t order() const { return order_; }
    std::size_t rank() const { return orders_.size(); }
    std::vector<std::int64_t> const& orders() const { return orders_; }

    std::size_t encode(std::span<std::int64_t const> coords) const;  // coords reduced first
    std::vector<std::int64_t> decode(std::size_t index) const;
    std::size_t add(std::size_t a, std::size_t b) const;
    std::size_t scale(std::size_t a, std::int64_t m) const;

    /* membership mask of the subgroup generated by gens */
    std::vector<bool> closure(std::span<std::size_t const> gens) const;

    /* structure of K/I for subgroups I <= K given as membership masks */
    GroupStructure classify_quotient(std::vector<bool> const& k, std::vector<bool> const& i) const;

private:
    std::vector<std::int64_t> orders_;
    std::size_t order_ = 1;
};

} // namespace tatecoh

#endif /* TATECOH_ENUMERATION_HPP_ */
