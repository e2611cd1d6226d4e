#ifndef TATECOH_TESTS_RANDOM_MODULES_HPP_
#define TATECOH_TESTS_RANDOM_MODULES_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "tatecoh/gmodule.hpp"

namespace tatecoh::testing {

/* abelian p-groups of order <= 8 */
std::vector<GroupSpec> small_groups();
std::vector<GroupSpec> small_cyclic_groups();

/* A random valid finite G-module with |M| <= max_module_order.
 *
 * Built as a direct sum of trivial, character and (twisted) coset permutation
 * modules, then conjugated by random elementary automorphisms of the
 * underlying abelian group so that the torsion blocks mix.
 */
GModule random_finite_module(std::mt19937_64& rng, GroupSpec const& g, std::size_t max_module_order);

/* Conjugates every action matrix by a random automorphism of the presented
 * group (a product of elementary moves e_i -> e_i + c e_j that respect the
 * torsion orders). The result is isomorphic to m.
 */
GModule random_change_of_generators(std::mt19937_64& rng, GModule const& m, int moves = 6);

/* |M| for a finite module */
std::size_t module_order(GModule const& m);

} // namespace tatecoh::testing

#endif /* TATECOH_TESTS_RANDOM_MODULES_HPP_ */
