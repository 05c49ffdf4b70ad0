// Exhaustive search for root-preserving even overlattices of an ADE sum,
// reduced modulo the monomial symmetry of the decomposition.
#pragma once

#include <set>
#include <vector>

#include "klat/lattice.hpp"
#include "klat/overlattice.hpp"

namespace klat {

// Allowed support sizes for prime-order glue classes: an order-2 class must
// touch this many pairwise disjoint curves, an order-3 class this many
// disjoint A2 configurations. Classes whose support is not of that shape
// (adjacent curves, larger clusters) are exempt from the size test.
struct DivisibilityConstraints {
  std::set<int> order2_supports{8, 16};
  std::set<int> order3_supports{6, 9};
};

// Enumerates the isotropic glue subgroups of disc(F) whose overlattice is
// even, acquires no new roots, and satisfies the support constraints,
// deduplicated modulo summand permutations and diagram automorphisms.
// Returns the overlattices of the maximal such subgroups whose resulting
// discriminant length is at most max_length, in a deterministic order.
// F must be a direct sum of ADE root lattices in standard basis.
std::vector<Overlattice> minimal_root_preserving_overlattices(
    const Lattice& f, int max_length,
    const DivisibilityConstraints& constraints = DivisibilityConstraints{});

}  // namespace klat
