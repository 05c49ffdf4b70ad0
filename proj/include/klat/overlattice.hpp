// Finite-index even overlattices from isotropic glue subgroups of the
// discriminant group, primitivity and length checks, root transport.
#pragma once

#include <string>
#include <vector>

#include "klat/lattice.hpp"

namespace klat {

struct GlueCheck {
  bool ok = false;
  std::string diagnostic;  // names the first violating subgroup element
};

// True iff the subgroup of disc(l) generated by the given dual vectors is
// isotropic: q = 0 in Q/2Z on every element (hence b = 0 in Q/Z on every
// pair). Throws std::invalid_argument if some vector is not in the dual.
GlueCheck validate_glue(const Lattice& l, const std::vector<RatVec>& glue);

// All elements of the subgroup generated by the glue classes, reduced into
// [0,1)^rank; includes the zero class.
std::vector<RatVec> glue_subgroup(const Lattice& l,
                                  const std::vector<RatVec>& glue);

struct Overlattice {
  Lattice base;
  std::vector<RatVec> glue;  // generators, reduced mod base
  Lattice result;
  RatMat basis;  // rows: basis of result in base coordinates
  Int index;     // [result : base], the glue subgroup order
};

// Builds the overlattice generated by l and the glue classes. Requires
// validate_glue to pass; asserts d(base) = index^2 * d(result) and evenness.
Overlattice build_overlattice(const Lattice& l, const std::vector<RatVec>& glue,
                              const std::string& name = "");

// Coordinate transport between base coordinates and result-basis coordinates.
RatVec to_overlattice_coords(const Overlattice& o, const RatVec& base_coords);
RatVec to_base_coords(const Overlattice& o, const RatVec& over_coords);

// Roots of o.result written in base coordinates, sorted.
std::vector<RatVec> overlattice_roots_in_base(const Overlattice& o);

// The root-coincidence property: the roots of the overlattice are exactly
// the roots of the base lattice (set equality after coordinate transport).
bool roots_coincide_with_base(const Overlattice& o);

// True iff sub embeds primitively: inclusion is rank(sub) x rank(ambient)
// with inclusion * ambient.gram * inclusion^T = sub.gram (else throws), and
// the quotient is torsion free (all Smith invariant factors of inclusion 1).
bool is_primitive_sublattice(const Lattice& sub, const Lattice& ambient,
                             const IntMat& inclusion);

// Necessary condition for a primitive embedding into an even unimodular
// lattice of the given rank: length(disc l) <= ambient_rank - rank(l).
// Throws if rank exceeds ambient_rank.
bool embeddability_length_check(const Lattice& l, int ambient_rank = 22);

// Invariant factors of H_perp / H where H is the glue subgroup inside
// disc(l); equals the discriminant group of the glued overlattice.
std::vector<Int> complement_quotient_factors(const Lattice& l,
                                             const std::vector<RatVec>& glue);

}  // namespace klat
