// ADE root lattices, exact short-vector enumeration, root-system
// decomposition, isometry testing, and brute-force Weyl groups.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "klat/lattice.hpp"

namespace klat {

enum class AdeFamily { A, D, E };

struct AdeType {
  AdeFamily family;
  int n;

  int rank() const { return n; }
  bool operator==(const AdeType&) const = default;
};

// Canonical catalog order: higher rank first, then E before D before A.
bool operator<(const AdeType& a, const AdeType& b);

// Flat multiset of components, kept sorted in canonical order.
using AdeShape = std::vector<AdeType>;

std::string ade_name(const AdeType& t);          // "A3", "D4", "E8"
AdeType parse_ade(const std::string& s);         // inverse of ade_name
std::string shape_to_string(const AdeShape& s);  // "D4^2+A3^3+A1^2"
AdeShape parse_shape(const std::string& s);      // inverse; validates

// Gram of a single ADE component, negative definite. Conventions:
// A_n: chain x1..xn. D_n: chain x1..x_{n-2} with x_{n-1}, x_n attached to
// x_{n-2}. E_n: chain x1..x_{n-1} with x_n attached to x3.
Lattice ade_gram(const AdeType& t);

// Orthogonal direct sum over the shape, components in canonical order.
Lattice shape_lattice(const AdeShape& s, const std::string& name = "");

// Theoretical root count of a shape: A_n n(n+1), D_n 2n(n-1), E6/E7/E8
// 72/126/240, summed over components.
Int shape_root_count(const AdeShape& s);

// All norm -2 vectors of a negative definite lattice, lexicographically
// sorted; closed under negation by construction.
struct RootSet {
  std::vector<std::vector<Int>> roots;

  int count() const { return static_cast<int>(roots.size()); }
  // One representative per +- pair: first nonzero coordinate positive.
  std::vector<std::vector<Int>> positive() const;
};

RootSet enumerate_roots(const Lattice& l);

// Core exact enumeration (Fincke-Pohst with rational LDU, no floating
// point): all integer x with 0 < (x+shift)' Q (x+shift) <= bound where
// Q = -gram is positive definite. Pass shift = {} for the plain case; the
// zero-value solution (x = -shift integral) is excluded. Results sorted.
std::vector<std::pair<std::vector<Int>, Rat>> enumerate_quadratic(
    const IntMat& gram, const RatVec& shift, const Rat& bound);

// Minimal value of (x+shift)' Q (x+shift) over integer x, excluding an
// exact zero; searches outward, always terminates (Q definite).
Rat coset_min_norm(const IntMat& gram, const RatVec& shift);

// ADE types of the connected components of the root system of l.
AdeShape root_decomposition(const Lattice& l);

// Decides existence of t with t' * a.gram * t = b.gram over Z. Throws
// std::invalid_argument on rank mismatch (distinct from a negative answer).
bool is_isometric(const Lattice& a, const Lattice& b);

// All elements of the Weyl group of a rank <= 6 ADE component, as matrices
// acting on simple-root coordinates (columns = images of basis vectors).
std::vector<IntMat> weyl_group(const AdeType& t);

// True iff some Weyl element maps every given root to a simple basis
// vector. Inputs must be pairwise orthogonal roots of ade_gram(t).
bool weyl_basis_containment(const AdeType& t,
                            const std::vector<std::vector<Int>>& roots);

}  // namespace klat
