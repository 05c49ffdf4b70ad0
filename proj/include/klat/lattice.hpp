// Even negative definite lattices with exact discriminant-form machinery.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klat/exactlin.hpp"

namespace klat {

// Integral lattice given by a Gram matrix on a fixed basis. All catalog
// lattices are even and negative definite; make_lattice enforces both.
struct Lattice {
  std::string name;
  IntMat gram;
  std::vector<std::string> labels;  // optional per-basis-vector names

  int rank() const { return gram.rows(); }
};

// Validates: gram symmetric, even diagonal, negative definite.
// Throws std::invalid_argument with a diagnostic on violation.
Lattice make_lattice(std::string name, IntMat gram,
                     std::vector<std::string> labels = {});

Int lattice_det(const Lattice& l);

bool is_even_gram(const IntMat& gram);

// Orthogonal direct sum; labels concatenate. Name defaults to "a+b".
Lattice direct_sum(const Lattice& a, const Lattice& b, std::string name = "");

// Discriminant group D = L^dual / L of a nondegenerate lattice, with the
// induced quadratic form q: D -> Q/2Z and bilinear form b: D x D -> Q/Z.
// Elements are rational coordinate vectors w.r.t. the basis of L, reduced
// into [0,1)^rank (L itself is Z^rank in these coordinates).
class DiscGroup {
 public:
  explicit DiscGroup(const Lattice& l);

  // Invariant factors d_1 | d_2 | ... | d_k, all > 1.
  const std::vector<Int>& invariant_factors() const { return factors_; }
  // Generator i has order invariant_factors()[i].
  const std::vector<RatVec>& generators() const { return gens_; }

  int length() const { return static_cast<int>(factors_.size()); }
  Int order() const;

  // x reduced componentwise mod 1 into [0,1).
  RatVec reduce(const RatVec& x) const;
  // Is x in L^dual, i.e. (x, e_i) integral for all basis vectors?
  bool in_dual(const RatVec& x) const;
  // Smallest k >= 1 with k*x in L (lcm of coordinate denominators of reduce(x)).
  Int element_order(const RatVec& x) const;

  // q(x) = (x,x) mod 2Z, representative in [0,2). Requires in_dual(x).
  Rat q_value(const RatVec& x) const;
  // b(x,y) = (x,y) mod Z, representative in [0,1). Requires both in dual.
  Rat b_value(const RatVec& x, const RatVec& y) const;

  // Element from exponents a on the generators: sum a_i gen_i reduced.
  RatVec element(const std::vector<Int>& exponents) const;
  // Inverse map: exponents of x on the generators, each in [0, d_i).
  // Requires in_dual(x).
  std::vector<Int> exponents_of(const RatVec& x) const;
  // All |D| elements, in lexicographic exponent order. Throws if |D| > cap.
  std::vector<RatVec> all_elements(const Int& cap = Int(200000)) const;

  const Lattice& parent() const { return parent_; }

 private:
  Lattice parent_;
  std::vector<Int> factors_;
  std::vector<RatVec> gens_;
  std::vector<Int> diag_;       // full Smith diagonal of the gram
  RatMat v_inverse_;            // inverse of the Smith right transform
  std::vector<int> gen_slots_;  // diagonal positions of the nontrivial factors
};

// Exact inner products on L tensor Q, coordinates w.r.t. the basis of L.
Rat inner_product(const IntMat& gram, const RatVec& x, const RatVec& y);
Rat norm_of(const IntMat& gram, const RatVec& x);

// Gram^{-1}; row i gives the dual basis vector e_i^* in basis coordinates.
RatMat dual_basis_matrix(const Lattice& l);

// JSON interchange: {"name": str, "rank": int, "gram": [[int]], "labels": [str]?}
// Rational vectors serialize as {"num": [int], "den": int} with den > 0 minimal.
std::string lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const std::string& text);
Lattice lattice_from_json_file(const std::string& path);

std::string rat_vec_to_json(const RatVec& x);
RatVec rat_vec_from_json_text(const std::string& text);

}  // namespace klat
