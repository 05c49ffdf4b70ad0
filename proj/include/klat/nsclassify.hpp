// Index-p extensions of a polarized lattice Z H (+) N that keep H and N
// primitive. H spans a rank-one summand of positive even square H^2 = 2d;
// N is even negative definite, given with its root base and glue. Every
// such extension is generated by v = (H + m)/p where the class mu = m/p in
// disc(N) has order exactly p: integrality of v.H needs p | 2d, evenness of
// v^2 needs 2d/p^2 + q(mu) in 2Z, and order exactly p (mu nonzero) is what
// keeps H primitive. The ambient lattice is indefinite, so extensions are
// handled as raw Gram matrices rather than Lattice values.
#pragma once

#include <string>
#include <vector>

#include "klat/exactlin.hpp"
#include "klat/overlattice.hpp"

namespace klat {

struct PolarizedExtensionProblem {
  Overlattice n;  // negative definite summand with its root base and glue
  Int dsq;        // H^2 = 2d, positive and even
  int prime = 2;  // extension index p
};

// One admissibility class of glue vectors v = (H + m)/p.
struct ExtensionClass {
  RatVec mu;                   // m/p reduced into [0,1), n.result coordinates
  std::vector<Int> exponents;  // mu on the disc(N) invariant-factor generators
  std::vector<long> word;      // mu over the root-block dual generators; empty
                               // unless every block of the base is of type A
  int support = 0;             // blocks with a nonzero word digit
  Rat q;                       // q(mu), representative in [0,2)
  long orbit = 1;              // admissible classes merged into this one
  std::string name;            // e.g. "H/3 + d1 + d2 + 2 d3"
};

struct ExtensionClassification {
  Int dsq;
  int prime = 0;
  bool divides = false;     // p | 2d; when false only the trivial extension exists
  bool normalized = false;  // classes merged under runtime-proven symmetries
  long admissible = 0;      // admissible classes before any merging
  std::vector<ExtensionClass> classes;
  std::string note;
};

// Classifies the admissible glue classes of the problem. Only prime indices
// are accepted: an index-rs extension is an index-s extension of an index-r
// one, so composite indices reduce to chains of prime steps. Classes are
// merged exactly when the needed symmetry is proven on the glue code at
// runtime: free permutations of identical A-type blocks (checked on the
// generating transpositions), the global sign flip, and per-block diagram
// flips when every single-block flip preserves the code. When the checks
// fail, every admissible class is its own row and normalized stays false.
ExtensionClassification classify_extensions(const PolarizedExtensionProblem& p);

// The A2 word congruence for index-3 extensions: a word with k nonzero
// digits gives an even extension of degree 2d exactly when d - 3k = 0 mod 9
// (each nonzero digit contributes -2/3 to q(mu), so v^2 = 2d/9 - 2k/3 mod
// 2Z). Throws unless the problem has prime 3.
bool evenness_congruence(const PolarizedExtensionProblem& p, int support);

// The extension Z v + (Z H (+) N) built from one glue class, as a raw Gram
// matrix over the Hermite basis, with the inclusions and invariants that
// certify the construction. Throws if the class gives no even integral
// index-p extension (vector not in the dual of N, order not dividing p,
// odd v^2). mu = 0 builds the H/p extension and reports h_primitive false.
struct ExtensionLattice {
  IntMat gram;            // rank 1 + rank(N), indefinite
  IntMat n_inclusion;     // rows: n.result basis in extension coordinates
  Int det;                // satisfies det * p^2 = 2d * det(N)
  std::vector<Int> disc;  // invariant factors of the extension
  bool even = false;
  bool n_primitive = false;  // N stays primitive in the extension
  bool h_primitive = false;  // false exactly for mu = 0
};
ExtensionLattice build_polarized_extension(const PolarizedExtensionProblem& p,
                                           const RatVec& mu);

// Length and evenness verdicts for Z H (+) N itself and for every admissible
// prime extension: which candidates fit primitively into an even unimodular
// lattice of rank max_rank by the length criterion.
struct FeasibilityRow {
  int prime = 1;       // 1 on the unextended row
  ExtensionClass cls;  // zero class on the unextended row
  std::vector<Int> disc;
  Int det;
  int length = 0;
  bool even = false;
  bool n_primitive = false;
  bool embeddable = false;  // length <= max_rank - (1 + rank N)
};
struct FeasibilityReport {
  Int dsq;
  int rank = 0;  // 1 + rank(N)
  int max_rank = 22;
  std::vector<FeasibilityRow> rows;  // unextended row first
};
FeasibilityReport polarization_feasibility(const Overlattice& n, const Int& dsq,
                                           int max_rank = 22);

}  // namespace klat
