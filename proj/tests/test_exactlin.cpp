#include <random>

#include "doctest.h"
#include "klat/exactlin.hpp"

using namespace klat;

namespace {

// Independent determinant oracle: cofactor expansion along the first row.
// Exponential, only for small test matrices.
Int cofactor_det(const IntMat& m) {
  int n = m.rows();
  if (n == 0) return Int(1);
  if (n == 1) return m.at(0, 0);
  Int acc(0);
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    IntMat minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    Int term = m.at(0, j) * cofactor_det(minor);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

// Independent 2x2 invariant-factor oracle: (g, |det|/g) with g the gcd of
// all entries, valid whenever det != 0.
std::vector<Int> snf2_oracle(const IntMat& m) {
  Int g(0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.at(i, j).get_mpz_t());
  Int d = cofactor_det(m);
  Int ad;
  mpz_abs(ad.get_mpz_t(), d.get_mpz_t());
  return {g, ad / g};
}

IntMat random_mat(std::mt19937& rng, int rows, int cols, int span) {
  std::uniform_int_distribution<int> dist(-span, span);
  IntMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Int(dist(rng));
  return m;
}

IntMat gram_a(int n) {  // A_n chain, negative definite convention
  IntMat g(n, n);
  for (int i = 0; i < n; ++i) {
    g.at(i, i) = -2;
    if (i + 1 < n) g.at(i, i + 1) = g.at(i + 1, i) = 1;
  }
  return g;
}

IntMat gram_e8() {
  // chain y1..y7 with y8 attached to y3
  IntMat g = gram_a(8);
  g.at(6, 7) = g.at(7, 6) = 0;
  g.at(2, 7) = g.at(7, 2) = 1;
  return g;
}

bool is_diag_chain(const IntMat& d) {
  int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      if (i != j && d.at(i, j) != 0) return false;
  for (int i = 0; i + 1 < n; ++i) {
    if (d.at(i, i) < 0) return false;
    if (d.at(i + 1, i + 1) != 0 && d.at(i, i) != 0 &&
        d.at(i + 1, i + 1) % d.at(i, i) != 0)
      return false;
    if (d.at(i, i) == 0 && d.at(i + 1, i + 1) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smith normal form: 2x2 gcd/det oracle") {
  IntMat a2 = gram_a(2);
  auto s = smith_normal_form(a2);
  auto oracle = snf2_oracle(a2);
  REQUIRE(s.d.at(0, 0) == oracle[0]);
  REQUIRE(s.d.at(1, 1) == oracle[1]);
  CHECK(s.d.at(0, 0) == 1);
  CHECK(s.d.at(1, 1) == 3);

  std::mt19937 rng(11);
  int checked = 0;
  while (checked < 200) {
    IntMat m = random_mat(rng, 2, 2, 9);
    if (cofactor_det(m) == 0) continue;
    auto sm = smith_normal_form(m);
    auto ora = snf2_oracle(m);
    REQUIRE(sm.d.at(0, 0) == ora[0]);
    REQUIRE(sm.d.at(1, 1) == ora[1]);
    ++checked;
  }
}

TEST_CASE("smith normal form: u*m*v = d with unimodular transforms") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    int rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    IntMat m = random_mat(rng, rows, cols, 9);
    auto s = smith_normal_form(m);
    REQUIRE(s.u * m * s.v == s.d);
    Int du = cofactor_det(s.u), dv = cofactor_det(s.v);
    REQUIRE((du == 1 || du == -1));
    REQUIRE((dv == 1 || dv == -1));
    REQUIRE(is_diag_chain(s.d));
  }
}

TEST_CASE("smith normal form: known invariant factors") {
  // diag(4,2,4) has invariant factors (2,4,4)
  IntMat d(3, 3);
  d.at(0, 0) = 4; d.at(1, 1) = 2; d.at(2, 2) = 4;
  auto s = smith_normal_form(d);
  std::vector<Int> want{Int(2), Int(4), Int(4)};
  REQUIRE(s.nontrivial_factors() == want);
}

TEST_CASE("determinant: cofactor oracle and ADE values") {
  REQUIRE(determinant(gram_a(3)) == cofactor_det(gram_a(3)));
  CHECK(determinant(gram_a(3)) == -4);  // (-1)^3 * |disc A3|
  REQUIRE(determinant(gram_e8()) == cofactor_det(gram_e8()));
  CHECK(determinant(gram_e8()) == 1);

  std::mt19937 rng(37);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + trial % 6;
    IntMat m = random_mat(rng, n, n, 7);
    REQUIRE(determinant(m) == cofactor_det(m));
  }
}

TEST_CASE("negative definiteness: minor-sign oracle") {
  IntMat d4(4, 4);
  for (int i = 0; i < 4; ++i) d4.at(i, i) = -2;
  // chain 0-1, fork 2,3 at 1
  d4.at(0, 1) = d4.at(1, 0) = 1;
  d4.at(1, 2) = d4.at(2, 1) = 1;
  d4.at(1, 3) = d4.at(3, 1) = 1;
  CHECK(is_negative_definite(d4));
  CHECK(is_negative_definite(gram_e8()));

  IntMat pos(1, 1);
  pos.at(0, 0) = 2;
  CHECK_FALSE(is_negative_definite(pos));

  IntMat hyp(2, 2);  // indefinite: signature (1,1)
  hyp.at(0, 1) = hyp.at(1, 0) = 1;
  CHECK_FALSE(is_negative_definite(hyp));

  IntMat sing(2, 2);  // rank 1, negative semidefinite only
  sing.at(0, 0) = sing.at(1, 1) = -2;
  sing.at(0, 1) = sing.at(1, 0) = -2;
  CHECK_FALSE(is_negative_definite(sing));
}

TEST_CASE("hermite row basis: span is preserved") {
  IntMat m(3, 2);
  m.at(0, 0) = 2; m.at(1, 1) = 2; m.at(2, 0) = 1; m.at(2, 1) = 1;
  IntMat h = hermite_row_basis(m);
  REQUIRE(h.rows() == 2);
  CHECK(h.at(0, 0) == 1);
  CHECK(h.at(0, 1) == 1);
  CHECK(h.at(1, 0) == 0);
  CHECK(h.at(1, 1) == 2);

  // property: appending original rows to the basis does not change the basis
  std::mt19937 rng(53);
  for (int trial = 0; trial < 80; ++trial) {
    int rows = 1 + trial % 6, cols = 1 + (trial / 6) % 4;
    IntMat a = random_mat(rng, rows, cols, 5);
    IntMat basis = hermite_row_basis(a);
    IntMat stacked(basis.rows() + rows, cols);
    for (int i = 0; i < basis.rows(); ++i)
      for (int j = 0; j < cols; ++j) stacked.at(i, j) = basis.at(i, j);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) stacked.at(basis.rows() + i, j) = a.at(i, j);
    REQUIRE(hermite_row_basis(stacked) == basis);
  }
}

TEST_CASE("rational inverse") {
  std::mt19937 rng(71);
  int done = 0;
  while (done < 60) {
    int n = 1 + done % 4;
    IntMat m = random_mat(rng, n, n, 6);
    if (cofactor_det(m) == 0) continue;
    RatMat inv = rat_inverse(to_rat(m));
    REQUIRE(to_rat(m) * inv == RatMat::identity(n));
    ++done;
  }
  RatMat sing(2, 2);
  sing.at(0, 0) = 1; sing.at(0, 1) = 2;
  sing.at(1, 0) = 2; sing.at(1, 1) = 4;
  CHECK_THROWS_AS(rat_inverse(sing), std::domain_error);
}
