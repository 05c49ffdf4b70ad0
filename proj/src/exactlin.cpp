#include "klat/exactlin.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace klat {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::transposed() const {
  IntMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool IntMat::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool IntMat::is_zero() const {
  for (const Int& x : data_)
    if (x != 0) return false;
  return true;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMat product: shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RatMat operator*(const RatMat& a, const RatMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("RatMat product: shape mismatch");
  RatMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
  return r;
}

std::vector<Int> SmithResult::nontrivial_factors() const {
  std::vector<Int> fs;
  int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < n; ++i)
    if (d.at(i, i) > 1) fs.push_back(d.at(i, i));
  return fs;
}

namespace {

void swap_rows(IntMat& m, int a, int b) {
  if (a == b) return;
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMat& m, int a, int b) {
  if (a == b) return;
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row[a] += f * row[b]
void add_row(IntMat& m, int a, int b, const Int& f) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) += f * m.at(b, j);
}

void add_col(IntMat& m, int a, int b, const Int& f) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, a) += f * m.at(i, b);
}

void negate_row(IntMat& m, int a) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace

SmithResult smith_normal_form(const IntMat& m) {
  const int r = m.rows(), c = m.cols();
  SmithResult res{m, IntMat::identity(r), IntMat::identity(c)};
  IntMat& a = res.d;
  const int n = std::min(r, c);

  for (int k = 0; k < n; ++k) {
  restart:
    // pivot: entry of minimal absolute value in the remaining block
    int pi = k, pj = k;
    bool found = false;
    for (int i = k; i < r; ++i)
      for (int j = k; j < c; ++j) {
        if (a.at(i, j) == 0) continue;
        if (!found || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    swap_rows(a, k, pi);
    swap_rows(res.u, k, pi);
    swap_cols(a, k, pj);
    swap_cols(res.v, k, pj);

    for (int i = k + 1; i < r; ++i) {
      if (a.at(i, k) == 0) continue;
      Int q = a.at(i, k) / a.at(k, k);
      add_row(a, i, k, -q);
      add_row(res.u, i, k, -q);
      if (a.at(i, k) != 0) goto restart;  // remainder is a smaller pivot
    }
    for (int j = k + 1; j < c; ++j) {
      if (a.at(k, j) == 0) continue;
      Int q = a.at(k, j) / a.at(k, k);
      add_col(a, j, k, -q);
      add_col(res.v, j, k, -q);
      if (a.at(k, j) != 0) goto restart;
    }
    // enforce divisibility of the rest of the block by the pivot
    for (int i = k + 1; i < r; ++i)
      for (int j = k + 1; j < c; ++j)
        if (a.at(i, j) % a.at(k, k) != 0) {
          add_row(a, k, i, 1);
          add_row(res.u, k, i, 1);
          goto restart;
        }
    if (a.at(k, k) < 0) {
      negate_row(a, k);
      negate_row(res.u, k);
    }
  }
  return res;
}

Int determinant(const IntMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const int n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      int p = k + 1;
      while (p < n && a.at(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        Int t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

bool is_negative_definite(const IntMat& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("is_negative_definite: matrix not symmetric");
  const int n = gram.rows();
  for (int k = 1; k <= n; ++k) {
    IntMat lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead.at(i, j) = gram.at(i, j);
    Int mk = determinant(lead);
    if (k % 2 == 1 ? mk >= 0 : mk <= 0) return false;
  }
  return true;
}

IntMat hermite_row_basis(const IntMat& m) {
  IntMat a = m;
  const int rows = a.rows(), cols = a.cols();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    // gcd elimination within the column, below the current rank
    while (true) {
      int p = rows;
      for (int i = rank; i < rows; ++i) {
        if (a.at(i, col) == 0) continue;
        if (p == rows || mpz_cmpabs(a.at(i, col).get_mpz_t(), a.at(p, col).get_mpz_t()) < 0) p = i;
      }
      if (p == rows) break;  // column clear below rank
      swap_rows(a, rank, p);
      bool clean = true;
      for (int i = rank + 1; i < rows; ++i) {
        if (a.at(i, col) == 0) continue;
        Int q = a.at(i, col) / a.at(rank, col);
        add_row(a, i, rank, -q);
        if (a.at(i, col) != 0) clean = false;
      }
      if (clean) {
        if (a.at(rank, col) < 0) negate_row(a, rank);
        // reduce the entries above the pivot
        for (int i = 0; i < rank; ++i) {
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), a.at(i, col).get_mpz_t(), a.at(rank, col).get_mpz_t());
          if (q != 0) add_row(a, i, rank, -q);
        }
        ++rank;
        break;
      }
    }
  }
  IntMat basis(rank, cols);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < cols; ++j) basis.at(i, j) = a.at(i, j);
  return basis;
}

RatMat rat_inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("rat_inverse: matrix not square");
  const int n = m.rows();
  RatMat a = m, inv = RatMat::identity(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && a.at(p, k) == 0) ++p;
    if (p == n) throw std::domain_error("rat_inverse: singular matrix");
    if (p != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(p, j));
        std::swap(inv.at(k, j), inv.at(p, j));
      }
    Rat piv = a.at(k, k);
    for (int j = 0; j < n; ++j) {
      a.at(k, j) /= piv;
      inv.at(k, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a.at(i, k) == 0) continue;
      Rat f = a.at(i, k);
      for (int j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(k, j);
        inv.at(i, j) -= f * inv.at(k, j);
      }
    }
  }
  return inv;
}

}  // namespace klat
