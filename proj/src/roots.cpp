#include "klat/roots.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace klat {

bool operator<(const AdeType& a, const AdeType& b) {
  if (a.n != b.n) return a.n > b.n;
  return static_cast<int>(a.family) > static_cast<int>(b.family);
}

std::string ade_name(const AdeType& t) {
  const char* fam = t.family == AdeFamily::A   ? "A"
                    : t.family == AdeFamily::D ? "D"
                                               : "E";
  return fam + std::to_string(t.n);
}

AdeType parse_ade(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad ADE name: " + s);
  AdeFamily fam;
  switch (s[0]) {
    case 'A': fam = AdeFamily::A; break;
    case 'D': fam = AdeFamily::D; break;
    case 'E': fam = AdeFamily::E; break;
    default: throw std::invalid_argument("bad ADE family in: " + s);
  }
  int n = 0;
  for (size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("bad ADE index in: " + s);
    n = n * 10 + (s[i] - '0');
  }
  AdeType t{fam, n};
  bool ok = (fam == AdeFamily::A && n >= 1) || (fam == AdeFamily::D && n >= 4) ||
            (fam == AdeFamily::E && n >= 6 && n <= 8);
  if (!ok) throw std::invalid_argument("invalid ADE type: " + s);
  return t;
}

std::string shape_to_string(const AdeShape& s) {
  if (s.empty()) return "0";
  std::ostringstream out;
  size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    if (!first) out << "+";
    out << ade_name(s[i]);
    if (j - i > 1) out << "^" << (j - i);
    first = false;
    i = j;
  }
  return out.str();
}

AdeShape parse_shape(const std::string& s) {
  AdeShape out;
  if (s == "0" || s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    size_t caret = tok.find('^');
    int mult = 1;
    std::string base = tok;
    if (caret != std::string::npos) {
      base = tok.substr(0, caret);
      mult = std::stoi(tok.substr(caret + 1));
      if (mult < 1) throw std::invalid_argument("bad multiplicity in: " + tok);
    }
    AdeType t = parse_ade(base);
    for (int k = 0; k < mult; ++k) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Lattice ade_gram(const AdeType& t) {
  int n = t.n;
  bool ok = (t.family == AdeFamily::A && n >= 1) ||
            (t.family == AdeFamily::D && n >= 4) ||
            (t.family == AdeFamily::E && n >= 6 && n <= 8);
  if (!ok) throw std::invalid_argument("invalid ADE type: " + ade_name(t));
  IntMat g(n, n);
  for (int i = 0; i < n; ++i) g.at(i, i) = -2;
  auto join = [&g](int i, int j) { g.at(i, j) = g.at(j, i) = 1; };
  switch (t.family) {
    case AdeFamily::A:
      for (int i = 0; i + 1 < n; ++i) join(i, i + 1);
      break;
    case AdeFamily::D:
      for (int i = 0; i + 1 < n - 2; ++i) join(i, i + 1);
      join(n - 3, n - 2);
      join(n - 3, n - 1);
      break;
    case AdeFamily::E:
      for (int i = 0; i + 1 < n - 1; ++i) join(i, i + 1);
      join(2, n - 1);
      break;
  }
  return make_lattice(ade_name(t), std::move(g));
}

Lattice shape_lattice(const AdeShape& s, const std::string& name) {
  if (s.empty()) throw std::invalid_argument("shape_lattice: empty shape");
  AdeShape sorted = s;
  std::sort(sorted.begin(), sorted.end());
  Lattice acc = ade_gram(sorted[0]);
  for (size_t i = 1; i < sorted.size(); ++i)
    acc = direct_sum(acc, ade_gram(sorted[i]));
  acc.name = name.empty() ? shape_to_string(sorted) : name;
  return acc;
}

Int shape_root_count(const AdeShape& s) {
  Int total(0);
  for (const auto& t : s) {
    switch (t.family) {
      case AdeFamily::A: total += t.n * (t.n + 1); break;
      case AdeFamily::D: total += 2 * t.n * (t.n - 1); break;
      case AdeFamily::E: total += t.n == 6 ? 72 : t.n == 7 ? 126 : 240; break;
    }
  }
  return total;
}

// ----- exact Fincke-Pohst enumeration -----

namespace {

struct LduData {
  RatMat u;           // unit upper triangular factors
  std::vector<Rat> d; // positive pivots
};

// Q = L D U with U unit upper triangular, so x'Qx = sum_i d_i y_i^2 where
// y_i = x_i + sum_{j>i} u_ij x_j.
LduData ldu_decompose(const IntMat& gram) {
  int n = gram.rows();
  RatMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = -Rat(gram.at(i, j));
  LduData out{RatMat::identity(n), std::vector<Rat>(n)};
  for (int k = 0; k < n; ++k) {
    Rat dk = a.at(k, k);
    if (dk <= 0)
      throw std::invalid_argument("enumeration requires negative definite gram");
    out.d[k] = dk;
    for (int j = k + 1; j < n; ++j) out.u.at(k, j) = a.at(k, j) / dk;
    for (int i = k + 1; i < n; ++i) {
      Rat f = a.at(i, k) / dk;
      if (f == 0) continue;
      for (int j = k; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return out;
}

struct EnumCtx {
  const LduData& ldu;
  const RatVec& shift;
  Rat bound;
  int n;
  std::vector<Int> x;
  std::vector<Rat> z;  // z_j = x_j + shift_j for levels already fixed
  std::vector<std::pair<std::vector<Int>, Rat>>* out;
  bool stop_at_first = false;
  bool found = false;

  void descend(int level, const Rat& used) {
    if (found && stop_at_first) return;
    if (level < 0) {
      if (used > 0) {
        out->push_back({x, used});
        found = true;
      }
      return;
    }
    Rat c = shift[level];
    for (int j = level + 1; j < n; ++j) {
      if (ldu.u.at(level, j) != 0) c += ldu.u.at(level, j) * z[j];
    }
    Rat budget = bound - used;
    const Rat& dk = ldu.d[level];
    // integer x with d_k (x + c)^2 <= budget; contiguous interval around -c
    Rat neg_c = -c;
    Int start;
    mpz_cdiv_q(start.get_mpz_t(), neg_c.get_num().get_mpz_t(),
               neg_c.get_den().get_mpz_t());
    for (Int t = start;; t += 1) {
      Rat y = Rat(t) + c;
      Rat term = dk * y * y;
      if (term > budget) break;
      x[level] = t;
      z[level] = Rat(t) + shift[level];
      descend(level - 1, used + term);
      if (found && stop_at_first) return;
    }
    for (Int t = start - 1;; t -= 1) {
      Rat y = Rat(t) + c;
      Rat term = dk * y * y;
      if (term > budget) break;
      x[level] = t;
      z[level] = Rat(t) + shift[level];
      descend(level - 1, used + term);
      if (found && stop_at_first) return;
    }
  }
};

}  // namespace

std::vector<std::pair<std::vector<Int>, Rat>> enumerate_quadratic(
    const IntMat& gram, const RatVec& shift, const Rat& bound) {
  int n = gram.rows();
  RatVec sh = shift.empty() ? RatVec(n, Rat(0)) : shift;
  if (static_cast<int>(sh.size()) != n)
    throw std::invalid_argument("enumerate_quadratic: shift size mismatch");
  LduData ldu = ldu_decompose(gram);
  std::vector<std::pair<std::vector<Int>, Rat>> out;
  EnumCtx ctx{ldu, sh, bound, n, std::vector<Int>(n), std::vector<Rat>(n), &out};
  ctx.descend(n - 1, Rat(0));
  std::sort(out.begin(), out.end());
  return out;
}

Rat coset_min_norm(const IntMat& gram, const RatVec& shift) {
  // grow the bound until something appears; diagonal entries of -gram give
  // a guaranteed hit within max diagonal once the bound covers one period
  Rat bound(2);
  while (true) {
    auto hits = enumerate_quadratic(gram, shift, bound);
    if (!hits.empty()) {
      Rat best = hits[0].second;
      for (const auto& h : hits) best = std::min(best, h.second);
      return -best;  // back to lattice sign convention
    }
    bound *= 2;
  }
}

RootSet enumerate_roots(const Lattice& l) {
  auto hits = enumerate_quadratic(l.gram, {}, Rat(2));
  RootSet rs;
  for (auto& [x, val] : hits)
    if (val == 2) rs.roots.push_back(std::move(x));
  return rs;
}

std::vector<std::vector<Int>> RootSet::positive() const {
  std::vector<std::vector<Int>> out;
  for (const auto& r : roots)
    for (const auto& c : r) {
      if (c == 0) continue;
      if (c > 0) out.push_back(r);
      break;
    }
  return out;
}

// ----- root-system decomposition -----

namespace {

Rat root_pairing(const IntMat& gram, const std::vector<Int>& a,
                 const std::vector<Int>& b) {
  Rat acc(0);
  int n = gram.rows();
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      if (b[j] != 0) acc += Rat(a[i] * gram.at(i, j) * b[j]);
  }
  return acc;
}

AdeType identify_component(int rank, const Int& abs_det, int root_count) {
  // (rank, |det|, root count) separates the ADE families
  if (abs_det == rank + 1 && root_count == rank * (rank + 1))
    return AdeType{AdeFamily::A, rank};
  if (rank >= 4 && abs_det == 4 && root_count == 2 * rank * (rank - 1))
    return AdeType{AdeFamily::D, rank};
  if (rank == 6 && abs_det == 3 && root_count == 72)
    return AdeType{AdeFamily::E, 6};
  if (rank == 7 && abs_det == 2 && root_count == 126)
    return AdeType{AdeFamily::E, 7};
  if (rank == 8 && abs_det == 1 && root_count == 240)
    return AdeType{AdeFamily::E, 8};
  throw std::runtime_error("root component is not an ADE lattice (rank " +
                           std::to_string(rank) + ")");
}

}  // namespace

AdeShape root_decomposition(const Lattice& l) {
  RootSet rs = enumerate_roots(l);
  auto pos = rs.positive();
  int m = static_cast<int>(pos.size());
  if (m == 0) return {};

  // union-find over positive roots, joined when non-orthogonal
  std::vector<int> parent(m);
  for (int i = 0; i < m; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (root_pairing(l.gram, pos[i], pos[j]) != 0)
        parent[find(i)] = find(j);

  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < m; ++i) comps[find(i)].push_back(i);

  AdeShape shape;
  for (const auto& [root_idx, members] : comps) {
    (void)root_idx;
    IntMat rows(static_cast<int>(members.size()), l.rank());
    for (size_t r = 0; r < members.size(); ++r)
      for (int c = 0; c < l.rank(); ++c) rows.at(static_cast<int>(r), c) = pos[members[r]][c];
    IntMat basis = hermite_row_basis(rows);
    int rank = basis.rows();
    IntMat comp_gram(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) {
        Int acc(0);
        for (int p = 0; p < l.rank(); ++p)
          for (int q = 0; q < l.rank(); ++q)
            acc += basis.at(i, p) * l.gram.at(p, q) * basis.at(j, q);
        comp_gram.at(i, j) = acc;
      }
    Int det = determinant(comp_gram);
    Int abs_det;
    mpz_abs(abs_det.get_mpz_t(), det.get_mpz_t());
    shape.push_back(identify_component(rank, abs_det,
                                       2 * static_cast<int>(members.size())));
  }
  std::sort(shape.begin(), shape.end());
  return shape;
}

// ----- isometry testing -----

namespace {

using I64Vec = std::vector<long long>;

long long to_i64(const Int& v) {
  if (!v.fits_slong_p()) throw std::runtime_error("isometry: entry too large");
  return v.get_si();
}

long long pair_i64(const std::vector<I64Vec>& gram, const I64Vec& a,
                   const I64Vec& b) {
  long long acc = 0;
  size_t n = a.size();
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    long long row = 0;
    for (size_t j = 0; j < n; ++j) row += gram[i][j] * b[j];
    acc += a[i] * row;
  }
  return acc;
}

struct IsoSide {
  std::vector<I64Vec> gram;
  std::vector<I64Vec> shorts;          // all vectors with |norm| <= bound
  std::vector<long long> short_norms;  // same order
};

IsoSide prepare_side(const Lattice& l, const Int& bound) {
  IsoSide s;
  int n = l.rank();
  s.gram.assign(n, I64Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.gram[i][j] = to_i64(l.gram.at(i, j));
  auto hits = enumerate_quadratic(l.gram, {}, Rat(bound));
  for (auto& [x, val] : hits) {
    I64Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = to_i64(x[i]);
    s.shorts.push_back(std::move(v));
    s.short_norms.push_back(-val.get_num().get_si());
  }
  return s;
}

// Backtracking with forward checking: each unmatched basis position of b
// keeps the list of still-compatible image candidates, the position with
// the fewest candidates is matched next, and every choice filters the
// remaining lists by the required pairings. gram_shorts caches G_a * v per
// candidate so a pairing costs one dot product.
struct IsoSearch {
  const IsoSide& a;
  const IsoSide& b;
  int n;
  std::vector<I64Vec> gram_shorts;
  std::vector<char> done;

  long long pairing(int cand, const I64Vec& v) const {
    const I64Vec& gs = gram_shorts[cand];
    long long acc = 0;
    for (int i = 0; i < n; ++i) acc += v[i] * gs[i];
    return acc;
  }

  bool solve(const std::vector<std::vector<int>>& cands, int remaining) {
    if (remaining == 0) return true;
    int best = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && (best == -1 || cands[i].size() < cands[best].size()))
        best = i;
    done[best] = 1;
    for (int c : cands[best]) {
      std::vector<std::vector<int>> next(n);
      bool wipeout = false;
      for (int i = 0; i < n && !wipeout; ++i) {
        if (done[i]) continue;
        long long need = b.gram[i][best];
        for (int d : cands[i])
          if (pairing(c, a.shorts[d]) == need) next[i].push_back(d);
        wipeout = next[i].empty();
      }
      if (!wipeout && solve(next, remaining - 1)) return true;
    }
    done[best] = 0;
    return false;
  }
};

}  // namespace

bool is_isometric(const Lattice& la, const Lattice& lb) {
  if (la.rank() != lb.rank())
    throw std::invalid_argument("is_isometric: rank mismatch (" +
                                std::to_string(la.rank()) + " vs " +
                                std::to_string(lb.rank()) + ")");
  if (lattice_det(la) != lattice_det(lb)) return false;
  DiscGroup da(la), db(lb);
  if (da.invariant_factors() != db.invariant_factors()) return false;

  Int bound(0);
  for (int i = 0; i < lb.rank(); ++i) {
    Int d = -lb.gram.at(i, i);
    if (d > bound) bound = d;
  }
  for (int i = 0; i < la.rank(); ++i) {
    Int d = -la.gram.at(i, i);
    if (d > bound) bound = d;
  }
  IsoSide sa = prepare_side(la, bound);
  IsoSide sb = prepare_side(lb, bound);

  // short-vector norm histograms must agree
  {
    std::map<long long, int> ha, hb;
    for (auto v : sa.short_norms) ha[v]++;
    for (auto v : sb.short_norms) hb[v]++;
    if (ha != hb) return false;
  }

  int n = la.rank();
  IsoSearch search{sa, sb, n, {}, std::vector<char>(n, 0)};
  search.gram_shorts.reserve(sa.shorts.size());
  for (const auto& v : sa.shorts) {
    I64Vec gs(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gs[i] += sa.gram[i][j] * v[j];
    search.gram_shorts.push_back(std::move(gs));
  }
  std::vector<std::vector<int>> cands(n);
  for (int i = 0; i < n; ++i) {
    for (size_t c = 0; c < sa.shorts.size(); ++c)
      if (sa.short_norms[c] == sb.gram[i][i]) cands[i].push_back(int(c));
    if (cands[i].empty()) return false;  // no vector of the needed norm
  }
  return search.solve(cands, n);
}

// ----- Weyl groups -----

std::vector<IntMat> weyl_group(const AdeType& t) {
  if (t.n > 6)
    throw std::invalid_argument("weyl_group materialized only for rank <= 6");
  Lattice l = ade_gram(t);
  int n = l.rank();
  // simple reflection s_i acts by x -> x + (x, e_i) e_i since (e_i,e_i) = -2;
  // as a matrix on column vectors: row i of the identity replaced by
  // row i + (gram row i)
  std::vector<IntMat> gens;
  for (int i = 0; i < n; ++i) {
    IntMat s = IntMat::identity(n);
    for (int j = 0; j < n; ++j) s.at(i, j) += l.gram.at(i, j);
    gens.push_back(s);
  }
  auto key = [n](const IntMat& m) {
    std::vector<long> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) flat.push_back(m.at(i, j).get_si());
    return flat;
  };
  std::set<std::vector<long>> seen;
  std::vector<IntMat> group{IntMat::identity(n)};
  seen.insert(key(group[0]));
  for (size_t head = 0; head < group.size(); ++head) {
    IntMat cur = group[head];
    for (const auto& g : gens) {
      IntMat next = g * cur;
      auto k = key(next);
      if (seen.insert(k).second) group.push_back(next);
    }
  }
  return group;
}

bool weyl_basis_containment(const AdeType& t,
                            const std::vector<std::vector<Int>>& roots) {
  Lattice l = ade_gram(t);
  int n = l.rank();
  for (const auto& r : roots) {
    if (static_cast<int>(r.size()) != n)
      throw std::invalid_argument("weyl_basis_containment: wrong vector size");
    Int norm(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) norm += r[i] * l.gram.at(i, j) * r[j];
    if (norm != -2)
      throw std::invalid_argument("weyl_basis_containment: input is not a root");
  }
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      Int p(0);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) p += roots[i][r] * l.gram.at(r, c) * roots[j][c];
      if (p != 0)
        throw std::invalid_argument(
            "weyl_basis_containment: inputs are not pairwise orthogonal");
    }

  auto group = weyl_group(t);
  for (const auto& w : group) {
    bool all_basis = true;
    for (const auto& r : roots) {
      // image w * r must be a standard basis vector
      int ones = 0;
      bool good = true;
      for (int i = 0; i < n && good; ++i) {
        Int acc(0);
        for (int j = 0; j < n; ++j) acc += w.at(i, j) * r[j];
        if (acc == 0) continue;
        if (acc == 1)
          ++ones;
        else
          good = false;
      }
      if (!good || ones != 1) {
        all_basis = false;
        break;
      }
    }
    if (all_basis) return true;
  }
  return false;
}

}  // namespace klat
