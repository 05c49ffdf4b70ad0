#include "klat/overlattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "klat/roots.hpp"

namespace klat {

namespace {

std::string vec_key(const RatVec& v) {
  std::ostringstream out;
  for (const auto& c : v) out << c << ";";
  return out.str();
}

std::string vec_pretty(const RatVec& v) {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ",";
    out << v[i];
  }
  out << ")";
  return out.str();
}

}  // namespace

std::vector<RatVec> glue_subgroup(const Lattice& l,
                                  const std::vector<RatVec>& glue) {
  DiscGroup disc(l);
  for (const auto& v : glue)
    if (!disc.in_dual(v))
      throw std::invalid_argument("glue vector not in the dual lattice: " +
                                  vec_pretty(v));
  int n = l.rank();
  std::map<std::string, RatVec> seen;
  RatVec zero(n, Rat(0));
  seen[vec_key(zero)] = zero;
  std::vector<RatVec> queue{zero};
  for (size_t head = 0; head < queue.size(); ++head) {
    RatVec cur = queue[head];
    for (const auto& g : glue) {
      RatVec next(n);
      for (int i = 0; i < n; ++i) next[i] = cur[i] + g[i];
      next = disc.reduce(next);
      auto key = vec_key(next);
      if (!seen.count(key)) {
        seen[key] = next;
        queue.push_back(next);
      }
    }
  }
  std::vector<RatVec> out;
  for (auto& [k, v] : seen) {
    (void)k;
    out.push_back(v);
  }
  return out;
}

GlueCheck validate_glue(const Lattice& l, const std::vector<RatVec>& glue) {
  DiscGroup disc(l);
  auto subgroup = glue_subgroup(l, glue);  // throws if not in dual
  for (const auto& x : subgroup) {
    Rat q = disc.q_value(x);
    if (q != 0) {
      std::ostringstream msg;
      msg << "subgroup element " << vec_pretty(x) << " has q = " << q
          << " (not 0 mod 2Z)";
      return {false, msg.str()};
    }
  }
  for (size_t i = 0; i < subgroup.size(); ++i)
    for (size_t j = i; j < subgroup.size(); ++j) {
      Rat b = disc.b_value(subgroup[i], subgroup[j]);
      if (b != 0) {
        std::ostringstream msg;
        msg << "pair " << vec_pretty(subgroup[i]) << ", "
            << vec_pretty(subgroup[j]) << " has b = " << b << " (not 0 mod Z)";
        return {false, msg.str()};
      }
    }
  return {true, ""};
}

Overlattice build_overlattice(const Lattice& l, const std::vector<RatVec>& glue,
                              const std::string& name) {
  GlueCheck check = validate_glue(l, glue);
  if (!check.ok)
    throw std::invalid_argument("build_overlattice: glue not isotropic: " +
                                check.diagnostic);
  DiscGroup disc(l);
  std::vector<RatVec> reduced;
  for (const auto& g : glue) reduced.push_back(disc.reduce(g));

  int n = l.rank();
  // common denominator of all glue coordinates
  Int den(1);
  for (const auto& g : reduced)
    for (const auto& c : g)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());

  // rows: den * (basis of l) followed by den * glue, then HNF and rescale
  IntMat rows(n + static_cast<int>(reduced.size()), n);
  for (int i = 0; i < n; ++i) rows.at(i, i) = den;
  for (size_t g = 0; g < reduced.size(); ++g)
    for (int j = 0; j < n; ++j) {
      Rat scaled = reduced[g][j] * Rat(den);
      rows.at(n + static_cast<int>(g), j) = scaled.get_num();
    }
  IntMat hnf = hermite_row_basis(rows);
  if (hnf.rows() != n)
    throw std::logic_error("build_overlattice: basis rank mismatch");

  RatMat basis(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      basis.at(i, j) = Rat(hnf.at(i, j), den);
      basis.at(i, j).canonicalize();
    }

  IntMat gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat acc(0);
      for (int p = 0; p < n; ++p) {
        if (basis.at(i, p) == 0) continue;
        for (int q = 0; q < n; ++q)
          acc += basis.at(i, p) * Rat(l.gram.at(p, q)) * basis.at(j, q);
      }
      if (acc.get_den() != 1)
        throw std::logic_error("build_overlattice: non-integral gram entry");
      gram.at(i, j) = acc.get_num();
    }

  Int index(glue_subgroup(l, glue).size());
  Lattice result =
      make_lattice(name.empty() ? l.name + "+glue" : name, std::move(gram));
  // d(L) = index^2 * d(M)
  if (lattice_det(l) != index * index * lattice_det(result))
    throw std::logic_error("build_overlattice: determinant relation violated");
  return Overlattice{l, std::move(reduced), std::move(result), std::move(basis),
                     std::move(index)};
}

RatVec to_base_coords(const Overlattice& o, const RatVec& over_coords) {
  int n = o.base.rank();
  RatVec out(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (over_coords[i] == 0) continue;
    for (int j = 0; j < n; ++j) out[j] += over_coords[i] * o.basis.at(i, j);
  }
  return out;
}

RatVec to_overlattice_coords(const Overlattice& o, const RatVec& base_coords) {
  RatMat inv = rat_inverse(o.basis);
  int n = o.base.rank();
  RatVec out(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += base_coords[j] * inv.at(j, i);
  return out;
}

std::vector<RatVec> overlattice_roots_in_base(const Overlattice& o) {
  RootSet rs = enumerate_roots(o.result);
  std::vector<RatVec> out;
  for (const auto& r : rs.roots) {
    RatVec over(r.size());
    for (size_t i = 0; i < r.size(); ++i) over[i] = Rat(r[i]);
    out.push_back(to_base_coords(o, over));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool roots_coincide_with_base(const Overlattice& o) {
  auto over_roots = overlattice_roots_in_base(o);
  RootSet base_roots = enumerate_roots(o.base);
  if (over_roots.size() != base_roots.roots.size()) return false;
  std::set<std::string> base_keys;
  for (const auto& r : base_roots.roots) {
    RatVec v(r.size());
    for (size_t i = 0; i < r.size(); ++i) v[i] = Rat(r[i]);
    base_keys.insert(vec_key(v));
  }
  for (const auto& r : over_roots)
    if (!base_keys.count(vec_key(r))) return false;
  return true;
}

bool is_primitive_sublattice(const Lattice& sub, const Lattice& ambient,
                             const IntMat& inclusion) {
  if (inclusion.rows() != sub.rank() || inclusion.cols() != ambient.rank())
    throw std::invalid_argument("is_primitive_sublattice: inclusion shape");
  // gram compatibility: inclusion * ambient.gram * inclusion^T = sub.gram
  for (int i = 0; i < sub.rank(); ++i)
    for (int j = 0; j < sub.rank(); ++j) {
      Int acc(0);
      for (int p = 0; p < ambient.rank(); ++p)
        for (int q = 0; q < ambient.rank(); ++q)
          acc += inclusion.at(i, p) * ambient.gram.at(p, q) * inclusion.at(j, q);
      if (acc != sub.gram.at(i, j))
        throw std::invalid_argument(
            "is_primitive_sublattice: inclusion is not isometric onto its "
            "image");
    }
  SmithResult s = smith_normal_form(inclusion);
  int r = std::min(inclusion.rows(), inclusion.cols());
  for (int i = 0; i < r; ++i)
    if (s.d.at(i, i) != 1) return false;
  return true;
}

bool embeddability_length_check(const Lattice& l, int ambient_rank) {
  if (l.rank() > ambient_rank)
    throw std::invalid_argument("embeddability_length_check: rank exceeds " +
                                std::to_string(ambient_rank));
  DiscGroup disc(l);
  return disc.length() <= ambient_rank - l.rank();
}

std::vector<Int> complement_quotient_factors(const Lattice& l,
                                             const std::vector<RatVec>& glue) {
  DiscGroup disc(l);
  int k = disc.length();
  const auto& factors = disc.invariant_factors();

  // glue generators in exponent coordinates
  std::vector<std::vector<Int>> h_gens;
  for (const auto& g : glue) h_gens.push_back(disc.exponents_of(disc.reduce(g)));

  // pairing data: b(gen_i, gen_j)
  std::vector<std::vector<Rat>> b(k, std::vector<Rat>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      b[i][j] = disc.b_value(disc.generators()[i], disc.generators()[j]);

  // per glue generator h: w_i = sum_j b[i][j] h_j, so that
  // b(a, h) = sum_i a_i w_i
  std::vector<std::vector<Rat>> w;
  for (const auto& h : h_gens) {
    std::vector<Rat> wi(k, Rat(0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) wi[i] += b[i][j] * Rat(h[j]);
    w.push_back(wi);
  }

  // enumerate all exponent tuples, keep those orthogonal to every glue gen
  Int order = disc.order();
  if (order > 300000)
    throw std::runtime_error("complement_quotient_factors: group too large");
  std::vector<std::vector<Int>> perp;
  std::vector<Int> tuple(k, Int(0));
  while (true) {
    bool ortho = true;
    for (const auto& wi : w) {
      Rat acc(0);
      for (int i = 0; i < k; ++i)
        if (tuple[i] != 0) acc += Rat(tuple[i]) * wi[i];
      // b(a, h) integral?
      if (acc.get_den() != 1) {
        ortho = false;
        break;
      }
    }
    if (ortho) perp.push_back(tuple);
    int i = 0;
    while (i < k) {
      tuple[i] += 1;
      if (tuple[i] < factors[i]) break;
      tuple[i] = 0;
      ++i;
    }
    if (i == k) break;
    if (k == 0) break;
  }

  // lattices in Z^k: span(perp) + diag(factors) and span(h_gens) + diag
  auto stack_with_relations =
      [&](const std::vector<std::vector<Int>>& gens) {
        IntMat rows(static_cast<int>(gens.size()) + k, k);
        for (size_t r = 0; r < gens.size(); ++r)
          for (int c = 0; c < k; ++c) rows.at(static_cast<int>(r), c) = gens[r][c];
        for (int i = 0; i < k; ++i)
          rows.at(static_cast<int>(gens.size()) + i, i) = factors[i];
        return hermite_row_basis(rows);
      };
  IntMat basis_perp = stack_with_relations(perp);
  IntMat basis_h = stack_with_relations(h_gens);

  // express basis_h rows in terms of basis_perp rows: x = basis_h *
  // basis_perp^{-1} must be integral; its Smith diagonal gives the quotient
  RatMat perp_inv = rat_inverse(to_rat(basis_perp));
  IntMat x(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat acc(0);
      for (int p = 0; p < k; ++p)
        acc += Rat(basis_h.at(i, p)) * perp_inv.at(p, j);
      if (acc.get_den() != 1)
        throw std::logic_error(
            "complement_quotient_factors: glue not inside its complement");
      x.at(i, j) = acc.get_num();
    }
  SmithResult s = smith_normal_form(x);
  return s.nontrivial_factors();
}

}  // namespace klat
