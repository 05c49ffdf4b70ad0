// Polarized extension classification: admissible glue classes v = (H + m)/p,
// word normalization over the root blocks, and Gram-level construction of
// the (indefinite) extensions.
#include "klat/nsclassify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "klat/roots.hpp"

namespace klat {

namespace {

bool small_prime(int p) {
  if (p < 2) return false;
  for (int f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

void validate_problem(const PolarizedExtensionProblem& pr) {
  if (!small_prime(pr.prime))
    throw std::invalid_argument(
        "extension index must be prime: an index-rs extension factors "
        "through an index-r one");
  if (pr.dsq <= 0 || pr.dsq % 2 != 0)
    throw std::invalid_argument(
        "polarization degree H^2 must be positive and even");
}

Rat frac1(const Rat& x) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num_mpz_t(),
              x.get_den_mpz_t());
  Rat out(r, x.get_den());
  out.canonicalize();
  return out;
}

bool in_two_z(const Rat& x) {
  return x.get_den() == 1 && mpz_even_p(x.get_num_mpz_t()) != 0;
}

// Contiguous diagonal blocks of a block-diagonal gram; all_a records whether
// every block is an A-type component, the setting where word coordinates
// over the block dual generators exist.
struct BlockLayout {
  std::vector<int> offset, size;
  bool all_a = true;
};

BlockLayout base_blocks(const IntMat& gram) {
  BlockLayout out;
  int r = gram.rows();
  int start = 0;
  while (start < r) {
    int end = start + 1;
    for (int i = start; i < end; ++i)
      for (int j = end; j < r; ++j)
        if (gram.at(i, j) != 0) end = std::max(end, j + 1);
    int n = end - start;
    IntMat sub(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sub.at(i, j) = gram.at(start + i, start + j);
    if (!(sub == ade_gram({AdeFamily::A, n}).gram)) out.all_a = false;
    out.offset.push_back(start);
    out.size.push_back(n);
    start = end;
  }
  return out;
}

// Word of a dual class over the A-block dual generators: block b of rank n
// contributes digit c in Z/(n+1) when the reduced block part equals c times
// the standard generator (1, ..., n)/(n+1).
bool word_of(const BlockLayout& bl, const RatVec& base_red,
             std::vector<long>* w) {
  w->clear();
  if (!bl.all_a) return false;
  for (size_t b = 0; b < bl.offset.size(); ++b) {
    int off = bl.offset[b], n = bl.size[b];
    Rat lead = base_red[off] * (n + 1);
    if (lead.get_den() != 1) return false;
    Int digit = lead.get_num() % (n + 1);
    if (digit < 0) digit += n + 1;
    for (int j = 0; j < n; ++j) {
      Int num = digit * (j + 1);
      Rat want(num, Int(n + 1));
      want.canonicalize();
      if (base_red[off + j] != frac1(want)) return false;
    }
    w->push_back(digit.get_si());
  }
  return true;
}

std::vector<long> add_mod(std::vector<long> a, const std::vector<long>& b,
                          int p) {
  for (size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + b[i]) % p;
  return a;
}

std::vector<long> scale_mod(std::vector<long> a, long c, int p) {
  for (long& d : a) d = d * c % p;
  return a;
}

// Display order: nonzero digits ascending, zeros last.
std::vector<long> display_sorted(std::vector<long> w) {
  std::sort(w.begin(), w.end(), [](long a, long b) {
    if ((a == 0) != (b == 0)) return b == 0;
    return a < b;
  });
  return w;
}

int support_of(const std::vector<long>& w) {
  int k = 0;
  for (long d : w) k += d != 0;
  return k;
}

bool perm_invariant(const std::set<std::vector<long>>& code) {
  for (const auto& w : code)
    for (size_t i = 0; i + 1 < w.size(); ++i) {
      auto t = w;
      std::swap(t[i], t[i + 1]);
      if (!code.count(t)) return false;
    }
  return true;
}

bool flip_invariant(const std::set<std::vector<long>>& code, int p) {
  for (const auto& w : code)
    for (size_t b = 0; b < w.size(); ++b) {
      auto t = w;
      t[b] = (p - t[b]) % p;
      if (!code.count(t)) return false;
    }
  return true;
}

// Minimum over the proven symmetries, smaller support winning before the
// lexicographic order: global multipliers {1, p-1}, per-block flips when
// allowed, glue translations, and free permutations via the display sort.
std::vector<long> canonical_word(const std::vector<long>& w,
                                 const std::vector<std::vector<long>>& code,
                                 int p, bool block_flips) {
  std::vector<long> mults{1};
  if (p > 2) mults.push_back(p - 1);
  int k = static_cast<int>(w.size());
  long patterns = block_flips ? 1L << k : 1;
  int best_support = k + 1;
  std::vector<long> best;
  for (long c : mults)
    for (long s = 0; s < patterns; ++s) {
      std::vector<long> flipped = scale_mod(w, c, p);
      for (int b = 0; b < k; ++b)
        if (s >> b & 1) flipped[b] = (p - flipped[b]) % p;
      for (const auto& u : code) {
        std::vector<long> cand = display_sorted(add_mod(flipped, u, p));
        int sup = support_of(cand);
        if (best.empty() || sup < best_support ||
            (sup == best_support && cand < best)) {
          best_support = sup;
          best = std::move(cand);
        }
      }
    }
  return best;
}

std::string word_name(int p, const std::vector<long>& w) {
  std::string s = "H/" + std::to_string(p);
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    s += " + ";
    if (w[i] > 1) s += std::to_string(w[i]) + " ";
    s += "d" + std::to_string(i + 1);
  }
  return s;
}

std::string exponent_name(int p, const std::vector<Int>& e) {
  std::string s = "H/" + std::to_string(p);
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    s += " + ";
    if (e[i] > 1) s += e[i].get_str() + " ";
    s += "g" + std::to_string(i + 1);
  }
  return s;
}

bool exponents_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Int> prime_factors(Int m) {
  std::vector<Int> out;
  Int f = 2;
  while (f * f <= m) {
    if (m % f == 0) {
      out.push_back(f);
      do m /= f;
      while (m % f == 0);
    }
    f += f == 2 ? 1 : 2;
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

ExtensionClassification classify_extensions(
    const PolarizedExtensionProblem& pr) {
  validate_problem(pr);
  ExtensionClassification out;
  out.dsq = pr.dsq;
  out.prime = pr.prime;
  out.divides = pr.dsq % pr.prime == 0;
  if (!out.divides) {
    out.note = "index does not divide H^2: only the trivial extension";
    return out;
  }
  DiscGroup dn(pr.n.result);
  Int pp = Int(pr.prime) * pr.prime;
  Rat shift(pr.dsq, pp);
  shift.canonicalize();
  std::vector<RatVec> adm;
  for (const RatVec& x : dn.all_elements()) {
    if (dn.element_order(x) != pr.prime) continue;
    Rat v2 = shift + dn.q_value(x);
    if (in_two_z(v2)) adm.push_back(x);
  }
  out.admissible = static_cast<long>(adm.size());
  if (adm.empty()) {
    out.note = "no admissible glue class";
    return out;
  }

  BlockLayout bl = base_blocks(pr.n.base.gram);
  bool words = bl.all_a;
  std::set<std::vector<long>> code;
  std::vector<std::vector<long>> code_list;
  if (words)
    for (const RatVec& g : glue_subgroup(pr.n.base, pr.n.glue)) {
      std::vector<long> w;
      if (!word_of(bl, g, &w)) {
        words = false;
        break;
      }
      code.insert(w);
      code_list.push_back(w);
    }
  std::vector<std::vector<long>> adm_words(adm.size());
  if (words)
    for (size_t i = 0; i < adm.size(); ++i) {
      RatVec base = to_base_coords(pr.n, adm[i]);
      for (Rat& c : base) c = frac1(c);
      if (!word_of(bl, base, &adm_words[i])) {
        words = false;
        break;
      }
    }

  bool uniform = words;
  for (int s : bl.size) uniform = uniform && s == pr.prime - 1;
  bool merge = uniform && perm_invariant(code);
  bool flips = merge && pr.prime > 2 && flip_invariant(code, pr.prime);

  if (merge) {
    std::map<std::vector<long>, long> orbits;
    for (const std::vector<long>& w : adm_words)
      ++orbits[canonical_word(w, code_list, pr.prime, flips)];
    for (const auto& [w, count] : orbits) {
      ExtensionClass c;
      c.word = w;
      c.support = support_of(w);
      c.orbit = count;
      RatVec base(pr.n.base.rank(), Rat(0));
      for (size_t b = 0; b < w.size(); ++b) {
        int off = bl.offset[b], n = bl.size[b];
        for (int j = 0; j < n; ++j) {
          Int num = Int(w[b]) * (j + 1);
          Rat t(num, Int(n + 1));
          t.canonicalize();
          base[off + j] = frac1(t);
        }
      }
      c.mu = dn.reduce(to_overlattice_coords(pr.n, base));
      c.q = dn.q_value(c.mu);
      c.exponents = dn.exponents_of(c.mu);
      c.name = word_name(pr.prime, w);
      Rat v2 = shift + c.q;
      if (dn.element_order(c.mu) != pr.prime || !in_two_z(v2))
        throw std::runtime_error("canonical representative not admissible");
      out.classes.push_back(std::move(c));
    }
    out.normalized = true;
    std::sort(out.classes.begin(), out.classes.end(),
              [](const ExtensionClass& a, const ExtensionClass& b) {
                if (a.support != b.support) return a.support < b.support;
                return a.word < b.word;
              });
  } else {
    for (size_t i = 0; i < adm.size(); ++i) {
      ExtensionClass c;
      c.mu = adm[i];
      if (words) {
        c.word = adm_words[i];
        c.support = support_of(c.word);
      }
      c.q = dn.q_value(c.mu);
      c.exponents = dn.exponents_of(c.mu);
      c.name = words ? word_name(pr.prime, c.word)
                     : exponent_name(pr.prime, c.exponents);
      out.classes.push_back(std::move(c));
    }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const ExtensionClass& a, const ExtensionClass& b) {
                return exponents_less(a.exponents, b.exponents);
              });
    out.note = words ? "glue code symmetries not established: one row per "
                       "admissible class"
                     : "base blocks not all of type A: one row per "
                       "admissible class";
  }
  return out;
}

bool evenness_congruence(const PolarizedExtensionProblem& pr, int support) {
  validate_problem(pr);
  if (pr.prime != 3)
    throw std::invalid_argument(
        "evenness congruence: stated for index 3 word classes");
  Int d = pr.dsq / 2;
  Int t = d - 3 * support;
  Int m = t % 9;
  if (m < 0) m += 9;
  return m == 0;
}

ExtensionLattice build_polarized_extension(const PolarizedExtensionProblem& pr,
                                           const RatVec& mu) {
  validate_problem(pr);
  int r = pr.n.result.rank();
  if (static_cast<int>(mu.size()) != r)
    throw std::invalid_argument("extension glue: coordinate count mismatch");
  int p = pr.prime;
  // Rows of [p I; (1, p mu)] span p times the extension in the coordinates
  // of Z H (+) N, so the Hermite basis B gives the extension as B/p.
  IntMat gen(r + 2, r + 1);
  for (int i = 0; i <= r; ++i) gen.at(i, i) = p;
  gen.at(r + 1, 0) = 1;
  for (int i = 0; i < r; ++i) {
    Rat s = mu[i] * p;
    if (s.get_den() != 1)
      throw std::invalid_argument(
          "extension glue: class order does not divide the index");
    gen.at(r + 1, i + 1) = s.get_num();
  }
  IntMat basis = hermite_row_basis(gen);
  if (basis.rows() != r + 1)
    throw std::runtime_error("extension basis not full rank");
  IntMat g(r + 1, r + 1);
  g.at(0, 0) = pr.dsq;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) g.at(i + 1, j + 1) = pr.n.result.gram.at(i, j);
  IntMat scaled = basis * g * basis.transposed();
  Int pp = Int(p) * p;
  ExtensionLattice out;
  out.gram = IntMat(r + 1, r + 1);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j) {
      Int q, rem;
      mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), scaled.at(i, j).get_mpz_t(),
                  pp.get_mpz_t());
      if (rem != 0)
        throw std::invalid_argument(
            "extension glue: class does not give an integral extension");
      out.gram.at(i, j) = q;
    }
  out.even = is_even_gram(out.gram);
  if (!out.even)
    throw std::invalid_argument(
        "extension glue: v^2 is odd, no even extension");
  out.det = determinant(out.gram);
  Int want = pr.dsq * lattice_det(pr.n.result);
  Int got = out.det * pp;
  if (got != want)
    throw std::runtime_error("extension determinant relation violated");
  RatMat binv = rat_inverse(to_rat(basis));
  out.n_inclusion = IntMat(r, r + 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= r; ++j) {
      Rat t = binv.at(i + 1, j) * p;
      if (t.get_den() != 1)
        throw std::runtime_error("lattice vector escaped the extension");
      out.n_inclusion.at(i, j) = t.get_num();
    }
  IntMat back = out.n_inclusion * out.gram * out.n_inclusion.transposed();
  if (!(back == pr.n.result.gram))
    throw std::runtime_error("extension inclusion does not preserve the gram");
  out.n_primitive =
      smith_normal_form(out.n_inclusion).nontrivial_factors().empty();
  Int content = 0;
  for (int j = 0; j <= r; ++j) {
    Rat t = binv.at(0, j) * p;
    if (t.get_den() != 1)
      throw std::runtime_error("lattice vector escaped the extension");
    Int a = abs(t.get_num());
    content = gcd(content, a);
  }
  out.h_primitive = content == 1;
  out.disc = smith_normal_form(out.gram).nontrivial_factors();
  return out;
}

FeasibilityReport polarization_feasibility(const Overlattice& n,
                                           const Int& dsq, int max_rank) {
  if (dsq <= 0 || dsq % 2 != 0)
    throw std::invalid_argument(
        "polarization degree H^2 must be positive and even");
  int r = n.result.rank();
  FeasibilityReport rep;
  rep.dsq = dsq;
  rep.rank = r + 1;
  rep.max_rank = max_rank;
  int room = max_rank - rep.rank;
  IntMat g(r + 1, r + 1);
  g.at(0, 0) = dsq;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) g.at(i + 1, j + 1) = n.result.gram.at(i, j);
  FeasibilityRow triv;
  triv.prime = 1;
  triv.cls.name = "H";
  triv.cls.q = Rat(0);
  triv.disc = smith_normal_form(g).nontrivial_factors();
  triv.det = determinant(g);
  triv.length = static_cast<int>(triv.disc.size());
  triv.even = is_even_gram(g);
  triv.n_primitive = true;
  triv.embeddable = room >= 0 && triv.length <= room;
  rep.rows.push_back(std::move(triv));
  Int disc_order = DiscGroup(n.result).order();
  for (const Int& f : prime_factors(dsq)) {
    if (disc_order % f != 0) continue;
    int p = static_cast<int>(f.get_si());
    PolarizedExtensionProblem problem{n, dsq, p};
    ExtensionClassification cl = classify_extensions(problem);
    for (const ExtensionClass& c : cl.classes) {
      ExtensionLattice ext = build_polarized_extension(problem, c.mu);
      FeasibilityRow row;
      row.prime = p;
      row.cls = c;
      row.disc = ext.disc;
      row.det = ext.det;
      row.length = static_cast<int>(ext.disc.size());
      row.even = ext.even;
      row.n_primitive = ext.n_primitive;
      row.embeddable = room >= 0 && row.length <= room;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

}  // namespace klat
