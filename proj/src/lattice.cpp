#include "klat/lattice.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include <fstream>

#include "json.hpp"

namespace klat {

namespace {

// Fractional part in [0,1).
Rat frac_mod1(const Rat& x) {
  Int num = x.get_num(), den = x.get_den();
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Rat out(r, den);
  out.canonicalize();
  return out;
}

// Representative of x mod 2 in [0,2).
Rat frac_mod2(const Rat& x) {
  Rat h = frac_mod1(x / 2) * 2;
  return h;
}

}  // namespace

bool is_even_gram(const IntMat& gram) {
  for (int i = 0; i < gram.rows(); ++i)
    if (gram.at(i, i) % 2 != 0) return false;
  return true;
}

Lattice make_lattice(std::string name, IntMat gram,
                     std::vector<std::string> labels) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("lattice '" + name + "': gram not square");
  if (!gram.is_symmetric())
    throw std::invalid_argument("lattice '" + name + "': gram not symmetric");
  if (!is_even_gram(gram))
    throw std::invalid_argument("lattice '" + name + "': diagonal not even");
  if (!is_negative_definite(gram))
    throw std::invalid_argument("lattice '" + name +
                                "': gram not negative definite");
  if (!labels.empty() && static_cast<int>(labels.size()) != gram.rows())
    throw std::invalid_argument("lattice '" + name + "': labels/rank mismatch");
  return Lattice{std::move(name), std::move(gram), std::move(labels)};
}

Int lattice_det(const Lattice& l) { return determinant(l.gram); }

Lattice direct_sum(const Lattice& a, const Lattice& b, std::string name) {
  int n = a.rank(), m = b.rank();
  IntMat g(n + m, n + m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = a.gram.at(i, j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.at(n + i, n + j) = b.gram.at(i, j);
  std::vector<std::string> labels;
  if (!a.labels.empty() || !b.labels.empty()) {
    auto la = a.labels.empty() ? std::vector<std::string>(n) : a.labels;
    auto lb = b.labels.empty() ? std::vector<std::string>(m) : b.labels;
    labels = la;
    labels.insert(labels.end(), lb.begin(), lb.end());
  }
  if (name.empty()) name = a.name + "+" + b.name;
  return Lattice{std::move(name), std::move(g), std::move(labels)};
}

Rat inner_product(const IntMat& gram, const RatVec& x, const RatVec& y) {
  int n = gram.rows();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("inner_product: dimension mismatch");
  Rat acc(0);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rat row(0);
    for (int j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      row += Rat(gram.at(i, j)) * y[j];
    }
    acc += x[i] * row;
  }
  return acc;
}

Rat norm_of(const IntMat& gram, const RatVec& x) {
  return inner_product(gram, x, x);
}

RatMat dual_basis_matrix(const Lattice& l) { return rat_inverse(to_rat(l.gram)); }

DiscGroup::DiscGroup(const Lattice& l) : parent_(l) {
  // L^dual = G^{-1} Z^n. With U G V = D (U, V unimodular), G^{-1} Z^n =
  // V D^{-1} Z^n, so column i of V scaled by 1/d_i generates a cyclic
  // summand of order d_i in L^dual / L.
  SmithResult s = smith_normal_form(l.gram);
  int n = l.rank();
  for (int i = 0; i < n; ++i) {
    Int d = s.d.at(i, i);
    if (d == 0)
      throw std::invalid_argument("disc group: degenerate gram");
    diag_.push_back(d);
    if (d == 1) continue;
    factors_.push_back(d);
    gen_slots_.push_back(i);
    RatVec g(n);
    for (int r = 0; r < n; ++r) g[r] = frac_mod1(Rat(s.v.at(r, i), d));
    gens_.push_back(std::move(g));
  }
  v_inverse_ = rat_inverse(to_rat(s.v));
}

std::vector<Int> DiscGroup::exponents_of(const RatVec& x) const {
  if (!in_dual(x)) throw std::invalid_argument("exponents_of: x not in dual");
  // x = V D^{-1} y with y integral, so y = D V^{-1} x; exponent on the
  // nontrivial slot i is y_i mod d_i.
  int n = parent_.rank();
  std::vector<Int> out;
  for (size_t g = 0; g < gen_slots_.size(); ++g) {
    int slot = gen_slots_[g];
    Rat y(0);
    for (int j = 0; j < n; ++j) y += v_inverse_.at(slot, j) * x[j];
    y *= Rat(diag_[slot]);
    if (y.get_den() != 1)
      throw std::logic_error("exponents_of: non-integral solve");
    Int e;
    mpz_fdiv_r(e.get_mpz_t(), y.get_num().get_mpz_t(),
               diag_[slot].get_mpz_t());
    out.push_back(e);
  }
  return out;
}

Int DiscGroup::order() const {
  Int o(1);
  for (const auto& d : factors_) o *= d;
  return o;
}

RatVec DiscGroup::reduce(const RatVec& x) const {
  RatVec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = frac_mod1(x[i]);
  return out;
}

bool DiscGroup::in_dual(const RatVec& x) const {
  int n = parent_.rank();
  if (static_cast<int>(x.size()) != n) return false;
  for (int j = 0; j < n; ++j) {
    Rat acc(0);
    for (int i = 0; i < n; ++i) acc += x[i] * Rat(parent_.gram.at(i, j));
    if (acc.get_den() != 1) return false;
  }
  return true;
}

Int DiscGroup::element_order(const RatVec& x) const {
  Int o(1);
  for (const auto& c : x) {
    Int den = frac_mod1(c).get_den();
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), den.get_mpz_t());
  }
  return o;
}

Rat DiscGroup::q_value(const RatVec& x) const {
  if (!in_dual(x)) throw std::invalid_argument("q_value: x not in dual");
  return frac_mod2(norm_of(parent_.gram, x));
}

Rat DiscGroup::b_value(const RatVec& x, const RatVec& y) const {
  if (!in_dual(x) || !in_dual(y))
    throw std::invalid_argument("b_value: element not in dual");
  return frac_mod1(inner_product(parent_.gram, x, y));
}

RatVec DiscGroup::element(const std::vector<Int>& exponents) const {
  if (exponents.size() != gens_.size())
    throw std::invalid_argument("element: exponent count mismatch");
  RatVec acc(parent_.rank(), Rat(0));
  for (size_t g = 0; g < gens_.size(); ++g) {
    if (exponents[g] == 0) continue;
    Rat e(exponents[g]);
    for (int i = 0; i < parent_.rank(); ++i) acc[i] += e * gens_[g][i];
  }
  return reduce(acc);
}

std::vector<RatVec> DiscGroup::all_elements(const Int& cap) const {
  if (order() > cap)
    throw std::runtime_error("all_elements: group order exceeds cap");
  std::vector<RatVec> out;
  size_t k = factors_.size();
  std::vector<Int> exp(k, Int(0));
  while (true) {
    out.push_back(element(exp));
    size_t i = 0;
    while (i < k) {
      exp[i] += 1;
      if (exp[i] < factors_[i]) break;
      exp[i] = 0;
      ++i;
    }
    if (i == k) break;
    if (k == 0) break;
  }
  return out;
}

// ----- JSON interchange -----

namespace {

using nlohmann::json;

json gram_to_json(const IntMat& g) {
  json rows = json::array();
  for (int i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < g.cols(); ++j) {
      const Int& v = g.at(i, j);
      if (!v.fits_slong_p())
        throw std::runtime_error("gram entry exceeds json integer range");
      row.push_back(v.get_si());
    }
    rows.push_back(row);
  }
  return rows;
}

json rat_vec_to_json_obj(const RatVec& x) {
  Int den(1);
  for (const auto& c : x)
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  json num = json::array();
  for (const auto& c : x) {
    Rat scaled = c * Rat(den);
    if (scaled.get_den() != 1 || !scaled.get_num().fits_slong_p())
      throw std::runtime_error("rational vector entry out of range");
    num.push_back(scaled.get_num().get_si());
  }
  return json{{"num", num}, {"den", den.get_si()}};
}

RatVec rat_vec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw std::invalid_argument("rational vector: expected {num, den}");
  if (!j["num"].is_array() || !j["den"].is_number_integer())
    throw std::invalid_argument("rational vector: malformed num/den");
  long den = j["den"].get<long>();
  if (den <= 0) throw std::invalid_argument("rational vector: den must be > 0");
  RatVec out;
  for (const auto& e : j["num"]) {
    if (!e.is_number_integer())
      throw std::invalid_argument("rational vector: non-integer entry");
    Rat c(Int(e.get<long>()), Int(den));
    c.canonicalize();
    out.push_back(c);
  }
  return out;
}

Lattice lattice_from_json_obj(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("lattice json: not an object");
  for (const char* key : {"name", "rank", "gram"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("lattice json: missing field '") +
                                  key + "'");
  if (!j["name"].is_string())
    throw std::invalid_argument("lattice json: field 'name' must be a string");
  if (!j["rank"].is_number_integer())
    throw std::invalid_argument("lattice json: field 'rank' must be an integer");
  if (!j["gram"].is_array())
    throw std::invalid_argument("lattice json: field 'gram' must be an array");
  int rank = j["rank"].get<int>();
  if (rank < 1 || static_cast<int>(j["gram"].size()) != rank)
    throw std::invalid_argument("lattice json: rank/gram size mismatch");
  IntMat g(rank, rank);
  for (int i = 0; i < rank; ++i) {
    const auto& row = j["gram"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != rank)
      throw std::invalid_argument("lattice json: gram row " +
                                  std::to_string(i) + " has wrong length");
    for (int c = 0; c < rank; ++c) {
      if (!row[c].is_number_integer())
        throw std::invalid_argument("lattice json: gram[" + std::to_string(i) +
                                    "][" + std::to_string(c) +
                                    "] not an integer");
      g.at(i, c) = Int(row[c].get<long>());
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array())
      throw std::invalid_argument("lattice json: field 'labels' must be an array");
    for (const auto& e : j["labels"]) {
      if (!e.is_string())
        throw std::invalid_argument("lattice json: non-string label");
      labels.push_back(e.get<std::string>());
    }
  }
  return make_lattice(j["name"].get<std::string>(), std::move(g),
                      std::move(labels));
}

}  // namespace

std::string lattice_to_json(const Lattice& l) {
  json j;
  j["name"] = l.name;
  j["rank"] = l.rank();
  j["gram"] = gram_to_json(l.gram);
  if (!l.labels.empty()) j["labels"] = l.labels;
  return j.dump(2) + "\n";
}

Lattice lattice_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("lattice json: parse error: ") +
                                e.what());
  }
  return lattice_from_json_obj(j);
}

Lattice lattice_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return lattice_from_json(ss.str());
}

std::string rat_vec_to_json(const RatVec& x) {
  return rat_vec_to_json_obj(x).dump();
}

RatVec rat_vec_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("rational vector: parse error: ") +
                                e.what());
  }
  return rat_vec_from_json(j);
}

}  // namespace klat
