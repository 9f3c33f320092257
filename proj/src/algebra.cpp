#include "picodim/algebra.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace picodim {

namespace {

using Json = nlohmann::ordered_json;

SparseVec normalize_sparse(std::vector<std::pair<std::size_t, Rational>> v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& [k, c] : v) {
    if (!out.empty() && out.back().first == k)
      out.back().second += c;
    else
      out.emplace_back(k, c);
  }
  std::erase_if(out, [](const auto& p) { return p.second.is_zero(); });
  return out;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Rational& cb) {
  std::vector<std::pair<std::size_t, Rational>> acc(a.begin(), a.end());
  for (const auto& [k, c] : b) acc.emplace_back(k, c * cb);
  return normalize_sparse(std::move(acc));
}

// basis_x * v via the structure table
SparseVec mul_basis_sparse(const std::vector<SparseVec>& t, std::size_t d,
                           std::size_t x, const SparseVec& v) {
  std::vector<std::pair<std::size_t, Rational>> acc;
  for (const auto& [c, coef] : v)
    for (const auto& [k, s] : t[x * d + c]) acc.emplace_back(k, coef * s);
  return normalize_sparse(std::move(acc));
}

// v * basis_x
SparseVec mul_sparse_basis(const std::vector<SparseVec>& t, std::size_t d,
                           const SparseVec& v, std::size_t x) {
  std::vector<std::pair<std::size_t, Rational>> acc;
  for (const auto& [c, coef] : v)
    for (const auto& [k, s] : t[c * d + x]) acc.emplace_back(k, coef * s);
  return normalize_sparse(std::move(acc));
}

Rational pair_sign(Parity a, Parity b) {
  return (a == Parity::Odd && b == Parity::Odd) ? Rational(-1) : Rational(1);
}

void check_grading(const std::vector<Parity>& parity,
                   const std::vector<SparseVec>& table,
                   const std::optional<std::vector<long>>& zdeg) {
  const std::size_t d = parity.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [k, c] : table[i * d + j]) {
        (void)c;
        if (k >= d)
          throw std::invalid_argument("structure constant index out of range at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        if (parity[k] != parity[i] + parity[j])
          throw std::invalid_argument("Z2-grading violated at product (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") -> " + std::to_string(k));
        if (zdeg && (*zdeg)[k] != (*zdeg)[i] + (*zdeg)[j])
          throw std::invalid_argument("Z-grading violated at product (" + std::to_string(i) +
                                      "," + std::to_string(j) + ") -> " + std::to_string(k));
      }
}

void check_super_lie(const std::vector<Parity>& parity,
                     const std::vector<SparseVec>& table) {
  const std::size_t d = parity.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!sparse_add(table[i * d + j], table[j * d + i], pair_sign(parity[i], parity[j]))
               .empty())
        throw std::invalid_argument("super-anticommutativity fails at basis pair (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
  // graded Leibniz form: [i,[j,k]] = [[i,j],k] + (-1)^{|i||j|} [j,[i,k]]
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        SparseVec lhs = mul_basis_sparse(table, d, i, table[j * d + k]);
        SparseVec rhs = sparse_add(mul_sparse_basis(table, d, table[i * d + j], k),
                                   mul_basis_sparse(table, d, j, table[i * d + k]),
                                   pair_sign(parity[i], parity[j]));
        if (lhs != rhs)
          throw std::invalid_argument("super Jacobi identity fails at basis triple (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
      }
}

bool satisfies_super_lie(const std::vector<Parity>& parity,
                         const std::vector<SparseVec>& table) {
  try {
    check_super_lie(parity, table);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("structure constant too large for JSON");
  return z.get_si();
}

}  // namespace

GradedAlgebra::GradedAlgebra(std::string name, std::vector<Parity> parity,
                             std::vector<SparseVec> table,
                             std::optional<std::vector<long>> z_degree,
                             bool is_super_lie)
    : name_(std::move(name)),
      parity_(std::move(parity)),
      table_(std::move(table)),
      z_degree_(std::move(z_degree)),
      is_super_lie_(is_super_lie) {}

AlgebraPtr GradedAlgebra::create(std::string name, std::vector<Parity> parity,
                                 std::vector<SparseVec> table,
                                 std::optional<std::vector<long>> z_degree,
                                 bool expect_super_lie, bool validate) {
  const std::size_t d = parity.size();
  if (table.size() != d * d)
    throw std::invalid_argument("structure table must have dim*dim entries");
  if (z_degree && z_degree->size() != d)
    throw std::invalid_argument("z_degree must have one label per basis element");
  for (auto& entry : table) entry = normalize_sparse(std::move(entry));
  if (validate) {
    check_grading(parity, table, z_degree);
    if (expect_super_lie) check_super_lie(parity, table);
  }
  return AlgebraPtr(new GradedAlgebra(std::move(name), std::move(parity), std::move(table),
                                      std::move(z_degree), expect_super_lie));
}

std::vector<Rational> GradedAlgebra::product(const std::vector<Rational>& a,
                                             const std::vector<Rational>& b) const {
  const std::size_t d = dim();
  std::vector<Rational> out(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j].is_zero()) continue;
      Rational c = a[i] * b[j];
      for (const auto& [k, s] : table_[i * d + j]) out[k] += c * s;
    }
  }
  return out;
}

Element GradedAlgebra::basis_element(std::size_t i) const {
  std::vector<Rational> v(dim(), Rational(0));
  v[i] = Rational(1);
  return Element(shared_from_this(), std::move(v));
}

Element GradedAlgebra::zero() const {
  return Element(shared_from_this(), std::vector<Rational>(dim(), Rational(0)));
}

Element GradedAlgebra::element(std::vector<Rational> coords) const {
  return Element(shared_from_this(), std::move(coords));
}

Element::Element(AlgebraPtr alg, std::vector<Rational> coords)
    : alg_(std::move(alg)), coords_(std::move(coords)) {
  if (!alg_) throw std::invalid_argument("element needs an algebra");
  if (coords_.size() != alg_->dim())
    throw std::invalid_argument("coordinate vector length does not match algebra dimension");
}

bool Element::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

Element Element::even_part() const {
  std::vector<Rational> v = coords_;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (alg_->parity(i) == Parity::Odd) v[i] = Rational(0);
  return Element(alg_, std::move(v));
}

Element Element::odd_part() const {
  std::vector<Rational> v = coords_;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (alg_->parity(i) == Parity::Even) v[i] = Rational(0);
  return Element(alg_, std::move(v));
}

namespace {
void require_same(const Element& a, const Element& b) {
  if (a.algebra() != b.algebra())
    throw std::invalid_argument("elements belong to different algebras");
}
}  // namespace

Element Element::operator+(const Element& o) const {
  require_same(*this, o);
  std::vector<Rational> v = coords_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.coords_[i];
  return Element(alg_, std::move(v));
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const { return *this * Rational(-1); }

Element Element::operator*(const Rational& c) const {
  std::vector<Rational> v = coords_;
  for (auto& x : v) x *= c;
  return Element(alg_, std::move(v));
}

Element& Element::operator+=(const Element& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

bool Element::operator==(const Element& o) const {
  return alg_ == o.alg_ && coords_ == o.coords_;
}

Element bracket(const Element& a, const Element& b) {
  require_same(a, b);
  return Element(a.algebra(), a.algebra()->product(a.coords(), b.coords()));
}

AlgebraPtr superbracket_algebra(const AlgebraPtr& assoc, bool validate) {
  const std::size_t d = assoc->dim();
  if (validate)
    for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        SparseVec ij_k, i_jk;
        {
          std::vector<std::pair<std::size_t, Rational>> acc;
          for (const auto& [c, s] : assoc->product_entry(i, j))
            for (const auto& [m, u] : assoc->product_entry(c, k)) acc.emplace_back(m, s * u);
          ij_k = normalize_sparse(std::move(acc));
        }
        {
          std::vector<std::pair<std::size_t, Rational>> acc;
          for (const auto& [c, s] : assoc->product_entry(j, k))
            for (const auto& [m, u] : assoc->product_entry(i, c)) acc.emplace_back(m, s * u);
          i_jk = normalize_sparse(std::move(acc));
        }
        if (ij_k != i_jk)
          throw std::invalid_argument("input is not associative at basis triple (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
      }
  std::vector<SparseVec> table(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      table[i * d + j] =
          sparse_add(assoc->product_entry(i, j), assoc->product_entry(j, i),
                     -pair_sign(assoc->parity(i), assoc->parity(j)));
  return GradedAlgebra::create(assoc->name() + ".super", assoc->parities(), std::move(table),
                               assoc->z_degree(), true, validate);
}

Subspace::Subspace(AlgebraPtr alg) : alg_(std::move(alg)), rows_(alg_->dim()) {}

Subspace Subspace::span(AlgebraPtr alg, const std::vector<Element>& gens) {
  Subspace s(std::move(alg));
  for (const auto& g : gens) {
    if (g.algebra() != s.alg_)
      throw std::invalid_argument("generator belongs to a different algebra");
    s.rows_.insert(g.coords());
  }
  return s;
}

Subspace Subspace::full(AlgebraPtr alg) {
  Subspace s(std::move(alg));
  const std::size_t d = s.alg_->dim();
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> v(d, Rational(0));
    v[i] = Rational(1);
    s.rows_.insert(v);
  }
  return s;
}

bool Subspace::contains(const Element& e) const {
  if (e.algebra() != alg_)
    throw std::invalid_argument("element belongs to a different algebra");
  return rows_.contains(e.coords());
}

std::vector<Element> Subspace::basis_elements() const {
  std::vector<Element> out;
  out.reserve(rows_.rank());
  for (const auto& r : rows_.basis()) out.push_back(Element(alg_, r));
  return out;
}

bool Subspace::operator==(const Subspace& o) const {
  return alg_ == o.alg_ && rows_.to_matrix() == o.rows_.to_matrix();
}

Subspace bracket_span(const Subspace& a, const Subspace& b) {
  if (a.algebra() != b.algebra())
    throw std::invalid_argument("subspaces belong to different algebras");
  Subspace out(a.algebra());
  for (const auto& x : a.rows_.basis())
    for (const auto& y : b.rows_.basis()) out.rows_.insert(a.algebra()->product(x, y));
  return out;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.algebra() != b.algebra())
    throw std::invalid_argument("subspaces belong to different algebras");
  Subspace out(a.algebra());
  for (const auto& x : a.rows_.basis()) out.rows_.insert(x);
  for (const auto& y : b.rows_.basis()) out.rows_.insert(y);
  return out;
}

namespace {
void require_super_lie(const AlgebraPtr& alg, const char* op) {
  if (!alg->is_super_lie())
    throw std::invalid_argument(std::string(op) + " requires a super Lie algebra");
}
}  // namespace

std::vector<Subspace> derived_series(const AlgebraPtr& alg) {
  require_super_lie(alg, "derived_series");
  std::vector<Subspace> chain{Subspace::full(alg)};
  while (!chain.back().is_zero()) {
    Subspace next = bracket_span(chain.back(), chain.back());
    if (next == chain.back()) break;
    chain.push_back(next);
  }
  return chain;
}

std::vector<Subspace> power_series(const Subspace& sub) {
  require_super_lie(sub.algebra(), "power_series");
  if (!(sum(bracket_span(sub, sub), sub) == sub))
    throw std::invalid_argument("power_series requires a subalgebra or ideal");
  std::vector<Subspace> chain{sub};
  while (!chain.back().is_zero()) {
    const std::size_t k1 = chain.size() + 1;  // power being assembled
    Subspace next(sub.algebra());
    for (std::size_t a = 1; a < k1; ++a)
      next = sum(next, bracket_span(chain[a - 1], chain[k1 - a - 1]));
    if (next == chain.back()) break;
    chain.push_back(next);
  }
  return chain;
}

std::vector<Subspace> left_normed_power_series(const Subspace& sub) {
  require_super_lie(sub.algebra(), "left_normed_power_series");
  std::vector<Subspace> chain{sub};
  while (!chain.back().is_zero()) {
    Subspace next = bracket_span(chain.back(), chain.front());
    if (next == chain.back()) break;
    chain.push_back(next);
  }
  return chain;
}

Matrix ad_operator(const Element& x) {
  require_super_lie(x.algebra(), "ad_operator");
  const std::size_t d = x.algebra()->dim();
  Matrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    // column j: [basis_j, x]
    std::vector<Rational> col(d, Rational(0));
    for (std::size_t c = 0; c < d; ++c) {
      if (x[c].is_zero()) continue;
      for (const auto& [k, s] : x.algebra()->product_entry(j, c)) col[k] += x[c] * s;
    }
    for (std::size_t i = 0; i < d; ++i) m.at(i, j) = col[i];
  }
  return m;
}

Subspace ideal_generated(const AlgebraPtr& alg, const std::vector<Element>& gens) {
  require_super_lie(alg, "ideal_generated");
  const std::size_t d = alg->dim();
  RowSpace rs(d);
  std::deque<std::vector<Rational>> work;
  std::vector<Element> accumulated;
  for (const auto& g : gens) {
    if (g.algebra() != alg)
      throw std::invalid_argument("generator belongs to a different algebra");
    if (rs.insert(g.coords())) {
      work.push_back(g.coords());
      accumulated.push_back(g);
    }
  }
  // super-anticommutativity makes right-bracketing closure two-sided
  while (!work.empty()) {
    std::vector<Rational> v = std::move(work.front());
    work.pop_front();
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> w(d, Rational(0));
      bool nz = false;
      for (std::size_t c = 0; c < d; ++c) {
        if (v[c].is_zero()) continue;
        for (const auto& [k, s] : alg->product_entry(c, j)) {
          w[k] += v[c] * s;
          nz = true;
        }
      }
      if (!nz) continue;
      if (rs.insert(w)) {
        accumulated.push_back(alg->element(w));
        work.push_back(std::move(w));
      }
    }
  }
  return Subspace::span(alg, accumulated);
}

std::string algebra_to_json_string(const GradedAlgebra& alg) {
  Json j;
  j["name"] = alg.name();
  j["dim"] = alg.dim();
  Json par = Json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i) par.push_back(static_cast<int>(alg.parity(i)));
  j["parity"] = par;
  if (alg.z_degree()) j["z_degree"] = *alg.z_degree();
  Json st = Json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t jj = 0; jj < alg.dim(); ++jj) {
      const SparseVec& e = alg.product_entry(i, jj);
      if (e.empty()) continue;
      Json terms = Json::array();
      for (const auto& [k, c] : e)
        terms.push_back(Json::array({k, to_ll(c.num()), to_ll(c.den())}));
      st.push_back(Json::array({i, jj, std::move(terms)}));
    }
  j["structure"] = std::move(st);
  return j.dump(2) + "\n";
}

AlgebraPtr algebra_from_json_string(const std::string& text) {
  Json j = Json::parse(text);
  const std::size_t d = j.at("dim").get<std::size_t>();
  std::vector<Parity> parity;
  for (const auto& p : j.at("parity")) {
    int v = p.get<int>();
    if (v != 0 && v != 1) throw std::invalid_argument("parity entries must be 0 or 1");
    parity.push_back(static_cast<Parity>(v));
  }
  if (parity.size() != d) throw std::invalid_argument("parity length does not match dim");
  std::optional<std::vector<long>> zdeg;
  if (j.contains("z_degree")) zdeg = j.at("z_degree").get<std::vector<long>>();
  std::vector<SparseVec> table(d * d);
  for (const auto& row : j.at("structure")) {
    const std::size_t i = row.at(0).get<std::size_t>();
    const std::size_t jj = row.at(1).get<std::size_t>();
    if (i >= d || jj >= d) throw std::invalid_argument("structure row index out of range");
    SparseVec e;
    for (const auto& term : row.at(2))
      e.emplace_back(term.at(0).get<std::size_t>(),
                     Rational(mpz_class(term.at(1).get<long>()),
                              mpz_class(term.at(2).get<long>())));
    table[i * d + jj] = normalize_sparse(std::move(e));
  }
  bool super = satisfies_super_lie(parity, table);
  return GradedAlgebra::create(j.at("name").get<std::string>(), std::move(parity),
                               std::move(table), std::move(zdeg), super, true);
}

void save_algebra(const GradedAlgebra& alg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << algebra_to_json_string(alg);
}

AlgebraPtr load_algebra(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return algebra_from_json_string(ss.str());
}

}  // namespace picodim
