#include "picodim/symfunc.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace picodim {

namespace {

mpz_class factorial_mpz(std::size_t m) {
  mpz_class f = 1;
  for (std::size_t k = 2; k <= m; ++k) f *= static_cast<unsigned long>(k);
  return f;
}

unsigned long long to_ull_checked(const mpz_class& z, const char* what) {
  if (sgn(z) < 0 || !z.fits_ulong_p())
    throw std::overflow_error(std::string(what) + ": value does not fit a machine word");
  return z.get_ui();
}

mpz_class pow_mpz(std::size_t base, std::size_t exp) {
  mpz_class b = static_cast<unsigned long>(base);
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

}  // namespace

Partition::Partition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0) throw std::invalid_argument("Partition: parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
  }
}

std::size_t Partition::weight() const {
  std::size_t w = 0;
  for (std::size_t p : parts_) w += p;
  return w;
}

Partition Partition::conjugate() const {
  if (parts_.empty()) return Partition();
  std::vector<std::size_t> conj(parts_[0], 0);
  for (std::size_t p : parts_)
    for (std::size_t j = 0; j < p; ++j) ++conj[j];
  return Partition(std::move(conj));
}

std::size_t Partition::cells_below_row(std::size_t d) const {
  std::size_t w = 0;
  for (std::size_t i = d; i < parts_.size(); ++i) w += parts_[i];
  return w;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ',';
    os << parts_[i];
  }
  os << ')';
  return os.str();
}

namespace {

void gen_partitions(std::size_t m, std::size_t maxpart, std::vector<std::size_t>& cur,
                    std::vector<Partition>& out) {
  if (m == 0) {
    out.push_back(Partition(cur));
    return;
  }
  for (std::size_t k = std::min(m, maxpart); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(m - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(std::size_t m) {
  std::vector<Partition> out;
  std::vector<std::size_t> cur;
  gen_partitions(m, m, cur, out);
  return out;
}

unsigned long long hook_dimension(const Partition& lambda) {
  std::size_t m = lambda.weight();
  Partition conj = lambda.conjugate();
  mpz_class hooks = 1;
  for (std::size_t i = 0; i < lambda.height(); ++i)
    for (std::size_t j = 0; j < lambda.part(i); ++j) {
      std::size_t arm = lambda.part(i) - j - 1;
      std::size_t leg = conj.part(j) - i - 1;
      hooks *= static_cast<unsigned long>(arm + leg + 1);
    }
  mpz_class dim = factorial_mpz(m) / hooks;
  return to_ull_checked(dim, "hook_dimension");
}

namespace {

unsigned long long syt_rec(std::vector<std::size_t>& filled,
                           const std::vector<std::size_t>& shape, std::size_t placed,
                           std::size_t m) {
  if (placed == m) return 1;
  unsigned long long total = 0;
  for (std::size_t r = 0; r < shape.size(); ++r) {
    if (filled[r] == shape[r]) continue;
    if (r > 0 && filled[r - 1] <= filled[r]) continue;
    ++filled[r];
    total += syt_rec(filled, shape, placed + 1, m);
    --filled[r];
  }
  return total;
}

}  // namespace

unsigned long long standard_tableau_count(const Partition& shape) {
  std::vector<std::size_t> filled(shape.height(), 0);
  std::vector<std::size_t> parts = shape.parts();
  return syt_rec(filled, parts, 0, shape.weight());
}

unsigned long long centralizer_order(const Partition& cls) {
  mpz_class z = 1;
  const auto& parts = cls.parts();
  std::size_t i = 0;
  while (i < parts.size()) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    std::size_t mult = j - i;
    z *= pow_mpz(parts[i], mult) * factorial_mpz(mult);
    i = j;
  }
  return to_ull_checked(z, "centralizer_order");
}

unsigned long long class_size(const Partition& cls) {
  mpz_class n = factorial_mpz(cls.weight());
  mpz_class z = static_cast<unsigned long>(centralizer_order(cls));
  return to_ull_checked(n / z, "class_size");
}

namespace {

// Recursion on the first-column hook encoding: a partition padded to length l
// becomes the strictly decreasing set {lambda_i + l - 1 - i}. Stripping a
// border strip of size r moves one member b to b - r; the strip height is the
// number of members strictly between them.
Rational mn_eval(const std::vector<std::size_t>& lam, const std::vector<std::size_t>& cls) {
  if (lam.empty()) return Rational(1);

  static std::mutex cache_mutex;
  static std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, Rational>
      cache;

  auto key = std::make_pair(lam, cls);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  std::size_t r = cls[0];
  std::vector<std::size_t> rest(cls.begin() + 1, cls.end());

  std::size_t l = lam.size();
  std::vector<std::size_t> betas(l);
  for (std::size_t i = 0; i < l; ++i) betas[i] = lam[i] + (l - 1 - i);

  Rational total(0);
  for (std::size_t i = 0; i < l; ++i) {
    if (betas[i] < r) continue;
    std::size_t target = betas[i] - r;
    bool occupied = false;
    std::size_t height = 0;
    for (std::size_t j = 0; j < l; ++j) {
      if (j == i) continue;
      if (betas[j] == target) {
        occupied = true;
        break;
      }
      if (betas[j] > target && betas[j] < betas[i]) ++height;
    }
    if (occupied) continue;

    std::vector<std::size_t> nb = betas;
    nb[i] = target;
    std::sort(nb.begin(), nb.end(), std::greater<std::size_t>());
    std::vector<std::size_t> nl;
    for (std::size_t k = 0; k < l; ++k) {
      std::size_t part = nb[k] - (l - 1 - k);
      if (part > 0) nl.push_back(part);
    }
    Rational term = mn_eval(nl, rest);
    total += (height % 2 == 0) ? term : -term;
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(std::move(key), total);
  return total;
}

}  // namespace

Rational mn_character(const Partition& lambda, const Partition& cls) {
  if (lambda.weight() != cls.weight())
    throw std::invalid_argument("mn_character: shape and class have different weights");
  return mn_eval(lambda.parts(), cls.parts());
}

Perm perm_identity(std::size_t m) {
  Perm p(m);
  for (std::size_t i = 0; i < m; ++i) p[i] = i;
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("perm_compose: size mismatch");
  Perm c(a.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm inv(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) inv[a[i]] = i;
  return inv;
}

int perm_sign(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

std::vector<Perm> all_permutations(std::size_t m) {
  std::vector<Perm> out;
  Perm p = perm_identity(m);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm class_representative(const Partition& cls) {
  Perm p(cls.weight());
  std::size_t start = 0;
  for (std::size_t len : cls.parts()) {
    for (std::size_t k = 0; k < len; ++k) p[start + k] = start + (k + 1) % len;
    start += len;
  }
  return p;
}

Partition cycle_type(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<std::size_t> lens;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end(), std::greater<std::size_t>());
  return Partition(std::move(lens));
}

Tableau::Tableau(Partition shape_in, std::vector<std::vector<std::size_t>> rows_in)
    : shape(std::move(shape_in)), rows(std::move(rows_in)) {
  if (rows.size() != shape.height())
    throw std::invalid_argument("Tableau: row count does not match shape");
  std::size_t m = shape.weight();
  std::vector<bool> seen(m + 1, false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != shape.part(i))
      throw std::invalid_argument("Tableau: row length does not match shape");
    for (std::size_t e : rows[i]) {
      if (e < 1 || e > m || seen[e])
        throw std::invalid_argument("Tableau: filling is not a bijection onto 1..m");
      seen[e] = true;
    }
  }
}

Tableau Tableau::canonical(const Partition& shape) {
  std::vector<std::vector<std::size_t>> rows;
  std::size_t next = 1;
  for (std::size_t i = 0; i < shape.height(); ++i) {
    std::vector<std::size_t> row(shape.part(i));
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = next++;
    rows.push_back(std::move(row));
  }
  return Tableau(shape, std::move(rows));
}

std::vector<std::size_t> Tableau::column(std::size_t j) const {
  std::vector<std::size_t> col;
  for (const auto& row : rows)
    if (j < row.size()) col.push_back(row[j]);
  return col;
}

GroupAlgebraElement GroupAlgebraElement::zero(std::size_t m) {
  GroupAlgebraElement g;
  g.m = m;
  return g;
}

GroupAlgebraElement GroupAlgebraElement::unit(std::size_t m) {
  GroupAlgebraElement g;
  g.m = m;
  g.support.emplace(perm_identity(m), Rational(1));
  return g;
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement& o) const {
  if (m != o.m) throw std::invalid_argument("GroupAlgebraElement: degree mismatch");
  GroupAlgebraElement out = *this;
  for (const auto& [perm, c] : o.support) {
    auto it = out.support.find(perm);
    if (it == out.support.end()) {
      out.support.emplace(perm, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) out.support.erase(it);
    }
  }
  return out;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement& o) const {
  if (m != o.m) throw std::invalid_argument("GroupAlgebraElement: degree mismatch");
  GroupAlgebraElement out = zero(m);
  for (const auto& [a, ca] : support)
    for (const auto& [b, cb] : o.support) {
      Perm ab = perm_compose(a, b);
      auto it = out.support.find(ab);
      if (it == out.support.end()) {
        out.support.emplace(std::move(ab), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) out.support.erase(it);
      }
    }
  return out;
}

GroupAlgebraElement GroupAlgebraElement::operator*(const Rational& c) const {
  GroupAlgebraElement out = zero(m);
  if (c.is_zero()) return out;
  for (const auto& [perm, coeff] : support) out.support.emplace(perm, coeff * c);
  return out;
}

bool GroupAlgebraElement::operator==(const GroupAlgebraElement& o) const {
  return m == o.m && support == o.support;
}

namespace {

// all permutations of {0..m-1} that fix everything outside `points` (0-based)
std::vector<Perm> set_permutations(const std::vector<std::size_t>& points, std::size_t m) {
  std::vector<std::size_t> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Perm> out;
  std::vector<std::size_t> image = sorted;
  do {
    Perm p = perm_identity(m);
    for (std::size_t k = 0; k < sorted.size(); ++k) p[sorted[k]] = image[k];
    out.push_back(std::move(p));
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

std::vector<Perm> product_over_blocks(const std::vector<std::vector<std::size_t>>& blocks,
                                      std::size_t m) {
  std::vector<Perm> result{perm_identity(m)};
  for (const auto& block : blocks) {
    if (block.size() < 2) continue;
    std::vector<Perm> factors = set_permutations(block, m);
    std::vector<Perm> next;
    next.reserve(result.size() * factors.size());
    for (const auto& r : result)
      for (const auto& f : factors) next.push_back(perm_compose(r, f));
    result = std::move(next);
  }
  return result;
}

std::vector<std::size_t> to_points(const std::vector<std::size_t>& entries) {
  std::vector<std::size_t> pts;
  pts.reserve(entries.size());
  for (std::size_t e : entries) pts.push_back(e - 1);
  return pts;
}

}  // namespace

std::pair<std::vector<Perm>, std::vector<Perm>> stabilizers(const Tableau& T,
                                                            std::size_t cap) {
  std::size_t m = T.weight();
  if (m > cap) {
    std::ostringstream os;
    os << "stabilizers: weight " << m << " exceeds cap " << cap;
    throw std::invalid_argument(os.str());
  }
  std::vector<std::vector<std::size_t>> row_blocks;
  for (const auto& row : T.rows) row_blocks.push_back(to_points(row));
  std::vector<std::vector<std::size_t>> col_blocks;
  std::size_t width = T.shape.part(0);
  for (std::size_t j = 0; j < width; ++j) col_blocks.push_back(to_points(T.column(j)));
  return {product_over_blocks(row_blocks, m), product_over_blocks(col_blocks, m)};
}

GroupAlgebraElement young_symmetrizer(const Tableau& T, std::size_t cap) {
  std::size_t m = T.weight();
  if (m > cap) {
    std::ostringstream os;
    os << "young_symmetrizer: weight " << m << " exceeds cap " << cap;
    throw std::invalid_argument(os.str());
  }
  auto [rows, cols] = stabilizers(T, cap);
  GroupAlgebraElement e = GroupAlgebraElement::zero(m);
  for (const auto& sigma : rows)
    for (const auto& tau : cols) {
      Perm st = perm_compose(sigma, tau);
      Rational c(perm_sign(tau));
      auto it = e.support.find(st);
      if (it == e.support.end()) {
        e.support.emplace(std::move(st), c);
      } else {
        it->second += c;
        if (it->second.is_zero()) e.support.erase(it);
      }
    }
  return e;
}

MultiPoly apply_permutation(const Perm& g, const MultiPoly& p,
                            const std::vector<Variable>& on) {
  if (g.size() != on.size())
    throw std::invalid_argument("apply_permutation: permutation and variable list disagree");
  std::vector<bool> hit(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] >= g.size() || hit[g[i]])
      throw std::invalid_argument("apply_permutation: not a permutation");
    hit[g[i]] = true;
  }
  const auto& vars = p.variables();
  std::map<std::string, Variable> images;
  for (std::size_t i = 0; i < on.size(); ++i) {
    if (!std::binary_search(vars.begin(), vars.end(), on[i]))
      throw std::invalid_argument("apply_permutation: variable " + on[i].name +
                                  " does not occur in the polynomial");
    if (!images.emplace(on[i].name, on[g[i]]).second)
      throw std::invalid_argument("apply_permutation: repeated variable " + on[i].name);
  }
  return substitute(p, images);
}

MultiPoly apply_group_element(const GroupAlgebraElement& g, const MultiPoly& p,
                              const std::vector<Variable>& on) {
  if (g.m != on.size())
    throw std::invalid_argument("apply_group_element: degree and variable list disagree");
  MultiPoly acc = MultiPoly::zero(p.variables());
  for (const auto& [perm, coeff] : g.support)
    acc = acc + apply_permutation(perm, p, on) * coeff;
  return acc;
}

std::pair<unsigned long long, Rational> rectangular_lower_bound(std::size_t d,
                                                                std::size_t s) {
  if (d == 0 || s == 0)
    throw std::invalid_argument("rectangular_lower_bound: both sides must be positive");
  Partition nu(std::vector<std::size_t>(d, s));
  unsigned long long dim = hook_dimension(nu);
  std::size_t n_cells = d * s;
  mpz_class numer = pow_mpz(d, n_cells);
  mpz_class denom = pow_mpz(n_cells, d * (d - 1) / 2);
  return {dim, Rational(numer, denom)};
}

}  // namespace picodim
