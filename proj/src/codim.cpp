#include "picodim/codim.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "picodim/witness.hpp"

namespace picodim {

namespace {

using SRow = std::vector<std::pair<long long, Rational>>;

// a -= c * b, both sorted by column
void axpy_into(SRow& a, const SRow& b, const Rational& c) {
  SRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Rational v = -(c * b[j].second);
      if (!v.is_zero()) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      Rational v = a[i].second - c * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

// Row space in echelon form: leading columns strictly increasing, leading
// coefficients 1. Insertion reduces against the basis; coords() recovers the
// coefficients of a member vector over the stored rows.
class SparseSpace {
public:
  bool insert(SRow row) {
    while (!row.empty()) {
      long long lead = row.front().first;
      auto it = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
      std::size_t idx = static_cast<std::size_t>(it - pivots_.begin());
      if (it != pivots_.end() && *it == lead) {
        axpy_into(row, rows_[idx], row.front().second);
      } else {
        Rational inv = Rational(1) / row.front().second;
        for (auto& e : row) e.second *= inv;
        rows_.insert(rows_.begin() + idx, std::move(row));
        pivots_.insert(it, lead);
        return true;
      }
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<SRow>& rows() const { return rows_; }

  std::vector<Rational> coords(SRow v) const {
    std::vector<Rational> alpha(rows_.size(), Rational(0));
    while (!v.empty()) {
      long long lead = v.front().first;
      auto it = std::lower_bound(pivots_.begin(), pivots_.end(), lead);
      if (it == pivots_.end() || *it != lead)
        throw std::logic_error("evaluation space: vector escapes the span");
      std::size_t idx = static_cast<std::size_t>(it - pivots_.begin());
      alpha[idx] = v.front().second;
      axpy_into(v, rows_[idx], alpha[idx]);
    }
    return alpha;
  }

private:
  std::vector<SRow> rows_;
  std::vector<long long> pivots_;
};

unsigned long long factorial_u(std::size_t n) {
  unsigned long long f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

unsigned long long binom_u(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  unsigned long long r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Row space of the evaluation matrix for the (k, m) sector, along with the
// substitution bookkeeping needed to act on its columns.
struct SectorSpace {
  std::size_t k = 0, m = 0;
  std::size_t dim = 0;
  std::size_t d0 = 0, d1 = 0;  // even/odd basis counts
  SparseSpace space;
};

// All left-normed words at one substitution tuple, by depth-first extension;
// a vanishing prefix skips its whole subtree but still advances the word
// counter so row indices stay aligned across tuples.
struct Walker {
  const GradedAlgebra* alg = nullptr;
  std::size_t n = 0;
  std::vector<std::size_t> slot_basis;
  std::vector<bool> used;
  std::vector<unsigned long long> fact;
  std::vector<SRow>* rows = nullptr;
  long long col_base = 0;
  std::size_t word = 0;
  std::vector<Rational> scratch;
  std::vector<std::size_t> touched;

  SparseVec bracket_with(const SparseVec& cur, std::size_t j) {
    for (const auto& [i, v] : cur)
      for (const auto& [idx, c] : alg->product_entry(i, j)) {
        if (scratch[idx].is_zero()) touched.push_back(idx);
        scratch[idx] += v * c;
      }
    std::sort(touched.begin(), touched.end());
    SparseVec out;
    out.reserve(touched.size());
    for (std::size_t idx : touched) {
      if (!scratch[idx].is_zero()) out.emplace_back(idx, scratch[idx]);
      scratch[idx] = Rational(0);
    }
    touched.clear();
    return out;
  }

  void walk(const SparseVec& cur, std::size_t depth) {
    if (depth == n) {
      SRow& row = (*rows)[word];
      for (const auto& [idx, v] : cur)
        row.emplace_back(col_base + static_cast<long long>(idx), v);
      ++word;
      return;
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (used[s]) continue;
      used[s] = true;
      if (depth == 0) {
        SparseVec unit{{slot_basis[s], Rational(1)}};
        walk(unit, 1);
      } else {
        SparseVec next = bracket_with(cur, slot_basis[s]);
        if (next.empty())
          word += fact[n - depth - 1];
        else
          walk(next, depth + 1);
      }
      used[s] = false;
    }
  }
};

SectorSpace build_sector_space(const AlgebraPtr& alg, std::size_t k, std::size_t m) {
  SectorSpace ss;
  ss.k = k;
  ss.m = m;
  ss.dim = alg->dim();

  std::vector<std::size_t> even_basis, odd_basis;
  for (std::size_t i = 0; i < alg->dim(); ++i)
    (alg->parity(i) == Parity::Even ? even_basis : odd_basis).push_back(i);
  ss.d0 = even_basis.size();
  ss.d1 = odd_basis.size();

  std::size_t n = k + m;
  if (n == 0) return ss;
  if ((k > 0 && ss.d0 == 0) || (m > 0 && ss.d1 == 0)) return ss;

  Walker w;
  w.alg = alg.get();
  w.n = n;
  w.slot_basis.assign(n, 0);
  w.used.assign(n, false);
  w.fact.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) w.fact[i] = factorial_u(i);
  w.scratch.assign(alg->dim(), Rational(0));

  std::vector<SRow> rows(w.fact[n]);
  w.rows = &rows;

  // odometer over tuple digits, slot 0 most significant
  std::vector<std::size_t> digits(n, 0);
  auto range = [&](std::size_t s) { return s < k ? ss.d0 : ss.d1; };
  unsigned long long tuple_rank = 0;
  bool done = false;
  while (!done) {
    for (std::size_t s = 0; s < n; ++s)
      w.slot_basis[s] = (s < k) ? even_basis[digits[s]] : odd_basis[digits[s]];
    w.col_base = static_cast<long long>(tuple_rank * ss.dim);
    w.word = 0;
    w.walk(SparseVec{}, 0);

    ++tuple_rank;
    std::size_t s = n;
    while (s > 0) {
      --s;
      if (++digits[s] < range(s)) break;
      digits[s] = 0;
      if (s == 0) done = true;
    }
  }

  for (auto& row : rows)
    if (!row.empty()) ss.space.insert(std::move(row));
  return ss;
}

std::string cost_note(const AlgebraPtr& alg, std::size_t k, std::size_t m) {
  std::size_t d0 = 0, d1 = 0;
  for (std::size_t i = 0; i < alg->dim(); ++i)
    (alg->parity(i) == Parity::Even ? d0 : d1) += 1;
  double words = 1;
  for (std::size_t i = 2; i <= k + m; ++i) words *= static_cast<double>(i);
  double tuples = std::pow(static_cast<double>(d0), static_cast<double>(k)) *
                  std::pow(static_cast<double>(d1), static_cast<double>(m));
  std::ostringstream os;
  os << " (estimated " << words << " monomials x " << tuples << " substitutions)";
  return os.str();
}

// column remap induced by permuting the even slots by sg and the odd ones by
// rh; the coordinate inside each substitution block is untouched
struct ColumnAction {
  std::size_t k, m, dim, d0, d1;
  Perm sg, rh;
  unsigned long long o_total = 1;
  std::vector<unsigned long long> e_pow, o_pow;

  ColumnAction(const SectorSpace& ss, Perm sg_in, Perm rh_in)
      : k(ss.k), m(ss.m), dim(ss.dim), d0(ss.d0), d1(ss.d1),
        sg(std::move(sg_in)), rh(std::move(rh_in)) {
    e_pow.assign(k, 1);
    for (std::size_t i = 1; i < k; ++i) e_pow[k - 1 - i] = e_pow[k - i] * d0;
    o_pow.assign(m, 1);
    for (std::size_t j = 1; j < m; ++j) o_pow[m - 1 - j] = o_pow[m - j] * d1;
    for (std::size_t j = 0; j < m; ++j) o_total *= d1;
  }

  long long operator()(long long col) const {
    unsigned long long tuple = static_cast<unsigned long long>(col) / dim;
    unsigned long long coord = static_cast<unsigned long long>(col) % dim;
    unsigned long long even_part = tuple / o_total;
    unsigned long long odd_part = tuple % o_total;
    unsigned long long ne = 0, no = 0;
    for (std::size_t i = 0; i < k; ++i) {
      unsigned long long digit = (even_part / e_pow[i]) % d0;
      ne += digit * e_pow[sg[i]];
    }
    for (std::size_t j = 0; j < m; ++j) {
      unsigned long long digit = (odd_part / o_pow[j]) % d1;
      no += digit * o_pow[rh[j]];
    }
    return static_cast<long long>((ne * o_total + no) * dim + coord);
  }
};

Rational action_trace(const SectorSpace& ss, const Perm& sg, const Perm& rh) {
  ColumnAction act(ss, sg, rh);
  Rational trace(0);
  const auto& basis = ss.space.rows();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    SRow moved;
    moved.reserve(basis[i].size());
    for (const auto& [col, v] : basis[i]) moved.emplace_back(act(col), v);
    std::sort(moved.begin(), moved.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    trace += ss.space.coords(std::move(moved))[i];
  }
  return trace;
}

std::string root_decimal(unsigned long long c, std::size_t n) {
  if (c == 0) return "0.0000";
  mpz_class scaled(static_cast<unsigned long>(c));
  mpz_class tenpow;
  mpz_ui_pow_ui(tenpow.get_mpz_t(), 10, static_cast<unsigned long>(4 * n));
  scaled *= tenpow;
  mpz_class v;
  mpz_root(v.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_class whole = v / 10000;
  mpz_class frac = v % 10000;
  std::string f = frac.get_str();
  return whole.get_str() + "." + std::string(4 - f.size(), '0') + f;
}

}  // namespace

unsigned long long partial_codimension(const AlgebraPtr& alg, std::size_t k,
                                       std::size_t m, std::size_t cap) {
  if (k + m > cap) {
    std::ostringstream os;
    os << "partial_codimension: degree " << (k + m) << " exceeds cap " << cap
       << cost_note(alg, k, m);
    throw std::invalid_argument(os.str());
  }
  if (k + m == 0) return 0;
  return build_sector_space(alg, k, m).space.rank();
}

unsigned long long sector_rank(const AlgebraPtr& alg,
                               const std::vector<MultiPoly>& basis) {
  if (basis.empty()) return 0;
  const std::vector<Variable> vars = basis.front().variables();
  for (const auto& p : basis)
    if (p.variables() != vars)
      throw std::invalid_argument("sector_rank: polynomials must share one variable set");

  std::vector<std::size_t> even_basis, odd_basis;
  for (std::size_t i = 0; i < alg->dim(); ++i)
    (alg->parity(i) == Parity::Even ? even_basis : odd_basis).push_back(i);

  std::vector<const std::vector<std::size_t>*> pools;
  for (const auto& v : vars)
    pools.push_back(v.parity == Parity::Even ? &even_basis : &odd_basis);
  for (const auto* pool : pools)
    if (pool->empty()) return 0;

  std::size_t n = vars.size();
  std::size_t dim = alg->dim();
  std::vector<SRow> rows(basis.size());
  std::vector<std::size_t> digits(n, 0);
  long long tuple_rank = 0;
  bool done = false;
  while (!done) {
    Assignment a;
    for (std::size_t s = 0; s < n; ++s)
      a.emplace(vars[s].name, alg->basis_element((*pools[s])[digits[s]]));
    for (std::size_t r = 0; r < basis.size(); ++r) {
      Element val = evaluate(basis[r], a);
      for (std::size_t c = 0; c < dim; ++c)
        if (!val[c].is_zero())
          rows[r].emplace_back(tuple_rank * static_cast<long long>(dim) +
                                   static_cast<long long>(c),
                               val[c]);
    }
    ++tuple_rank;
    std::size_t s = n;
    while (s > 0) {
      --s;
      if (++digits[s] < pools[s]->size()) break;
      digits[s] = 0;
      if (s == 0) done = true;
    }
  }

  SparseSpace space;
  for (auto& row : rows)
    if (!row.empty()) space.insert(std::move(row));
  return space.rank();
}

SectorReport cocharacter(const AlgebraPtr& alg, std::size_t k, std::size_t m,
                         std::size_t cochar_cap, std::size_t codim_cap) {
  if (k > cochar_cap || m > cochar_cap) {
    std::ostringstream os;
    os << "cocharacter: sector (" << k << "," << m << ") exceeds cap " << cochar_cap
       << cost_note(alg, k, m);
    throw std::invalid_argument(os.str());
  }
  if (k + m > codim_cap) {
    std::ostringstream os;
    os << "cocharacter: degree " << (k + m) << " exceeds cap " << codim_cap
       << cost_note(alg, k, m);
    throw std::invalid_argument(os.str());
  }

  SectorReport rep;
  rep.k = k;
  rep.m = m;
  if (k + m == 0) return rep;

  SectorSpace ss = build_sector_space(alg, k, m);
  rep.codim = ss.space.rank();
  if (rep.codim == 0) return rep;

  std::vector<Partition> cls_e = partitions_of(k);
  std::vector<Partition> cls_o = partitions_of(m);

  std::vector<std::vector<Rational>> traces(cls_e.size(),
                                            std::vector<Rational>(cls_o.size()));
  for (std::size_t a = 0; a < cls_e.size(); ++a)
    for (std::size_t b = 0; b < cls_o.size(); ++b)
      traces[a][b] = action_trace(ss, class_representative(cls_e[a]),
                                  class_representative(cls_o[b]));

  Rational order(static_cast<long>(factorial_u(k) * factorial_u(m)));
  for (const auto& lam : partitions_of(k))
    for (const auto& mu : partitions_of(m)) {
      Rational acc(0);
      for (std::size_t a = 0; a < cls_e.size(); ++a)
        for (std::size_t b = 0; b < cls_o.size(); ++b) {
          Rational weight(static_cast<long>(class_size(cls_e[a]) *
                                            class_size(cls_o[b])));
          acc += weight * mn_character(lam, cls_e[a]) * mn_character(mu, cls_o[b]) *
                 traces[a][b];
        }
      acc /= order;
      if (!acc.is_integer() || acc.sign() < 0)
        throw std::logic_error("cocharacter: multiplicity of " + lam.str() + "," +
                               mu.str() + " came out as " + acc.str());
      if (acc.sign() > 0) {
        if (!acc.num().fits_ulong_p())
          throw std::overflow_error("cocharacter: multiplicity overflow");
        unsigned long long v = acc.num().get_ui();
        rep.multiplicities[{lam, mu}] = v;
        rep.colength += v;
      }
    }
  return rep;
}

Rational colength_bound(std::size_t dim_l, std::size_t n) {
  mpz_class base(static_cast<unsigned long>(n + 1));
  mpz_class powed;
  mpz_pow_ui(powed.get_mpz_t(), base.get_mpz_t(),
             static_cast<unsigned long>(dim_l * dim_l + dim_l + 1));
  mpz_class scaled = mpz_class(static_cast<unsigned long>(dim_l)) * powed;
  return Rational(scaled);
}

unsigned long long colength(const std::vector<SectorReport>& sectors,
                            std::size_t dim_l) {
  if (sectors.empty()) return 0;
  std::size_t n = sectors.front().k + sectors.front().m;
  unsigned long long total = 0;
  for (const auto& s : sectors) {
    if (s.k + s.m != n)
      throw std::invalid_argument("colength: sectors of mixed total degree");
    total += s.colength;
  }
  if (Rational(mpz_class(static_cast<unsigned long>(total))) > colength_bound(dim_l, n))
    throw std::logic_error("colength: computed value escapes the dimension bound");
  return total;
}

bool check_ideal_vanishing(const SectorReport& report, std::size_t d0,
                           std::size_t d1, std::size_t index) {
  for (const auto& [shapes, count] : report.multiplicities) {
    if (count == 0) continue;
    if (shapes.first.cells_below_row(d0) > index) return false;
    if (shapes.second.cells_below_row(d1) > index) return false;
  }
  return true;
}

std::pair<std::size_t, std::size_t> quotient_dims(const SAlgebra& S,
                                                  const ZIdealInfo& info) {
  std::size_t d0 = 0, d1 = 0;
  for (std::size_t i = 0; i < S.algebra->dim(); ++i) {
    if (info.ideal.contains(S.algebra->basis_element(i))) continue;
    (S.algebra->parity(i) == Parity::Even ? d0 : d1) += 1;
  }
  return {d0, d1};
}

UpperBoundReport upper_bound_check(const SAlgebra& S, const ZIdealInfo& info,
                                   const std::vector<SectorReport>& sectors) {
  UpperBoundReport out;
  if (sectors.empty()) return out;
  out.n = sectors.front().k + sectors.front().m;
  out.all_hold = true;

  std::size_t d = S.algebra->dim();
  auto [d0, d1] = quotient_dims(S, info);
  Rational factor = colength_bound(d, out.n);

  auto admissible_sum = [&](std::size_t weight, std::size_t rows_free) {
    unsigned long long sum = 0;
    for (const auto& lam : partitions_of(weight)) {
      if (lam.height() > d) continue;
      if (lam.cells_below_row(rows_free) > info.power_index) continue;
      sum += hook_dimension(lam);
    }
    return Rational(mpz_class(static_cast<unsigned long>(sum)));
  };

  for (const auto& s : sectors) {
    UpperBoundRow row;
    row.k = s.k;
    row.m = s.m;
    row.codim = s.codim;
    row.admissible_sum = admissible_sum(s.k, d0) * admissible_sum(s.m, d1);
    row.bound = factor * row.admissible_sum;
    Rational c(mpz_class(static_cast<unsigned long>(s.codim)));
    row.holds = c <= row.bound;
    row.margin = row.bound - c;
    out.all_hold = out.all_hold && row.holds;
    out.rows.push_back(std::move(row));
  }
  return out;
}

WitnessBoundReport witness_lower_bound(const std::shared_ptr<const SAlgebra>& S,
                                       std::size_t p, std::size_t q,
                                       std::size_t codim_cap) {
  WitnessSpec w = witness_W(p, q, S);
  Element value = eval_alternated(w);
  if (value.is_zero())
    throw std::runtime_error("witness_lower_bound: the alternated witness evaluates "
                             "to zero on " + S->algebra->name());

  WitnessBoundReport rep;
  rep.p = p;
  rep.q = q;
  rep.k = w.even_degree();
  rep.m = w.degree() - w.even_degree();

  std::size_t half = S->m;
  bool odd_t = (S->t % 2) == 1;
  std::size_t lam_rows = odd_t ? 2 * half + 1 : 2 * half;
  rep.lambda = Partition(std::vector<std::size_t>(lam_rows, q));
  rep.mu = Partition(std::vector<std::size_t>(2 * half, p));

  std::size_t expect_k = odd_t ? q * (2 * half + 1) + 2 * half
                               : 2 * half * q + 2 * half - 1;
  if (rep.k != expect_k)
    throw std::logic_error("witness_lower_bound: sector bookkeeping mismatch");

  rep.bound = hook_dimension(rep.lambda) * hook_dimension(rep.mu);

  if (rep.k + rep.m <= codim_cap) {
    rep.exact = partial_codimension(S->algebra, rep.k, rep.m, codim_cap);
    if (rep.bound > rep.exact)
      throw std::logic_error("witness_lower_bound: bound exceeds the sector dimension");
    rep.cross_checked = true;
  }
  return rep;
}

std::vector<std::string> root_sequence(const CodimTable& table) {
  std::vector<std::string> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) out.push_back(row.root);
  return out;
}

CodimRow graded_codimension(const AlgebraPtr& alg, std::size_t n,
                            const CodimOptions& opt) {
  CodimRow row;
  row.n = n;
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t m = n - k;
    if (opt.with_multiplicities)
      row.sectors.push_back(cocharacter(alg, k, m, opt.cochar_cap, opt.codim_cap));
    else {
      SectorReport rep;
      rep.k = k;
      rep.m = m;
      rep.codim = partial_codimension(alg, k, m, opt.codim_cap);
      row.sectors.push_back(std::move(rep));
    }
    row.c_gr += binom_u(n, k) * row.sectors.back().codim;
  }
  if (opt.with_multiplicities) row.l_gr = colength(row.sectors, alg->dim());
  row.root = root_decimal(row.c_gr, n);
  return row;
}

CodimTable codim_table(const AlgebraPtr& alg, const std::string& algebra_name,
                       std::size_t n_max, const CodimOptions& opt) {
  CodimTable table;
  table.algebra = algebra_name;
  table.with_multiplicities = opt.with_multiplicities;

  // all sectors across all rows, computed in parallel into fixed slots
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (std::size_t k = 0; k <= n; ++k) jobs.emplace_back(k, n - k);

  std::vector<SectorReport> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      auto [k, m] = jobs[j];
      if (opt.with_multiplicities) {
        results[j] = cocharacter(alg, k, m, opt.cochar_cap, opt.codim_cap);
      } else {
        results[j].k = k;
        results[j].m = m;
        results[j].codim = partial_codimension(alg, k, m, opt.codim_cap);
      }
    }
  };

  std::size_t nthreads = std::max<std::size_t>(1, opt.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::size_t at = 0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    CodimRow row;
    row.n = n;
    for (std::size_t k = 0; k <= n; ++k) {
      row.sectors.push_back(std::move(results[at++]));
      row.c_gr += binom_u(n, k) * row.sectors.back().codim;
    }
    if (opt.with_multiplicities) row.l_gr = colength(row.sectors, alg->dim());
    row.root = root_decimal(row.c_gr, n);
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

nlohmann::ordered_json partition_json(const Partition& p) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t part : p.parts()) arr.push_back(part);
  return arr;
}

}  // namespace

std::string table_json_text(const CodimTable& table) {
  nlohmann::ordered_json j;
  j["algebra"] = table.algebra;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r;
    r["n"] = row.n;
    r["sectors"] = nlohmann::ordered_json::array();
    for (const auto& s : row.sectors) {
      nlohmann::ordered_json sj;
      sj["k"] = s.k;
      sj["m"] = s.m;
      sj["codim"] = std::to_string(s.codim);
      if (table.with_multiplicities) {
        sj["multiplicities"] = nlohmann::ordered_json::array();
        for (const auto& [shapes, count] : s.multiplicities) {
          nlohmann::ordered_json mj;
          mj["lambda"] = partition_json(shapes.first);
          mj["mu"] = partition_json(shapes.second);
          mj["count"] = std::to_string(count);
          sj["multiplicities"].push_back(std::move(mj));
        }
        sj["colength"] = std::to_string(s.colength);
      }
      r["sectors"].push_back(std::move(sj));
    }
    r["c_gr"] = std::to_string(row.c_gr);
    if (table.with_multiplicities) r["l_gr"] = std::to_string(row.l_gr);
    r["root"] = row.root;
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

std::string table_csv_text(const CodimTable& table) {
  std::ostringstream os;
  os << "n,k,m,codim,c_gr\n";
  for (const auto& row : table.rows)
    for (const auto& s : row.sectors)
      os << row.n << ',' << s.k << ',' << s.m << ',' << s.codim << ',' << row.c_gr
         << '\n';
  return os.str();
}

}  // namespace picodim
