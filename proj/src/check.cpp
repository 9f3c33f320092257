#include "picodim/check.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "picodim/algebra.hpp"
#include "picodim/matrix.hpp"
#include "picodim/witness.hpp"

namespace picodim {

namespace {

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

Matrix mat_add(const Matrix& a, const Matrix& b, const Rational& cb) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) += cb * b.at(i, j);
  return out;
}

// reflection along the secondary diagonal, with the symplectic sign twist
Matrix mat_star(const Matrix& a, InvolutionKind kind) {
  const std::size_t t = a.rows();
  Matrix out(t, t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) out.at(t - 1 - j, t - 1 - i) = a.at(i, j);
  if (kind == InvolutionKind::Symplectic) {
    const std::size_t m = t / 2;
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = 0; j < t; ++j) {
        const long di = (i < m) ? 1 : -1;
        const long dj = (j < m) ? 1 : -1;
        out.at(i, j) *= Rational(di * dj);
      }
  }
  return out;
}

Matrix mat_embed(const Matrix& A, const Matrix& B, const Matrix& C,
                 InvolutionKind kind) {
  const std::size_t t = A.rows();
  Matrix out(2 * t, 2 * t);
  Matrix As = mat_star(A, kind);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      out.at(i, j) = A.at(i, j);
      out.at(i, t + j) = B.at(i, j);
      out.at(t + i, j) = C.at(i, j);
      out.at(t + i, t + j) = -As.at(i, j);
    }
  return out;
}

Matrix mat_supercomm(const Matrix& x, const Matrix& y, bool both_odd) {
  const Rational s = both_odd ? Rational(-1) : Rational(1);
  return mat_add(mat_mul(x, y), mat_mul(y, x), -s);
}

Matrix random_upper(std::size_t t, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-3, 3);
  Matrix out(t, t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i; j < t; ++j) out.at(i, j) = Rational(d(rng));
  return out;
}

std::pair<std::size_t, std::size_t> decode_ut(std::size_t t, std::size_t idx) {
  for (std::size_t i = 1; i <= t; ++i) {
    const std::size_t width = t - i + 1;
    if (idx < width) return {i, i + idx};
    idx -= width;
  }
  throw std::invalid_argument("unit index out of range");
}

Matrix element_matrix(const SAlgebra& S, const Element& x) {
  const std::size_t t = S.t;
  const std::size_t r = t * (t + 1) / 2;
  Element q = S.to_blocks(x);
  Matrix out(2 * t, 2 * t);
  for (std::size_t idx = 0; idx < q.coords().size(); ++idx) {
    if (q[idx].is_zero()) continue;
    const std::size_t pos = idx / r;
    auto [i, j] = decode_ut(t, idx % r);
    out.at((pos / 2) * t + (i - 1), (pos % 2) * t + (j - 1)) += q[idx];
  }
  return out;
}

// dense block matrix -> element of S, through the ambient block algebra
Element lift_matrix(const SAlgebra& S, const Matrix& blockmat) {
  const std::size_t t = S.t;
  Element q = S.blocks->zero();
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i; j <= t; ++j) {
      q[block_index(t, 0, i, j)] = blockmat.at(i - 1, j - 1);
      q[block_index(t, 1, i, j)] = blockmat.at(i - 1, t + j - 1);
      q[block_index(t, 2, i, j)] = blockmat.at(t + i - 1, j - 1);
      q[block_index(t, 3, i, j)] = blockmat.at(t + i - 1, t + j - 1);
    }
  auto s = S.from_blocks(q);
  if (!s) throw std::logic_error("block matrix does not lie in the algebra");
  return *s;
}

}  // namespace

bool CheckReport::all_pass() const {
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

CheckReport verify_structure(const SAlgebra& S, std::size_t samples,
                             std::uint64_t seed) {
  CheckReport rep;
  const std::size_t t = S.t;
  const std::size_t m = S.m;

  {
    CheckLine line;
    line.name = "grading closure and super Jacobi on all basis triples";
    std::vector<SparseVec> table;
    const std::size_t d = S.algebra->dim();
    table.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) table.push_back(S.algebra->product_entry(i, j));
    try {
      GradedAlgebra::create("revalidation", S.algebra->parities(), std::move(table),
                            S.algebra->z_degree(), true, true);
      line.pass = true;
      std::ostringstream os;
      os << d * d * d << " triples";
      line.detail = os.str();
    } catch (const std::exception& e) {
      line.pass = false;
      line.detail = e.what();
    }
    rep.lines.push_back(std::move(line));
  }

  {
    CheckLine line;
    line.name = "block bracket formulas on random block elements";
    std::mt19937_64 rng(seed);
    std::size_t bad = 0;
    Matrix Z(t, t);
    for (std::size_t trial = 0; trial < samples; ++trial) {
      Matrix A1 = random_upper(t, rng);
      Matrix A2 = random_upper(t, rng);
      Matrix raw1 = random_upper(t, rng);
      Matrix raw2 = random_upper(t, rng);
      Matrix B = mat_add(raw1, mat_star(raw1, S.kind), Rational(1));
      Matrix C = mat_add(raw2, mat_star(raw2, S.kind), Rational(-1));
      Matrix dg1 = mat_embed(A1, Z, Z, S.kind);
      Matrix dg2 = mat_embed(A2, Z, Z, S.kind);
      Matrix up = mat_embed(Z, B, Z, S.kind);
      Matrix lo = mat_embed(Z, Z, C, S.kind);
      Element sd1 = lift_matrix(S, dg1);
      Element sd2 = lift_matrix(S, dg2);
      Element sup = lift_matrix(S, up);
      Element slo = lift_matrix(S, lo);

      // diagonal against diagonal: the plain commutator
      if (!(element_matrix(S, bracket(sd1, sd2)) == mat_supercomm(dg1, dg2, false)))
        ++bad;
      // diagonal against the upper block: A B + B A*
      Matrix eo_up = mat_embed(
          Z, mat_add(mat_mul(A1, B), mat_mul(B, mat_star(A1, S.kind)), Rational(1)), Z,
          S.kind);
      if (!(element_matrix(S, bracket(sd1, sup)) == eo_up)) ++bad;
      // diagonal against the lower block: -(A* C + C A)
      Matrix low = mat_add(mat_mul(mat_star(A1, S.kind), C), mat_mul(C, A1), Rational(1));
      Matrix eo_lo = mat_embed(Z, Z, mat_add(Z, low, Rational(-1)), S.kind);
      if (!(element_matrix(S, bracket(sd1, slo)) == eo_lo)) ++bad;
      // odd against odd: the anticommutator, cross and same block
      if (!(element_matrix(S, bracket(sup, slo)) == mat_supercomm(up, lo, true))) ++bad;
      if (!(element_matrix(S, bracket(sup, sup)) == mat_supercomm(up, up, true))) ++bad;
    }
    line.pass = bad == 0;
    std::ostringstream os;
    if (bad == 0)
      os << "5 bracket shapes x " << samples << " elements";
    else
      os << bad << " mismatches";
    line.detail = os.str();
    rep.lines.push_back(std::move(line));
  }

  {
    CheckLine line;
    line.name = "generator relation table, exhaustive";
    std::size_t bad = 0, nchecks = 0;
    auto expect = [&](bool ok) {
      ++nchecks;
      if (!ok) ++bad;
    };
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        expect(bracket(S.named.X[i], S.named.X[j]).is_zero());
        expect(bracket(S.named.X[i], S.named.Y[j]).is_zero());
        expect(bracket(S.named.X[i], S.named.Z[j]).is_zero());
        Element want = (i == j) ? S.named.X[i] : S.algebra->zero();
        expect(bracket(S.named.Y[i], S.named.Z[j]) == want);
      }
    for (std::size_t i = 1; i <= t; ++i)
      for (std::size_t k = i + 1; k <= t; ++k)
        for (std::size_t j = k + 1; j <= t; ++j)
          expect(bracket(S.named.E.at({i, k}), S.named.E.at({k, j})) ==
                 S.named.E.at({i, j}));
    for (std::size_t k = 1; k + 1 <= m; ++k) {
      const Element& e = S.named.E.at({k, k + 1});
      expect(bracket(e, S.named.X[k]) == e);
      expect(bracket(e, S.named.X[k - 1]) == -e);
      for (std::size_t j = 1; j <= m; ++j)
        if (j != k && j != k + 1) expect(bracket(e, S.named.X[j - 1]).is_zero());
    }
    for (std::size_t i = 1; i <= t; ++i)
      for (std::size_t j = i; j <= t; ++j)
        expect(bracket(S.named.Ibig, S.named.E.at({i, j})).is_zero());
    expect(bracket(S.named.Ibig, S.named.Y0) == S.named.Y0 * Rational(2));
    line.pass = bad == 0;
    std::ostringstream os;
    os << nchecks << " relations";
    if (bad != 0) os << ", " << bad << " failed";
    line.detail = os.str();
    rep.lines.push_back(std::move(line));
  }

  {
    CheckLine line;
    line.name = "involution axioms on the upper triangulars, all basis pairs";
    auto ut = build_ut(t);
    Matrix inv = involution(t, S.kind);
    std::size_t bad = 0;
    const std::size_t d = ut->dim();
    auto unit = [&](std::size_t idx) {
      std::vector<Rational> v(d, Rational(0));
      v[idx] = Rational(1);
      return v;
    };
    for (std::size_t a = 0; a < d; ++a) {
      auto ua = unit(a);
      if (!(apply_involution(inv, apply_involution(inv, ua)) == ua)) ++bad;
      for (std::size_t b = 0; b < d; ++b) {
        Element x = ut->element(unit(a));
        Element y = ut->element(unit(b));
        Element lhs = ut->element(apply_involution(inv, bracket(x, y).coords()));
        Element rhs = bracket(ut->element(apply_involution(inv, unit(b))),
                              ut->element(apply_involution(inv, unit(a))));
        if (!(lhs == rhs)) ++bad;
      }
    }
    line.pass = bad == 0;
    std::ostringstream os;
    os << d * d << " pairs";
    if (bad != 0) os << ", " << bad << " failed";
    line.detail = os.str();
    rep.lines.push_back(std::move(line));
  }

  {
    CheckLine line;
    line.name = "graded ideal nilpotent with the expected codimension";
    ZIdealInfo info = z_graded_ideal(S);
    const std::size_t want = (t % 2 == 0) ? 2 * t : 2 * t - 1;
    line.pass = info.codim == want;
    std::ostringstream os;
    os << "codim " << info.codim << " (expected " << want << "), power index "
       << info.power_index << ", left-normed index " << info.left_normed_index;
    line.detail = os.str();
    rep.lines.push_back(std::move(line));
  }

  if (t % 2 == 1) {
    CheckLine line;
    line.name = "cube of the adjoint of the augmented generator vanishes";
    Matrix ad = ad_operator(*S.named.b);
    Matrix zero(S.algebra->dim(), S.algebra->dim());
    Matrix ad3 = mat_mul(mat_mul(ad, ad), ad);
    line.pass = !(ad == zero) && ad3 == zero;
    rep.lines.push_back(std::move(line));
  }

  return rep;
}

std::vector<std::string> discrepancy_log(const SAlgebra& S) {
  std::vector<std::string> out;

  {
    bool all_x = true;
    for (std::size_t i = 0; i < S.m; ++i)
      if (!(bracket(S.named.Y[i], S.named.Z[i]) == S.named.X[i])) all_x = false;
    if (all_x)
      out.push_back(
          "[Y_i, Z_i] evaluates to X_i for every i; the normalization that puts "
          "Z_i on the right-hand side fails the block arithmetic");
    else
      out.push_back("[Y_i, Z_i] does not reduce to X_i on this algebra");
  }

  {
    ZIdealInfo info = z_graded_ideal(S);
    std::ostringstream os;
    os << "ideal powers vanish at index " << info.power_index
       << " over all bracketings and at index " << info.left_normed_index
       << " left-normed; both are recorded because the nilpotency statement "
          "does not fix a bracketing";
    out.push_back(os.str());
  }

  {
    auto Sp = std::make_shared<SAlgebra>(S);
    WitnessSpec w = witness_W(1, 1, Sp);
    Element plain = eval_plain(w);
    Element alt = eval_alternated(w);
    if (plain.is_zero()) {
      out.push_back(
          "the replicated element (p=q=1) evaluates to zero under this "
          "involution; no alternation scalar is defined");
    } else {
      std::size_t lead = 0;
      while (plain[lead].is_zero()) ++lead;
      Rational c = alt[lead] / plain[lead];
      bool proportional = alt == plain * c;
      std::ostringstream os;
      if (proportional && c == Rational(1))
        os << "alternation leaves the replicated element (p=q=1) unchanged";
      else if (proportional)
        os << "alternation multiplies the replicated element (p=q=1) by " << c.str()
           << "; the sets contribute a stabilizer factor rather than acting "
              "trivially";
      else
        os << "the alternated replicated element (p=q=1) is not proportional to "
              "its plain value";
      out.push_back(os.str());
    }
  }

  out.push_back(
      "sector upper bounds are asserted as inequalities; displays that read as "
      "equalities are treated as bounds, never as exact values");

  return out;
}

}  // namespace picodim
