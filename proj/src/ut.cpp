#include "picodim/ut.hpp"

#include <stdexcept>
#include <tuple>

namespace picodim {

std::string involution_name(InvolutionKind kind) {
  return kind == InvolutionKind::Orthogonal ? "orth" : "sympl";
}

std::size_t ut_unit_index(std::size_t t, std::size_t i, std::size_t j) {
  if (i < 1 || i > j || j > t) throw std::invalid_argument("matrix unit out of range");
  return (i - 1) * (t + 1) - (i - 1) * i / 2 + (j - i);
}

AlgebraPtr build_ut(std::size_t t) {
  if (t == 0) throw std::invalid_argument("build_ut requires t >= 1");
  const std::size_t r = t * (t + 1) / 2;
  std::vector<SparseVec> table(r * r);
  std::vector<long> zdeg(r);
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i; j <= t; ++j) zdeg[ut_unit_index(t, i, j)] = long(j - i);
  for (std::size_t i1 = 1; i1 <= t; ++i1)
    for (std::size_t j1 = i1; j1 <= t; ++j1)
      for (std::size_t j2 = j1; j2 <= t; ++j2)
        table[ut_unit_index(t, i1, j1) * r + ut_unit_index(t, j1, j2)] = {
            {ut_unit_index(t, i1, j2), Rational(1)}};
  return GradedAlgebra::create("UT" + std::to_string(t),
                               std::vector<Parity>(r, Parity::Even), std::move(table),
                               std::move(zdeg), false);
}

namespace {

// image of e_ij under the involution: (sign, cell (t+1-j, t+1-i))
struct StarImage {
  std::size_t i, j;
  long sign;
};

StarImage star_unit(std::size_t t, InvolutionKind kind, std::size_t i, std::size_t j) {
  StarImage out{t + 1 - j, t + 1 - i, 1};
  if (kind == InvolutionKind::Symplectic) {
    const std::size_t m = t / 2;
    const long si = (i <= m) ? -1 : 1;
    const long sj = (j <= m) ? -1 : 1;
    out.sign = si * sj;
  }
  return out;
}

}  // namespace

Matrix involution(std::size_t t, InvolutionKind kind) {
  if (kind == InvolutionKind::Symplectic && t % 2 != 0)
    throw std::invalid_argument("symplectic involution requires even t");
  const std::size_t r = t * (t + 1) / 2;
  Matrix v(r, r);
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i; j <= t; ++j) {
      StarImage s = star_unit(t, kind, i, j);
      v.at(ut_unit_index(t, s.i, s.j), ut_unit_index(t, i, j)) = Rational(s.sign);
    }
  return v;
}

std::vector<Rational> apply_involution(const Matrix& inv, const std::vector<Rational>& x) {
  const std::size_t r = inv.rows();
  if (x.size() != r) throw std::invalid_argument("coordinate length mismatch");
  std::vector<Rational> out(r, Rational(0));
  for (std::size_t j = 0; j < r; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t i = 0; i < r; ++i)
      if (!inv.at(i, j).is_zero()) out[i] += inv.at(i, j) * x[j];
  }
  return out;
}

std::size_t block_index(std::size_t t, std::size_t pos, std::size_t i, std::size_t j) {
  if (pos > 3) throw std::invalid_argument("block position out of range");
  return pos * (t * (t + 1) / 2) + ut_unit_index(t, i, j);
}

Element SAlgebra::to_blocks(const Element& x) const {
  Element out = blocks->zero();
  for (std::size_t k = 0; k < basis_blocks.size(); ++k)
    if (!x[k].is_zero()) out += basis_blocks[k] * x[k];
  return out;
}

std::optional<Element> SAlgebra::from_blocks(const Element& q) const {
  const std::size_t D = blocks->dim();
  const std::size_t s = algebra->dim();
  std::vector<Rational> ext(D + s, Rational(0));
  for (std::size_t k = 0; k < D; ++k) ext[k] = q[k];
  std::vector<Rational> res = coordizer.reduce(ext);
  for (std::size_t k = 0; k < D; ++k)
    if (!res[k].is_zero()) return std::nullopt;
  std::vector<Rational> x(s);
  for (std::size_t k = 0; k < s; ++k) x[k] = -res[D + k];
  return algebra->element(std::move(x));
}

SAlgebra build_S(std::size_t t, InvolutionKind kind, bool validate) {
  if (t < 2) throw std::invalid_argument("build_S requires t >= 2");
  if (kind == InvolutionKind::Symplectic && t % 2 != 0)
    throw std::invalid_argument("symplectic involution requires even t");
  const std::size_t r = t * (t + 1) / 2;
  const std::size_t D = 4 * r;
  const std::size_t m = t / 2;

  // ambient associative algebra of 2x2 block matrices over UT_t
  std::vector<SparseVec> qtable(D * D);
  std::vector<Parity> qpar(D);
  std::vector<long> qdeg(D);
  for (std::size_t pos = 0; pos < 4; ++pos)
    for (std::size_t i = 1; i <= t; ++i)
      for (std::size_t j = i; j <= t; ++j) {
        const std::size_t idx = block_index(t, pos, i, j);
        qpar[idx] = (pos == 0 || pos == 3) ? Parity::Even : Parity::Odd;
        qdeg[idx] = long(j - i);
      }
  for (std::size_t p1 = 0; p1 < 4; ++p1)
    for (std::size_t p2 = 0; p2 < 4; ++p2) {
      if (p1 % 2 != p2 / 2) continue;  // inner block indices must match
      const std::size_t pos = (p1 / 2) * 2 + (p2 % 2);
      for (std::size_t i1 = 1; i1 <= t; ++i1)
        for (std::size_t j1 = i1; j1 <= t; ++j1)
          for (std::size_t j2 = j1; j2 <= t; ++j2)
            qtable[block_index(t, p1, i1, j1) * D + block_index(t, p2, j1, j2)] = {
                {block_index(t, pos, i1, j2), Rational(1)}};
    }
  AlgebraPtr qassoc =
      GradedAlgebra::create("M2(UT" + std::to_string(t) + ")", std::move(qpar),
                            std::move(qtable), std::move(qdeg), false, validate);
  AlgebraPtr qsuper = superbracket_algebra(qassoc, validate);

  // S basis in ambient coordinates
  std::vector<std::vector<Rational>> sbasis;
  std::vector<Parity> spar;
  std::vector<long> sdeg;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> upper_at, lower_at;

  // L0: diag(e_ij, -e_ij*)
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i; j <= t; ++j) {
      std::vector<Rational> v(D, Rational(0));
      v[block_index(t, 0, i, j)] = Rational(1);
      StarImage s = star_unit(t, kind, i, j);
      v[block_index(t, 3, s.i, s.j)] += Rational(-s.sign);
      sbasis.push_back(std::move(v));
      spar.push_back(Parity::Even);
      sdeg.push_back(long(j - i));
    }
  // symmetric part of UT_t into the upper block
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i; j <= t; ++j) {
      StarImage s = star_unit(t, kind, i, j);
      std::vector<Rational> v(D, Rational(0));
      if (s.i == i && s.j == j) {
        if (s.sign != 1) continue;  // anti-fixed unit lives on the other side
        v[block_index(t, 1, i, j)] = Rational(1);
      } else if (std::tie(i, j) < std::tie(s.i, s.j)) {
        v[block_index(t, 1, i, j)] = Rational(1);
        v[block_index(t, 1, s.i, s.j)] = Rational(s.sign);
      } else {
        continue;
      }
      upper_at[{i, j}] = sbasis.size();
      sbasis.push_back(std::move(v));
      spar.push_back(Parity::Odd);
      sdeg.push_back(long(j - i));
    }
  // antisymmetric part into the lower block
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i; j <= t; ++j) {
      StarImage s = star_unit(t, kind, i, j);
      std::vector<Rational> v(D, Rational(0));
      if (s.i == i && s.j == j) {
        if (s.sign != -1) continue;
        v[block_index(t, 2, i, j)] = Rational(1);
      } else if (std::tie(i, j) < std::tie(s.i, s.j)) {
        v[block_index(t, 2, i, j)] = Rational(1);
        v[block_index(t, 2, s.i, s.j)] = Rational(-s.sign);
      } else {
        continue;
      }
      lower_at[{i, j}] = sbasis.size();
      sbasis.push_back(std::move(v));
      spar.push_back(Parity::Odd);
      sdeg.push_back(long(j - i));
    }

  const std::size_t sdim = sbasis.size();
  if (sdim != t * (t + 1)) throw std::logic_error("S(t) basis count mismatch");

  RowSpace rs(D + sdim);
  for (std::size_t k = 0; k < sdim; ++k) {
    std::vector<Rational> ext(D + sdim, Rational(0));
    for (std::size_t c = 0; c < D; ++c) ext[c] = sbasis[k][c];
    ext[D + k] = Rational(1);
    if (!rs.insert(ext)) throw std::logic_error("S(t) basis is dependent");
  }
  auto coordinatize = [&](const std::vector<Rational>& q) {
    std::vector<Rational> ext(D + sdim, Rational(0));
    for (std::size_t c = 0; c < D; ++c) ext[c] = q[c];
    std::vector<Rational> res = rs.reduce(ext);
    for (std::size_t c = 0; c < D; ++c)
      if (!res[c].is_zero()) throw std::logic_error("product leaves S(t)");
    SparseVec out;
    for (std::size_t k = 0; k < sdim; ++k)
      if (!res[D + k].is_zero()) out.emplace_back(k, -res[D + k]);
    return out;
  };

  std::vector<SparseVec> stable(sdim * sdim);
  for (std::size_t a = 0; a < sdim; ++a)
    for (std::size_t b = 0; b < sdim; ++b) {
      std::vector<Rational> prod = qsuper->product(sbasis[a], sbasis[b]);
      bool nz = false;
      for (const auto& c : prod)
        if (!c.is_zero()) {
          nz = true;
          break;
        }
      if (nz) stable[a * sdim + b] = coordinatize(prod);
    }

  AlgebraPtr S = GradedAlgebra::create(
      "S(t=" + std::to_string(t) + ",inv=" + involution_name(kind) + ")", std::move(spar),
      std::move(stable), std::move(sdeg), true, validate);

  SAlgebra out;
  out.algebra = S;
  out.blocks = qsuper;
  out.coordizer = std::move(rs);
  out.t = t;
  out.m = m;
  out.kind = kind;
  for (std::size_t k = 0; k < sdim; ++k) out.basis_blocks.push_back(qsuper->element(sbasis[k]));

  auto s_unit = [&](std::size_t idx) {
    std::vector<Rational> v(sdim, Rational(0));
    v[idx] = Rational(1);
    return S->element(std::move(v));
  };
  for (std::size_t i = 1; i <= m; ++i) {
    std::vector<Rational> v(sdim, Rational(0));
    v[ut_unit_index(t, i, i)] = Rational(1);
    v[ut_unit_index(t, t + 1 - i, t + 1 - i)] = Rational(-1);
    out.named.X.push_back(S->element(std::move(v)));
    out.named.Y.push_back(s_unit(upper_at.at({i, i})));
    out.named.Z.push_back(s_unit(lower_at.at({i, i})));
  }
  for (std::size_t i = 1; i <= t; ++i)
    for (std::size_t j = i; j <= t; ++j)
      out.named.E.emplace(std::make_pair(i, j), s_unit(ut_unit_index(t, i, j)));
  {
    std::vector<Rational> v(sdim, Rational(0));
    for (std::size_t k = 1; k <= t; ++k) v[ut_unit_index(t, k, k)] = Rational(1);
    out.named.Ibig = S->element(std::move(v));
  }
  {
    std::vector<Rational> v(sdim, Rational(0));
    for (std::size_t k = 1; k <= m; ++k) v[upper_at.at({k, k})] = Rational(1);
    if (t % 2 == 1) v[upper_at.at({m + 1, m + 1})] = Rational(1);
    out.named.Y0 = S->element(std::move(v));
  }
  if (t % 2 == 1) out.named.b = s_unit(upper_at.at({m + 1, m + 1}));
  return out;
}

SAlgebra build_from_spec(const std::string& text) {
  auto fail = [&]() -> SAlgebra {
    throw std::invalid_argument("bad algebra spec '" + text +
                                "', expected S(t=<count>,inv=orth|sympl)");
  };
  const std::string pre = "S(t=";
  if (text.rfind(pre, 0) != 0) return fail();
  const std::size_t comma = text.find(',', pre.size());
  if (comma == std::string::npos) return fail();
  std::size_t t = 0;
  try {
    std::size_t used = 0;
    t = std::stoul(text.substr(pre.size(), comma - pre.size()), &used);
    if (used != comma - pre.size()) return fail();
  } catch (const std::exception&) {
    return fail();
  }
  const std::string mid = ",inv=";
  if (text.compare(comma, mid.size(), mid) != 0) return fail();
  const std::size_t vstart = comma + mid.size();
  if (text.back() != ')') return fail();
  const std::string val = text.substr(vstart, text.size() - 1 - vstart);
  InvolutionKind kind;
  if (val == "orth")
    kind = InvolutionKind::Orthogonal;
  else if (val == "sympl")
    kind = InvolutionKind::Symplectic;
  else
    return fail();
  return build_S(t, kind);
}

ZIdealInfo z_graded_ideal(const SAlgebra& S) {
  const AlgebraPtr& alg = S.algebra;
  const std::vector<long>& zd = *alg->z_degree();
  std::vector<Element> gens;
  for (std::size_t k = 0; k < alg->dim(); ++k)
    if (zd[k] >= 1) gens.push_back(alg->basis_element(k));
  if (S.t % 2 == 1) gens.push_back(*S.named.b);
  Subspace ideal = Subspace::span(alg, gens);
  if (!(sum(bracket_span(ideal, Subspace::full(alg)), ideal) == ideal))
    throw std::logic_error("graded subspace is not an ideal");
  std::vector<Subspace> chain = power_series(ideal);
  if (!chain.back().is_zero()) throw std::logic_error("graded ideal is not nilpotent");
  std::vector<Subspace> ln = left_normed_power_series(ideal);
  std::size_t codim = alg->dim() - ideal.dim();
  return ZIdealInfo{std::move(ideal), codim, chain.size(), ln.size()};
}

}  // namespace picodim
