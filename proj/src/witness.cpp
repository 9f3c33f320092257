#include "picodim/witness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace picodim {

BracketTree BracketTree::make_leaf(Variable v) {
  BracketTree t;
  t.leaf = std::move(v);
  return t;
}

BracketTree BracketTree::make_node(std::vector<BracketTree> ch) {
  if (ch.size() < 2) throw std::invalid_argument("bracket node needs at least two children");
  BracketTree t;
  t.children = std::move(ch);
  return t;
}

Parity BracketTree::parity() const {
  if (is_leaf()) return leaf.parity;
  Parity p = Parity::Even;
  for (const auto& c : children) p = p + c.parity();
  return p;
}

void BracketTree::collect_variables(std::vector<Variable>& out) const {
  if (is_leaf()) {
    out.push_back(leaf);
    return;
  }
  for (const auto& c : children) c.collect_variables(out);
}

std::size_t WitnessSpec::degree() const {
  std::vector<Variable> vs;
  tree.collect_variables(vs);
  return vs.size();
}

std::size_t WitnessSpec::even_degree() const {
  std::vector<Variable> vs;
  tree.collect_variables(vs);
  std::size_t k = 0;
  for (const auto& v : vs)
    if (v.parity == Parity::Even) ++k;
  return k;
}

namespace {

std::string idx_pair(std::size_t i, std::size_t j) {
  if (i < 10 && j < 10) return std::to_string(i) + std::to_string(j);
  return std::to_string(i) + "_" + std::to_string(j);
}

std::string cell(std::size_t i, std::size_t j) { return "e" + idx_pair(i, j); }

SparseVec to_sparse(const Element& e) {
  SparseVec v;
  for (std::size_t i = 0; i < e.coords().size(); ++i)
    if (!e.coords()[i].is_zero()) v.emplace_back(i, e.coords()[i]);
  return v;
}

// a + sign*b over index-sorted sparse vectors
SparseVec sv_add(const SparseVec& a, const SparseVec& b, int sign) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, b[j].second * Rational(sign));
      ++j;
    } else {
      Rational c = a[i].second + b[j].second * Rational(sign);
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

struct CompiledNode {
  int leaf_id = -1;
  std::vector<CompiledNode> ch;
};

int permutation_sign(const std::vector<std::size_t>& perm) {
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) s = -s;
  return s;
}

// Tree evaluation over sparse coordinates; slots can be retargeted so that
// alternation sums reuse one compiled tree.
class TreeEvaluator {
 public:
  TreeEvaluator(const BracketTree& tree, const Assignment& a, AlgebraPtr alg)
      : alg_(std::move(alg)), scratch_(alg_->dim(), Rational(0)) {
    tree.collect_variables(vars_);
    std::sort(vars_.begin(), vars_.end());
    for (std::size_t i = 1; i < vars_.size(); ++i)
      if (vars_[i].name == vars_[i - 1].name)
        throw std::invalid_argument("variable repeats in bracket tree: " + vars_[i].name);
    base_.resize(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = a.find(vars_[i].name);
      if (it == a.end()) throw std::invalid_argument("no assignment for variable " + vars_[i].name);
      const Element& e = it->second;
      if (e.algebra() != alg_)
        throw std::invalid_argument("assignment for " + vars_[i].name +
                                    " lives in a different algebra");
      bool ok = vars_[i].parity == Parity::Even ? e.is_even() : e.is_odd();
      if (!ok) throw std::invalid_argument("assignment for " + vars_[i].name + " has the wrong parity");
      base_[i] = to_sparse(e);
    }
    slots_.resize(vars_.size());
    source_.resize(vars_.size());
    reset_slots();
    root_ = compile(tree);
  }

  int id_of(const std::string& name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), Variable{name, Parity::Even});
    if (it == vars_.end() || it->name != name)
      throw std::invalid_argument("unknown variable " + name);
    return static_cast<int>(it - vars_.begin());
  }

  const std::vector<Variable>& variables() const { return vars_; }
  const CompiledNode& root() const { return root_; }
  const SparseVec& slot(int id) const { return *slots_[id]; }
  int source_of(int id) const { return source_[id]; }

  void point_slot(int id, int source_id) {
    slots_[id] = &base_[source_id];
    source_[id] = source_id;
  }
  void reset_slots() {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      slots_[i] = &base_[i];
      source_[i] = static_cast<int>(i);
    }
  }

  SparseVec eval_node(const CompiledNode& n) const {
    if (n.leaf_id >= 0) return *slots_[n.leaf_id];
    SparseVec acc = eval_node(n.ch[0]);
    for (std::size_t i = 1; i < n.ch.size(); ++i) {
      if (acc.empty()) return acc;
      acc = sbracket(acc, eval_node(n.ch[i]));
    }
    return acc;
  }

  SparseVec run() const { return eval_node(root_); }

  Element to_element(const SparseVec& v) const {
    std::vector<Rational> c(alg_->dim(), Rational(0));
    for (const auto& [k, val] : v) c[k] = val;
    return alg_->element(std::move(c));
  }

  SparseVec sbracket(const SparseVec& a, const SparseVec& b) const {
    touched_.clear();
    for (const auto& [i, ca] : a)
      for (const auto& [j, cb] : b) {
        const SparseVec& row = alg_->product_entry(i, j);
        if (row.empty()) continue;
        Rational cc = ca * cb;
        for (const auto& [k, c] : row) {
          if (scratch_[k].is_zero()) touched_.push_back(k);
          scratch_[k] += cc * c;
        }
      }
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    for (std::size_t k : touched_) {
      if (!scratch_[k].is_zero()) out.emplace_back(k, scratch_[k]);
      scratch_[k] = Rational(0);
    }
    return out;
  }

 private:
  CompiledNode compile(const BracketTree& t) const {
    CompiledNode n;
    if (t.is_leaf()) {
      n.leaf_id = id_of(t.leaf.name);
      return n;
    }
    for (const auto& c : t.children) n.ch.push_back(compile(c));
    return n;
  }

  AlgebraPtr alg_;
  std::vector<Variable> vars_;
  std::vector<SparseVec> base_;
  std::vector<const SparseVec*> slots_;
  std::vector<int> source_;
  CompiledNode root_;
  mutable std::vector<Rational> scratch_;
  mutable std::vector<std::size_t> touched_;
};

// runs fn once per tuple of per-set permutations with the product sign;
// inside fn the evaluator's slots follow the current tuple
template <typename Fn>
void for_each_alternation(TreeEvaluator& ev, const std::vector<std::vector<Variable>>& sets,
                          Fn&& fn) {
  std::vector<std::vector<int>> ids(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (const auto& v : sets[s]) ids[s].push_back(ev.id_of(v.name));
    std::sort(ids[s].begin(), ids[s].end());
  }
  std::vector<std::vector<std::size_t>> perms(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) {
    perms[s].resize(ids[s].size());
    std::iota(perms[s].begin(), perms[s].end(), 0);
  }
  auto rec = [&](auto&& self, std::size_t s, int sign) -> void {
    if (s == sets.size()) {
      fn(sign);
      return;
    }
    do {
      int sg = permutation_sign(perms[s]);
      for (std::size_t i = 0; i < ids[s].size(); ++i)
        ev.point_slot(ids[s][i], ids[s][perms[s][i]]);
      self(self, s + 1, sign * sg);
    } while (std::next_permutation(perms[s].begin(), perms[s].end()));
    for (std::size_t i = 0; i < ids[s].size(); ++i) ev.point_slot(ids[s][i], ids[s][i]);
  };
  rec(rec, 0, 1);
}

void check_sets(const WitnessSpec& w) {
  std::vector<Variable> vs;
  w.tree.collect_variables(vs);
  std::sort(vs.begin(), vs.end());
  std::set<std::string> used;
  for (const auto& set : w.alt_sets) {
    if (set.empty()) throw std::invalid_argument("empty alternating set");
    for (const auto& v : set) {
      if (v.parity != set.front().parity)
        throw std::invalid_argument("alternating set mixes parities");
      if (!std::binary_search(vs.begin(), vs.end(), v))
        throw std::invalid_argument("alternating set names absent variable " + v.name);
      if (!used.insert(v.name).second)
        throw std::invalid_argument("variable " + v.name + " repeats across alternating sets");
    }
  }
}

void collect_leaf_ids(const CompiledNode& n, std::vector<int>& out) {
  if (n.leaf_id >= 0) {
    out.push_back(n.leaf_id);
    return;
  }
  for (const auto& c : n.ch) collect_leaf_ids(c, out);
}

}  // namespace

Element eval_plain(const WitnessSpec& w, const Assignment& a) {
  if (!w.target || !w.target->algebra) throw std::invalid_argument("witness has no algebra");
  TreeEvaluator ev(w.tree, a, w.target->algebra);
  return ev.to_element(ev.run());
}

Element eval_plain(const WitnessSpec& w) { return eval_plain(w, w.assignment); }

Element eval_alternated(const WitnessSpec& w, const Assignment& a) {
  if (!w.target || !w.target->algebra) throw std::invalid_argument("witness has no algebra");
  check_sets(w);
  TreeEvaluator ev(w.tree, a, w.target->algebra);
  std::vector<Rational> acc(w.target->algebra->dim(), Rational(0));
  const CompiledNode& root = ev.root();

  if (root.leaf_id >= 0) {
    for_each_alternation(ev, w.alt_sets, [&](int sign) {
      for (const auto& [k, v] : ev.run()) acc[k] += v * Rational(sign);
    });
    return w.target->algebra->element(std::move(acc));
  }

  // The top-level factors see disjoint variables, so a factor's value only
  // depends on where the tuple sends its own alternated slots; caching per
  // factor collapses most of the permutation orbit.
  std::vector<char> alternated(ev.variables().size(), 0);
  for (const auto& set : w.alt_sets)
    for (const auto& v : set) alternated[ev.id_of(v.name)] = 1;
  std::size_t nc = root.ch.size();
  std::vector<std::vector<int>> key_ids(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    std::vector<int> leaves;
    collect_leaf_ids(root.ch[i], leaves);
    for (int id : leaves)
      if (alternated[id]) key_ids[i].push_back(id);
    std::sort(key_ids[i].begin(), key_ids[i].end());
  }
  std::vector<std::map<std::vector<int>, SparseVec>> memo(nc);
  std::vector<int> key;
  for_each_alternation(ev, w.alt_sets, [&](int sign) {
    SparseVec v;
    bool dead = false;
    for (std::size_t i = 0; i < nc; ++i) {
      key.clear();
      for (int id : key_ids[i]) key.push_back(ev.source_of(id));
      auto it = memo[i].find(key);
      if (it == memo[i].end()) it = memo[i].emplace(key, ev.eval_node(root.ch[i])).first;
      const SparseVec& cv = it->second;
      if (cv.empty()) {
        dead = true;
        break;
      }
      v = i == 0 ? cv : ev.sbracket(v, cv);
      if (v.empty()) {
        dead = true;
        break;
      }
    }
    if (!dead)
      for (const auto& [k, c] : v) acc[k] += c * Rational(sign);
  });
  return w.target->algebra->element(std::move(acc));
}

Element eval_alternated(const WitnessSpec& w) { return eval_alternated(w, w.assignment); }

// ---------------------------------------------------------------------------
// construction

namespace {

Variable yvar(std::size_t i, std::size_t j) {
  return {"y" + std::to_string(i) + "s" + std::to_string(j), Parity::Odd};
}
Variable zvar(std::size_t i, std::size_t j) {
  return {"z" + std::to_string(i) + "s" + std::to_string(j), Parity::Odd};
}
Variable copy_var(std::size_t k, std::size_t j) {
  return {cell(k, k) + "c" + std::to_string(j), Parity::Even};
}
Variable center_var(std::size_t j) { return {"idc" + std::to_string(j), Parity::Even}; }
Variable base_var(std::size_t k) { return {cell(k, k + 1), Parity::Even}; }

BracketTree lf(Variable v) { return BracketTree::make_leaf(std::move(v)); }

// staggered superscripts: the y of one alternating set pairs with the z of
// the previous one, otherwise the pair dies under alternation
BracketTree pair_node(std::size_t i, std::size_t j) {
  return BracketTree::make_node({lf(yvar(i, j + 1)), lf(zvar(i, j))});
}

}  // namespace

WitnessSpec witness_W(std::size_t p, std::size_t q, std::shared_ptr<const SAlgebra> S) {
  if (!S || !S->algebra) throw std::invalid_argument("witness needs an algebra");
  if (p < 1 || q < 1) throw std::invalid_argument("replication degrees must be at least 1");
  const std::size_t t = S->t;
  const std::size_t m = S->m;
  const auto& named = S->named;

  WitnessSpec w;
  w.target = S;

  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= p + 1; ++j) w.assignment[yvar(i, j).name] = named.Y[i - 1];
    for (std::size_t j = 0; j <= p; ++j) w.assignment[zvar(i, j).name] = named.Z[i - 1];
  }
  w.assignment["y0"] = named.Y0;

  std::vector<BracketTree> chains;
  std::size_t diag_count = 0;  // diagonal cells that receive copies

  if (t % 2 == 0 && t >= 4) {
    diag_count = 2 * m - 1;
    for (std::size_t k = 1; k <= 2 * m - 2; ++k) {
      std::vector<BracketTree> ch;
      ch.push_back(lf(base_var(k)));
      if (k == 1) {
        ch.push_back(lf({cell(1, 1) + "x", Parity::Even}));  // count-restoring anchor
        for (std::size_t j = 1; j <= p; ++j) ch.push_back(pair_node(1, j));
        for (std::size_t j = 0; j <= p; ++j) ch.push_back(pair_node(2, j));
      } else if (k + 1 <= m) {
        for (std::size_t j = 0; j <= p; ++j) ch.push_back(pair_node(k + 1, j));
      }
      for (std::size_t j = 1; j <= q; ++j) ch.push_back(lf(copy_var(k + 1, j)));
      chains.push_back(BracketTree::make_node(std::move(ch)));
      w.assignment[base_var(k).name] = named.E.at({k, k + 1});
    }
    w.assignment[cell(1, 1) + "x"] = named.E.at({1, 1});
    // z-chain: the cap goes after the copies; a diagonal acting on the
    // capped chain would annihilate it
    std::vector<BracketTree> zc;
    zc.push_back(lf(zvar(1, 0)));
    for (std::size_t j = 1; j <= q; ++j) zc.push_back(lf(copy_var(1, j)));
    zc.push_back(lf(yvar(1, 1)));
    chains.push_back(BracketTree::make_node(std::move(zc)));
  } else if (t == 2) {
    // one chain holds every pair; no anchor and no z-chain
    diag_count = 1;
    std::vector<BracketTree> ch;
    ch.push_back(lf(base_var(1)));
    for (std::size_t j = 0; j <= p; ++j) ch.push_back(pair_node(1, j));
    for (std::size_t j = 1; j <= q; ++j) ch.push_back(lf(copy_var(1, j)));
    chains.push_back(BracketTree::make_node(std::move(ch)));
    w.assignment[base_var(1).name] = named.E.at({1, 2});
  } else {
    // odd t: every diagonal line carries its own copies
    diag_count = 2 * m;
    for (std::size_t k = 1; k <= 2 * m; ++k) {
      std::vector<BracketTree> ch;
      ch.push_back(lf(base_var(k)));
      if (k <= m)
        for (std::size_t j = 0; j <= p; ++j) ch.push_back(pair_node(k, j));
      for (std::size_t j = 1; j <= q; ++j) ch.push_back(lf(copy_var(k, j)));
      chains.push_back(BracketTree::make_node(std::move(ch)));
      w.assignment[base_var(k).name] = named.E.at({k, k + 1});
    }
  }

  for (std::size_t k = 1; k <= diag_count; ++k)
    for (std::size_t j = 1; j <= q; ++j) w.assignment[copy_var(k, j).name] = named.E.at({k, k});

  std::vector<BracketTree> g;
  g.push_back(lf({"y0", Parity::Odd}));
  for (std::size_t j = 1; j <= q; ++j) {
    g.push_back(lf(center_var(j)));
    w.assignment[center_var(j).name] = named.Ibig;
  }
  chains.push_back(BracketTree::make_node(std::move(g)));

  w.tree = chains.size() == 1 ? std::move(chains[0]) : BracketTree::make_node(std::move(chains));

  for (std::size_t j = 1; j <= q; ++j) {
    std::vector<Variable> set;
    for (std::size_t k = 1; k <= diag_count; ++k) set.push_back(copy_var(k, j));
    set.push_back(center_var(j));
    w.alt_sets.push_back(std::move(set));
  }
  for (std::size_t j = 1; j <= p; ++j) {
    std::vector<Variable> set;
    for (std::size_t i = 1; i <= m; ++i) {
      set.push_back(yvar(i, j));
      set.push_back(zvar(i, j));
    }
    w.alt_sets.push_back(std::move(set));
  }

  std::ostringstream d;
  d << "w(p=" << p << ",q=" << q << ") on " << S->algebra->name();
  w.description = d.str();
  return w;
}

WitnessSpec witness_W(std::size_t p, std::size_t q, std::size_t t, InvolutionKind kind) {
  auto S = std::make_shared<SAlgebra>(build_S(t, kind));
  return witness_W(p, q, std::move(S));
}

WitnessSpec witness_a(int level, std::size_t m, std::shared_ptr<const SAlgebra> S) {
  if (!S || !S->algebra) throw std::invalid_argument("witness needs an algebra");
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (S->t != 2 * m) throw std::invalid_argument("these elements live in S(2m)");
  const auto& named = S->named;

  if (level == 3) {
    WitnessSpec w = witness_W(1, 1, S);
    w.description = "a3 on " + S->algebra->name();
    return w;
  }

  WitnessSpec w;
  w.target = S;
  std::vector<BracketTree> blocks;
  if (level == 1) {
    // [e_{i,i+1}, d_i] blocks with all the d_i alternated together
    std::vector<Variable> set;
    for (std::size_t i = 1; i <= m; ++i) {
      Variable d = copy_var(i, 1);
      blocks.push_back(BracketTree::make_node({lf(base_var(i)), lf(d)}));
      w.assignment[base_var(i).name] = named.E.at({i, i + 1});
      w.assignment[d.name] = named.E.at({i, i});
      set.push_back(d);
    }
    w.alt_sets.push_back(std::move(set));
    w.description = "a1";
  } else if (level == 2) {
    // [e_{i,i+1}, [ya_i, zp_i], [yp_i, za_i]]: the first pair's y and the
    // second pair's z form the one odd alternating set
    std::vector<Variable> set;
    for (std::size_t i = 1; i <= m; ++i) {
      Variable ya{"ya" + std::to_string(i), Parity::Odd};
      Variable za{"za" + std::to_string(i), Parity::Odd};
      Variable yp{"yp" + std::to_string(i), Parity::Odd};
      Variable zp{"zp" + std::to_string(i), Parity::Odd};
      blocks.push_back(BracketTree::make_node({lf(base_var(i)),
                                               BracketTree::make_node({lf(ya), lf(zp)}),
                                               BracketTree::make_node({lf(yp), lf(za)})}));
      w.assignment[base_var(i).name] = named.E.at({i, i + 1});
      w.assignment[ya.name] = named.Y[i - 1];
      w.assignment[yp.name] = named.Y[i - 1];
      w.assignment[za.name] = named.Z[i - 1];
      w.assignment[zp.name] = named.Z[i - 1];
      set.push_back(ya);
      set.push_back(za);
    }
    w.alt_sets.push_back(std::move(set));
    w.description = "a2";
  } else {
    throw std::invalid_argument("level must be 1, 2 or 3");
  }
  w.tree = blocks.size() == 1 ? std::move(blocks[0]) : BracketTree::make_node(std::move(blocks));
  w.description += " on " + S->algebra->name();
  return w;
}

WitnessSpec witness_a(int level, std::size_t m, InvolutionKind kind) {
  auto S = std::make_shared<SAlgebra>(build_S(2 * m, kind));
  return witness_a(level, m, std::move(S));
}

WitnessSpec padded_witness(const WitnessSpec& w, std::size_t i, std::size_t j) {
  if (i + j == 0) return w;
  if (!w.target) throw std::invalid_argument("witness has no algebra");
  WitnessSpec out = w;
  std::vector<BracketTree> ch;
  ch.push_back(w.tree);
  for (std::size_t a = 1; a <= i; ++a) {
    Variable v{"padx" + std::to_string(a), Parity::Even};
    ch.push_back(lf(v));
    out.assignment[v.name] = w.target->named.E.at({1, 1});
  }
  for (std::size_t b = 1; b <= j; ++b) {
    Variable v{"pady" + std::to_string(b), Parity::Odd};
    ch.push_back(lf(v));
    // Z_1, Y_1, Z_1, ... starting with Z_1; a Y-first pad meets an upper
    // triangular value and kills the product
    out.assignment[v.name] = (b % 2 == 1) ? w.target->named.Z[0] : w.target->named.Y[0];
  }
  out.tree = BracketTree::make_node(std::move(ch));
  out.description = w.description + " padded(" + std::to_string(i) + "," + std::to_string(j) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// flattening and the formal-vs-summed cross-check

namespace {

struct SignedWord {
  int sign;
  std::vector<Variable> word;
};

// [U, [P, Q]] = [[U, P], Q] - (-1)^{|P||Q|} [[U, Q], P]
void combine(std::vector<SignedWord>& acc, const BracketTree& tree, std::uint64_t budget);

void combine_pair(std::vector<SignedWord>& acc, const BracketTree& p, const BracketTree& q,
                  std::uint64_t budget) {
  std::vector<SignedWord> right = acc;
  combine(acc, p, budget);
  combine(acc, q, budget);
  combine(right, q, budget);
  combine(right, p, budget);
  int flip = (p.parity() == Parity::Odd && q.parity() == Parity::Odd) ? 1 : -1;
  for (auto& sw : right) sw.sign *= flip;
  if (acc.size() + right.size() > budget)
    throw std::runtime_error("bracket expansion exceeds the term budget (" +
                             std::to_string(acc.size() + right.size()) + " terms so far)");
  acc.insert(acc.end(), right.begin(), right.end());
}

void combine(std::vector<SignedWord>& acc, const BracketTree& tree, std::uint64_t budget) {
  if (tree.is_leaf()) {
    for (auto& sw : acc) sw.word.push_back(tree.leaf);
    return;
  }
  if (tree.children.size() == 2) {
    combine_pair(acc, tree.children[0], tree.children[1], budget);
    return;
  }
  BracketTree head;
  head.children.assign(tree.children.begin(), tree.children.end() - 1);
  if (head.children.size() == 1) head = head.children[0];
  combine_pair(acc, head, tree.children.back(), budget);
}

std::vector<SignedWord> flatten_signed(const BracketTree& tree, std::uint64_t budget) {
  if (tree.is_leaf()) return {{1, {tree.leaf}}};
  std::vector<SignedWord> acc;
  if (tree.children[0].is_leaf())
    acc.push_back({1, {tree.children[0].leaf}});
  else
    acc = flatten_signed(tree.children[0], budget);
  for (std::size_t i = 1; i < tree.children.size(); ++i) combine(acc, tree.children[i], budget);
  return acc;
}

// word count of the expansion, mirroring the doubling structure of combine
std::uint64_t combine_weight(const BracketTree& t) {
  if (t.is_leaf()) return 1;
  if (t.children.size() == 2)
    return 2 * combine_weight(t.children[0]) * combine_weight(t.children[1]);
  BracketTree head;
  head.children.assign(t.children.begin(), t.children.end() - 1);
  if (head.children.size() == 1) head = head.children[0];
  return 2 * combine_weight(head) * combine_weight(t.children.back());
}

std::uint64_t flatten_count(const BracketTree& tree) {
  if (tree.is_leaf()) return 1;
  std::uint64_t c = tree.children[0].is_leaf() ? 1 : flatten_count(tree.children[0]);
  for (std::size_t i = 1; i < tree.children.size(); ++i) c *= combine_weight(tree.children[i]);
  return c;
}

Parity span_parity(const std::vector<BracketTree>& ch, std::size_t lo, std::size_t hi) {
  Parity p = Parity::Even;
  for (std::size_t i = lo; i < hi; ++i) p = p + ch[i].parity();
  return p;
}

// Sum of the left-normed folds of every expanded word of [seed, tree],
// computed without enumerating the words: the fold is linear in its seed,
// so both branches of the rewriting rule collapse into seeded sums.
SparseVec formal_fold(TreeEvaluator& ev, const SparseVec& seed, const BracketTree& tree);

SparseVec formal_fold_span(TreeEvaluator& ev, const SparseVec& seed,
                           const std::vector<BracketTree>& ch, std::size_t lo, std::size_t hi) {
  if (seed.empty()) return {};
  if (hi - lo == 1) return formal_fold(ev, seed, ch[lo]);
  SparseVec via_p = formal_fold(ev, formal_fold_span(ev, seed, ch, lo, hi - 1), ch[hi - 1]);
  SparseVec via_q = formal_fold_span(ev, formal_fold(ev, seed, ch[hi - 1]), ch, lo, hi - 1);
  int flip =
      (span_parity(ch, lo, hi - 1) == Parity::Odd && ch[hi - 1].parity() == Parity::Odd) ? 1 : -1;
  return sv_add(via_p, via_q, flip);
}

SparseVec formal_fold(TreeEvaluator& ev, const SparseVec& seed, const BracketTree& tree) {
  if (seed.empty()) return {};
  if (tree.is_leaf()) return ev.sbracket(seed, ev.slot(ev.id_of(tree.leaf.name)));
  return formal_fold_span(ev, seed, tree.children, 0, tree.children.size());
}

SparseVec formal_value(TreeEvaluator& ev, const BracketTree& tree) {
  if (tree.is_leaf()) return ev.slot(ev.id_of(tree.leaf.name));
  SparseVec acc = formal_value(ev, tree.children[0]);
  for (std::size_t i = 1; i < tree.children.size(); ++i)
    acc = formal_fold(ev, acc, tree.children[i]);
  return acc;
}

}  // namespace

MultiPoly flatten_tree(const BracketTree& t, std::uint64_t budget) {
  std::uint64_t est = flatten_count(t);
  if (est > budget)
    throw std::runtime_error("bracket expansion needs " + std::to_string(est) +
                             " terms, over the budget of " + std::to_string(budget));
  std::vector<Monomial> terms;
  for (auto& sw : flatten_signed(t, budget))
    terms.push_back({Rational(sw.sign), std::move(sw.word)});
  return MultiPoly::from_terms(std::move(terms));
}

PolyScript witness_script(const WitnessSpec& w, std::uint64_t budget) {
  PolyScript s;
  s.poly = flatten_tree(w.tree, budget);
  s.declarations = s.poly.variables();
  for (const auto& set : w.alt_sets) {
    auto sorted = set;
    std::sort(sorted.begin(), sorted.end());
    s.alt_sets.push_back(std::move(sorted));
  }
  return s;
}

ConsistencyReport alternation_consistency(const WitnessSpec& w, std::uint64_t budget) {
  if (!w.target || !w.target->algebra) throw std::invalid_argument("witness has no algebra");
  check_sets(w);
  ConsistencyReport rep;

  std::uint64_t words = flatten_count(w.tree);
  std::uint64_t tuples = 1;
  bool capped = false;
  for (const auto& set : w.alt_sets) {
    for (std::size_t i = 2; i <= set.size(); ++i) {
      if (tuples > budget / i) {
        capped = true;
        break;
      }
      tuples *= i;
    }
    if (capped) break;
  }
  if (!capped && words > budget / tuples) capped = true;
  if (capped) {
    double est = static_cast<double>(words);
    for (const auto& set : w.alt_sets)
      for (std::size_t i = 2; i <= set.size(); ++i) est *= static_cast<double>(i);
    std::ostringstream n;
    n << "formal alternated expansion has about " << est << " terms, over the budget of " << budget
      << "; not checked";
    rep.checked = false;
    rep.term_count = 0;
    rep.note = n.str();
    return rep;
  }
  rep.term_count = words * tuples;

  // formal side: the alternated expansion evaluated term by term, with the
  // word enumeration collapsed through linearity of the fold in its seed
  TreeEvaluator ev(w.tree, w.assignment, w.target->algebra);
  std::vector<Rational> formal(w.target->algebra->dim(), Rational(0));
  for_each_alternation(ev, w.alt_sets, [&](int sign) {
    for (const auto& [k, c] : formal_value(ev, w.tree)) formal[k] += c * Rational(sign);
  });
  Element formal_el = w.target->algebra->element(std::move(formal));

  Element summed = eval_alternated(w);
  rep.checked = true;
  rep.consistent = formal_el == summed;
  rep.note = rep.consistent ? "formal and summed evaluations agree"
                            : "formal and summed evaluations differ";
  return rep;
}

}  // namespace picodim
