#include "picodim/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace picodim {

namespace {

// word comparison for the canonical term order
bool word_less(const std::vector<Variable>& a, const std::vector<Variable>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_word(const std::vector<Variable>& word) {
  if (word.empty()) throw std::invalid_argument("monomial word is empty");
  std::set<std::string> seen;
  for (const auto& v : word) {
    if (v.name.empty()) throw std::invalid_argument("variable with empty name");
    if (!seen.insert(v.name).second)
      throw std::invalid_argument("variable repeats in monomial: " + v.name);
  }
}

// the common variable set of a word, sorted; throws on parity clashes
std::vector<Variable> sorted_vars(const std::vector<Variable>& word) {
  std::vector<Variable> vars = word;
  std::sort(vars.begin(), vars.end());
  for (std::size_t i = 1; i < vars.size(); ++i)
    if (vars[i].name == vars[i - 1].name && vars[i].parity != vars[i - 1].parity)
      throw std::invalid_argument("variable " + vars[i].name + " declared with both parities");
  return vars;
}

}  // namespace

MultiPoly MultiPoly::zero(std::vector<Variable> vars) {
  std::sort(vars.begin(), vars.end());
  for (std::size_t i = 1; i < vars.size(); ++i)
    if (vars[i].name == vars[i - 1].name)
      throw std::invalid_argument("duplicate variable " + vars[i].name);
  MultiPoly p;
  p.vars_ = std::move(vars);
  return p;
}

MultiPoly MultiPoly::monomial(Rational coeff, std::vector<Variable> word) {
  check_word(word);
  MultiPoly p;
  p.vars_ = sorted_vars(word);
  if (!coeff.is_zero()) p.terms_.push_back({std::move(coeff), std::move(word)});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Monomial> terms) {
  if (terms.empty()) throw std::invalid_argument("from_terms needs at least one term to fix the variable set");
  for (const auto& t : terms) check_word(t.word);
  MultiPoly p;
  p.vars_ = sorted_vars(terms.front().word);
  for (const auto& t : terms)
    if (sorted_vars(t.word) != p.vars_)
      throw std::invalid_argument("terms use different variable sets");
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return word_less(a.word, b.word); });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().word == t.word)
      p.terms_.back().coeff += t.coeff;
    else
      p.terms_.push_back(std::move(t));
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
  }
  return p;
}

std::size_t MultiPoly::even_count() const {
  std::size_t k = 0;
  for (const auto& v : vars_)
    if (v.parity == Parity::Even) ++k;
  return k;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("adding polynomials over different variable sets");
  std::vector<Monomial> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  if (all.empty()) return *this;
  MultiPoly p = from_terms(std::move(all));
  p.vars_ = vars_;
  return p;
}

MultiPoly MultiPoly::operator-() const { return *this * Rational(-1); }

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly p = *this;
  if (c.is_zero()) {
    p.terms_.clear();
    return p;
  }
  for (auto& t : p.terms_) t.coeff = t.coeff * c;
  return p;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].word != o.terms_[i].word) return false;
  return true;
}

Element evaluate_word(const std::vector<Variable>& word, const Assignment& a) {
  if (word.empty()) throw std::invalid_argument("empty word");
  auto fetch = [&](const Variable& v) -> const Element& {
    auto it = a.find(v.name);
    if (it == a.end()) throw std::invalid_argument("no assignment for variable " + v.name);
    const Element& e = it->second;
    bool ok = (v.parity == Parity::Even) ? e.is_even() : e.is_odd();
    if (!ok)
      throw std::invalid_argument("assignment for " + v.name + " has the wrong parity");
    return it->second;
  };
  Element acc = fetch(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) acc = bracket(acc, fetch(word[i]));
  return acc;
}

Element evaluate(const MultiPoly& p, const Assignment& a) {
  // validate the full assignment even when terms cancelled away
  for (const auto& v : p.variables()) {
    auto it = a.find(v.name);
    if (it == a.end()) throw std::invalid_argument("no assignment for variable " + v.name);
    bool ok = (v.parity == Parity::Even) ? it->second.is_even() : it->second.is_odd();
    if (!ok) throw std::invalid_argument("assignment for " + v.name + " has the wrong parity");
  }
  if (p.variables().empty()) throw std::invalid_argument("evaluating a polynomial with no variables");
  Element sum = a.begin()->second.algebra()->zero();
  for (const auto& t : p.terms()) sum = sum + evaluate_word(t.word, a) * t.coeff;
  return sum;
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, Variable>& images) {
  for (const auto& [from, to] : images) {
    auto it = std::lower_bound(p.variables().begin(), p.variables().end(), Variable{from, Parity::Even});
    if (it == p.variables().end() || it->name != from)
      throw std::invalid_argument("substituting absent variable " + from);
    if (it->parity != to.parity)
      throw std::invalid_argument("substitution changes parity of " + from);
  }
  std::vector<Monomial> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Monomial m{t.coeff, t.word};
    for (auto& v : m.word) {
      auto it = images.find(v.name);
      if (it != images.end()) v = it->second;
    }
    out.push_back(std::move(m));
  }
  if (out.empty()) {
    std::vector<Variable> vars = p.variables();
    for (auto& v : vars) {
      auto it = images.find(v.name);
      if (it != images.end()) v = it->second;
    }
    return MultiPoly::zero(vars);
  }
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly alternate(const MultiPoly& p, const std::vector<Variable>& subset) {
  if (subset.empty()) return p;
  std::vector<Variable> s = subset;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i].name == s[i - 1].name) throw std::invalid_argument("alternating set repeats " + s[i].name);
  for (const auto& v : s) {
    auto it = std::lower_bound(p.variables().begin(), p.variables().end(), v);
    if (it == p.variables().end() || it->name != v.name)
      throw std::invalid_argument("alternating over absent variable " + v.name);
    if (v.parity != s.front().parity || it->parity != v.parity)
      throw std::invalid_argument("alternating set mixes parities");
  }

  std::vector<std::size_t> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  MultiPoly sum = MultiPoly::zero(p.variables());
  do {
    // plain permutation sign; no parity signs enter at the formal level
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) sign = -sign;
    std::map<std::string, Variable> images;
    for (std::size_t i = 0; i < s.size(); ++i) images[s[i].name] = s[perm[i]];
    sum = sum + substitute(p, images) * Rational(sign);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

std::vector<std::vector<Variable>> spanning_words(std::size_t k, std::size_t m) {
  if (k + m == 0) throw std::invalid_argument("spanning set needs degree at least 1");
  std::vector<Variable> base;
  for (std::size_t i = 1; i <= k; ++i) base.push_back({"x" + std::to_string(i), Parity::Even});
  for (std::size_t i = 1; i <= m; ++i) base.push_back({"y" + std::to_string(i), Parity::Odd});
  std::vector<std::size_t> perm(base.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Variable>> words;
  do {
    std::vector<Variable> w;
    w.reserve(base.size());
    for (std::size_t i : perm) w.push_back(base[i]);
    words.push_back(std::move(w));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return words;
}

std::vector<MultiPoly> spanning_monomials(std::size_t k, std::size_t m) {
  std::vector<MultiPoly> out;
  for (auto& w : spanning_words(k, m)) out.push_back(MultiPoly::monomial(Rational(1), std::move(w)));
  return out;
}

namespace {

std::string join_names(const std::vector<Variable>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += vs[i].name;
  }
  return s;
}

void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

std::string read_ident(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  std::size_t start = i;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  if (i == start) throw std::invalid_argument("expected identifier in '" + s + "'");
  return s.substr(start, i - start);
}

}  // namespace

std::string poly_to_text(const PolyScript& s) {
  std::ostringstream out;
  for (const auto& v : s.declarations)
    out << (v.parity == Parity::Even ? "even " : "odd ") << v.name << "\n";
  for (const auto& set : s.alt_sets) out << "alt {" << join_names(set) << "}\n";
  for (const auto& t : s.poly.terms()) {
    out << t.coeff.str() << " * [";
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      if (i) out << ",";
      out << t.word[i].name;
    }
    out << "]\n";
  }
  return out.str();
}

PolyScript poly_from_text(const std::string& text) {
  PolyScript script;
  std::map<std::string, Variable> decls;
  std::vector<Monomial> terms;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
  };
  auto lookup = [&](const std::string& name) {
    auto it = decls.find(name);
    if (it == decls.end()) fail("undeclared variable " + name);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t i = 0;
    skip_ws(line, i);
    if (i == line.size() || line[i] == '#') continue;
    if (line.compare(i, 5, "even ") == 0 || line.compare(i, 4, "odd ") == 0) {
      Parity par = line[i] == 'e' ? Parity::Even : Parity::Odd;
      i += par == Parity::Even ? 5 : 4;
      std::string name = read_ident(line, i);
      if (decls.count(name)) fail("variable " + name + " declared twice");
      Variable v{name, par};
      decls[name] = v;
      script.declarations.push_back(v);
      skip_ws(line, i);
      if (i != line.size()) fail("trailing text after declaration");
      continue;
    }
    if (line.compare(i, 3, "alt") == 0) {
      i += 3;
      skip_ws(line, i);
      if (i == line.size() || line[i] != '{') fail("expected { after alt");
      ++i;
      std::vector<Variable> set;
      for (;;) {
        set.push_back(lookup(read_ident(line, i)));
        skip_ws(line, i);
        if (i < line.size() && line[i] == ',') {
          ++i;
          continue;
        }
        break;
      }
      if (i == line.size() || line[i] != '}') fail("expected } closing alt set");
      ++i;
      skip_ws(line, i);
      if (i != line.size()) fail("trailing text after alt set");
      script.alt_sets.push_back(std::move(set));
      continue;
    }
    // term: coefficient * [v1,v2,...]
    std::size_t star = line.find('*', i);
    if (star == std::string::npos) fail("expected 'coeff * [word]'");
    std::string coeff_str = line.substr(i, star - i);
    coeff_str.erase(std::remove_if(coeff_str.begin(), coeff_str.end(),
                                   [](char c) { return c == ' ' || c == '\t'; }),
                    coeff_str.end());
    Rational coeff;
    try {
      coeff = Rational::from_string(coeff_str);
    } catch (const std::exception&) {
      fail("bad coefficient '" + coeff_str + "'");
    }
    i = star + 1;
    skip_ws(line, i);
    if (i == line.size() || line[i] != '[') fail("expected [ after *");
    ++i;
    std::vector<Variable> word;
    for (;;) {
      word.push_back(lookup(read_ident(line, i)));
      skip_ws(line, i);
      if (i < line.size() && line[i] == ',') {
        ++i;
        continue;
      }
      break;
    }
    if (i == line.size() || line[i] != ']') fail("expected ] closing word");
    ++i;
    skip_ws(line, i);
    if (i != line.size()) fail("trailing text after term");
    terms.push_back({coeff, std::move(word)});
  }
  if (terms.empty()) fail("no terms");
  script.poly = MultiPoly::from_terms(std::move(terms));
  return script;
}

}  // namespace picodim
