// Copyright 2026 The taskground Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <tuple>

#include "taskground/ltl.hpp"

namespace taskground {

// Leaves hold null children so that building `true` does not recurse.
struct Formula::Node {
  Kind kind = Kind::True;
  Atom atom;
  Formula a;
  Formula b;

  Node(Kind k, Atom at) : kind(k), atom(std::move(at)), a(nullptr), b(nullptr) {}
  Node(Kind k, Formula x, Formula y) : kind(k), a(std::move(x)), b(std::move(y)) {}
};

std::string Atom::prop() const {
  switch (type) {
    case AtomType::State: return "x:" + name;
    case AtomType::Action: return "u:" + name;
    case AtomType::Obs: return "y:" + name;
  }
  return name;
}

bool is_unary(Kind k) {
  return k == Kind::Not || k == Kind::Next || k == Kind::Eventually || k == Kind::Always;
}

bool is_binary(Kind k) {
  return k == Kind::And || k == Kind::Or || k == Kind::Implies || k == Kind::Iff || k == Kind::Until ||
         k == Kind::Release || k == Kind::Unless;
}

Formula::Formula() {
  static const auto n = std::make_shared<const Node>(Kind::True, Atom{});
  n_ = n;
}

Formula Formula::top() { return Formula(); }
Formula Formula::bottom() {
  static const auto n = std::make_shared<const Node>(Kind::False, Atom{});
  return Formula(n);
}
Formula Formula::start() {
  static const auto n = std::make_shared<const Node>(Kind::Start, Atom{});
  return Formula(n);
}
Formula Formula::atom(AtomType type, std::string name) {
  return Formula(std::make_shared<const Node>(Kind::Atom, Atom{type, std::move(name)}));
}
Formula Formula::unary(Kind k, Formula f) {
  if (!is_unary(k)) throw std::invalid_argument("not a unary operator");
  return Formula(std::make_shared<const Node>(k, f, f));
}
Formula Formula::binary(Kind k, Formula a, Formula b) {
  if (!is_binary(k)) throw std::invalid_argument("not a binary operator");
  return Formula(std::make_shared<const Node>(k, std::move(a), std::move(b)));
}

Kind Formula::kind() const { return n_->kind; }
const Atom& Formula::atom() const { return n_->atom; }
const Formula& Formula::lhs() const { return n_->a; }
const Formula& Formula::rhs() const { return n_->b; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.n_ == y.n_) return true;
  if (x.kind() != y.kind()) return false;
  if (x.kind() == Kind::Atom) return x.atom() == y.atom();
  if (is_unary(x.kind())) return x.child() == y.child();
  if (is_binary(x.kind())) return x.lhs() == y.lhs() && x.rhs() == y.rhs();
  return true;
}

bool operator<(const Formula& x, const Formula& y) {
  if (x.n_ == y.n_) return false;
  if (x.kind() != y.kind()) return x.kind() < y.kind();
  if (x.kind() == Kind::Atom) return x.atom() < y.atom();
  if (is_unary(x.kind())) return x.child() < y.child();
  if (is_binary(x.kind())) {
    if (x.lhs() == y.lhs()) return x.rhs() < y.rhs();
    return x.lhs() < y.lhs();
  }
  return false;
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}

namespace {

Formula un(Kind k, Formula f) { return Formula::unary(k, std::move(f)); }
Formula bin(Kind k, Formula a, Formula b) { return Formula::binary(k, std::move(a), std::move(b)); }
Formula neg(Formula f) { return un(Kind::Not, std::move(f)); }

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' || c == '-';
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Formula run() {
    Formula f = iff();
    skip();
    if (p_ != s_.size()) fail("unexpected '" + s_.substr(p_, 1) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, p_); }

  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }

  bool eat(const std::string& tok) {
    skip();
    if (s_.compare(p_, tok.size(), tok) != 0) return false;
    p_ += tok.size();
    return true;
  }

  // Keyword operators must not run into a following name character.
  bool eat_word(char w) {
    skip();
    if (p_ < s_.size() && s_[p_] == w && (p_ + 1 >= s_.size() || !name_char(s_[p_ + 1]) || s_[p_ + 1] == '-')) {
      ++p_;
      return true;
    }
    return false;
  }

  Formula iff() {
    Formula a = imp();
    if (eat("<->")) return bin(Kind::Iff, a, iff());
    return a;
  }
  Formula imp() {
    Formula a = disj();
    if (eat("->")) return bin(Kind::Implies, a, imp());
    return a;
  }
  Formula disj() {
    Formula a = conj();
    if (eat("|")) return bin(Kind::Or, a, disj());
    return a;
  }
  Formula conj() {
    Formula a = temporal();
    if (eat("&")) return bin(Kind::And, a, conj());
    return a;
  }
  Formula temporal() {
    Formula a = unary();
    if (eat_word('U')) return bin(Kind::Until, a, temporal());
    if (eat_word('W')) return bin(Kind::Unless, a, temporal());
    if (eat_word('R')) return bin(Kind::Release, a, temporal());
    return a;
  }

  Formula unary() {
    skip();
    if (eat("!")) return neg(unary());
    // A run such as "GF" or "XXG" is a chain of unary operators.
    std::size_t q = p_;
    while (q < s_.size() && (s_[q] == 'X' || s_[q] == 'F' || s_[q] == 'G')) ++q;
    if (q > p_ && (q >= s_.size() || !name_char(s_[q]) || s_[q] == '-')) {
      const std::string ops = s_.substr(p_, q - p_);
      p_ = q;
      Formula f = unary();
      for (auto it = ops.rbegin(); it != ops.rend(); ++it)
        f = un(*it == 'X' ? Kind::Next : (*it == 'F' ? Kind::Eventually : Kind::Always), f);
      return f;
    }
    return primary();
  }

  std::string word() {
    const std::size_t begin = p_;
    while (p_ < s_.size() && name_char(s_[p_])) {
      if (s_[p_] == '-' && p_ + 1 < s_.size() && s_[p_ + 1] == '>') break;
      ++p_;
    }
    return s_.substr(begin, p_ - begin);
  }

  Formula primary() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end of formula");
    if (s_[p_] == '(') {
      ++p_;
      Formula f = iff();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (s_[p_] == '@') fail("reserved proposition '@start' cannot be used as an atom; write 'start'");
    const std::size_t begin = p_;
    if (p_ + 1 < s_.size() && s_[p_ + 1] == ':' && (s_[p_] == 'x' || s_[p_] == 'u' || s_[p_] == 'y')) {
      const char t = s_[p_];
      p_ += 2;
      if (p_ < s_.size() && s_[p_] == '@') fail("reserved proposition '@start' cannot be used as an atom");
      const std::string n = word();
      if (n.empty()) fail("expected a name after '" + std::string(1, t) + ":'");
      return Formula::atom(t == 'x' ? AtomType::State : (t == 'u' ? AtomType::Action : AtomType::Obs), n);
    }
    const std::string w = word();
    if (w == "true") return Formula::top();
    if (w == "false") return Formula::bottom();
    if (w == "start") return Formula::start();
    p_ = begin;
    if (w.empty()) fail("unexpected '" + s_.substr(p_, 1) + "'");
    fail("unknown token '" + w + "' (atoms are written x:<name>, u:<name> or y:<name>)");
  }

  const std::string& s_;
  std::size_t p_ = 0;
};

int precedence(Kind k) {
  switch (k) {
    case Kind::Iff: return 1;
    case Kind::Implies: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    case Kind::Until:
    case Kind::Release:
    case Kind::Unless: return 5;
    case Kind::Not:
    case Kind::Next:
    case Kind::Eventually:
    case Kind::Always: return 6;
    default: return 7;
  }
}

const char* op_text(Kind k) {
  switch (k) {
    case Kind::Iff: return " <-> ";
    case Kind::Implies: return " -> ";
    case Kind::Or: return " | ";
    case Kind::And: return " & ";
    case Kind::Until: return " U ";
    case Kind::Release: return " R ";
    case Kind::Unless: return " W ";
    case Kind::Not: return "!";
    case Kind::Next: return "X ";
    case Kind::Eventually: return "F ";
    case Kind::Always: return "G ";
    default: return "";
  }
}

void print(const Formula& f, std::string& out) {
  const Kind k = f.kind();
  auto wrapped = [&out](const Formula& g, bool parens) {
    if (parens) out += '(';
    print(g, out);
    if (parens) out += ')';
  };
  switch (k) {
    case Kind::True: out += "true"; return;
    case Kind::False: out += "false"; return;
    case Kind::Start: out += "start"; return;
    case Kind::Atom: out += f.atom().prop(); return;
    default: break;
  }
  const int p = precedence(k);
  if (is_unary(k)) {
    out += op_text(k);
    wrapped(f.child(), precedence(f.child().kind()) < p);
    return;
  }
  // Right-associative: only the left operand needs parens at equal precedence.
  wrapped(f.lhs(), precedence(f.lhs().kind()) <= p);
  out += op_text(k);
  wrapped(f.rhs(), precedence(f.rhs().kind()) < p);
}

}  // namespace

Formula parse(const std::string& text) { return Parser(text).run(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case Kind::True:
    case Kind::Start:
    case Kind::Atom: return f;
    case Kind::False: return neg(Formula::top());
    case Kind::Not: return neg(normalize(f.child()));
    case Kind::Next: return un(Kind::Next, normalize(f.child()));
    case Kind::Eventually: return bin(Kind::Until, Formula::top(), normalize(f.child()));
    case Kind::Always: return neg(bin(Kind::Until, Formula::top(), neg(normalize(f.child()))));
    default: break;
  }
  const Formula a = normalize(f.lhs());
  const Formula b = normalize(f.rhs());
  switch (f.kind()) {
    case Kind::Or: return bin(Kind::Or, a, b);
    case Kind::And: return neg(bin(Kind::Or, neg(a), neg(b)));
    case Kind::Implies: return bin(Kind::Or, neg(a), b);
    case Kind::Iff:
      return bin(Kind::Or, neg(bin(Kind::Or, neg(a), neg(b))), neg(bin(Kind::Or, a, b)));
    case Kind::Until: return bin(Kind::Until, a, b);
    case Kind::Release: return neg(bin(Kind::Until, neg(a), neg(b)));
    case Kind::Unless:
      return bin(Kind::Or, bin(Kind::Until, a, b), neg(bin(Kind::Until, Formula::top(), neg(a))));
    default: break;
  }
  throw std::logic_error("normalize: unhandled kind");
}

namespace {

Formula nnf_of(const Formula& f, bool negated) {
  auto both = [&](Kind k) { return bin(k, nnf_of(f.lhs(), negated), nnf_of(f.rhs(), negated)); };
  switch (f.kind()) {
    case Kind::True: return negated ? Formula::bottom() : f;
    case Kind::False: return negated ? Formula::top() : f;
    case Kind::Start:
    case Kind::Atom: return negated ? neg(f) : f;
    case Kind::Not: return nnf_of(f.child(), !negated);
    case Kind::Next: return un(Kind::Next, nnf_of(f.child(), negated));
    case Kind::Eventually: return un(negated ? Kind::Always : Kind::Eventually, nnf_of(f.child(), negated));
    case Kind::Always: return un(negated ? Kind::Eventually : Kind::Always, nnf_of(f.child(), negated));
    case Kind::And: return both(negated ? Kind::Or : Kind::And);
    case Kind::Or: return both(negated ? Kind::And : Kind::Or);
    case Kind::Until: return both(negated ? Kind::Release : Kind::Until);
    case Kind::Release: return both(negated ? Kind::Until : Kind::Release);
    case Kind::Implies:
      if (negated) return bin(Kind::And, nnf_of(f.lhs(), false), nnf_of(f.rhs(), true));
      return bin(Kind::Or, nnf_of(f.lhs(), true), nnf_of(f.rhs(), false));
    case Kind::Iff: {
      const Formula a = nnf_of(f.lhs(), false), na = nnf_of(f.lhs(), true);
      const Formula b = nnf_of(f.rhs(), false), nb = nnf_of(f.rhs(), true);
      if (negated) return bin(Kind::Or, bin(Kind::And, a, nb), bin(Kind::And, na, b));
      return bin(Kind::Or, bin(Kind::And, a, b), bin(Kind::And, na, nb));
    }
    case Kind::Unless: {
      // a W b == b R (b | a);  !(a W b) == !b U (!a & !b).
      if (negated) {
        const Formula nb = nnf_of(f.rhs(), true);
        return bin(Kind::Until, nb, bin(Kind::And, nnf_of(f.lhs(), true), nb));
      }
      const Formula b = nnf_of(f.rhs(), false);
      return bin(Kind::Release, b, bin(Kind::Or, b, nnf_of(f.lhs(), false)));
    }
  }
  throw std::logic_error("nnf: unhandled kind");
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Kind::Atom) out.insert(f.atom().prop());
  else if (f.kind() == Kind::Start) out.insert(kStartProp);
  else if (is_unary(f.kind())) collect_atoms(f.child(), out);
  else if (is_binary(f.kind())) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

// Truth values at positions 1..n (stored 0-based); position n is followed
// by position loop.
class Labeler {
 public:
  explicit Labeler(const PropLasso& s) : s_(s), n_(s.span()), loop_(s.prefix.size()) {}

  std::vector<bool> label(const Formula& f) const {
    std::vector<bool> v(n_, false);
    switch (f.kind()) {
      case Kind::True: v.assign(n_, true); return v;
      case Kind::False: return v;
      case Kind::Start:
      case Kind::Atom: {
        const std::string p = f.kind() == Kind::Start ? kStartProp : f.atom().prop();
        for (std::size_t i = 0; i < n_; ++i) v[i] = s_.at(i + 1).count(p) != 0;
        return v;
      }
      case Kind::Not: {
        v = label(f.child());
        v.flip();
        return v;
      }
      case Kind::Next: {
        const auto a = label(f.child());
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[next(i)];
        return v;
      }
      case Kind::Eventually: return until(std::vector<bool>(n_, true), label(f.child()));
      case Kind::Always: return release(std::vector<bool>(n_, false), label(f.child()));
      default: break;
    }
    const auto a = label(f.lhs());
    const auto b = label(f.rhs());
    switch (f.kind()) {
      case Kind::And:
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] && b[i];
        return v;
      case Kind::Or:
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] || b[i];
        return v;
      case Kind::Implies:
        for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i] || b[i];
        return v;
      case Kind::Iff:
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] == b[i];
        return v;
      case Kind::Until: return until(a, b);
      case Kind::Release: return release(a, b);
      case Kind::Unless: {
        std::vector<bool> aorb(n_);
        for (std::size_t i = 0; i < n_; ++i) aorb[i] = a[i] || b[i];
        return release(b, aorb);
      }
      default: break;
    }
    throw std::logic_error("evaluate: unhandled kind");
  }

  std::size_t position(std::size_t i) const {
    if (i <= n_) return i - 1;
    const std::size_t c = n_ - loop_;
    return loop_ + (i - 1 - loop_) % c;
  }

 private:
  std::size_t next(std::size_t i) const { return i + 1 < n_ ? i + 1 : loop_; }

  // Least fixpoint of v = b | (a & X v).
  std::vector<bool> until(const std::vector<bool>& a, const std::vector<bool>& b) const {
    std::vector<bool> v(n_, false);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = n_; k-- > 0;) {
        const bool nv = b[k] || (a[k] && v[next(k)]);
        if (nv != v[k]) {
          v[k] = nv;
          changed = true;
        }
      }
    }
    return v;
  }

  // Greatest fixpoint of v = b & (a | X v).
  std::vector<bool> release(const std::vector<bool>& a, const std::vector<bool>& b) const {
    std::vector<bool> v(n_, true);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = n_; k-- > 0;) {
        const bool nv = b[k] && (a[k] || v[next(k)]);
        if (nv != v[k]) {
          v[k] = nv;
          changed = true;
        }
      }
    }
    return v;
  }

  const PropLasso& s_;
  std::size_t n_;
  std::size_t loop_;
};

}  // namespace

Formula nnf(const Formula& f) { return nnf_of(f, false); }

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::size_t depth(const Formula& f) {
  if (is_unary(f.kind())) return 1 + depth(f.child());
  if (is_binary(f.kind())) return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  return 0;
}

bool evaluate(const PropLasso& s, const Formula& f, std::size_t i) {
  if (s.cycle.empty()) throw std::invalid_argument("evaluate: empty cycle");
  if (i == 0) throw std::invalid_argument("evaluate: positions start at 1");
  const Labeler l(s);
  return l.label(f)[l.position(i)];
}

std::vector<std::string> proposition_alphabet(const std::vector<std::string>& ap) {
  if (ap.size() >= 32) throw ResourceError("too many propositions for an explicit alphabet");
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << ap.size());
  for (std::uint32_t m = 0; m < (1u << ap.size()); ++m) {
    std::string n = "{";
    bool first = true;
    for (std::size_t k = 0; k < ap.size(); ++k) {
      if (!(m >> k & 1u)) continue;
      if (!first) n += ',';
      n += ap[k];
      first = false;
    }
    out.push_back(n + "}");
  }
  return out;
}

LetterId proposition_letter(const PropSet& s, const std::vector<std::string>& ap) {
  LetterId m = 0;
  for (std::size_t k = 0; k < ap.size(); ++k)
    if (s.count(ap[k])) m |= 1u << k;
  return m;
}

LassoWord encode(const PropLasso& s, const std::vector<std::string>& ap) {
  return map_lasso(s, [&ap](const PropSet& p) { return proposition_letter(p, ap); });
}

Formula random_formula(std::mt19937_64& rng, std::size_t depth_left, const std::vector<Formula>& leaves) {
  auto below = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  if (depth_left == 0 || below(4) == 0) {
    const std::size_t k = below(leaves.size() + 3);
    if (k < leaves.size()) return leaves[k];
    if (k == leaves.size()) return Formula::top();
    if (k == leaves.size() + 1) return Formula::bottom();
    return Formula::start();
  }
  static constexpr Kind kUnary[] = {Kind::Not, Kind::Next, Kind::Eventually, Kind::Always};
  static constexpr Kind kBinary[] = {Kind::And,   Kind::Or,      Kind::Implies, Kind::Iff,
                                     Kind::Until, Kind::Release, Kind::Unless};
  if (below(2) == 0) return un(kUnary[below(4)], random_formula(rng, depth_left - 1, leaves));
  const Kind k = kBinary[below(7)];
  Formula a = random_formula(rng, depth_left - 1, leaves);
  Formula b = random_formula(rng, depth_left - 1, leaves);
  return bin(k, std::move(a), std::move(b));
}

}  // namespace taskground
