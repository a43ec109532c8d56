#include "neron/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace neron {

int MonomialOrder::cmp(const Exponents& a, const Exponents& b) const {
  auto degrevlex_cmp = [](const Exponents& x, const Exponents& y, size_t lo,
                          size_t hi) -> int {
    int dx = 0, dy = 0;
    for (size_t i = lo; i < hi; ++i) {
      dx += x[i];
      dy += y[i];
    }
    if (dx != dy) return dx < dy ? -1 : 1;
    // revlex tie-break: larger exponent in the *last* differing variable loses
    for (size_t i = hi; i-- > lo;) {
      if (x[i] != y[i]) return x[i] > y[i] ? -1 : 1;
    }
    return 0;
  };
  switch (kind) {
    case degrevlex:
      return degrevlex_cmp(a, b, 0, a.size());
    case lex:
      for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case block: {
      int c = degrevlex_cmp(a, b, 0, block_size);
      if (c != 0) return c;
      return degrevlex_cmp(a, b, block_size, a.size());
    }
  }
  return 0;
}

void MultiPoly::normalize_coeff(Rat& c) const {
  if (ring_.kind == RingKind::integers_mod_p_power) {
    if (!is_integer(c))
      throw std::invalid_argument("non-integral coefficient in Z/p^N");
    c = Rat(fdiv_r(num(c), ring_.modulus()));
  } else if (ring_.kind == RingKind::integers) {
    if (!is_integer(c))
      throw std::invalid_argument("non-integral coefficient over Z");
  }
}

MultiPoly MultiPoly::constant(const Rat& c, std::vector<std::string> vars,
                              CoefficientRing ring) {
  MultiPoly p(std::move(vars), ring);
  p.add_term(Exponents(p.nvars(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name,
                              const std::vector<std::string>& vars,
                              CoefficientRing ring) {
  auto it = std::find(vars.begin(), vars.end(), name);
  if (it == vars.end()) throw std::invalid_argument("unknown variable " + name);
  MultiPoly p(vars, ring);
  Exponents e(vars.size(), 0);
  e[size_t(it - vars.begin())] = 1;
  p.add_term(e, 1);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

Rat MultiPoly::constant_value() const {
  Exponents z(nvars(), 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? Rat(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rat& c) {
  if (e.size() != nvars()) throw std::invalid_argument("exponent arity");
  Rat v = c;
  auto it = terms_.find(e);
  if (it != terms_.end()) v += it->second;
  normalize_coeff(v);
  if (v == 0) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[e] = v;
  }
}

MultiPoly MultiPoly::operator-() const { return scaled(-1); }

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  MultiPoly r(vars_, ring_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(exp_add(e1, e2), c1 * c2);
  return r;
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
  MultiPoly r(vars_, ring_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

MultiPoly MultiPoly::times_term(const Rat& c, const Exponents& e) const {
  MultiPoly r(vars_, ring_);
  for (const auto& [e1, v] : terms_) r.add_term(exp_add(e1, e), v * c);
  return r;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

std::pair<Exponents, Rat> MultiPoly::leading_term(
    const MonomialOrder& ord) const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (ord.cmp(it->first, best->first) > 0) best = it;
  return {best->first, best->second};
}

MultiPoly MultiPoly::derivative(size_t var) const {
  MultiPoly r(vars_, ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents e2 = e;
    e2[var] -= 1;
    r.add_term(e2, c * e[var]);
  }
  return r;
}

MultiPoly MultiPoly::lifted(const std::vector<std::string>& new_vars,
                            CoefficientRing ring) const {
  std::vector<size_t> where(nvars());
  for (size_t i = 0; i < nvars(); ++i) {
    auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
    if (it == new_vars.end())
      throw std::invalid_argument("variable " + vars_[i] + " missing in lift");
    where[i] = size_t(it - new_vars.begin());
  }
  MultiPoly r(new_vars, ring);
  for (const auto& [e, c] : terms_) {
    Exponents e2(new_vars.size(), 0);
    for (size_t i = 0; i < nvars(); ++i) e2[where[i]] = e[i];
    r.add_term(e2, c);
  }
  return r;
}

MultiPoly MultiPoly::cleared_denominators() const {
  Int l = 1;
  for (const auto& [e, c] : terms_) l = lcm(l, den(c));
  return scaled(Rat(l));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  // descending degrevlex for a deterministic, human-friendly ordering
  MonomialOrder ord = MonomialOrder::Degrevlex();
  std::vector<const std::pair<const Exponents, Rat>*> ts;
  for (const auto& t : terms_) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(),
            [&](auto* a, auto* b) { return ord.cmp(a->first, b->first) > 0; });
  std::ostringstream out;
  bool first = true;
  for (auto* t : ts) {
    Rat c = t->second;
    bool neg = c < 0;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    if (neg) c = -c;
    first = false;
    std::vector<std::string> factors;
    if (c != 1 || total_degree(t->first) == 0) factors.push_back(c.str());
    for (size_t i = 0; i < nvars(); ++i) {
      if (t->first[i] == 0) continue;
      if (t->first[i] == 1)
        factors.push_back(vars_[i]);
      else
        factors.push_back(vars_[i] + "^" + std::to_string(t->first[i]));
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      if (i) out << "*";
      out << factors[i];
    }
  }
  return out.str();
}

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("parse error at position " + std::to_string(pos) +
                             ": " + msg);
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Int parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected number");
    return Int(s.substr(start, pos - start));
  }

  std::optional<size_t> parse_varname() {
    skip_ws();
    size_t start = pos;
    if (pos >= s.size() ||
        !(std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      return std::nullopt;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    std::string name = s.substr(start, pos - start);
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) {
      pos = start;
      fail("unknown variable '" + name + "'");
    }
    return size_t(it - vars.begin());
  }

  CoefficientRing ring;

  int parse_exponent() {
    if (peek() != '^') return 1;
    ++pos;
    Int x = parse_uint();
    if (x > 1000000) fail("exponent too large");
    return int(x);
  }

  // number, variable power, or parenthesized subexpression with a power
  MultiPoly parse_factor() {
    skip_ws();
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      Int n = parse_uint();
      Rat c(n);
      if (peek() == '/') {
        ++pos;
        Int d = parse_uint();
        if (d == 0) fail("zero denominator");
        c = Rat(n, d);
      }
      return MultiPoly::constant(c, vars, ring);
    }
    if (peek() == '(') {
      ++pos;
      MultiPoly inner = parse_expr();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      int e = parse_exponent();
      MultiPoly out = MultiPoly::constant(1, vars, ring);
      for (int i = 0; i < e; ++i) out = out * inner;
      return out;
    }
    auto v = parse_varname();
    if (!v) fail("expected term");
    MultiPoly out(vars, ring);
    Exponents e(vars.size(), 0);
    e[*v] = parse_exponent();
    out.add_term(e, 1);
    return out;
  }

  // '*'-separated factors; juxtaposition is not allowed
  MultiPoly parse_product() {
    MultiPoly out = parse_factor();
    while (peek() == '*') {
      ++pos;
      out = out * parse_factor();
    }
    char c = peek();
    if (c != '+' && c != '-' && c != ')' && c != '\0')
      fail(std::string("unexpected character '") + c + "'");
    return out;
  }

  MultiPoly parse_expr() {
    MultiPoly out(vars, ring);
    int sign = 1;
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos;
      sign = (c == '+') ? 1 : -1;
    }
    for (;;) {
      MultiPoly t = parse_product();
      out = (sign > 0) ? out + t : out - t;
      c = peek();
      if (c != '+' && c != '-') break;
      sign = (c == '+') ? 1 : -1;
      ++pos;
    }
    return out;
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& s,
                           const std::vector<std::string>& vars,
                           CoefficientRing ring) {
  Parser p{s, vars, 0, ring};
  if (p.at_end()) p.fail("empty polynomial");
  MultiPoly out = p.parse_expr();
  if (!p.at_end()) p.fail("trailing input");
  return out;
}

MultiPoly MultiPoly::substituted(const std::vector<MultiPoly>& images) const {
  if (images.size() != vars_.size())
    throw std::runtime_error("substituted: one image per variable required");
  std::vector<std::string> tvars =
      images.empty() ? vars_ : images.front().vars();
  CoefficientRing tring = images.empty() ? ring_ : images.front().ring();
  MultiPoly out(tvars, tring);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(c, tvars, tring);
    for (size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) term = term * images[i];
    out = out + term;
  }
  return out;
}

}  // namespace neron
