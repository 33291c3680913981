#include "idalkit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "idalkit/module_gb.hpp"

namespace idalkit {

// ---------------------------------------------------------------- Field

Coeff Field::normalize(const Coeff& a) const {
  if (p == 0) return a;
  mpz_class m(static_cast<unsigned long>(p));
  mpz_class num = a.get_num() % m;
  mpz_class den = a.get_den() % m;
  if (den == 0) throw Error("denominator divisible by the characteristic");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class r = (num * inv) % m;
  if (r < 0) r += m;
  return Coeff(r);
}

Coeff Field::add(const Coeff& a, const Coeff& b) const {
  if (p == 0) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= static_cast<unsigned long>(p)) r -= static_cast<unsigned long>(p);
  return Coeff(r);
}

Coeff Field::sub(const Coeff& a, const Coeff& b) const {
  if (p == 0) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += static_cast<unsigned long>(p);
  return Coeff(r);
}

Coeff Field::mul(const Coeff& a, const Coeff& b) const {
  if (p == 0) return a * b;
  mpz_class r = (a.get_num() * b.get_num()) % static_cast<unsigned long>(p);
  return Coeff(r);
}

Coeff Field::neg(const Coeff& a) const {
  if (p == 0) return -a;
  if (a == 0) return a;
  return Coeff(mpz_class(static_cast<unsigned long>(p)) - a.get_num());
}

Coeff Field::inv(const Coeff& a) const {
  if (a == 0) throw Error("division by zero");
  if (p == 0) return 1 / a;
  mpz_class m(static_cast<unsigned long>(p)), r;
  mpz_class n = a.get_num();
  mpz_invert(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return Coeff(r);
}

std::string Field::format(const Coeff& a) const { return a.get_str(); }

std::string Field::name() const { return p == 0 ? "QQ" : "GF(" + std::to_string(p) + ")"; }

static bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field parse_field(const std::string& name) {
  if (name == "QQ" || name == "Q") return Field{0};
  std::string digits;
  if (name.rfind("GF(", 0) == 0 && name.back() == ')')
    digits = name.substr(3, name.size() - 4);
  else if (name.rfind("GF", 0) == 0)
    digits = name.substr(2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw Error("unknown field: " + name);
  std::uint64_t p = std::stoull(digits);
  if (!is_prime(p) || p > (1ULL << 31)) throw Error("field characteristic must be a prime below 2^31: " + name);
  return Field{p};
}

// ---------------------------------------------------------------- Monomial

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] + b.exp[i]);
  r.deg = a.deg + b.deg;
  return r;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(a.exp[i] - b.exp[i]);
  r.deg = a.deg - b.deg;
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::uint32_t d = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exp[i] = std::max(a.exp[i], b.exp[i]);
    d += r.exp[i];
  }
  r.deg = d;
  return r;
}

std::string order_name(Order o) {
  switch (o) {
    case Order::Grevlex: return "grevlex";
    case Order::Lex: return "lex";
    case Order::GradedLex: return "graded-lex";
  }
  return "grevlex";
}

Order parse_order(const std::string& s) {
  if (s == "grevlex") return Order::Grevlex;
  if (s == "lex") return Order::Lex;
  if (s == "graded-lex" || s == "deglex" || s == "glex") return Order::GradedLex;
  throw Error("unknown monomial order: " + s);
}

int mono_cmp(Order ord, const Monomial& a, const Monomial& b) {
  if (ord != Order::Lex && a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  if (ord == Order::Grevlex) {
    for (std::size_t i = kMaxVars; i-- > 0;)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
  return 0;
}

bool Poly::operator==(const Poly& o) const {
  if (terms.size() != o.terms.size()) return false;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (!(terms[i].mono == o.terms[i].mono) || terms[i].coeff != o.terms[i].coeff) return false;
  return true;
}

// ---------------------------------------------------------------- PolyRing

RingPtr PolyRing::make(Field field, std::vector<std::string> vars, Order order,
                       const std::vector<std::string>& quotient, std::vector<int> weights) {
  auto free = make_with(field, vars, order, {}, weights);
  std::vector<Poly> q;
  for (const auto& s : quotient) q.push_back(free->parse(s));
  if (q.empty()) return free;
  return make_with(field, std::move(vars), order, q, std::move(weights));
}

RingPtr PolyRing::make_with(Field field, std::vector<std::string> vars, Order order,
                            const std::vector<Poly>& quotient, std::vector<int> weights) {
  if (vars.size() > kMaxVars) throw Error("too many variables (max " + std::to_string(kMaxVars) + ")");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      throw Error("bad variable name: " + v);
    for (char c : v)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') throw Error("bad variable name: " + v);
    for (std::size_t j = 0; j < i; ++j)
      if (vars[j] == v) throw Error("duplicate variable: " + v);
  }
  if (weights.empty()) weights.assign(vars.size(), 1);
  if (weights.size() != vars.size()) throw Error("weights length differs from variable count");
  auto r = std::make_shared<PolyRing>();
  r->field_ = field;
  r->vars_ = std::move(vars);
  r->order_ = order;
  r->weights_ = std::move(weights);
  std::vector<Poly> q;
  for (const auto& p : quotient)
    if (!p.is_zero()) q.push_back(r->sort_raw(p.terms));
  if (!q.empty()) r->qgb_ = r->groebner(q);
  return r;
}

bool PolyRing::positive_weights() const {
  return std::all_of(weights_.begin(), weights_.end(), [](int w) { return w > 0; });
}

Poly PolyRing::constant(const Coeff& c) const {
  Coeff v = field_.normalize(c);
  Poly p;
  if (v != 0) p.terms.push_back({Monomial{}, v});
  return normal_form(p);
}

Poly PolyRing::var(std::size_t i) const {
  if (i >= nvars()) throw Error("variable index out of range");
  Monomial m;
  m.exp[i] = 1;
  m.deg = 1;
  return term(m, Coeff(1));
}

Poly PolyRing::term(const Monomial& m, const Coeff& c) const {
  Coeff v = field_.normalize(c);
  Poly p;
  if (v != 0) p.terms.push_back({m, v});
  return normal_form(p);
}

Poly PolyRing::add_raw(const Poly& a, const Poly& b) const {
  Poly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    int c = cmp(a.terms[i].mono, b.terms[j].mono);
    if (c > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (c < 0) {
      r.terms.push_back(b.terms[j++]);
    } else {
      Coeff s = field_.add(a.terms[i].coeff, b.terms[j].coeff);
      if (s != 0) r.terms.push_back({a.terms[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
  return r;
}

Poly PolyRing::axpy_raw(const Poly& a, const Coeff& c, const Monomial& m, const Poly& b) const {
  Poly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    if (j == b.terms.size()) {
      r.terms.push_back(a.terms[i++]);
      continue;
    }
    Monomial bm = mono_mul(m, b.terms[j].mono);
    int k = i < a.terms.size() ? cmp(a.terms[i].mono, bm) : -1;
    if (k > 0) {
      r.terms.push_back(a.terms[i++]);
    } else if (k < 0) {
      r.terms.push_back({bm, field_.mul(c, b.terms[j].coeff)});
      ++j;
    } else {
      Coeff s = field_.add(a.terms[i].coeff, field_.mul(c, b.terms[j].coeff));
      if (s != 0) r.terms.push_back({bm, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly PolyRing::sort_raw(std::vector<Term> terms) const {
  for (auto& t : terms) t.coeff = field_.normalize(t.coeff);
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return cmp(a.mono, b.mono) > 0; });
  Poly r;
  for (auto& t : terms) {
    if (!r.terms.empty() && r.terms.back().mono == t.mono) {
      r.terms.back().coeff = field_.add(r.terms.back().coeff, t.coeff);
    } else {
      if (!r.terms.empty() && r.terms.back().coeff == 0) r.terms.pop_back();
      r.terms.push_back(std::move(t));
    }
  }
  if (!r.terms.empty() && r.terms.back().coeff == 0) r.terms.pop_back();
  return r;
}

Poly PolyRing::mul_raw(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  const Poly& small = a.terms.size() <= b.terms.size() ? a : b;
  const Poly& big = a.terms.size() <= b.terms.size() ? b : a;
  if (small.terms.size() <= 2) {
    Poly r;
    for (const auto& t : small.terms) r = axpy_raw(r, t.coeff, t.mono, big);
    return r;
  }
  std::vector<Term> out;
  out.reserve(a.terms.size() * b.terms.size());
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) out.push_back({mono_mul(s.mono, t.mono), field_.mul(s.coeff, t.coeff)});
  return sort_raw(std::move(out));
}

Poly PolyRing::add(const Poly& a, const Poly& b) const { return add_raw(a, b); }

Poly PolyRing::sub(const Poly& a, const Poly& b) const { return axpy_raw(a, field_.neg(Coeff(1)), Monomial{}, b); }

Poly PolyRing::neg(const Poly& a) const {
  Poly r = a;
  for (auto& t : r.terms) t.coeff = field_.neg(t.coeff);
  return r;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const { return normal_form(mul_raw(a, b)); }

Poly PolyRing::scale(const Poly& a, const Coeff& c) const {
  Coeff v = field_.normalize(c);
  if (v == 0) return {};
  Poly r = a;
  for (auto& t : r.terms) t.coeff = field_.mul(t.coeff, v);
  return r;
}

Poly PolyRing::mul_term(const Poly& a, const Monomial& m, const Coeff& c) const {
  Coeff v = field_.normalize(c);
  if (v == 0) return {};
  Poly r;
  r.terms.reserve(a.terms.size());
  for (const auto& t : a.terms) r.terms.push_back({mono_mul(t.mono, m), field_.mul(t.coeff, v)});
  return normal_form(r);
}

Poly PolyRing::pow(const Poly& a, unsigned n) const {
  Poly r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    n >>= 1;
    if (n) b = mul(b, b);
  }
  return r;
}

Poly PolyRing::reduce_by(const Poly& p, const std::vector<Poly>& basis) const {
  if (basis.empty()) return p;
  Poly rem, cur = p;
  std::size_t pos = 0;
  while (pos < cur.terms.size()) {
    const Term& t = cur.terms[pos];
    const Poly* div = nullptr;
    for (const auto& g : basis)
      if (g.lead().mono.divides(t.mono)) {
        div = &g;
        break;
      }
    if (!div) {
      rem.terms.push_back(t);
      ++pos;
      continue;
    }
    Coeff c = field_.neg(field_.mul(t.coeff, field_.inv(div->lead().coeff)));
    Monomial m = mono_div(t.mono, div->lead().mono);
    Poly tail;
    tail.terms.assign(cur.terms.begin() + static_cast<long>(pos), cur.terms.end());
    cur = axpy_raw(tail, c, m, *div);
    pos = 0;
  }
  return rem;
}

Poly PolyRing::normal_form(const Poly& p) const { return reduce_by(p, qgb_); }

long PolyRing::wdeg(const Monomial& m) const {
  long d = 0;
  for (std::size_t i = 0; i < nvars(); ++i) d += static_cast<long>(weights_[i]) * m.exp[i];
  return d;
}

std::optional<long> PolyRing::homogeneous_degree(const Poly& p) const {
  if (p.is_zero()) return std::nullopt;
  long d = wdeg(p.lead().mono);
  for (const auto& t : p.terms)
    if (wdeg(t.mono) != d) return std::nullopt;
  return d;
}

std::vector<Poly> PolyRing::groebner(const std::vector<Poly>& gens) const {
  std::vector<Vec> vs;
  for (const auto& g : gens) vs.push_back(poly_to_vec(g, 0));
  ModuleGB gb(*this, 1, vs);
  std::vector<Poly> out;
  for (const auto& v : gb.basis()) out.push_back(vec_entry(v, 0));
  return out;
}

bool PolyRing::ideal_contains_one(const std::vector<Poly>& gens) const {
  auto gb = groebner(gens);
  return gb.size() == 1 && gb[0].lead().mono.is_one();
}

bool PolyRing::ideal_contains(const std::vector<Poly>& gens, const Poly& p) const {
  return reduce_by(normal_form(p), groebner(gens)).is_zero();
}

bool PolyRing::same_as(const PolyRing& o) const {
  return field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_ && weights_ == o.weights_ && qgb_ == o.qgb_;
}

std::vector<std::string> PolyRing::quotient_strings() const {
  std::vector<std::string> out;
  for (const auto& q : qgb_) out.push_back(format(q));
  return out;
}

std::string PolyRing::describe() const {
  std::ostringstream os;
  os << field_.name() << "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i];
  os << "]";
  if (!qgb_.empty()) {
    os << "/(";
    for (std::size_t i = 0; i < qgb_.size(); ++i) os << (i ? ", " : "") << format(qgb_[i]);
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------- text

std::string PolyRing::format_mono(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (!m.exp[i]) continue;
    if (!s.empty()) s += "*";
    s += vars_[i];
    if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
  }
  return s;
}

std::string PolyRing::format(const Poly& p) const {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms) {
    Coeff c = t.coeff;
    bool negative = field_.is_rational() && c < 0;
    if (negative) c = -c;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    first = false;
    std::string m = format_mono(t.mono);
    if (m.empty())
      s += c.get_str();
    else if (c == 1)
      s += m;
    else
      s += c.get_str() + "*" + m;
  }
  return s;
}

namespace {

class Parser {
 public:
  Parser(const PolyRing& r, const std::string& s) : r_(r), s_(s) {}

  Poly run() {
    skip();
    if (pos_ == s_.size()) fail("empty polynomial");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  const PolyRing& r_;
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw Error("malformed polynomial '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly p;
    if (eat('-'))
      p = r_.neg(term());
    else {
      eat('+');
      p = term();
    }
    for (;;) {
      if (eat('+'))
        p = r_.add(p, term());
      else if (eat('-'))
        p = r_.sub(p, term());
      else
        return p;
    }
  }

  Poly term() {
    Poly p = power();
    for (;;) {
      if (eat('*')) {
        p = r_.mul(p, power());
      } else if (eat('/')) {
        Poly d = power();
        if (!r_.is_constant(d) || d.is_zero()) fail("division by a non-constant or zero");
        p = r_.scale(p, r_.field().inv(d.lead().coeff));
      } else {
        return p;
      }
    }
  }

  Poly power() {
    Poly b = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 60000) fail("exponent too large");
      b = r_.pow(b, static_cast<unsigned>(e));
    }
    return b;
  }

  Poly atom() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return r_.neg(power());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return r_.constant(Coeff(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      const auto& vs = r_.vars();
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] == name) return r_.var(i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected character");
  }
};

}  // namespace

Poly PolyRing::parse(const std::string& s) const { return Parser(*this, s).run(); }

// ---------------------------------------------------------------- RingHom

Poly RingHom::apply(const Poly& p) const {
  if (images.size() != source->nvars()) throw Error("ring homomorphism arity mismatch");
  Poly r;
  for (const auto& t : p.terms) {
    Poly m = target->constant(t.coeff);
    for (std::size_t i = 0; i < source->nvars(); ++i)
      if (t.mono.exp[i]) m = target->mul(m, target->pow(images[i], t.mono.exp[i]));
    r = target->add(r, m);
  }
  return r;
}

bool RingHom::well_defined() const {
  if (images.size() != source->nvars()) return false;
  if (source->field().p != target->field().p) return false;
  for (const auto& q : source->quotient_gb())
    if (!apply(q).is_zero()) return false;
  return true;
}

RingHom identity_hom(const RingPtr& r) {
  RingHom h{r, r, {}};
  for (std::size_t i = 0; i < r->nvars(); ++i) h.images.push_back(r->var(i));
  return h;
}

}  // namespace idalkit
