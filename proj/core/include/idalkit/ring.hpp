#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace idalkit {

using Coeff = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// QQ when p == 0, otherwise GF(p).
struct Field {
  std::uint64_t p = 0;

  bool is_rational() const { return p == 0; }
  Coeff normalize(const Coeff& a) const;
  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  Coeff inv(const Coeff& a) const;
  std::string format(const Coeff& a) const;
  std::string name() const;
  bool operator==(const Field& o) const { return p == o.p; }
};

Field parse_field(const std::string& name);

constexpr std::size_t kMaxVars = 10;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t deg = 0;

  bool operator==(const Monomial& o) const { return exp == o.exp; }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > o.exp[i]) return false;
    return true;
  }
  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] && o.exp[i]) return false;
    return true;
  }
  bool is_one() const { return deg == 0; }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_div(const Monomial& a, const Monomial& b);  // requires b | a
Monomial mono_lcm(const Monomial& a, const Monomial& b);

enum class Order { Grevlex, Lex, GradedLex };

std::string order_name(Order o);
Order parse_order(const std::string& s);

// Returns >0 if a > b.
int mono_cmp(Order ord, const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Coeff coeff;
};

// Terms sorted descending in the ring order, no zero coefficients.
struct Poly {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  // quotient polynomials are parsed in the free ring on the same variables
  static RingPtr make(Field field, std::vector<std::string> vars,
                      Order order = Order::Grevlex,
                      const std::vector<std::string>& quotient = {},
                      std::vector<int> weights = {});
  static RingPtr make_with(Field field, std::vector<std::string> vars, Order order,
                           const std::vector<Poly>& quotient, std::vector<int> weights = {});

  const Field& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  Order order() const { return order_; }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<Poly>& quotient_gb() const { return qgb_; }
  bool has_quotient() const { return !qgb_.empty(); }
  bool positive_weights() const;

  int cmp(const Monomial& a, const Monomial& b) const { return mono_cmp(order_, a, b); }

  Poly zero() const { return {}; }
  Poly one() const { return constant(Coeff(1)); }
  Poly constant(const Coeff& c) const;
  Poly var(std::size_t i) const;
  Poly term(const Monomial& m, const Coeff& c) const;

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, const Coeff& c) const;
  Poly mul_term(const Poly& a, const Monomial& m, const Coeff& c) const;
  Poly pow(const Poly& a, unsigned n) const;

  // raw arithmetic in the free ring, no reduction
  Poly add_raw(const Poly& a, const Poly& b) const;
  Poly mul_raw(const Poly& a, const Poly& b) const;
  Poly axpy_raw(const Poly& a, const Coeff& c, const Monomial& m, const Poly& b) const;  // a + c*m*b
  Poly sort_raw(std::vector<Term> terms) const;

  Poly normal_form(const Poly& p) const;
  Poly reduce_by(const Poly& p, const std::vector<Poly>& basis) const;

  Poly parse(const std::string& s) const;
  std::string format(const Poly& p) const;
  std::string format_mono(const Monomial& m) const;

  long wdeg(const Monomial& m) const;
  std::optional<long> homogeneous_degree(const Poly& p) const;  // nullopt for zero or inhomogeneous
  bool is_constant(const Poly& p) const { return p.is_zero() || (p.terms.size() == 1 && p.lead().mono.is_one()); }

  std::vector<Poly> groebner(const std::vector<Poly>& gens) const;
  bool ideal_contains_one(const std::vector<Poly>& gens) const;
  bool ideal_contains(const std::vector<Poly>& gens, const Poly& p) const;

  bool same_as(const PolyRing& o) const;
  std::string describe() const;
  std::vector<std::string> quotient_strings() const;

 private:
  Field field_;
  std::vector<std::string> vars_;
  Order order_ = Order::Grevlex;
  std::vector<int> weights_;
  std::vector<Poly> qgb_;
};

// ring homomorphism given by images of the source variables
struct RingHom {
  RingPtr source;
  RingPtr target;
  std::vector<Poly> images;

  Poly apply(const Poly& p) const;
  // images of the source quotient generators vanish in the target
  bool well_defined() const;
};

RingHom identity_hom(const RingPtr& r);

}  // namespace idalkit
