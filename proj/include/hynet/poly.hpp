#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hynet {

using Rat = boost::multiprecision::cpp_rational;

// Exponent vector, sparse: (variable id, exponent > 0) pairs sorted by id.
struct Monomial {
  std::vector<std::pair<int, int>> factors;

  bool operator<(const Monomial& o) const { return factors < o.factors; }
  bool operator==(const Monomial& o) const { return factors == o.factors; }

  int degree_excluding(int skip_var) const {
    int d = 0;
    for (auto [v, e] : factors)
      if (v != skip_var) d += e;
    return d;
  }
  int exponent_of(int var) const {
    for (auto [v, e] : factors)
      if (v == var) return e;
    return 0;
  }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_without(const Monomial& m, int var);

// Multivariate polynomial with exact rational coefficients over integer
// variable ids. Canonical form: map keyed by monomial, no zero coefficients.
class Poly {
 public:
  Poly() = default;

  static Poly constant(const Rat& c);
  static Poly variable(int var, int exp = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }
  // -1 for the zero polynomial; skip_var is not counted when >= 0.
  int total_degree(int skip_var = -1) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator*=(const Rat& c);
  Poly pow(int e) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  void add_term(const Monomial& m, const Rat& c);

  // Rename variables; distinct inputs may map to one output variable.
  Poly rename(const std::function<int(int)>& f) const;

  template <class T>
  T eval(const std::function<T(int)>& value) const {
    T acc = T(0);
    for (const auto& [m, c] : terms_) {
      T term = coeff_as<T>(c);
      for (auto [v, e] : m.factors) {
        T x = value(v);
        for (int i = 0; i < e; ++i) term = term * x;
      }
      acc = acc + term;
    }
    return acc;
  }
  double eval_double(const std::vector<double>& vals) const;
  Rat eval_rat(const std::vector<Rat>& vals) const;

  // Division by the linear factor (x_u - x_v): *this = (x_u - x_v) * Q + R
  // where R has no occurrence of x_u beyond substitution x_u <- x_v.
  // Returns {Q, R}.
  std::pair<Poly, Poly> divide_linear(int u, int v) const;

  std::string to_string(const std::function<std::string(int)>& name) const;

 private:
  template <class T>
  static T coeff_as(const Rat& c) {
    return static_cast<T>(c);
  }
  std::map<Monomial, Rat> terms_;
};

template <>
inline double Poly::coeff_as<double>(const Rat& c) {
  return c.convert_to<double>();
}

std::string format_rat(const Rat& r);

}  // namespace hynet
