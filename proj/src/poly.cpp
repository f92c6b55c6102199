#include "hynet/poly.hpp"

#include <sstream>

namespace hynet {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors.reserve(a.factors.size() + b.factors.size());
  auto ia = a.factors.begin(), ib = b.factors.begin();
  while (ia != a.factors.end() && ib != b.factors.end()) {
    if (ia->first < ib->first)
      out.factors.push_back(*ia++);
    else if (ib->first < ia->first)
      out.factors.push_back(*ib++);
    else {
      out.factors.push_back({ia->first, ia->second + ib->second});
      ++ia, ++ib;
    }
  }
  out.factors.insert(out.factors.end(), ia, a.factors.end());
  out.factors.insert(out.factors.end(), ib, b.factors.end());
  return out;
}

Monomial mono_without(const Monomial& m, int var) {
  Monomial out;
  for (auto [v, e] : m.factors)
    if (v != var) out.factors.push_back({v, e});
  return out;
}

Poly Poly::constant(const Rat& c) {
  Poly p;
  p.add_term(Monomial{}, c);
  return p;
}

Poly Poly::variable(int var, int exp) {
  Poly p;
  if (exp == 0) return constant(1);
  Monomial m;
  m.factors.push_back({var, exp});
  p.add_term(m, 1);
  return p;
}

int Poly::total_degree(int skip_var) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_excluding(skip_var));
  return d;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.insert({m, c});
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coef] : terms_) coef *= c;
  return *this;
}

Poly Poly::pow(int e) const {
  Poly r = constant(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Poly Poly::rename(const std::function<int(int)>& f) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    std::map<int, int> exps;
    for (auto [v, e] : m.factors) exps[f(v)] += e;
    Monomial nm;
    for (auto [v, e] : exps) nm.factors.push_back({v, e});
    r.add_term(nm, c);
  }
  return r;
}

double Poly::eval_double(const std::vector<double>& vals) const {
  return eval<double>([&](int v) { return vals.at(v); });
}

Rat Poly::eval_rat(const std::vector<Rat>& vals) const {
  return eval<Rat>([&](int v) { return vals.at(v); });
}

std::pair<Poly, Poly> Poly::divide_linear(int u, int v) const {
  // Collect by power of x_u, then synthetic division at the "root" x_v.
  std::map<int, Poly> by_deg;
  int maxdeg = 0;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent_of(u);
    by_deg[e].add_term(mono_without(m, u), c);
    maxdeg = std::max(maxdeg, e);
  }
  Poly xv = variable(v);
  Poly quotient;
  Poly carry;  // B_e while descending
  for (int e = maxdeg; e >= 1; --e) {
    Poly coef = carry * xv;
    auto it = by_deg.find(e);
    if (it != by_deg.end()) coef += it->second;
    // coef is the coefficient of x_u^{e-1} in the quotient
    quotient += coef * variable(u, e - 1);
    carry = coef;
  }
  Poly rem = carry * xv;
  auto it = by_deg.find(0);
  if (it != by_deg.end()) rem += it->second;
  return {quotient, rem};
}

std::string format_rat(const Rat& r) {
  std::ostringstream os;
  if (denominator(r) == 1)
    os << numerator(r);
  else
    os << numerator(r) << "/" << denominator(r);
  return os.str();
}

std::string Poly::to_string(const std::function<std::string(int)>& name) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool printed = false;
    if (a != 1 || m.factors.empty()) {
      os << format_rat(a);
      printed = true;
    }
    for (auto [v, e] : m.factors) {
      if (printed) os << "*";
      os << name(v);
      if (e > 1) os << "^" << e;
      printed = true;
    }
  }
  return os.str();
}

}  // namespace hynet
