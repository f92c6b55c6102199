#include "hynet/polyspec.hpp"

#include <cctype>

namespace hynet {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw Error(std::string("polynomial spec: expected '") + c + "' at offset " +
                             std::to_string(i) + " in: " + s);
  }
  long long integer() {
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw Error("polynomial spec: expected integer at offset " +
                                std::to_string(i) + " in: " + s);
    return std::stoll(s.substr(start, i - start));
  }
  std::string name() {
    skip();
    std::size_t start = i;
    while (i < s.size() && s[i] != ']') ++i;
    if (i == start) throw Error("polynomial spec: expected name at offset " +
                                std::to_string(start) + " in: " + s);
    return s.substr(start, i - start);
  }
};

int slot_var(Cursor& c, const InputSchema& schema) {
  if (c.eat('Y')) {
    c.expect('[');
    int comp = static_cast<int>(c.integer());
    c.expect(']');
    if (comp < 0 || comp >= schema.self_dim) throw Error("polynomial spec: Y component out of range");
    return schema.y_slot(comp);
  }
  if (c.eat('L')) return schema.lambda_var();
  if (c.eat('E')) {
    c.expect('[');
    std::string etype = c.name();
    c.expect(']');
    c.expect('[');
    int edge = static_cast<int>(c.integer());
    c.expect(']');
    c.expect('[');
    int pos = static_cast<int>(c.integer());
    c.expect(']');
    c.expect('[');
    int comp = static_cast<int>(c.integer());
    c.expect(']');
    for (int g = 0; g < static_cast<int>(schema.groups.size()); ++g) {
      const EdgeGroup& grp = schema.groups[g];
      if (grp.etype != etype) continue;
      if (edge < 0 || edge >= grp.multiplicity)
        throw Error("polynomial spec: edge index out of range for " + etype);
      if (pos < 1 || pos > grp.order)
        throw Error("polynomial spec: source position out of range for " + etype);
      if (comp < 0 || comp >= grp.source_dims[pos - 1])
        throw Error("polynomial spec: component out of range for " + etype);
      return schema.edge_slot(g, edge, pos - 1, comp);
    }
    throw Error("polynomial spec: unknown edge type " + etype);
  }
  throw Error("polynomial spec: expected slot at offset " + std::to_string(c.i) + " in: " + c.s);
}

}  // namespace

Poly parse_poly(const std::string& text, const InputSchema& schema) {
  Cursor c{text};
  Poly out;
  bool first = true;
  while (!c.done()) {
    Rat sign = 1;
    if (c.eat('-'))
      sign = -1;
    else if (c.eat('+'))
      sign = 1;
    else if (!first)
      throw Error("polynomial spec: expected '+' or '-' at offset " + std::to_string(c.i) +
                  " in: " + text);
    first = false;
    Rat coef = sign;
    Monomial m;
    bool have_factor = false;
    bool expect_more = true;
    while (expect_more) {
      char p = c.peek();
      if (std::isdigit(static_cast<unsigned char>(p))) {
        Rat num = c.integer();
        if (c.eat('/')) {
          long long den = c.integer();
          if (den == 0) throw Error("polynomial spec: zero denominator");
          num /= den;
        }
        coef *= num;
      } else {
        int var = slot_var(c, schema);
        int exp = 1;
        if (c.eat('^')) exp = static_cast<int>(c.integer());
        if (exp < 0) throw Error("polynomial spec: negative exponent");
        for (int i = 0; i < exp; ++i) {
          Monomial one;
          one.factors.push_back({var, 1});
          m = mono_mul(m, one);
        }
        have_factor = true;
      }
      expect_more = c.eat('*');
      if (expect_more && c.done())
        throw Error("polynomial spec: dangling '*' in: " + text);
    }
    (void)have_factor;
    out.add_term(m, coef);
  }
  if (first) throw Error("polynomial spec: empty input");
  return out;
}

std::string format_poly(const Poly& p, const InputSchema& schema) {
  return p.to_string([&](int var) { return schema.slot_name(var); });
}

}  // namespace hynet
