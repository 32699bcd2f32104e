#include "genquad/text.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "genquad/error.hpp"

namespace genquad {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected ") + what);
  }
  std::size_t pos() {
    skip_ws();
    return pos_;
  }
  [[noreturn]] void fail(const std::string& message) {
    skip_ws();
    if (pos_ < text_.size()) {
      throw ParseError(message + ", found '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    throw ParseError(message + ", found end of input", pos_);
  }

  std::optional<Integer> digits() {
    skip_ws();
    std::string buf;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        buf += c;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    if (buf.empty()) return std::nullopt;
    return Integer(buf, 10);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// p or p/q, without sign.
Rational parse_unsigned_rational(Cursor& cur) {
  auto num = cur.digits();
  if (!num) cur.fail("malformed rational: expected digits");
  if (!cur.accept('/')) return Rational(*num);
  const std::size_t den_pos = cur.pos();
  auto den = cur.digits();
  if (!den) cur.fail("malformed rational: expected denominator digits");
  if (*den == 0) throw ParseError("zero denominator", den_pos);
  return make_rational(*num, *den);
}

// R(('+'|'-')R's')? with an optional leading sign on the first R.
FieldElement parse_element_at(Cursor& cur, const FieldContext& ctx) {
  bool negative = false;
  if (cur.accept('-')) {
    negative = true;
  } else {
    cur.accept('+');
  }
  Rational a = parse_unsigned_rational(cur);
  if (negative) a = -a;
  const char c = cur.peek();
  if (c != '+' && c != '-') return ctx.element(a);
  cur.accept(c);
  Rational b = parse_unsigned_rational(cur);
  cur.expect('s', "'s' after the irrational coefficient");
  if (c == '-') b = -b;
  return ctx.element(a, b);
}

Atom parse_atom(Cursor& cur) {
  Flag flag = Flag::plain;
  if (cur.accept('t')) {
    cur.expect('(', "'(' after t");
    flag = Flag::conj;
  }
  cur.expect('z', "variable 'z'");
  const std::size_t index_pos = cur.pos();
  auto index = cur.digits();
  if (!index) cur.fail("expected variable index");
  if (*index == 0) throw ParseError("variable index 0; indices start at 1", index_pos);
  if (!index->fits_sint_p() || *index > 1'000'000) throw ParseError("variable index too large", index_pos);
  if (flag == Flag::conj) cur.expect(')', "')' closing t(");
  return Atom{static_cast<int>(index->get_si()), flag};
}

bool starts_atom(char c) { return c == 'z' || c == 't'; }

struct Term {
  FieldElement coeff;
  Atom x;
  Atom y;
};

Term parse_term(Cursor& cur, const FieldContext& ctx) {
  Term term{FieldElement(1), {}, {}};
  const std::size_t start = cur.pos();
  const char c = cur.peek();
  if (c == '(') {
    cur.accept('(');
    term.coeff = parse_element_at(cur, ctx);
    cur.expect(')', "')' closing the coefficient");
    if (!cur.accept('*')) throw ParseError("non-quadratic monomial: a term needs two atoms", cur.pos());
  } else if (std::isdigit(static_cast<unsigned char>(c))) {
    term.coeff = ctx.element(parse_unsigned_rational(cur));
    if (!cur.accept('*')) throw ParseError("non-quadratic monomial: a term needs two atoms", cur.pos());
  }
  if (!starts_atom(cur.peek())) cur.fail("unknown token: expected zN or t(zN)");
  term.x = parse_atom(cur);
  if (cur.accept('^')) {
    const std::size_t exp_pos = cur.pos();
    auto e = cur.digits();
    if (!e || *e != 2) throw ParseError("non-quadratic monomial: only ^2 is allowed", exp_pos);
    term.y = term.x;
  } else if (cur.accept('*')) {
    if (!starts_atom(cur.peek())) cur.fail("unknown token: expected zN or t(zN)");
    term.y = parse_atom(cur);
  } else {
    throw ParseError("non-quadratic monomial: single atom has degree 1", start);
  }
  if (cur.peek() == '*' || cur.peek() == '^') {
    throw ParseError("non-quadratic monomial: degree exceeds 2", cur.pos());
  }
  return term;
}

std::string coefficient_prefix(const FieldElement& c, bool first) {
  // Returns the separator plus coefficient for a term; the monomial follows.
  const bool irrational = !c.is_rational();
  if (irrational) return (first ? "(" : " + (") + to_string(c) + ")*";
  const bool negative = sgn(c.a()) < 0;
  const Rational mag = abs(c.a());
  std::string out = first ? (negative ? "-" : "") : (negative ? " - " : " + ");
  if (mag != 1) out += mag.get_str() + "*";
  return out;
}

}  // namespace

FieldElement parse_element(std::string_view text, const FieldContext& ctx) {
  Cursor cur(text);
  FieldElement x = parse_element_at(cur, ctx);
  if (!cur.at_end()) cur.fail("trailing garbage");
  return x;
}

GeneralizedForm parse_form(std::string_view text, const FieldContext& ctx, int min_vars) {
  Cursor cur(text);
  std::vector<Term> terms;
  if (cur.peek() == '0') {
    Cursor probe = cur;
    probe.accept('0');
    if (probe.at_end()) return GeneralizedForm(min_vars);
  }
  if (cur.at_end()) cur.fail("empty form");
  bool first = true;
  while (!cur.at_end()) {
    bool negative = false;
    if (cur.accept('-')) {
      negative = true;
    } else if (!cur.accept('+') && !first) {
      cur.fail("expected '+' or '-' between terms");
    }
    Term t = parse_term(cur, ctx);
    if (negative) t.coeff = -t.coeff;
    terms.push_back(std::move(t));
    first = false;
  }
  int r = min_vars;
  for (const auto& t : terms) r = std::max({r, t.x.var, t.y.var});
  GeneralizedForm g(r);
  for (const auto& t : terms) g.add(t.x, t.y, t.coeff);
  return g;
}

std::string to_string(const Atom& atom) {
  const std::string z = "z" + std::to_string(atom.var);
  return atom.flag == Flag::plain ? z : "t(" + z + ")";
}

std::string to_string(const GeneralizedForm& g) {
  if (g.coeffs().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : g.coeffs()) {
    out += coefficient_prefix(c, first);
    if (key.first == key.second) {
      out += to_string(key.first) + "^2";
    } else {
      out += to_string(key.first) + "*" + to_string(key.second);
    }
    first = false;
  }
  return out;
}

std::string to_string(const QuadraticForm& q) { return to_string(GeneralizedForm::from_quadratic(q)); }

}  // namespace genquad
