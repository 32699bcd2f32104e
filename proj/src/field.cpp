#include "genquad/field.hpp"

#include <algorithm>
#include <sstream>

#include "genquad/error.hpp"

namespace genquad {

namespace {

std::int64_t common_d(const FieldElement& x, const FieldElement& y) {
  if (x.d() == 0) return y.d();
  if (y.d() == 0 || y.d() == x.d()) return x.d();
  throw PreconditionError("elements of different fields: D=" + std::to_string(x.d()) +
                          " and D=" + std::to_string(y.d()));
}

// Sign of a + b*sqrt(d) for the positive root.
int sign_of(const Rational& a, const Rational& b, std::int64_t d) {
  const int sa = sgn(a);
  const int sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  const Rational lhs = a * a;
  const Rational rhs = Rational(Integer(d)) * b * b;
  const int c = cmp(lhs, rhs);
  if (c > 0) return sa;
  if (c < 0) return sb;
  return 0;
}

bool is_int(const Rational& x) { return x.get_den() == 1; }

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

FieldElement::FieldElement(Rational a) : a_(std::move(a)) {}

FieldElement::FieldElement(Rational a, Rational b, std::int64_t d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (d_ == 0 && sgn(b_) != 0) throw PreconditionError("irrational part without a field");
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  const auto d = common_d(x, y);
  return FieldElement(x.a_ + y.a_, x.b_ + y.b_, d);
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  const auto d = common_d(x, y);
  return FieldElement(x.a_ - y.a_, x.b_ - y.b_, d);
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  const auto d = common_d(x, y);
  return FieldElement(x.a_ * y.a_ + Rational(Integer(d)) * x.b_ * y.b_,
                      x.a_ * y.b_ + x.b_ * y.a_, d);
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
  if (y.is_zero()) throw PreconditionError("division by zero");
  const auto d = common_d(x, y);
  const Rational n = norm(y);
  const FieldElement num = x * conj(y);
  return FieldElement(num.a_ / n, num.b_ / n, d);
}

FieldElement FieldElement::operator-() const { return FieldElement(-a_, -b_, d_); }

FieldElement conj(const FieldElement& x) { return FieldElement(x.a(), -x.b(), x.d()); }

Rational norm(const FieldElement& x) {
  return x.a() * x.a() - Rational(Integer(x.d())) * x.b() * x.b();
}

Rational trace(const FieldElement& x) { return 2 * x.a(); }

std::pair<Rational, Rational> norm_trace(const FieldElement& x) { return {norm(x), trace(x)}; }

FieldElement arith(const FieldElement& lhs, const FieldElement& rhs, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return lhs + rhs;
    case ArithKind::sub: return lhs - rhs;
    case ArithKind::mul: return lhs * rhs;
    case ArithKind::div: return lhs / rhs;
  }
  throw PreconditionError("unknown arithmetic kind");
}

FieldElement pow(const FieldElement& x, long e) {
  FieldElement base = x;
  if (e < 0) {
    base = FieldElement(1) / x;
    e = -e;
  }
  FieldElement result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

int sign(const FieldElement& x) { return sign_of(x.a(), x.b(), x.d()); }

int sign_conj(const FieldElement& x) { return sign_of(x.a(), -x.b(), x.d()); }

bool less_than(const FieldElement& x, const FieldElement& y) { return sign(y - x) > 0; }

bool is_totally_positive(const FieldElement& x) { return sign(x) > 0 && sign_conj(x) > 0; }

bool is_totally_nonnegative(const FieldElement& x) { return sign(x) >= 0 && sign_conj(x) >= 0; }

bool is_integral(const FieldElement& x) {
  if (x.is_rational()) return is_int(x.a());
  if (x.d() % 4 != 1) return is_int(x.a()) && is_int(x.b());
  const Rational a2 = 2 * x.a();
  const Rational b2 = 2 * x.b();
  if (!is_int(a2) || !is_int(b2)) return false;
  const Integer diff = a2.get_num() - b2.get_num();
  return mpz_even_p(diff.get_mpz_t()) != 0;
}

bool trace_order(const FieldElement& x, const FieldElement& y) {
  if (x.a() != y.a()) return x.a() < y.a();
  return x.b() < y.b();
}

std::string to_string(const FieldElement& x) {
  std::string out = x.a().get_str();
  if (sgn(x.b()) != 0) {
    if (sgn(x.b()) > 0) {
      out += '+';
      out += x.b().get_str();
    } else {
      out += '-';
      out += Rational(-x.b()).get_str();
    }
    out += 's';
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << to_string(x); }

bool is_squarefree(std::int64_t d) {
  if (d < 2) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

FieldElement find_fundamental_unit(std::int64_t d, std::int64_t ceiling) {
  // Units > 1 have positive coordinates; the one with the smallest sqrt(D)
  // coordinate is the smallest. With the half basis we search (u + v sqrt D)/2
  // with u^2 - D v^2 = ±4, otherwise u + v sqrt D with u^2 - D v^2 = ±1.
  const bool half = d % 4 == 1;
  const long k = half ? 4 : 1;
  const Integer dd(d);
  for (std::int64_t v = 1; v <= ceiling; ++v) {
    const Integer dv2 = dd * Integer(v) * Integer(v);
    for (const Integer& cand : {Integer(dv2 - k), Integer(dv2 + k)}) {
      if (cand <= 0 || mpz_perfect_square_p(cand.get_mpz_t()) == 0) continue;
      const Integer u = sqrt(cand);
      if (half) return FieldElement(make_rational(u, 2), make_rational(Integer(v), 2), d);
      return FieldElement(Rational(u), Rational(Integer(v)), d);
    }
  }
  throw BudgetExhausted("fundamental unit not found with sqrt(D) coordinate up to " +
                        std::to_string(ceiling) + " for D=" + std::to_string(d));
}

FieldContext::FieldContext(std::int64_t d, std::int64_t unit_ceiling)
    : d_(d), kind_(d % 4 == 1 ? BasisKind::half : BasisKind::sqrt) {
  if (!is_squarefree(d)) {
    throw PreconditionError("D must be a squarefree integer >= 2, got " + std::to_string(d));
  }
  unit_ = find_fundamental_unit(d, unit_ceiling);
}

FieldElement FieldContext::omega() const {
  if (kind_ == BasisKind::half) return element(make_rational(1, 2), make_rational(1, 2));
  return sqrt_d();
}

FieldElement FieldContext::from_basis(const Integer& p, const Integer& q) const {
  if (kind_ == BasisKind::half) {
    return element(Rational(p) + make_rational(q, 2), make_rational(q, 2));
  }
  return element(Rational(p), Rational(q));
}

BasisCoords FieldContext::to_basis(const FieldElement& x) const {
  if (kind_ == BasisKind::half) return {x.a() - x.b(), 2 * x.b()};
  return {x.a(), x.b()};
}

FieldElement fundamental_unit(const FieldContext& ctx) { return ctx.fundamental_unit(); }

Integer floor_sqrt(const Rational& x) {
  if (sgn(x) < 0) throw PreconditionError("floor_sqrt of a negative number");
  const Integer fl = x.get_num() / x.get_den();  // floor, x ≥ 0
  return sqrt(fl);
}

TotallyPositiveListing enumerate_totally_positive(const FieldContext& ctx, const Integer& trace_bound) {
  TotallyPositiveListing out{trace_bound, {}};
  const Integer dd(ctx.d());
  if (ctx.basis_kind() == BasisKind::half) {
    // alpha = (t + s sqrt D)/2 with s ≡ t (mod 2) and t^2 > D s^2.
    for (Integer t = 1; t <= trace_bound; ++t) {
      const Integer t2 = t * t;
      for (Integer s = 0; dd * s * s < t2; ++s) {
        if (mpz_even_p(Integer(t - s).get_mpz_t()) == 0) continue;
        out.elements.push_back(ctx.element(make_rational(t, 2), make_rational(s, 2)));
        if (s != 0) out.elements.push_back(ctx.element(make_rational(t, 2), make_rational(-s, 2)));
      }
    }
  } else {
    for (Integer a = 1; 2 * a <= trace_bound; ++a) {
      const Integer a2 = a * a;
      for (Integer b = 0; dd * b * b < a2; ++b) {
        out.elements.push_back(ctx.element(Rational(a), Rational(b)));
        if (b != 0) out.elements.push_back(ctx.element(Rational(a), Rational(Integer(-b))));
      }
    }
  }
  std::sort(out.elements.begin(), out.elements.end(), trace_order);
  return out;
}

}  // namespace genquad
