#pragma once

// Exact arithmetic in a real quadratic field K = Q(sqrt D) and its ring of
// integers.
//
// Every element is stored as a + b*sqrt(D) with canonical GMP rationals,
// regardless of which integral basis the field uses; membership in the ring
// of integers is a predicate. Signs are decided exactly (no floating point).
// The "first embedding" sends sqrt(D) to the positive real root; scalar
// comparisons such as `less_than` refer to it.

#include <cstdint>
#include <compare>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace genquad {

using Rational = mpq_class;
using Integer = mpz_class;

/// Rational from numerator/denominator, canonicalized.
Rational make_rational(const Integer& num, const Integer& den = 1);

class FieldElement {
 public:
  /// Zero, not bound to any field.
  FieldElement() = default;
  /// A rational number; usable with elements of any field.
  FieldElement(Rational a);  // NOLINT(google-explicit-constructor)
  FieldElement(long a) : FieldElement(Rational(a)) {}  // NOLINT
  FieldElement(int a) : FieldElement(Rational(a)) {}   // NOLINT
  /// a + b*sqrt(d). `d` may be 0 only when b == 0.
  FieldElement(Rational a, Rational b, std::int64_t d);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  /// The radicand of the field, or 0 for a field-agnostic rational.
  std::int64_t d() const noexcept { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
  friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
  /// Throws PreconditionError on division by zero.
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y);
  FieldElement operator-() const;

  FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
  FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
  FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }
  FieldElement& operator/=(const FieldElement& y) { return *this = *this / y; }

  /// Equality of values; a rational compares equal to the same rational in any
  /// field.
  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Rational a_;
  Rational b_;
  std::int64_t d_ = 0;
};

enum class ArithKind { add, sub, mul, div };

/// Galois conjugate a - b*sqrt(D).
FieldElement conj(const FieldElement& x);
Rational norm(const FieldElement& x);
Rational trace(const FieldElement& x);
std::pair<Rational, Rational> norm_trace(const FieldElement& x);
FieldElement arith(const FieldElement& lhs, const FieldElement& rhs, ArithKind kind);
/// x^e for any integer e (negative exponents require x != 0).
FieldElement pow(const FieldElement& x, long e);

/// Exact sign of x under the first embedding: -1, 0 or 1.
int sign(const FieldElement& x);
/// Exact sign of conj(x) under the first embedding, i.e. x under the second.
int sign_conj(const FieldElement& x);
/// x < y under the first embedding.
bool less_than(const FieldElement& x, const FieldElement& y);

/// Both embeddings strictly positive (x ≻ 0).
bool is_totally_positive(const FieldElement& x);
/// Both embeddings nonnegative (x ⪰ 0).
bool is_totally_nonnegative(const FieldElement& x);

/// Membership in the ring of integers of Q(sqrt d). A rational is integral iff
/// it is an integer.
bool is_integral(const FieldElement& x);

/// Strict total order by (trace, b) used for listings.
bool trace_order(const FieldElement& x, const FieldElement& y);

/// Text form `R`, `R+Rs` or `R-Rs`. Zero rational part is printed as `0`.
std::string to_string(const FieldElement& x);
std::ostream& operator<<(std::ostream& os, const FieldElement& x);

enum class BasisKind {
  sqrt,  ///< {1, sqrt D}
  half   ///< {1, (1 + sqrt D)/2}, used when D ≡ 1 (mod 4)
};

/// Coordinates (p, q) of an element in the integral basis {1, w}.
struct BasisCoords {
  Rational p;
  Rational q;
};

class FieldContext {
 public:
  static constexpr std::int64_t default_unit_ceiling = 1'000'000;

  /// Validates that `d` is squarefree and ≥ 2 and finds the fundamental unit
  /// by ascending search up to `unit_ceiling` on its sqrt(D) coordinate.
  /// Throws PreconditionError / BudgetExhausted.
  explicit FieldContext(std::int64_t d, std::int64_t unit_ceiling = default_unit_ceiling);

  std::int64_t d() const noexcept { return d_; }
  BasisKind basis_kind() const noexcept { return kind_; }
  const FieldElement& fundamental_unit() const noexcept { return unit_; }

  FieldElement element(const Rational& a, const Rational& b = 0) const {
    return FieldElement(a, b, d_);
  }
  FieldElement sqrt_d() const { return element(0, 1); }
  /// The second integral basis element w.
  FieldElement omega() const;
  FieldElement from_basis(const Integer& p, const Integer& q) const;
  BasisCoords to_basis(const FieldElement& x) const;

  bool contains(const FieldElement& x) const { return x.d() == 0 || x.d() == d_; }

 private:
  std::int64_t d_;
  BasisKind kind_;
  FieldElement unit_;
};

bool is_squarefree(std::int64_t d);

/// Smallest unit u > 1 of the ring of integers of Q(sqrt d).
FieldElement fundamental_unit(const FieldContext& ctx);

/// Brute-force search behind FieldContext; exposed for budget tests.
FieldElement find_fundamental_unit(std::int64_t d, std::int64_t ceiling);

struct TotallyPositiveListing {
  Integer trace_bound;
  std::vector<FieldElement> elements;
};

/// Every totally positive algebraic integer with trace ≤ trace_bound, sorted by
/// (trace, b).
TotallyPositiveListing enumerate_totally_positive(const FieldContext& ctx, const Integer& trace_bound);

/// Largest integer n with n*n ≤ x (x ≥ 0).
Integer floor_sqrt(const Rational& x);

}  // namespace genquad
