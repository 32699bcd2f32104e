#pragma once

// Quadratic forms and generalized quadratic forms over Q(sqrt D).
//
// A generalized form in r variables is a quadratic form in the 2r "atoms"
// z_i and t(z_i) = conj(z_i). Coefficients are kept in sorted maps with zero
// coefficients never stored, so whether an atom appears is a syntactic
// question about the map.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "genquad/field.hpp"

namespace genquad {

enum class Flag { plain, conj };

struct Atom {
  int var = 1;  // 1-based
  Flag flag = Flag::plain;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Value of the atom at z (z is 0-based, atom.var 1-based).
FieldElement atom_value(const Atom& atom, std::span<const FieldElement> z);

class QuadraticForm {
 public:
  using Key = std::pair<int, int>;  // i <= j, 1-based

  explicit QuadraticForm(int n = 0);

  int n() const noexcept { return n_; }
  /// Adds c to the coefficient of x_i x_j (any order). Zero results are erased.
  void add(int i, int j, const FieldElement& c);
  FieldElement coeff(int i, int j) const;
  const std::map<Key, FieldElement>& coeffs() const noexcept { return coeffs_; }
  bool integral() const;

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  int n_;
  std::map<Key, FieldElement> coeffs_;
};

class GeneralizedForm {
 public:
  using Key = std::pair<Atom, Atom>;  // first <= second

  explicit GeneralizedForm(int r = 0);
  /// The quadratic form viewed as a generalized form with only plain atoms.
  static GeneralizedForm from_quadratic(const QuadraticForm& q);

  int r() const noexcept { return r_; }
  void add(Atom x, Atom y, const FieldElement& c);
  FieldElement coeff(Atom x, Atom y) const;
  const std::map<Key, FieldElement>& coeffs() const noexcept { return coeffs_; }
  bool integral() const;
  /// Atoms occurring in some stored coefficient, sorted.
  std::set<Atom> appearing_atoms() const;

  friend bool operator==(const GeneralizedForm&, const GeneralizedForm&) = default;

 private:
  int r_;
  std::map<Key, FieldElement> coeffs_;
};

using Matrix = std::vector<std::vector<FieldElement>>;

/// Symmetric Gram matrix: a_ii on the diagonal, a_ij/2 off it.
Matrix gram_matrix(const QuadraticForm& q);

FieldElement evaluate_quadratic(const QuadraticForm& q, std::span<const FieldElement> x);
FieldElement evaluate_generalized(const GeneralizedForm& g, std::span<const FieldElement> z);

/// Indices whose plain and conjugate atoms both appear.
std::set<int> proper_variables(const GeneralizedForm& g);
bool is_quadratic(const GeneralizedForm& g);

struct AssociatedForm {
  QuadraticForm q;
  /// Column c of q corresponds to column_map[c] of the source form.
  std::vector<Atom> column_map;
  /// Number of appearing variables that are not proper.
  int ell = 0;
};

/// One column per appearing atom, ordered by (variable, plain before conj).
AssociatedForm associated_form(const GeneralizedForm& g);
/// Column values of the associated form at z.
std::vector<FieldElement> expand(const AssociatedForm& assoc, std::span<const FieldElement> z);

struct Subform {
  GeneralizedForm form;
  /// source_var[i] is the original (1-based) index of variable i+1.
  std::vector<int> source_var;
};

/// Sets every variable outside `keep` to zero and renumbers the rest in order.
Subform subform(const GeneralizedForm& g, const std::set<int>& keep);

enum class DefinitenessClass {
  totally_positive_definite,
  totally_positive_semidefinite_only,
  not_semidefinite,
};

std::string_view to_string(DefinitenessClass c);

/// Largest dimension accepted by the definiteness routines.
inline constexpr int max_classify_dimension = 64;

/// Q(x) = sum_i pivots[i] * (x_i + sum_{j<i} multipliers[i][j] * x_j)^2.
///
/// Each term only involves x_1..x_i, so a prefix of the variables determines
/// a prefix of the terms; every pivot is totally nonnegative.
struct SquareDecomposition {
  std::vector<FieldElement> pivots;
  Matrix multipliers;
};

/// Exact symmetric elimination from the last index down. Returns nullopt iff
/// the matrix is not positive semidefinite under both embeddings: a pivot
/// must be totally positive, or zero with a vanishing remaining row.
std::optional<SquareDecomposition> square_decomposition(Matrix gram);

DefinitenessClass classify_definiteness(const QuadraticForm& q);
/// Classification of the associated quadratic form.
DefinitenessClass classify_definiteness(const GeneralizedForm& g);

/// True iff q - delta*(x_1^2 + ... + x_n^2) is totally positive semidefinite.
bool shifted_is_semidefinite(const QuadraticForm& q, const Rational& delta);

}  // namespace genquad
