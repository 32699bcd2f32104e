#include "genquad/forms.hpp"

#include <string>

#include "genquad/error.hpp"

namespace genquad {

namespace {

void check_dimension(std::size_t n) {
  if (n > static_cast<std::size_t>(max_classify_dimension)) {
    throw PreconditionError("form has " + std::to_string(n) + " columns, limit is " +
                            std::to_string(max_classify_dimension));
  }
}

}  // namespace

FieldElement atom_value(const Atom& atom, std::span<const FieldElement> z) {
  const FieldElement& v = z[static_cast<std::size_t>(atom.var - 1)];
  return atom.flag == Flag::plain ? v : conj(v);
}

QuadraticForm::QuadraticForm(int n) : n_(n) {
  if (n < 0) throw PreconditionError("negative variable count");
}

void QuadraticForm::add(int i, int j, const FieldElement& c) {
  if (i < 1 || j < 1 || i > n_ || j > n_) {
    throw PreconditionError("variable index out of range 1.." + std::to_string(n_));
  }
  if (c.is_zero()) return;
  const Key key = i <= j ? Key{i, j} : Key{j, i};
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) {
    coeffs_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

FieldElement QuadraticForm::coeff(int i, int j) const {
  const Key key = i <= j ? Key{i, j} : Key{j, i};
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? FieldElement() : it->second;
}

bool QuadraticForm::integral() const {
  for (const auto& [key, c] : coeffs_) {
    if (!is_integral(c)) return false;
  }
  return true;
}

GeneralizedForm::GeneralizedForm(int r) : r_(r) {
  if (r < 0) throw PreconditionError("negative variable count");
}

GeneralizedForm GeneralizedForm::from_quadratic(const QuadraticForm& q) {
  GeneralizedForm g(q.n());
  for (const auto& [key, c] : q.coeffs()) {
    g.add({key.first, Flag::plain}, {key.second, Flag::plain}, c);
  }
  return g;
}

void GeneralizedForm::add(Atom x, Atom y, const FieldElement& c) {
  if (x.var < 1 || y.var < 1 || x.var > r_ || y.var > r_) {
    throw PreconditionError("variable index out of range 1.." + std::to_string(r_));
  }
  if (c.is_zero()) return;
  const Key key = x <= y ? Key{x, y} : Key{y, x};
  auto it = coeffs_.find(key);
  if (it == coeffs_.end()) {
    coeffs_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

FieldElement GeneralizedForm::coeff(Atom x, Atom y) const {
  const Key key = x <= y ? Key{x, y} : Key{y, x};
  auto it = coeffs_.find(key);
  return it == coeffs_.end() ? FieldElement() : it->second;
}

bool GeneralizedForm::integral() const {
  for (const auto& [key, c] : coeffs_) {
    if (!is_integral(c)) return false;
  }
  return true;
}

std::set<Atom> GeneralizedForm::appearing_atoms() const {
  std::set<Atom> out;
  for (const auto& [key, c] : coeffs_) {
    out.insert(key.first);
    out.insert(key.second);
  }
  return out;
}

Matrix gram_matrix(const QuadraticForm& q) {
  const auto n = static_cast<std::size_t>(q.n());
  Matrix m(n, std::vector<FieldElement>(n));
  for (const auto& [key, c] : q.coeffs()) {
    const auto i = static_cast<std::size_t>(key.first - 1);
    const auto j = static_cast<std::size_t>(key.second - 1);
    if (i == j) {
      m[i][i] = c;
    } else {
      const FieldElement half = c / FieldElement(2);
      m[i][j] = half;
      m[j][i] = half;
    }
  }
  return m;
}

FieldElement evaluate_quadratic(const QuadraticForm& q, std::span<const FieldElement> x) {
  if (x.size() != static_cast<std::size_t>(q.n())) {
    throw PreconditionError("expected " + std::to_string(q.n()) + " values, got " +
                            std::to_string(x.size()));
  }
  FieldElement sum;
  for (const auto& [key, c] : q.coeffs()) {
    sum += c * x[static_cast<std::size_t>(key.first - 1)] * x[static_cast<std::size_t>(key.second - 1)];
  }
  return sum;
}

FieldElement evaluate_generalized(const GeneralizedForm& g, std::span<const FieldElement> z) {
  if (z.size() != static_cast<std::size_t>(g.r())) {
    throw PreconditionError("expected " + std::to_string(g.r()) + " values, got " +
                            std::to_string(z.size()));
  }
  FieldElement sum;
  for (const auto& [key, c] : g.coeffs()) {
    sum += c * atom_value(key.first, z) * atom_value(key.second, z);
  }
  return sum;
}

std::set<int> proper_variables(const GeneralizedForm& g) {
  std::set<int> out;
  const auto atoms = g.appearing_atoms();
  for (const Atom& a : atoms) {
    if (a.flag == Flag::plain && atoms.contains(Atom{a.var, Flag::conj})) out.insert(a.var);
  }
  return out;
}

bool is_quadratic(const GeneralizedForm& g) { return proper_variables(g).empty(); }

AssociatedForm associated_form(const GeneralizedForm& g) {
  AssociatedForm out;
  const auto atoms = g.appearing_atoms();
  out.column_map.assign(atoms.begin(), atoms.end());
  std::map<Atom, int> column;
  for (std::size_t c = 0; c < out.column_map.size(); ++c) {
    column[out.column_map[c]] = static_cast<int>(c) + 1;
  }
  out.q = QuadraticForm(static_cast<int>(out.column_map.size()));
  for (const auto& [key, c] : g.coeffs()) {
    out.q.add(column.at(key.first), column.at(key.second), c);
  }
  const auto proper = proper_variables(g);
  std::set<int> vars;
  for (const Atom& a : atoms) vars.insert(a.var);
  out.ell = static_cast<int>(vars.size() - proper.size());
  return out;
}

std::vector<FieldElement> expand(const AssociatedForm& assoc, std::span<const FieldElement> z) {
  std::vector<FieldElement> out;
  out.reserve(assoc.column_map.size());
  for (const Atom& a : assoc.column_map) out.push_back(atom_value(a, z));
  return out;
}

Subform subform(const GeneralizedForm& g, const std::set<int>& keep) {
  Subform out;
  std::map<int, int> renumber;
  for (int v : keep) {
    if (v < 1 || v > g.r()) throw PreconditionError("kept variable " + std::to_string(v) + " out of range");
    out.source_var.push_back(v);
    renumber[v] = static_cast<int>(out.source_var.size());
  }
  out.form = GeneralizedForm(static_cast<int>(out.source_var.size()));
  for (const auto& [key, c] : g.coeffs()) {
    auto x = renumber.find(key.first.var);
    auto y = renumber.find(key.second.var);
    if (x == renumber.end() || y == renumber.end()) continue;
    out.form.add({x->second, key.first.flag}, {y->second, key.second.flag}, c);
  }
  return out;
}

std::string_view to_string(DefinitenessClass c) {
  switch (c) {
    case DefinitenessClass::totally_positive_definite: return "totally_positive_definite";
    case DefinitenessClass::totally_positive_semidefinite_only: return "totally_positive_semidefinite_only";
    case DefinitenessClass::not_semidefinite: return "not_semidefinite";
  }
  return "unknown";
}

std::optional<SquareDecomposition> square_decomposition(Matrix a) {
  const std::size_t n = a.size();
  check_dimension(n);
  SquareDecomposition out;
  out.pivots.assign(n, FieldElement());
  out.multipliers.assign(n, {});
  for (std::size_t c = n; c-- > 0;) {
    const FieldElement pivot = a[c][c];
    out.multipliers[c].assign(c, FieldElement());
    if (pivot.is_zero()) {
      for (std::size_t j = 0; j < c; ++j) {
        if (!a[c][j].is_zero()) return std::nullopt;
      }
      continue;
    }
    if (!is_totally_positive(pivot)) return std::nullopt;
    out.pivots[c] = pivot;
    for (std::size_t j = 0; j < c; ++j) out.multipliers[c][j] = a[c][j] / pivot;
    for (std::size_t i = 0; i < c; ++i) {
      if (a[i][c].is_zero()) continue;
      for (std::size_t j = 0; j < c; ++j) {
        if (a[c][j].is_zero()) continue;
        a[i][j] -= a[i][c] * out.multipliers[c][j];
      }
    }
  }
  return out;
}

DefinitenessClass classify_definiteness(const QuadraticForm& q) {
  check_dimension(static_cast<std::size_t>(q.n()));
  const auto dec = square_decomposition(gram_matrix(q));
  if (!dec) return DefinitenessClass::not_semidefinite;
  for (const auto& p : dec->pivots) {
    if (p.is_zero()) return DefinitenessClass::totally_positive_semidefinite_only;
  }
  return DefinitenessClass::totally_positive_definite;
}

DefinitenessClass classify_definiteness(const GeneralizedForm& g) {
  return classify_definiteness(associated_form(g).q);
}

bool shifted_is_semidefinite(const QuadraticForm& q, const Rational& delta) {
  Matrix m = gram_matrix(q);
  for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= FieldElement(delta);
  return square_decomposition(std::move(m)).has_value();
}

}  // namespace genquad
