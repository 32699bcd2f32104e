#include "genquad/paperlab.hpp"

#include "genquad/error.hpp"

namespace genquad::paperlab {

namespace {

long mod_floor(const Integer& x, long m) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

bool odd_irrational_part(const FieldElement& x) {
  return mpz_odd_p(x.b().get_num().get_mpz_t()) != 0;
}

void add_g_slot(GeneralizedForm& form, int var, const FieldElement& weight) {
  const Atom z{var, Flag::plain};
  const Atom tz{var, Flag::conj};
  form.add(z, z, weight * FieldElement(4));
  form.add(z, tz, weight * FieldElement(-4));
  form.add(tz, tz, weight);
}

}  // namespace

CounterexampleBundle build_counterexample() {
  CounterexampleBundle b;
  b.epsilon = b.ctx.element(3, 2);
  b.beta = b.ctx.element(2, 1);
  b.s = QuadraticForm(4);
  for (int i = 1; i <= 4; ++i) b.s.add(i, i, 1);
  b.h = GeneralizedForm(8);
  b.g = GeneralizedForm(12);
  for (int i = 1; i <= 4; ++i) b.g.add({i, Flag::plain}, {i, Flag::plain}, 1);
  for (int slot = 0; slot < 8; ++slot) {
    const FieldElement weight = pow(b.epsilon, slot % 4) * pow(b.beta, slot / 4);
    b.h_weights.push_back(weight);
    add_g_slot(b.h, slot + 1, weight);
    add_g_slot(b.g, slot + 5, weight);
  }
  return b;
}

std::pair<FieldElement, FieldElement> ell_and_g(const FieldElement& z) {
  const FieldElement ell = FieldElement(2) * z - conj(z);
  return {ell, ell * ell};
}

std::optional<FieldElement> ell_preimage(const FieldElement& target) {
  // l(a + b sqrt D) = a + 3b sqrt D.
  const FieldElement z(target.a(), target.b() / 3, target.d());
  if (!is_integral(target) || !is_integral(z)) return std::nullopt;
  return z;
}

ResidueZSqrt2 operator*(const ResidueZSqrt2& x, const ResidueZSqrt2& y) {
  const long m = x.m;
  return {((x.a * y.a + 2 * x.b * y.b) % m + m) % m, ((x.a * y.b + x.b * y.a) % m + m) % m, m};
}

ResidueZSqrt2 reduce_mod(const FieldElement& x, long m) {
  if (!is_integral(x) || (x.d() != 2 && x.d() != 0)) {
    throw PreconditionError("reduction needs an element of Z[sqrt 2]");
  }
  return {mod_floor(x.a().get_num(), m), mod_floor(x.b().get_num(), m), m};
}

ResidueZSqrt2 residue_pow(ResidueZSqrt2 x, long e) {
  if (e < 0) throw PreconditionError("negative exponent in residue ring");
  ResidueZSqrt2 result{1 % x.m, 0, x.m};
  while (e > 0) {
    if (e & 1) result = result * x;
    x = x * x;
    e >>= 1;
  }
  return result;
}

std::pair<long, int> indecomposable_exponents(const CounterexampleBundle& bundle, const FieldElement& eta) {
  if (!is_integral(eta) || !is_totally_positive(eta) || !bundle.ctx.contains(eta)) {
    throw PreconditionError(to_string(eta) + " is not a totally positive integer of Q(sqrt 2)");
  }
  const FieldElement one(1);
  for (int e = 0; e <= 1; ++e) {
    FieldElement x = e == 0 ? eta : eta / bundle.beta;
    if (!is_integral(x) || norm(x) != 1) continue;
    // x is now a totally positive unit, hence a power of epsilon.
    long k = 0;
    while (x != one) {
      if (less_than(one, x)) {
        x /= bundle.epsilon;
        ++k;
      } else {
        x *= bundle.epsilon;
        --k;
      }
    }
    return {k, e};
  }
  throw PreconditionError(to_string(eta) + " is not epsilon^k or epsilon^k * (2+sqrt 2)");
}

RepresentationWitness represent_by_H(const CounterexampleBundle& bundle, const FieldElement& eta) {
  const auto [k, e] = indecomposable_exponents(bundle, eta);
  long q = k / 4;
  long s = k % 4;
  if (s < 0) {
    s += 4;
    --q;
  }
  const auto z = ell_preimage(pow(bundle.epsilon, 2 * q));
  if (!z) throw ContractFailure("epsilon^" + std::to_string(2 * q) + " has no l-preimage");
  RepresentationWitness w;
  w.assignment.assign(8, FieldElement());
  w.assignment[static_cast<std::size_t>(s + 4 * e)] = *z;
  w.value = evaluate_generalized(bundle.h, w.assignment);
  if (w.value != eta) {
    throw ContractFailure("H witness for " + to_string(eta) + " evaluates to " + to_string(w.value));
  }
  return w;
}

RepresentationWitness represent_by_H(const FieldElement& eta) { return represent_by_H(build_counterexample(), eta); }

CounterexampleReport verify_counterexample(const Integer& trace_bound, const SearchOptions& options) {
  if (trace_bound < 2) throw PreconditionError("trace bound must be at least 2");
  const CounterexampleBundle bundle = build_counterexample();
  const FieldContext& ctx = bundle.ctx;
  CounterexampleReport report;
  report.trace_bound = trace_bound;
  report.g_class = classify_definiteness(bundle.g);
  report.s_class = classify_definiteness(bundle.s);
  if (report.g_class != DefinitenessClass::totally_positive_semidefinite_only) {
    throw ContractFailure("G is not semidefinite-only");
  }
  if (report.s_class != DefinitenessClass::totally_positive_definite) {
    throw ContractFailure("S is not definite");
  }

  const DeltaCertificate s_cert = delta_lower_bound(bundle.s);
  const IndecomposableListing listing = indecomposables_up_to(ctx, trace_bound);

  auto squares_witness = [&](const FieldElement& x) -> std::vector<FieldElement> {
    if (x.is_zero()) return std::vector<FieldElement>(4);
    const SearchVerdict v = represent_definite(ctx, bundle.s, x, s_cert, options);
    if (!v.found()) throw ContractFailure("S does not represent " + to_string(x));
    return v.witness->assignment;
  };

  for (const auto& alpha : enumerate_totally_positive(ctx, trace_bound).elements) {
    CounterexampleEntry entry;
    entry.alpha = alpha;
    std::vector<FieldElement> s_part;
    std::vector<FieldElement> h_part(8);
    if (!odd_irrational_part(alpha)) {
      entry.route = CounterexampleEntry::Route::squares;
      s_part = squares_witness(alpha);
    } else {
      entry.route = CounterexampleEntry::Route::split;
      const auto parts = decompose(listing, alpha);
      const FieldElement* odd = nullptr;
      for (const auto& p : parts) {
        if (odd_irrational_part(p)) {
          odd = &p;
          break;
        }
      }
      if (odd == nullptr) throw ContractFailure("no odd indecomposable part in " + to_string(alpha));
      entry.eta = *odd;
      s_part = squares_witness(alpha - entry.eta);
      h_part = represent_by_H(bundle, entry.eta).assignment;
    }
    entry.witness = s_part;
    entry.witness.insert(entry.witness.end(), h_part.begin(), h_part.end());
    if (evaluate_generalized(bundle.g, entry.witness) != alpha) {
      throw ContractFailure("G witness fails for " + to_string(alpha));
    }
    report.entries.push_back(std::move(entry));
  }

  report.subform_target = ctx.element(3, 1);
  for (int mask = 1; mask < 16; ++mask) {
    std::set<int> keep;
    for (int i = 0; i < 4; ++i) {
      if (mask & (1 << i)) keep.insert(i + 1);
    }
    const Subform sub = subform(bundle.g, keep);
    const DeltaCertificate cert = generalized_delta(sub.form);
    SearchVerdict verdict = represent_definite(ctx, sub.form, report.subform_target, cert, options);
    if (verdict.found()) {
      throw ContractFailure("a quadratic subform represents " + to_string(report.subform_target));
    }
    report.subform_checks.push_back({std::move(keep), std::move(verdict)});
  }
  return report;
}

TheoremOutcome theorem_pipeline(const FieldContext& ctx, const GeneralizedForm& g, const Integer& trace_bound,
                                const SearchOptions& options) {
  if (!g.integral()) throw PreconditionError("form is not integral");
  TheoremOutcome out;
  out.delta = generalized_delta(g);
  out.verified_to = trace_bound;

  const auto proper = proper_variables(g);
  std::set<int> keep;
  for (int v = 1; v <= g.r(); ++v) {
    if (!proper.contains(v)) keep.insert(v);
  }
  out.subform_source = subform(g, keep);
  const GeneralizedForm& sub = out.subform_source.form;
  out.subform = QuadraticForm(sub.r());
  for (const auto& [key, c] : sub.coeffs()) out.subform.add(key.first.var, key.second.var, c);

  // Which flag each kept variable carries in g (plain if absent).
  std::vector<Flag> flags(static_cast<std::size_t>(sub.r()), Flag::plain);
  for (const Atom& a : sub.appearing_atoms()) flags[static_cast<std::size_t>(a.var - 1)] = a.flag;

  for (const auto& alpha : enumerate_totally_positive(ctx, trace_bound).elements) {
    TargetTrace t;
    t.scaled = unit_scale_down(ctx, alpha, out.delta.delta);
    const SearchVerdict v = represent_definite(ctx, g, t.scaled.beta, out.delta, options);
    if (!v.found()) {
      throw PreconditionError("form does not represent " + to_string(t.scaled.beta) + " (scaled from " +
                              to_string(alpha) + "), so it is not universal");
    }
    t.beta_witness = v.witness->assignment;
    for (int p : proper) {
      if (!t.beta_witness[static_cast<std::size_t>(p - 1)].is_zero()) {
        throw ContractFailure("proper variable z" + std::to_string(p) + " is nonzero in the witness for " +
                              to_string(t.scaled.beta));
      }
    }
    const FieldElement eps_conj = conj(t.scaled.epsilon);
    for (std::size_t i = 0; i < out.subform_source.source_var.size(); ++i) {
      const FieldElement& w = t.beta_witness[static_cast<std::size_t>(out.subform_source.source_var[i] - 1)];
      t.alpha_witness.push_back(flags[i] == Flag::plain ? w / t.scaled.epsilon : w / eps_conj);
    }
    if (evaluate_generalized(sub, t.alpha_witness) != alpha) {
      throw ContractFailure("recovered witness does not represent " + to_string(alpha));
    }
    out.per_target.push_back(std::move(t));
  }
  return out;
}

}  // namespace genquad::paperlab
