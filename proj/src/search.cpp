#include "genquad/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

#include "genquad/error.hpp"

namespace genquad {

namespace {

// p + q*w for |p| ≤ pmax, |q| ≤ qmax in descending lexicographic (p, q) order.
std::vector<FieldElement> box_elements(const FieldContext& ctx, const Integer& pmax, const Integer& qmax) {
  std::vector<FieldElement> out;
  for (Integer p = pmax; p >= -pmax; --p) {
    for (Integer q = qmax; q >= -qmax; --q) out.push_back(ctx.from_basis(p, q));
  }
  return out;
}

class Engine {
 public:
  Engine(const GeneralizedForm& g, FieldElement alpha) : g_(g), alpha_(std::move(alpha)) {
    assoc_ = associated_form(g_);
    auto dec = square_decomposition(gram_matrix(assoc_.q));
    if (!dec) throw PreconditionError("form is not totally positive semidefinite");
    dec_ = std::move(*dec);
    var_columns_.assign(static_cast<std::size_t>(g_.r()), {});
    for (std::size_t c = 0; c < assoc_.column_map.size(); ++c) {
      var_columns_[static_cast<std::size_t>(assoc_.column_map[c].var - 1)].push_back(c);
    }
  }

  const AssociatedForm& assoc() const { return assoc_; }
  const std::vector<std::size_t>& columns_of(int var) const { return var_columns_[static_cast<std::size_t>(var - 1)]; }
  bool appears(int var) const { return !columns_of(var).empty(); }

  void set_candidates(std::vector<std::vector<FieldElement>> candidates) { candidates_ = std::move(candidates); }

  // Runs the depth-first search; returns the first assignment in order.
  std::optional<std::vector<FieldElement>> run(int parallel) const {
    const std::size_t r = candidates_.size();
    if (r == 0) {
      if (alpha_.is_zero()) return std::vector<FieldElement>{};
      return std::nullopt;
    }
    const auto& top = candidates_[0];
    if (parallel <= 1 || top.size() < 2) {
      State st = fresh_state();
      for (const auto& cand : top) {
        if (descend(st, 0, cand)) return st.assignment;
      }
      return std::nullopt;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    std::mutex mu;
    std::vector<FieldElement> best_assignment;
    auto worker = [&] {
      State st = fresh_state();
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= top.size() || i > best.load()) return;
        if (!descend(st, 0, top[i])) continue;
        std::lock_guard lock(mu);
        if (i < best.load()) {
          best.store(i);
          best_assignment = st.assignment;
        }
        return;
      }
    };
    {
      std::vector<std::jthread> pool;
      const auto n = static_cast<std::size_t>(parallel);
      for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    if (best.load() == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return best_assignment;
  }

 private:
  struct State {
    std::vector<FieldElement> columns;
    std::vector<FieldElement> assignment;
    std::vector<FieldElement> prefix;  // prefix[v] = partial sum before variable v
  };

  State fresh_state() const {
    State st;
    st.columns.assign(assoc_.column_map.size(), FieldElement());
    st.assignment.assign(candidates_.size(), FieldElement());
    st.prefix.assign(candidates_.size() + 1, FieldElement());
    return st;
  }

  // Assigns `value` to variable index v (0-based) and explores below it.
  bool descend(State& st, std::size_t v, const FieldElement& value) const {
    st.assignment[v] = value;
    FieldElement sum = st.prefix[v];
    for (std::size_t c : var_columns_[v]) {
      const Atom& atom = assoc_.column_map[c];
      st.columns[c] = atom.flag == Flag::plain ? value : conj(value);
      const FieldElement& pivot = dec_.pivots[c];
      if (pivot.is_zero()) continue;
      FieldElement lin = st.columns[c];
      for (std::size_t j = 0; j < c; ++j) {
        const FieldElement& m = dec_.multipliers[c][j];
        if (!m.is_zero() && !st.columns[j].is_zero()) lin += m * st.columns[j];
      }
      if (!lin.is_zero()) sum += pivot * lin * lin;
    }
    const FieldElement rest = alpha_ - sum;
    if (!is_totally_nonnegative(rest)) return false;
    if (v + 1 == candidates_.size()) return rest.is_zero();
    st.prefix[v + 1] = sum;
    for (const auto& cand : candidates_[v + 1]) {
      if (descend(st, v + 1, cand)) return true;
    }
    return false;
  }

  const GeneralizedForm& g_;
  FieldElement alpha_;
  AssociatedForm assoc_;
  SquareDecomposition dec_;
  std::vector<std::vector<std::size_t>> var_columns_;
  std::vector<std::vector<FieldElement>> candidates_;
};

void check_target(const FieldContext& ctx, const FieldElement& alpha) {
  if (!ctx.contains(alpha)) throw PreconditionError("target belongs to a different field");
  if (!is_integral(alpha) || !is_totally_positive(alpha)) {
    throw PreconditionError("target " + to_string(alpha) + " is not a totally positive integer");
  }
}

SearchVerdict finish(const GeneralizedForm& f, const FieldElement& alpha,
                     std::optional<std::vector<FieldElement>> assignment, SearchVerdict::Tag none_tag,
                     const Integer& bound) {
  SearchVerdict verdict;
  verdict.bound = bound;
  if (!assignment) {
    verdict.tag = none_tag;
    return verdict;
  }
  const FieldElement value = evaluate_generalized(f, *assignment);
  if (value != alpha) {
    throw ContractFailure("search witness evaluates to " + to_string(value) + ", expected " + to_string(alpha));
  }
  verdict.tag = SearchVerdict::Tag::found;
  verdict.witness = RepresentationWitness{std::move(*assignment), value};
  return verdict;
}

}  // namespace

std::string_view to_string(SearchVerdict::Tag tag) {
  switch (tag) {
    case SearchVerdict::Tag::found: return "found";
    case SearchVerdict::Tag::none_complete: return "none_complete";
    case SearchVerdict::Tag::none_within_height: return "none_within_height";
  }
  return "unknown";
}

SearchVerdict represent_definite(const FieldContext& ctx, const GeneralizedForm& f, const FieldElement& alpha,
                                 const DeltaCertificate& cert, const SearchOptions& options) {
  if (!f.integral()) throw PreconditionError("form is not integral");
  check_target(ctx, alpha);
  Engine engine(f, alpha);
  if (classify_definiteness(engine.assoc().q) != DefinitenessClass::totally_positive_definite) {
    throw PreconditionError("complete search requires a totally positive definite form");
  }
  if (!(cert.form == engine.assoc().q) || !verify_certificate(cert)) {
    throw PreconditionError("delta certificate does not certify this form");
  }

  // delta*x^2 ⪯ alpha for every column gives (|x| + |conj x|)^2 ≤ 2 Tr(alpha)/delta.
  const Rational sum_sq = 2 * trace(alpha) / cert.delta;
  const Integer b_sum = floor_sqrt(sum_sq) + 1;
  const Integer dd(ctx.d());
  Integer pmax;
  Integer qmax;
  if (ctx.basis_kind() == BasisKind::half) {
    qmax = floor_sqrt(Rational(b_sum * b_sum, dd));  // |q| sqrt D = |z - conj z|
    pmax = (b_sum + qmax) / 2 + 1;                   // |2p + q| = |z + conj z|
  } else {
    qmax = floor_sqrt(Rational(b_sum * b_sum, 4 * dd));
    pmax = b_sum / 2 + 1;
  }
  const auto box = box_elements(ctx, pmax, qmax);
  const FieldElement delta(cert.delta);

  std::vector<std::vector<FieldElement>> candidates(static_cast<std::size_t>(f.r()));
  for (int v = 1; v <= f.r(); ++v) {
    auto& list = candidates[static_cast<std::size_t>(v - 1)];
    if (!engine.appears(v)) {
      list.emplace_back();
      continue;
    }
    for (const auto& z : box) {
      bool ok = true;
      for (std::size_t c : engine.columns_of(v)) {
        const FieldElement x = engine.assoc().column_map[c].flag == Flag::plain ? z : conj(z);
        if (!is_totally_nonnegative(alpha - delta * x * x)) {
          ok = false;
          break;
        }
      }
      if (ok) list.push_back(z);
    }
  }
  engine.set_candidates(std::move(candidates));
  return finish(f, alpha, engine.run(options.parallel), SearchVerdict::Tag::none_complete, b_sum);
}

SearchVerdict represent_definite(const FieldContext& ctx, const QuadraticForm& f, const FieldElement& alpha,
                                 const DeltaCertificate& cert, const SearchOptions& options) {
  return represent_definite(ctx, GeneralizedForm::from_quadratic(f), alpha, cert, options);
}

SearchVerdict represent_bounded(const FieldContext& ctx, const GeneralizedForm& f, const FieldElement& alpha,
                                const Integer& height, const SearchOptions& options) {
  if (!f.integral()) throw PreconditionError("form is not integral");
  if (height < 0) throw PreconditionError("height must be nonnegative");
  check_target(ctx, alpha);
  Engine engine(f, alpha);
  const auto box = box_elements(ctx, height, height);
  std::vector<std::vector<FieldElement>> candidates(static_cast<std::size_t>(f.r()));
  for (int v = 1; v <= f.r(); ++v) {
    auto& list = candidates[static_cast<std::size_t>(v - 1)];
    if (engine.appears(v)) {
      list = box;
    } else {
      list.emplace_back();
    }
  }
  engine.set_candidates(std::move(candidates));
  return finish(f, alpha, engine.run(options.parallel), SearchVerdict::Tag::none_within_height, height);
}

UniversalityReport universality_report(const FieldContext& ctx, const GeneralizedForm& f, const Integer& trace_bound,
                                       const Strategy& strategy, const SearchOptions& options) {
  if (!f.integral()) throw PreconditionError("form is not integral");
  if (classify_definiteness(f) == DefinitenessClass::not_semidefinite) {
    throw PreconditionError("form is not totally positive semidefinite");
  }
  UniversalityReport report;
  report.trace_bound = trace_bound;
  for (const auto& alpha : enumerate_totally_positive(ctx, trace_bound).elements) {
    ++report.checked;
    SearchVerdict verdict = std::visit(
        [&](const auto& s) -> SearchVerdict {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, DefiniteStrategy>) {
            return represent_definite(ctx, f, alpha, s.cert, options);
          } else if constexpr (std::is_same_v<S, BoundedStrategy>) {
            return represent_bounded(ctx, f, alpha, s.height, options);
          } else {
            return s.prover(alpha);
          }
        },
        strategy);
    if (!verdict.found()) report.failures.emplace_back(alpha, std::move(verdict));
  }
  return report;
}

IndecomposableListing indecomposables_up_to(const FieldContext& ctx, const Integer& trace_bound) {
  if (trace_bound < 1) throw PreconditionError("trace bound must be positive");
  const auto all = enumerate_totally_positive(ctx, trace_bound).elements;
  IndecomposableListing out{trace_bound, {}};
  for (const auto& alpha : all) {
    const Rational tr = trace(alpha);
    bool split = false;
    for (const auto& beta : all) {
      if (trace(beta) >= tr) break;  // sorted by trace
      if (is_totally_positive(alpha - beta)) {
        split = true;
        break;
      }
    }
    if (!split) out.elements.push_back(alpha);
  }
  return out;
}

std::vector<FieldElement> decompose(const IndecomposableListing& listing, const FieldElement& alpha) {
  if (!is_integral(alpha) || !is_totally_positive(alpha)) {
    throw PreconditionError("decompose requires a totally positive integer");
  }
  if (trace(alpha) > Rational(listing.trace_bound)) {
    throw PreconditionError("indecomposable listing does not reach trace " + trace(alpha).get_str());
  }
  std::vector<FieldElement> parts;
  FieldElement rest = alpha;
  while (!rest.is_zero()) {
    const FieldElement* chosen = nullptr;
    for (auto it = listing.elements.rbegin(); it != listing.elements.rend(); ++it) {
      if (is_totally_nonnegative(rest - *it)) {
        chosen = &*it;
        break;
      }
    }
    if (chosen == nullptr) throw ContractFailure("no indecomposable fits below " + to_string(rest));
    parts.push_back(*chosen);
    rest -= *chosen;
  }
  FieldElement total;
  for (const auto& p : parts) total += p;
  if (total != alpha) throw ContractFailure("decomposition does not sum to " + to_string(alpha));
  return parts;
}

std::vector<FieldElement> decompose(const FieldContext& ctx, const FieldElement& alpha) {
  if (!ctx.contains(alpha)) throw PreconditionError("element belongs to a different field");
  if (!is_totally_positive(alpha)) throw PreconditionError("decompose requires a totally positive integer");
  const Rational tr = trace(alpha);
  const Integer bound = tr.get_num() / tr.get_den();
  return decompose(indecomposables_up_to(ctx, bound), alpha);
}

}  // namespace genquad
