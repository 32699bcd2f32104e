#include "genquad/report.hpp"

#include "genquad/text.hpp"

namespace genquad::report {

namespace {

std::string_view route_name(paperlab::CounterexampleEntry::Route r) {
  return r == paperlab::CounterexampleEntry::Route::squares ? "squares" : "split";
}

}  // namespace

Json element(const FieldElement& x) {
  Json j;
  j["a"] = x.a().get_str();
  j["b"] = x.b().get_str();
  return j;
}

Json elements(const std::vector<FieldElement>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(element(x));
  return j;
}

Json form(const GeneralizedForm& g) {
  Json j;
  j["text"] = to_string(g);
  j["variables"] = g.r();
  Json coeffs = Json::array();
  for (const auto& [key, c] : g.coeffs()) {
    coeffs.push_back(Json::array({to_string(key.first), to_string(key.second), element(c)}));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json form(const QuadraticForm& q) { return form(GeneralizedForm::from_quadratic(q)); }

Json associated(const AssociatedForm& assoc) {
  Json j;
  j["form"] = form(assoc.q);
  Json columns = Json::array();
  for (const Atom& a : assoc.column_map) columns.push_back(to_string(a));
  j["column_map"] = std::move(columns);
  j["ell"] = assoc.ell;
  return j;
}

Json certificate(const DeltaCertificate& cert) {
  Json j;
  j["delta"] = cert.delta.get_str();
  j["iterations"] = cert.iterations;
  return j;
}

Json verdict(const SearchVerdict& v) {
  Json j;
  j["tag"] = std::string(to_string(v.tag));
  j[v.tag == SearchVerdict::Tag::none_within_height ? "height" : "box_bound"] = v.bound.get_str();
  if (v.witness) {
    j["witness"] = elements(v.witness->assignment);
    j["value"] = element(v.witness->value);
  }
  return j;
}

Json universality(const UniversalityReport& r) {
  Json j;
  j["trace_bound"] = r.trace_bound.get_str();
  j["checked"] = r.checked;
  Json failures = Json::array();
  for (const auto& [alpha, v] : r.failures) {
    Json f;
    f["alpha"] = element(alpha);
    f["verdict"] = verdict(v);
    failures.push_back(std::move(f));
  }
  j["failures"] = std::move(failures);
  j["universal_up_to_bound"] = r.failures.empty();
  return j;
}

Json counterexample(const paperlab::CounterexampleReport& r) {
  Json j;
  j["trace_bound"] = r.trace_bound.get_str();
  j["classify_G"] = std::string(to_string(r.g_class));
  j["classify_S"] = std::string(to_string(r.s_class));
  j["checked"] = r.entries.size();
  std::size_t squares = 0;
  for (const auto& e : r.entries) squares += e.route == paperlab::CounterexampleEntry::Route::squares ? 1 : 0;
  j["by_squares"] = squares;
  j["by_split"] = r.entries.size() - squares;
  j["subform_failure_target"] = element(r.subform_target);
  Json subs = Json::array();
  for (const auto& s : r.subform_checks) {
    Json e;
    e["keep"] = Json(std::vector<int>(s.keep.begin(), s.keep.end()));
    e["verdict"] = verdict(s.verdict);
    subs.push_back(std::move(e));
  }
  j["subform_checks"] = std::move(subs);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    x["alpha"] = element(e.alpha);
    x["route"] = std::string(route_name(e.route));
    if (e.route == paperlab::CounterexampleEntry::Route::split) x["eta"] = element(e.eta);
    x["witness"] = elements(e.witness);
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json theorem(const paperlab::TheoremOutcome& t) {
  Json j;
  j["subform"] = form(t.subform);
  j["subform_variables"] = Json(t.subform_source.source_var);
  j["certificate"] = certificate(t.delta);
  j["verified_to"] = t.verified_to.get_str();
  j["checked"] = t.per_target.size();
  Json targets = Json::array();
  for (const auto& x : t.per_target) {
    Json e;
    e["alpha"] = element(x.scaled.alpha);
    e["n"] = x.scaled.n;
    e["epsilon"] = element(x.scaled.epsilon);
    e["beta"] = element(x.scaled.beta);
    e["beta_witness"] = elements(x.beta_witness);
    e["alpha_witness"] = elements(x.alpha_witness);
    targets.push_back(std::move(e));
  }
  j["targets"] = std::move(targets);
  return j;
}

}  // namespace genquad::report
