#include "genquad/cli.hpp"

#include <optional>

#include "CLI11.hpp"
#include "genquad/error.hpp"
#include "genquad/paperlab.hpp"
#include "genquad/report.hpp"
#include "genquad/search.hpp"
#include "genquad/text.hpp"

namespace genquad::cli {

namespace {

using report::Json;

constexpr const char* default_theorem_form = "z1^2 + z2^2 + z3^2 + z4^2 + t(z4)^2";

struct Options {
  std::int64_t d = 0;
  long long trace_bound = 0;
  std::optional<long long> height;
  std::string target;
  int parallel = 1;
  std::string form;
};

struct Outcome {
  Json result;
  std::string summary;
};

Json inputs_of(const std::string& command, const Options& o) {
  Json j;
  if (command != "paper counterexample") j["d"] = o.d;
  if (!o.form.empty()) j["form"] = o.form;
  if (!o.target.empty()) j["target"] = o.target;
  if (o.trace_bound != 0) j["trace_bound"] = o.trace_bound;
  if (o.height) j["height"] = *o.height;
  if (o.parallel != 1) j["parallel"] = o.parallel;
  return j;
}

Outcome do_classify(const Options& o) {
  const FieldContext ctx(o.d);
  const GeneralizedForm g = parse_form(o.form, ctx);
  const AssociatedForm assoc = associated_form(g);
  const DefinitenessClass cls = classify_definiteness(assoc.q);
  Json j;
  j["form"] = report::form(g);
  const auto proper = proper_variables(g);
  j["proper_variables"] = Json(std::vector<int>(proper.begin(), proper.end()));
  j["associated"] = report::associated(assoc);
  j["definiteness"] = std::string(to_string(cls));
  return {std::move(j), "definiteness = " + std::string(to_string(cls))};
}

Outcome do_delta(const Options& o) {
  const FieldContext ctx(o.d);
  const GeneralizedForm g = parse_form(o.form, ctx);
  const DeltaCertificate cert = generalized_delta(g);
  Json j;
  j["form"] = report::form(g);
  j["certificate"] = report::certificate(cert);
  j["verified"] = verify_certificate(cert);
  return {std::move(j), "delta = " + cert.delta.get_str()};
}

Outcome do_represent(const Options& o) {
  const FieldContext ctx(o.d);
  const GeneralizedForm g = parse_form(o.form, ctx);
  const FieldElement alpha = parse_element(o.target, ctx);
  const SearchOptions so{o.parallel};
  const DefinitenessClass cls = classify_definiteness(g);
  SearchVerdict v;
  Json j;
  if (cls == DefinitenessClass::not_semidefinite) throw PreconditionError("form is not totally positive semidefinite");
  // An explicit height always selects the bounded search.
  if (cls == DefinitenessClass::totally_positive_definite && !o.height) {
    const DeltaCertificate cert = generalized_delta(g);
    v = represent_definite(ctx, g, alpha, cert, so);
    j["strategy"] = "definite";
    j["certificate"] = report::certificate(cert);
  } else {
    if (!o.height) throw PreconditionError("semidefinite form: --height is required");
    v = represent_bounded(ctx, g, alpha, Integer(static_cast<long>(*o.height)), so);
    j["strategy"] = "bounded";
  }
  j["target"] = report::element(alpha);
  j["verdict"] = report::verdict(v);
  return {std::move(j), std::string("verdict = ") + std::string(to_string(v.tag))};
}

Outcome do_universal(const Options& o) {
  const FieldContext ctx(o.d);
  const GeneralizedForm g = parse_form(o.form, ctx);
  const SearchOptions so{o.parallel};
  Json j;
  Strategy strategy;
  if (classify_definiteness(g) == DefinitenessClass::totally_positive_definite && !o.height) {
    const DeltaCertificate cert = generalized_delta(g);
    j["strategy"] = "definite";
    j["certificate"] = report::certificate(cert);
    strategy = DefiniteStrategy{cert};
  } else {
    if (!o.height) throw PreconditionError("form is not definite: --height is required");
    j["strategy"] = "bounded";
    strategy = BoundedStrategy{Integer(static_cast<long>(*o.height))};
  }
  const auto r = universality_report(ctx, g, Integer(static_cast<long>(o.trace_bound)), strategy, so);
  j["report"] = report::universality(r);
  return {std::move(j), std::to_string(r.checked) + " targets checked, " + std::to_string(r.failures.size()) +
                            " failures"};
}

Outcome do_indecomposables(const Options& o) {
  const FieldContext ctx(o.d);
  const auto listing = indecomposables_up_to(ctx, Integer(static_cast<long>(o.trace_bound)));
  Json j;
  j["trace_bound"] = listing.trace_bound.get_str();
  j["count"] = listing.elements.size();
  j["elements"] = report::elements(listing.elements);
  return {std::move(j), std::to_string(listing.elements.size()) + " indecomposables"};
}

Outcome do_decompose(const Options& o) {
  const FieldContext ctx(o.d);
  const FieldElement alpha = parse_element(o.target, ctx);
  const auto parts = decompose(ctx, alpha);
  Json j;
  j["target"] = report::element(alpha);
  j["parts"] = report::elements(parts);
  return {std::move(j), std::to_string(parts.size()) + " parts"};
}

Outcome do_counterexample(const Options& o) {
  const auto r = paperlab::verify_counterexample(Integer(static_cast<long>(o.trace_bound)), SearchOptions{o.parallel});
  return {report::counterexample(r), std::to_string(r.entries.size()) + " targets represented by G; " +
                                         std::to_string(r.subform_checks.size()) + " subforms fail at " +
                                         to_string(r.subform_target)};
}

Outcome do_theorem(const Options& o) {
  const FieldContext ctx(o.d);
  const GeneralizedForm g = parse_form(o.form, ctx);
  const auto t = paperlab::theorem_pipeline(ctx, g, Integer(static_cast<long>(o.trace_bound)), SearchOptions{o.parallel});
  Json j;
  j["form"] = report::form(g);
  j["outcome"] = report::theorem(t);
  return {std::move(j), "universal quadratic subform " + to_string(t.subform) + " certified on " +
                            std::to_string(t.per_target.size()) + " targets"};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag) {
  CLI::App app{"Generalized quadratic forms over real quadratic fields", "genquad"};
  app.require_subcommand(1);
  Options o;

  auto add_d = [&](CLI::App* sub) { sub->add_option("--d", o.d, "squarefree D of Q(sqrt D)")->required(); };
  auto add_form = [&](CLI::App* sub) { sub->add_option("form", o.form, "generalized form, e.g. z1^2 + z2*t(z2)")->required(); };
  auto add_parallel = [&](CLI::App* sub) {
    sub->add_option("--parallel", o.parallel, "search worker threads")->check(CLI::Range(1, 256));
  };
  auto add_trace = [&](CLI::App* sub) {
    sub->add_option("--trace-bound", o.trace_bound, "largest trace of checked targets")->required()->check(CLI::PositiveNumber);
  };

  auto* classify = app.add_subcommand("classify", "definiteness of the associated quadratic form");
  add_d(classify);
  add_form(classify);

  auto* delta = app.add_subcommand("delta", "rational delta with Q ⪰ delta * sum of squares");
  add_d(delta);
  add_form(delta);

  auto* represent = app.add_subcommand("represent", "search for a representation of --target");
  add_d(represent);
  add_form(represent);
  represent->add_option("--target", o.target, "element, e.g. 3/2+1/2s")->required();
  represent->add_option("--height", o.height, "coordinate bound for semidefinite forms")->check(CLI::NonNegativeNumber);
  add_parallel(represent);

  auto* universal = app.add_subcommand("universal", "check every totally positive target up to --trace-bound");
  add_d(universal);
  add_form(universal);
  add_trace(universal);
  universal->add_option("--height", o.height, "coordinate bound for semidefinite forms")->check(CLI::NonNegativeNumber);
  add_parallel(universal);

  auto* indec = app.add_subcommand("indecomposables", "indecomposable totally positive integers");
  add_d(indec);
  add_trace(indec);

  auto* decomp = app.add_subcommand("decompose", "split --target into indecomposables");
  add_d(decomp);
  decomp->add_option("--target", o.target, "totally positive integer")->required();

  auto* paper = app.add_subcommand("paper", "reproduce the two constructions");
  paper->require_subcommand(1);
  auto* counter = paper->add_subcommand("counterexample", "semidefinite universal form over Q(sqrt 2)");
  add_trace(counter);
  add_parallel(counter);
  auto* theorem = paper->add_subcommand("theorem", "extract the universal quadratic subform");
  o.d = 0;
  theorem->add_option("--d", o.d, "squarefree D (default 5)");
  theorem->add_option("form", o.form, "totally positive definite generalized form");
  add_trace(theorem);
  add_parallel(theorem);

  std::string command;
  Json rep;
  auto emit = [&](const std::string& status, int code, const std::string& message, Json result) {
    rep = Json();
    rep["command"] = command;
    rep["inputs"] = inputs_of(command, o);
    rep["result"] = std::move(result);
    rep["status"] = status;
    rep["exit_code"] = code;
    if (!message.empty()) rep["error"] = message;
    out << rep.dump(2) << '\n';
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    diag << "usage error: " << e.what() << '\n';
    return emit("usage_error", usage_error, e.what(), nullptr);
  }

  for (auto* sub : {classify, delta, represent, universal, indec, decomp}) {
    if (sub->parsed()) command = sub->get_name();
  }
  if (counter->parsed()) command = "paper counterexample";
  if (theorem->parsed()) {
    command = "paper theorem";
    if (o.d == 0) o.d = 5;
    if (o.form.empty()) o.form = default_theorem_form;
  }

  try {
    Outcome res;
    if (command == "classify") res = do_classify(o);
    else if (command == "delta") res = do_delta(o);
    else if (command == "represent") res = do_represent(o);
    else if (command == "universal") res = do_universal(o);
    else if (command == "indecomposables") res = do_indecomposables(o);
    else if (command == "decompose") res = do_decompose(o);
    else if (command == "paper counterexample") res = do_counterexample(o);
    else res = do_theorem(o);
    diag << command << ": " << res.summary << '\n';
    return emit("ok", ok, "", std::move(res.result));
  } catch (const ParseError& e) {
    diag << command << ": parse error: " << e.what() << '\n';
    Json pos;
    pos["position"] = e.position();
    return emit("parse_error", parse_error, e.what(), std::move(pos));
  } catch (const PreconditionError& e) {
    diag << command << ": precondition violated: " << e.what() << '\n';
    return emit("precondition_violation", precondition_violation, e.what(), nullptr);
  } catch (const ContractFailure& e) {
    diag << command << ": contract failure: " << e.what() << '\n';
    return emit("contract_failure", contract_failure, e.what(), nullptr);
  } catch (const BudgetExhausted& e) {
    diag << command << ": budget exhausted: " << e.what() << '\n';
    return emit("budget_exhausted", budget_exhausted, e.what(), nullptr);
  }
}

}  // namespace genquad::cli
