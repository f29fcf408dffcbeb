#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "construct.hpp"
#include "lemmas.hpp"
#include "spec.hpp"

namespace nullkan {

using Json = nlohmann::json;

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

/// Canonical text: sorted keys, two-space indent, LF, trailing newline.
inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json subset_json(const FiniteSet& carrier, Subset s) {
  std::vector<std::string> els;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (s & (Subset{1} << i))
      els.push_back(carrier.elements[i]);
  std::sort(els.begin(), els.end());
  return els;
}

inline Json family_json(const FiniteSet& carrier, SubsetFamily f) {
  std::vector<Json> subs;
  for (auto s : f.members())
    subs.push_back(subset_json(carrier, s));
  std::sort(subs.begin(), subs.end());
  return subs;
}

/// Object id -> {carrier, nulls}.
inline Json nullity_json(const NullityAssignment& n) {
  Json out = Json::object();
  const auto& C = n.category();
  for (std::size_t x = 0; x < C.object_count(); ++x) {
    auto carrier = n.gamma.set(x).elements;
    std::sort(carrier.begin(), carrier.end());
    out[C.object_id(x)] = {{"carrier", carrier}, {"nulls", family_json(n.gamma.set(x), n.nulls[x])}};
  }
  return out;
}

inline Json violations_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations)
    v.push_back({{"rule", x.rule}, {"witness", x.witness}});
  return v;
}

inline Json report_json(const ValidationReport& r) {
  return {{"ok", r.ok()}, {"violations", violations_json(r)}, {"notes", r.notes}};
}

inline Json check_json(const CheckResult& c) {
  Json j = {{"verdict", to_string(c.verdict)},
            {"examined", c.examined},
            {"witnesses", violations_json(c.report)},
            {"notes", c.report.notes}};
  if (!c.steps.violations.empty() || !c.steps.notes.empty())
    j["steps"] = report_json(c.steps);
  return j;
}

inline Json category_json(const CommaCategory& c) {
  std::vector<std::string> objs, mors;
  for (std::size_t x = 0; x < c.cat->object_count(); ++x)
    objs.push_back(c.cat->object_id(x));
  for (std::size_t f = 0; f < c.cat->morphism_count(); ++f)
    mors.push_back(c.cat->morphism_id(f));
  return {{"objects", objs},
          {"morphisms", mors},
          {"object_count", objs.size()},
          {"morphism_count", mors.size()}};
}

inline Json kan_json(const KanResult& k, const FinCategory& D) {
  Json out = Json::object();
  for (std::size_t d = 0; d < D.object_count(); ++d)
    out[D.object_id(d)] = {{"path", to_string(k.path[d])},
                           {"slice_size", k.slice_size[d]},
                           {"brute_checked", k.brute_checked[d] != 0}};
  return out;
}

inline Json lemma_json(const LemmaStats& st, std::size_t min_verified) {
  return {{"tried", st.tried},
          {"hypotheses_held", st.hypotheses_held},
          {"verified", st.verified},
          {"refuted", st.refuted},
          {"skipped", st.skipped},
          {"witnesses", st.witnesses},
          {"verdict", st.passed(min_verified) ? "pass" : "fail"}};
}

enum class ExitCode { pass = 0, check_failure = 1, input_error = 2, guard_exceeded = 3 };

struct RunOptions {
  std::string command;  // validate | construct | check | oracle-compare | materialize
  std::string target;   // for check: thm1 | thm3 | ext | lemmas
  std::uint64_t seed = 42;
  std::size_t budget = 1'000'000;
  std::size_t lemma_instances = 40;
};

struct RunOutcome {
  ExitCode code = ExitCode::pass;
  Json report;
};

namespace detail {

inline ExitCode code_of(Verdict v) {
  switch (v) {
  case Verdict::pass: return ExitCode::pass;
  case Verdict::guard_exceeded: return ExitCode::guard_exceeded;
  default: return ExitCode::check_failure;
  }
}

inline const char* status_name(ExitCode c) {
  switch (c) {
  case ExitCode::pass: return "pass";
  case ExitCode::check_failure: return "fail";
  case ExitCode::input_error: return "input-error";
  case ExitCode::guard_exceeded: return "guard-exceeded";
  }
  return "?";
}

inline ExitCode run_checked(const RunOptions& o, const Setup& s, Json& out) {
  Budget budget{o.budget};
  KanOptions kopt;
  kopt.budget = budget;
  auto code = ExitCode::pass;

  if (o.command == "validate") {
    auto a = check_assumptions(s, budget);
    out["checks"] = {{"A1", report_json(a.a1)},
                     {"A2", report_json(a.a2)},
                     {"A3", report_json(a.a3)},
                     {"A4", report_json(a.a4)}};
    return a.ok() ? ExitCode::pass : ExitCode::check_failure;
  }

  auto assumptions = check_assumptions(s, budget);
  if (!assumptions.a1.ok() || !assumptions.a2.ok() || !assumptions.a3.ok()) {
    out["diagnostics"] = violations_json(assumptions.combined());
    throw InputError("setup violates its assumptions; run 'validate' for details");
  }
  auto a = arrange(s);

  if (o.command == "materialize") {
    auto p = run_pipeline(a, kopt);
    out["categories"] = {{"arrow_B", category_json(a.arrow_B)},
                         {"probes", category_json(a.probes)},
                         {"linear", category_json(a.linear)},
                         {"intermediate", category_json(a.intermediate)}};
    out["kan"] = {{"probed", kan_json(p.probed, *a.linear.cat)},
                  {"main", kan_json(p.main, *s.M)}};
    return code;
  }

  if (o.command == "check" && o.target == "lemmas") {
    const std::size_t min_verified = 5;
    Json lemmas = Json::object();
    for (const auto& st : {check_preadj1(o.seed, o.lemma_instances),
                           check_preadj2(o.seed, o.lemma_instances),
                           check_kan_id2(o.seed, o.lemma_instances),
                           check_kan_id3(o.seed, o.lemma_instances),
                           check_kan_id4(o.seed, o.lemma_instances)}) {
      lemmas[st.name] = lemma_json(st, min_verified);
      if (!st.passed(min_verified))
        code = ExitCode::check_failure;
    }
    Json claims = Json::object();
    for (const auto& c : check_null_ext5(a, budget)) {
      claims[c.name] = {{"holds", c.holds}, {"detail", c.detail}};
      if (!c.holds)
        code = ExitCode::check_failure;
    }
    out["checks"] = {{"lemmas", lemmas}, {"null_ext5", claims}};
    out["lemma_instances"] = o.lemma_instances;
    return code;
  }

  auto p = run_pipeline(a, kopt);
  out["diagnostics"] = violations_json(p.diagnostics);

  if (o.command == "construct") {
    out["nullity"] = {{"main", nullity_json(p.main_null)},
                      {"probed", nullity_json(p.probed_null)},
                      {"comma", nullity_json(p.comma_null)}};
    out["kan"] = {{"probed", kan_json(p.probed, *a.linear.cat)},
                  {"main", kan_json(p.main, *s.M)}};
    return code;
  }
  if (o.command == "oracle-compare") {
    auto oracle = direct_prevalence(s);
    auto diff = oracle_diff(p.main_null, oracle);
    out["nullity"] = {{"main", nullity_json(p.main_null)}, {"oracle", nullity_json(oracle)}};
    out["checks"] = {{"oracle", report_json(diff)}};
    return diff.ok() ? ExitCode::pass : ExitCode::check_failure;
  }
  if (o.command == "check") {
    CheckResult c;
    if (o.target == "thm1")
      c = verify_invariance(p.main_null);
    else if (o.target == "thm3")
      c = verify_minimality(s, p.main_null, false, budget);
    else if (o.target == "ext")
      c = verify_extension(a, p);
    else
      throw InputError("unknown check '" + o.target + "' (expected thm1, thm3, ext or lemmas)");
    out["checks"] = {{o.target, check_json(c)}};
    out["nullity"] = {{"main", nullity_json(p.main_null)}};
    return code_of(c.verdict);
  }
  throw InputError("unknown command '" + o.command + "'");
}

} // namespace detail

/// Runs one command on a parsed spec and builds its report. Never throws.
inline RunOutcome run_command(const RunOptions& o, const std::string& spec_text) {
  RunOutcome r;
  Json& j = r.report;
  j["command"] = o.command + (o.target.empty() ? "" : " " + o.target);
  j["input_digest"] = {{"algorithm", "sha256"}, {"value", sha256_hex(spec_text)}};
  j["seed"] = o.seed;
  j["budget"] = o.budget;
  try {
    auto doc = parse_spec(spec_text);
    auto s = to_setup(doc);
    j["setup"] = s.name;
    r.code = detail::run_checked(o, s, j);
  } catch (const InputError& e) {
    r.code = ExitCode::input_error;
    j["error"] = e.what();
  } catch (const BudgetExceeded& e) {
    r.code = ExitCode::guard_exceeded;
    j["error"] = e.what();
  } catch (const GuardExceeded& e) {
    r.code = ExitCode::guard_exceeded;
    j["error"] = e.what();
  } catch (const MissingUniversal& e) {
    r.code = ExitCode::check_failure;
    j["error"] = e.what();
  } catch (const Error& e) {
    r.code = ExitCode::check_failure;
    j["error"] = e.what();
  }
  j["status"] = detail::status_name(r.code);
  j["exit_code"] = static_cast<int>(r.code);
  return r;
}

inline std::string spec_text_for_model(const std::string& model) {
  SpecDocument d;
  d.model = model;
  return serialize_spec(d);
}

/// Plain rendering of a report for terminals.
inline std::string render_text(const Json& j, const std::string& indent = "") {
  std::string out;
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out += indent + k + ":\n" + render_text(v, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out += indent + k + ":\n";
      for (const auto& e : v) {
        auto item = render_text(e, indent + "    ");
        item.replace(indent.size() + 2, 2, "- ");
        out += item;
      }
    } else {
      out += indent + k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
  }
  return out;
}

} // namespace nullkan
