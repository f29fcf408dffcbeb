#pragma once

#include <string>
#include <vector>

#include "kan.hpp"
#include "models.hpp"
#include "setup.hpp"

namespace nullkan {

/// { S ⊆ γ(V) : γ(T)⁻¹(S) ∈ base(b) } for each probe (b, T, V) in Comma(j1 j2, M).
inline NullityAssignment comma_nullity(const Arrangement& a, ValidationReport* diagnostics = nullptr) {
  const auto& s = *a.setup;
  const auto& P = a.probes;
  auto gB = s.gamma_B();
  NullityAssignment n{compose(s.gamma, P.forget2), {}};
  for (const auto& o : P.objects)
    n.nulls.push_back(
        preimage_nullity(s.gamma.map(o.phi), {gB.set(o.a), s.base.at(o.a)}).nulls);
  if (diagnostics) {
    for (std::size_t m = 0; m < P.morphisms.size(); ++m) {
      const auto& pm = P.morphisms[m];
      auto phi = n.gamma.map(m);
      for (auto S : n.nulls[pm.src].members())
        if (!n.nulls[pm.tgt].contains(phi.image(S))) {
          diagnostics->add("comma-functoriality",
                           P.cat->morphism_id(m) + " sends " +
                               subset_label(phi.dom.elements, S) + " to " +
                               subset_label(phi.cod.elements, phi.image(S)));
          break;
        }
    }
  }
  return n;
}

inline FunctorData build_pi_star(const Arrangement& a) { return build_iota(Iota::pi_star, a); }

struct PipelineResult {
  NullityAssignment comma_null;  // on Comma(j1 j2, M)
  NullityAssignment probed_null;  // on Comma(j2, π)
  NullityAssignment main_null;   // on M
  FunctorData pi_star;
  KanResult probed;
  KanResult main;
  ValidationReport diagnostics;
};

/// comma nullity → right Kan along π_* → left Kan along Forget2.
inline PipelineResult run_pipeline(const Arrangement& a, KanOptions opt = {}) {
  const auto& s = *a.setup;
  PipelineResult r;
  r.comma_null = comma_nullity(a, &r.diagnostics);
  r.pi_star = build_pi_star(a);
  auto gamma_linear = compose(s.gamma, a.linear.forget2);
  r.probed = right_kan(r.pi_star, r.comma_null, gamma_linear, opt);
  r.probed_null = r.probed.extension;
  r.main = left_kan(a.linear.forget2, r.probed_null, s.gamma, opt);
  r.main_null = r.main.extension;
  auto inv = check_nullity_assignment(r.main_null);
  if (!inv.ok())
    throw Error("main nullity is not preserved by M: " + inv.violations.front().witness);
  return r;
}

/// Union over comma objects A: j2 b → π V of the intersection, over lifts T with π T = A,
/// of the comma nullity of T. Plain loops, no Kan machinery.
inline NullityAssignment direct_prevalence(const Setup& s) {
  const auto& B = *s.B;
  const auto& I = *s.I;
  const auto& M = *s.M;
  auto j1j2 = s.j1j2();
  auto gB = s.gamma_B();
  NullityAssignment out{s.gamma, {}};
  for (std::size_t V = 0; V < M.object_count(); ++V) {
    SubsetFamily acc = SubsetFamily::of({0});
    for (std::size_t b = 0; b < B.object_count(); ++b)
      for (auto A : I.hom(s.j2.obj(b), s.pi.obj(V))) {
        auto meet = SubsetFamily::all(s.gamma.set(V).size());
        for (auto T : M.hom(j1j2.obj(b), V))
          if (s.pi.mor(T) == A)
            meet = meet & preimage_nullity(s.gamma.map(T), {gB.set(b), s.base[b]}).nulls;
        acc = acc | meet;
      }
    out.nulls.push_back(acc);
  }
  return out;
}

/// Union over incoming φ: A′ → A of { a ⊆ γ(A) : γ(φ)⁻¹(a) ∈ n(A′) }.
inline NullityAssignment bar_null(const NullityAssignment& n) {
  const auto& C = n.category();
  NullityAssignment out{n.gamma, std::vector<SubsetFamily>(C.object_count())};
  for (std::size_t f = 0; f < C.morphism_count(); ++f)
    out.nulls[C.cod(f)] =
        out.nulls[C.cod(f)] | preimage_nullity(n.gamma.map(f), n.at(C.dom(f))).nulls;
  for (std::size_t a = 0; a < C.object_count(); ++a)
    out.nulls[a] = out.nulls[a] | n.nulls[a];
  return out;
}

inline bool is_saturated(const NullityAssignment& n) { return bar_null(n).nulls == n.nulls; }

/// Some probe φ: j1 j2 b → V pushes base(b) forward into n(V).
inline bool is_testable(const NullityAssignment& n, const Setup& s, std::size_t V) {
  auto j1j2 = s.j1j2();
  for (std::size_t b = 0; b < s.B->object_count(); ++b)
    for (auto phi : s.M->hom(j1j2.obj(b), V))
      if (push_forward(s.gamma.map(phi), s.base[b]).subset_of(n.nulls[V]))
        return true;
  return false;
}

// ---------------------------------------------------------------------------
// Theorem checks

enum class Verdict { pass, fail, precondition_unmet, guard_exceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::pass: return "pass";
  case Verdict::fail: return "fail";
  case Verdict::precondition_unmet: return "precondition-unmet";
  case Verdict::guard_exceeded: return "guard-exceeded";
  }
  return "?";
}

struct CheckResult {
  Verdict verdict = Verdict::pass;
  ValidationReport report;
  ValidationReport steps;  // intermediate commutations; reported, do not decide the verdict
  std::size_t examined = 0;

  bool passed() const { return verdict == Verdict::pass; }
};

inline CheckResult verdict_of(ValidationReport r, std::size_t examined) {
  return {r.ok() ? Verdict::pass : Verdict::fail, std::move(r), {}, examined};
}

/// Every endomorphism f: m → m maps null sets of m to null sets of m.
inline CheckResult verify_invariance(const NullityAssignment& n) {
  ValidationReport r;
  const auto& C = n.category();
  std::size_t endos = 0;
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto m = C.dom(f);
    if (C.cod(f) != m)
      continue;
    ++endos;
    auto phi = n.gamma.map(f);
    for (auto S : n.nulls[m].members())
      if (!n.nulls[m].contains(phi.image(S))) {
        r.add("endomorphism", C.morphism_id(f) + " maps " + subset_label(phi.dom.elements, S) +
                                  " to " + subset_label(phi.cod.elements, phi.image(S)));
        break;
      }
  }
  return verdict_of(std::move(r), endos);
}

inline constexpr std::size_t kMinimalityGuard = 4096;

/// Every assignment on M that is preserved by all morphisms and testable (at every object,
/// or only at V when `per_object`) contains `n` at V.
inline CheckResult verify_minimality(const Setup& s, const NullityAssignment& n,
                                     bool per_object, Budget budget = {}) {
  CheckResult out;
  std::size_t space = 1;
  for (std::size_t V = 0; V < s.M->object_count(); ++V) {
    if (s.gamma.set(V).size() > 4) {
      out.verdict = Verdict::guard_exceeded;
      out.report.add("guard", "carrier of " + s.M->object_id(V) + " too large to enumerate");
      return out;
    }
    space *= down_sets_with_empty(s.gamma.set(V).size()).size();
    if (space > kMinimalityGuard) {
      out.verdict = Verdict::guard_exceeded;
      out.report.add("guard", "candidate space above " + std::to_string(kMinimalityGuard));
      return out;
    }
  }
  const auto& M = *s.M;
  enumerate_nullity_assignments(
      s.gamma, [](std::size_t, const std::vector<SubsetFamily>&) { return true; },
      [&](const NullityAssignment& H) {
        ++out.examined;
        std::vector<char> testable(M.object_count());
        bool all = true;
        for (std::size_t V = 0; V < M.object_count(); ++V)
          all = (testable[V] = is_testable(H, s, V)) && all;
        for (std::size_t V = 0; V < M.object_count(); ++V) {
          bool applies = per_object ? testable[V] : all;
          if (applies && !n.nulls[V].subset_of(H.nulls[V])) {
            std::string w;
            for (std::size_t e = 0; e < M.object_count(); ++e)
              w += (e ? "; " : "") + M.object_id(e) + "=" + family_label(H.gamma.set(e), H.nulls[e]);
            out.report.add("not-contained", M.object_id(V) + " against {" + w + "}");
            return false;
          }
        }
        return true;
      },
      budget);
  out.verdict = out.report.ok() ? Verdict::pass : Verdict::fail;
  return out;
}

/// Null_{B,B}(b, f, b′) = { S ⊆ γ(j1 j2 b′) : γ(j1 j2 f)⁻¹(S) ∈ base(b) } on Arrow(B).
inline NullityAssignment arrow_nullity(const Arrangement& a) {
  const auto& s = *a.setup;
  auto gB = s.gamma_B();
  NullityAssignment n{compose(gB, a.arrow_B.forget2), {}};
  for (const auto& o : a.arrow_B.objects)
    n.nulls.push_back(preimage_nullity(gB.map(o.phi), {gB.set(o.a), s.base[o.a]}).nulls);
  return n;
}

inline void compare_along(ValidationReport& r, const std::string& rule, const FunctorData& F,
                          const NullityAssignment& target, const NullityAssignment& expected) {
  for (std::size_t x = 0; x < F.source->object_count(); ++x)
    if (target.nulls[F.obj(x)] != expected.nulls[x])
      r.add(rule, F.source->object_id(x) + ": " +
                      family_label(target.gamma.set(F.obj(x)), target.nulls[F.obj(x)]) +
                      " vs " + family_label(expected.gamma.set(x), expected.nulls[x]));
}

/// Main nullity restricted along j1 j2 equals the base. The squares and triangles that
/// connect Arrow(B) to the construction are checked too and listed under `steps`.
inline CheckResult verify_extension(const Arrangement& a, const PipelineResult& p) {
  const auto& s = *a.setup;
  CheckResult out;
  auto base = s.base_assignment();
  bool saturated = is_saturated(base);
  auto a4 = check_a4(a);
  if (!saturated)
    out.report.add("precondition", "base nullity is not saturated");
  if (!a4.holds())
    out.report.add("precondition", "A4 does not hold");
  if (!out.report.ok()) {
    out.verdict = Verdict::precondition_unmet;
    return out;
  }
  auto j1j2 = s.j1j2();
  compare_along(out.report, "extension", j1j2, p.main_null, base);

  ValidationReport& r = out.steps;
  auto i1 = build_iota(Iota::i1, a);
  auto i2 = build_iota(Iota::i2, a);
  if (!functor_equal(compose(p.pi_star, i2), i1))
    r.add("square", "pi_star . iota2 != iota1");
  if (!functor_equal(compose(a.linear.forget2, i1), compose(j1j2, a.arrow_B.forget2)))
    r.add("square", "Forget2 . iota1 != j1j2 . Forget2");
  auto upper = compose(compose(s.gamma, a.probes.forget2), i2);
  auto lower = compose(compose(s.gamma, j1j2), a.arrow_B.forget2);
  if (upper.sets != lower.sets || upper.maps != lower.maps)
    r.add("square", "gamma . Forget2 . iota2 != gamma . j1j2 . Forget2");

  auto nbb = arrow_nullity(a);
  compare_along(r, "triangle-upper", i2, p.comma_null, nbb);
  compare_along(r, "triangle-middle", i1, p.probed_null, nbb);
  compare_along(r, "triangle-lower", j1j2, p.main_null, bar_null(base));
  out.examined = s.B->object_count();
  out.verdict = out.report.ok() ? Verdict::pass : Verdict::fail;
  return out;
}

/// Pointwise difference between the pipeline and the oracle.
inline ValidationReport oracle_diff(const NullityAssignment& pipeline,
                                    const NullityAssignment& oracle) {
  ValidationReport r;
  const auto& M = pipeline.category();
  for (std::size_t V = 0; V < M.object_count(); ++V)
    if (pipeline.nulls[V] != oracle.nulls[V])
      r.add("oracle-mismatch", M.object_id(V) + ": pipeline " +
                                   family_label(pipeline.gamma.set(V), pipeline.nulls[V]) +
                                   " oracle " + family_label(oracle.gamma.set(V), oracle.nulls[V]));
  return r;
}

} // namespace nullkan
