#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "comma.hpp"
#include "nullity.hpp"

namespace nullkan {

/// B --j2--> I --j1--> M with π: M → I, carriers γ on M and a base nullity on B.
struct Setup {
  std::string name;
  CatRef B, I, M;
  FunctorData j2;  // B → I
  FunctorData j1;  // I → M
  FunctorData pi;  // M → I
  SetFunctor gamma;  // on M
  std::vector<SubsetFamily> base;  // per B object, over γ(j1 j2 b)
  /// Square (I, J, K) from Comma(j2, Id_I) to Arrow(B) inducing ι3^{R*}.
  std::optional<std::array<FunctorData, 3>> iota3_rstar;

  FunctorData j1j2() const { return compose(j1, j2); }
  SetFunctor gamma_B() const { return compose(gamma, j1j2()); }
  NullityAssignment base_assignment() const { return {gamma_B(), base}; }
};

/// The four comma categories the construction runs on, built once per setup.
struct Arrangement {
  const Setup* setup = nullptr;
  CommaCategory arrow_B;     // Arrow(B)
  CommaCategory probes;      // Comma(j1 j2, Id_M)
  CommaCategory linear;      // Comma(j2, π)
  CommaCategory intermediate;  // Comma(j2, Id_I)
};

inline Arrangement arrange(const Setup& s, Bounds bounds = comma_bounds()) {
  Arrangement a;
  a.setup = &s;
  a.arrow_B = arrow_category(s.B, bounds);
  a.probes = build_comma(s.j1j2(), identity_functor(s.M, "Id_M"), bounds, "Comma(j1j2,M)");
  a.linear = build_comma(s.j2, s.pi, bounds, "Comma(j2,pi)");
  a.intermediate = build_comma(s.j2, identity_functor(s.I, "Id_I"), bounds, "Comma(j2,I)");
  return a;
}

// ---------------------------------------------------------------------------
// Induced functors between the comma categories

enum class Iota { i1, i2, i3, i4, i5, i6, i7, i3_rstar, pi_star };

inline const char* to_string(Iota w) {
  switch (w) {
  case Iota::i1: return "iota1";
  case Iota::i2: return "iota2";
  case Iota::i3: return "iota3";
  case Iota::i4: return "iota4";
  case Iota::i5: return "iota5";
  case Iota::i6: return "iota6";
  case Iota::i7: return "iota7";
  case Iota::i3_rstar: return "iota3_rstar";
  case Iota::pi_star: return "pi_star";
  }
  return "?";
}

inline FunctorData build_iota(Iota which, const Arrangement& a) {
  const auto& s = *a.setup;
  auto idB = identity_functor(s.B, "Id_B");
  auto idI = identity_functor(s.I, "Id_I");
  auto idM = identity_functor(s.M, "Id_M");
  auto j1j2 = s.j1j2();
  const char* name = to_string(which);
  switch (which) {
  case Iota::i1: return induced_comma_functor(idB, s.j2, j1j2, a.arrow_B, a.linear, name);
  case Iota::i2: return induced_comma_functor(idB, j1j2, j1j2, a.arrow_B, a.probes, name);
  case Iota::i3: return induced_comma_functor(idB, s.j2, s.j2, a.arrow_B, a.intermediate, name);
  case Iota::i4: return induced_comma_functor(idB, idI, s.pi, a.linear, a.intermediate, name);
  case Iota::i5: return induced_comma_functor(idB, idI, s.j1, a.intermediate, a.linear, name);
  case Iota::i6: return induced_comma_functor(idB, s.j1, s.j1, a.intermediate, a.probes, name);
  case Iota::i7: return induced_comma_functor(idB, s.pi, s.pi, a.probes, a.intermediate, name);
  case Iota::pi_star: return induced_comma_functor(idB, s.pi, idM, a.probes, a.linear, name);
  case Iota::i3_rstar:
    if (!s.iota3_rstar)
      throw InputError("iota3_rstar: not supplied by the model");
    return induced_comma_functor((*s.iota3_rstar)[0], (*s.iota3_rstar)[1], (*s.iota3_rstar)[2],
                                 a.intermediate, a.arrow_B, name);
  }
  throw InputError("build_iota: unknown functor");
}

// ---------------------------------------------------------------------------
// Assumptions

struct A4Facts {
  bool supplied = false;
  bool exact_right_inverse = false;  // ι3 ∘ ι3^{R*} = Id
  bool post = false;                 // Id ⇒ ι3 ∘ ι3^{R*}
  bool pre = false;                  // ι3 ∘ ι3^{R*} ⇒ Id
  std::string error;

  bool holds() const { return supplied && error.empty() && (exact_right_inverse || post); }
};

inline A4Facts check_a4(const Arrangement& a, Budget budget = {}) {
  A4Facts f;
  f.supplied = a.setup->iota3_rstar.has_value();
  if (!f.supplied)
    return f;
  try {
    auto i3 = build_iota(Iota::i3, a);
    auto r = build_iota(Iota::i3_rstar, a);
    f.exact_right_inverse = check_right_inverse(i3, r);
    f.post = check_post_right_adjoint(i3, r, budget);
    f.pre = check_pre_right_adjoint(i3, r, budget);
  } catch (const InputError& e) {
    f.error = e.what();
  }
  return f;
}

struct AssumptionReport {
  ValidationReport a1, a2, a3, a4;
  A4Facts a4_facts;

  bool ok() const { return a1.ok() && a2.ok() && a3.ok() && a4.ok(); }
  ValidationReport combined() const {
    ValidationReport r;
    r.merge(a1, "A1");
    r.merge(a2, "A2");
    r.merge(a3, "A3");
    r.merge(a4, "A4");
    return r;
  }
};

inline ValidationReport check_a3(const Setup& s) {
  ValidationReport r;
  for (const auto* F : {&s.j2, &s.j1, &s.pi})
    r.merge(check_functor(*F), F->name);
  if (!same_category(s.j2.source, s.B) || !same_category(s.j2.target, s.I))
    r.add("shape", "j2 is not B -> I");
  if (!same_category(s.j1.source, s.I) || !same_category(s.j1.target, s.M))
    r.add("shape", "j1 is not I -> M");
  if (!same_category(s.pi.source, s.M) || !same_category(s.pi.target, s.I))
    r.add("shape", "pi is not M -> I");
  if (!r.ok())
    return r;
  auto pj = compose(s.pi, s.j1);
  for (std::size_t x = 0; x < s.I->object_count(); ++x)
    if (pj.obj(x) != x)
      r.add("pi.j1=Id", "object " + s.I->object_id(x));
  for (std::size_t f = 0; f < s.I->morphism_count(); ++f)
    if (pj.mor(f) != f)
      r.add("pi.j1=Id", "morphism " + s.I->morphism_id(f));
  return r;
}

inline AssumptionReport check_assumptions(const Setup& s, Budget budget = {}) {
  AssumptionReport out;
  for (const auto& [c, tag] : {std::pair{s.B, "B"}, {s.I, "I"}, {s.M, "M"}})
    out.a3.merge(validate_category(*c), tag);
  if (!same_category(s.gamma.source, s.M))
    out.a1.add("shape", "gamma is not defined on M");
  else
    out.a1 = check_set_functor(s.gamma);
  out.a3.merge(check_a3(s));
  if (!out.a1.ok() || !out.a3.ok()) {
    out.a2.add("precondition", "A1/A3 must hold before the base nullity can be checked");
    out.a4.add("precondition", "A1/A3 must hold before A4 can be checked");
    return out;
  }
  if (s.base.size() != s.B->object_count())
    out.a2.add("shape", "base nullity does not cover every object of B");
  else
    out.a2 = check_nullity_assignment(s.base_assignment());

  auto a = arrange(s);
  out.a4_facts = check_a4(a, budget);
  const auto& f = out.a4_facts;
  if (!f.supplied)
    out.a4.add("missing", "iota3_rstar not supplied");
  else if (!f.error.empty())
    out.a4.add("construction", f.error);
  else if (!f.holds())
    out.a4.add("post-right-inverse", "neither iota3.iota3_rstar = Id nor Id => iota3.iota3_rstar");
  if (f.supplied && f.error.empty()) {
    out.a4.note(std::string("exact right inverse: ") + (f.exact_right_inverse ? "yes" : "no"));
    out.a4.note(std::string("post transformation: ") + (f.post ? "yes" : "no"));
    out.a4.note(std::string("pre transformation: ") + (f.pre ? "yes" : "no"));
  }
  return out;
}

} // namespace nullkan
