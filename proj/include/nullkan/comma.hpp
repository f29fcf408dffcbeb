#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fincat.hpp"

namespace nullkan {

/// (a, φ, b) with φ: α(a) → β(b).
struct CommaObject {
  std::size_t a = npos;
  std::size_t phi = npos;
  std::size_t b = npos;

  friend auto operator<=>(const CommaObject&, const CommaObject&) = default;
};

/// (f, g) with f: a → a′ in the left source and g: b → b′ in the right source.
struct CommaMorphism {
  std::size_t f = npos;
  std::size_t g = npos;
  std::size_t src = npos;
  std::size_t tgt = npos;
};

struct CommaCategory {
  CatRef cat;
  FunctorData alpha;
  FunctorData beta;
  std::vector<CommaObject> objects;
  std::vector<CommaMorphism> morphisms;
  FunctorData forget1;
  FunctorData forget2;

  std::optional<std::size_t> find(const CommaObject& o) const {
    auto it = object_index.find(o);
    if (it == object_index.end())
      return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> find_morphism(std::size_t f, std::size_t g, std::size_t src,
                                           std::size_t tgt) const {
    auto it = morphism_index.find({f, g, src, tgt});
    if (it == morphism_index.end())
      return std::nullopt;
    return it->second;
  }

  std::map<CommaObject, std::size_t> object_index;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t>
      morphism_index;
};

inline Bounds comma_bounds() { return {512, 1u << 16}; }

inline std::string comma_object_label(const FunctorData& alpha, const FunctorData& beta,
                                      const CommaObject& o) {
  return "(" + alpha.source->object_id(o.a) + "," + alpha.target->morphism_id(o.phi) + "," +
         beta.source->object_id(o.b) + ")";
}

/// Materializes Comma(α, β) with every commuting square as a morphism.
inline CommaCategory build_comma(const FunctorData& alpha, const FunctorData& beta,
                                 Bounds bounds = comma_bounds(), std::string name = {}) {
  if (!same_category(alpha.target, beta.target))
    throw InputError("build_comma: " + alpha.name + " and " + beta.name +
                     " do not share a target");
  for (const auto* F : {&alpha, &beta}) {
    auto r = check_functor(*F);
    if (!r.ok())
      throw InputError("build_comma: " + F->name + " is not a functor: " +
                       r.violations.front().rule + " " + r.violations.front().witness);
  }
  const auto& A = *alpha.source;
  const auto& B = *beta.source;
  const auto& C = *alpha.target;
  if (name.empty())
    name = "Comma(" + alpha.name + "," + beta.name + ")";

  CommaCategory out;
  out.alpha = alpha;
  out.beta = beta;
  CategoryBuilder cb(name, bounds);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < A.object_count(); ++a)
    for (std::size_t b = 0; b < B.object_count(); ++b)
      for (auto phi : C.hom(alpha.obj(a), beta.obj(b))) {
        CommaObject o{a, phi, b};
        labels.push_back(comma_object_label(alpha, beta, o));
        out.object_index[o] = cb.add_object(labels.back());
        out.objects.push_back(o);
      }

  const auto n = out.objects.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& s = out.objects[x];
      const auto& t = out.objects[y];
      for (auto f : A.hom(s.a, t.a))
        for (auto g : B.hom(s.b, t.b)) {
          // φ′ ∘ α(f) = β(g) ∘ φ
          if (C.compose(t.phi, alpha.mor(f)) != C.compose(beta.mor(g), s.phi))
            continue;
          auto id = "(" + A.morphism_id(f) + "," + B.morphism_id(g) + "):" + labels[x] +
                    "->" + labels[y];
          auto m = cb.add_morphism(std::move(id), x, y);
          out.morphisms.push_back({f, g, x, y});
          out.morphism_index[{f, g, x, y}] = m;
          if (x == y && A.is_identity(f) && B.is_identity(g))
            cb.set_identity(x, m);
        }
    }

  for (std::size_t u = 0; u < out.morphisms.size(); ++u)
    for (std::size_t v = 0; v < out.morphisms.size(); ++v) {
      const auto& p = out.morphisms[u];  // first
      const auto& q = out.morphisms[v];  // second
      if (p.tgt != q.src)
        continue;
      auto it = out.morphism_index.find(
          {A.compose(q.f, p.f), B.compose(q.g, p.g), p.src, q.tgt});
      if (it != out.morphism_index.end())
        cb.set_composite(v, u, it->second);
    }
  out.cat = std::move(cb).build_shared();

  out.forget1 = {out.cat, alpha.source, {}, {}, "Forget1"};
  out.forget2 = {out.cat, beta.source, {}, {}, "Forget2"};
  for (const auto& o : out.objects) {
    out.forget1.obj_map.push_back(o.a);
    out.forget2.obj_map.push_back(o.b);
  }
  for (const auto& m : out.morphisms) {
    out.forget1.mor_map.push_back(m.f);
    out.forget2.mor_map.push_back(m.g);
  }
  return out;
}

inline CommaCategory arrow_category(const CatRef& C, Bounds bounds = comma_bounds()) {
  auto id = identity_functor(C, "Id");
  return build_comma(id, id, bounds, "Arrow(" + C->name() + ")");
}

/// The square (I, J, K) from Comma(F, G) to Comma(F′, G′) induces Ψ(a, φ, b) = (I a, J φ, K b).
inline FunctorData induced_comma_functor(const FunctorData& I, const FunctorData& J,
                                         const FunctorData& K, const CommaCategory& src,
                                         const CommaCategory& dst, std::string name = "Psi") {
  auto square = [&](const FunctorData& lhs, const FunctorData& rhs, const char* which) {
    if (!same_category(lhs.source, rhs.source) || !same_category(lhs.target, rhs.target))
      throw InputError(name + ": square " + which + " has mismatched categories");
    const auto& S = *lhs.source;
    for (std::size_t a = 0; a < S.object_count(); ++a)
      if (lhs.obj(a) != rhs.obj(a))
        throw InputError(name + ": square " + which + " fails at object " + S.object_id(a));
    for (std::size_t f = 0; f < S.morphism_count(); ++f)
      if (lhs.mor(f) != rhs.mor(f))
        throw InputError(name + ": square " + which + " fails at morphism " + S.morphism_id(f));
  };
  square(compose(J, src.alpha), compose(dst.alpha, I), "J.F = F'.I");
  square(compose(J, src.beta), compose(dst.beta, K), "J.G = G'.K");

  FunctorData psi{src.cat, dst.cat, {}, {}, std::move(name)};
  for (const auto& o : src.objects) {
    auto img = dst.find({I.obj(o.a), J.mor(o.phi), K.obj(o.b)});
    if (!img)
      throw InputError(psi.name + ": image of " + comma_object_label(src.alpha, src.beta, o) +
                       " is not an object of the target comma");
    psi.obj_map.push_back(*img);
  }
  for (const auto& m : src.morphisms) {
    auto img = dst.find_morphism(I.mor(m.f), K.mor(m.g), psi.obj_map[m.src], psi.obj_map[m.tgt]);
    if (!img)
      throw InputError(psi.name + ": image of a comma morphism is not a commuting square");
    psi.mor_map.push_back(*img);
  }
  auto r = check_functor(psi);
  if (!r.ok())
    throw InputError(psi.name + ": " + r.violations.front().rule + " " +
                     r.violations.front().witness);
  // marginal commutation
  if (!functor_equal(compose(dst.forget1, psi), compose(I, src.forget1)) ||
      !functor_equal(compose(dst.forget2, psi), compose(K, src.forget2)))
    throw InputError(psi.name + ": forgetful functors do not commute with the induced functor");
  return psi;
}

/// F∘G = Id exactly, on objects and morphisms.
inline bool check_right_inverse(const FunctorData& F, const FunctorData& G) {
  if (!same_category(G.target, F.source) || !same_category(F.target, G.source))
    return false;
  return functor_equal(compose(F, G), identity_functor(F.target));
}

/// First functor G with F∘G = Id, by exhaustive search.
inline std::optional<FunctorData> find_right_inverse(const FunctorData& F, Budget& budget) {
  std::optional<FunctorData> found;
  enumerate_functors(
      F.target, F.source,
      [&](const FunctorData& G) {
        if (check_right_inverse(F, G)) {
          found = G;
          found->name = F.name + "^-1";
          return false;
        }
        return true;
      },
      budget);
  return found;
}

} // namespace nullkan
