#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "order.hpp"

namespace nullkan {

/// A functor into finite sets: one carrier per object, one set map per morphism.
/// This is the γ payload that ties a category to the sets its objects are built on.
struct SetFunctor {
  CatRef source;
  std::vector<FiniteSet> sets;
  std::vector<std::vector<std::size_t>> maps;

  const FiniteSet& set(std::size_t a) const { return sets.at(a); }
  SetMap map(std::size_t f) const {
    return {sets.at(source->dom(f)), sets.at(source->cod(f)), maps.at(f)};
  }
};

inline ValidationReport check_set_functor(const SetFunctor& g) {
  ValidationReport r;
  const auto& C = *g.source;
  if (g.sets.size() != C.object_count() || g.maps.size() != C.morphism_count()) {
    r.add("set-functor-shape", C.name());
    return r;
  }
  for (const auto& s : g.sets)
    if (s.size() > kMaxCarrier)
      r.add("carrier-size", to_string(s));
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto rep = check_set_map(g.map(f));
    if (!rep.ok())
      r.add("set-functor-map", C.morphism_id(f) + ": " + rep.violations.front().rule);
  }
  if (!r.ok())
    return r;
  for (std::size_t a = 0; a < C.object_count(); ++a) {
    auto i = C.identity(a);
    if (i != npos && !g.map(i).is_identity())
      r.add("set-functor-identity", C.morphism_id(i));
  }
  for (std::size_t h = 0; h < C.morphism_count(); ++h)
    for (std::size_t f = 0; f < C.morphism_count(); ++f) {
      if (C.cod(f) != C.dom(h))
        continue;
      auto hf = C.compose(h, f);
      if (hf != npos && !(g.map(hf) == compose(g.map(h), g.map(f))))
        r.add("set-functor-composition", "(" + C.morphism_id(h) + "," + C.morphism_id(f) + ")");
    }
  return r;
}

/// γ∘F for a functor F into γ's source.
inline SetFunctor compose(const SetFunctor& gamma, const FunctorData& F) {
  if (!same_category(F.target, gamma.source))
    throw InputError("set functor composition: " + F.name + " does not land in γ's source");
  SetFunctor out{F.source, {}, {}};
  for (auto a : F.obj_map)
    out.sets.push_back(gamma.set(a));
  for (auto f : F.mor_map)
    out.maps.push_back(gamma.maps.at(f));
  return out;
}

/// Per-object nullity structures over the carriers of γ.
struct NullityAssignment {
  SetFunctor gamma;
  std::vector<SubsetFamily> nulls;

  NullityStructure at(std::size_t a) const { return {gamma.set(a), nulls.at(a)}; }
  const FinCategory& category() const { return *gamma.source; }
};

inline bool check_nullity_morphism(const SetMap& phi, const NullityStructure& a,
                                   const NullityStructure& b) {
  return image_preserves(phi, a, b);
}

/// Preimage rule: every null set of b pulls back to a null set of a. Diagnostic only.
inline bool check_conullity_morphism(const SetMap& phi, const NullityStructure& a,
                                     const NullityStructure& b) {
  if (!(a.carrier == phi.dom) || !(b.carrier == phi.cod))
    throw InputError("check_conullity_morphism: carrier mismatch");
  for (auto s : b.nulls.members())
    if (!a.nulls.contains(phi.preimage(s)))
      return false;
  return true;
}

inline ValidationReport check_nullity_assignment(const NullityAssignment& n) {
  ValidationReport r = check_set_functor(n.gamma);
  if (!r.ok())
    return r;
  const auto& C = n.category();
  if (n.nulls.size() != C.object_count()) {
    r.add("assignment-shape", C.name());
    return r;
  }
  for (std::size_t a = 0; a < C.object_count(); ++a)
    r.merge(check_nullity_structure(n.at(a)), C.object_id(a));
  if (!r.ok())
    return r;
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto phi = n.gamma.map(f);
    for (auto s : n.nulls[C.dom(f)].members())
      if (!n.nulls[C.cod(f)].contains(phi.image(s))) {
        r.add("image-not-null",
              C.morphism_id(f) + " maps " + subset_label(phi.dom.elements, s) + " to " +
                  subset_label(phi.cod.elements, phi.image(s)));
        break;
      }
  }
  return r;
}

enum class BaseKind { trivial, proper, cardinality };

inline NullityStructure base_nullity(BaseKind kind, const FiniteSet& carrier, std::size_t k = 0) {
  if (carrier.size() > kMaxCarrier)
    throw GuardExceeded("base_nullity: carrier larger than " + std::to_string(kMaxCarrier));
  NullityStructure n{carrier, {}};
  for (Subset s = 0; s <= carrier.full(); ++s) {
    bool null = false;
    switch (kind) {
    case BaseKind::trivial: null = s == 0; break;
    case BaseKind::proper: null = s != carrier.full(); break;
    case BaseKind::cardinality: null = static_cast<std::size_t>(std::popcount(s)) <= k; break;
    }
    if (null)
      n.nulls.insert(s);
  }
  // proper on the empty carrier would be empty; ∅ is always null
  n.nulls.insert(0);
  return n;
}

// ---------------------------------------------------------------------------
// Materialized Nullity category

struct NullityCategory {
  CatRef cat;
  std::vector<NullityStructure> objects;
  std::vector<SetMap> maps;

  std::optional<std::size_t> find(const NullityStructure& n) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == n)
        return i;
    return std::nullopt;
  }
};

/// Objects: every (carrier, down-set containing ∅) over the given carriers. Morphisms:
/// every set map that sends null sets to null sets. `identity_only` keeps just the
/// carrier-identity maps, which is the fiber over a single carrier.
inline NullityCategory materialize_nullity_category(const std::vector<FiniteSet>& carriers,
                                                    std::size_t max_carrier = 3,
                                                    bool identity_only = false) {
  if (max_carrier > 3)
    throw GuardExceeded("materialize_nullity_category: max_carrier above 3");
  for (const auto& c : carriers)
    if (c.size() > max_carrier)
      throw GuardExceeded("materialize_nullity_category: carrier " + to_string(c) +
                          " exceeds " + std::to_string(max_carrier));
  NullityCategory out;
  CategoryBuilder b("Nullity", Bounds::relaxed());
  for (std::size_t ci = 0; ci < carriers.size(); ++ci)
    for (auto f : down_sets_with_empty(carriers[ci].size())) {
      out.objects.push_back({carriers[ci], f});
      b.add_object("c" + std::to_string(ci) + ":" + family_label(carriers[ci], f));
    }

  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> by_map;
  const auto n = out.objects.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& A = out.objects[x].carrier;
      const auto& B = out.objects[y].carrier;
      if (identity_only && !(A == B))
        continue;
      // every assignment A → B, as a base-|B| counter
      std::vector<std::size_t> assign(A.size(), 0);
      bool done = B.size() == 0 && A.size() > 0;
      while (!done) {
        SetMap phi{A, B, assign};
        if ((!identity_only || phi.is_identity()) &&
            image_preserves(phi, out.objects[x], out.objects[y])) {
          std::string id = "m" + std::to_string(x) + "->" + std::to_string(y) + ":";
          for (auto v : assign)
            id += std::to_string(v);
          auto m = b.add_morphism(id, x, y);
          out.maps.push_back(phi);
          by_map[{x * n + y, assign}] = m;
          if (x == y && phi.is_identity())
            b.set_identity(x, m);
        }
        std::size_t i = 0;
        for (; i < assign.size(); ++i) {
          if (++assign[i] < B.size())
            break;
          assign[i] = 0;
        }
        done = i == assign.size();
      }
    }
  for (std::size_t g = 0; g < out.maps.size(); ++g)
    for (std::size_t f = 0; f < out.maps.size(); ++f) {
      if (b.cod(f) != b.dom(g))
        continue;
      auto h = compose(out.maps[g], out.maps[f]);
      auto it = by_map.find({b.dom(f) * n + b.cod(g), h.assign});
      if (it != by_map.end())
        b.set_composite(g, f, it->second);
    }
  out.cat = std::move(b).build_shared();
  return out;
}

/// Down-sets containing ∅ on one carrier, ordered by inclusion (carrier-identity maps only).
inline NullityCategory nullity_fiber(const FiniteSet& carrier) {
  return materialize_nullity_category({carrier}, 3, true);
}

} // namespace nullkan
