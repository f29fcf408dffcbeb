#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "comma.hpp"
#include "nullity.hpp"

namespace nullkan {

enum class Side { left, right };
enum class KanPath { fast, general };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }
inline const char* to_string(KanPath p) { return p == KanPath::fast ? "fast" : "general"; }

/// (x, k) with k: K x → d on the left side, k: d → K x on the right side.
struct SliceObject {
  std::size_t x = npos;
  std::size_t k = npos;
};

inline std::vector<SliceObject> slice_objects(const FunctorData& K, std::size_t d, Side side) {
  std::vector<SliceObject> out;
  const auto& D = *K.target;
  for (std::size_t x = 0; x < K.source->object_count(); ++x) {
    auto h = side == Side::left ? D.hom(K.obj(x), d) : D.hom(d, K.obj(x));
    for (auto k : h)
      out.push_back({x, k});
  }
  return out;
}

/// The slice K ↓ d (left) or d ↓ K (right) as a materialized comma category.
inline CommaCategory slice_category(const FunctorData& K, std::size_t d, Side side) {
  auto star = terminal_category();
  auto at_d = constant_functor(star, K.target, d, K.target->object_id(d));
  if (side == Side::left)
    return build_comma(K, at_d, comma_bounds(), K.name + "/" + K.target->object_id(d));
  return build_comma(at_d, K, comma_bounds(), K.target->object_id(d) + "/" + K.name);
}

/// The slice projected into the source of K: (x, k) ↦ x.
inline FunctorData slice_diagram(const FunctorData& K, std::size_t d, Side side) {
  auto s = slice_category(K, d, side);
  return side == Side::left ? s.forget1 : s.forget2;
}

struct KanResult {
  NullityAssignment extension;
  std::vector<KanPath> path;
  std::vector<std::size_t> slice_size;
  std::vector<char> brute_checked;  // brute-force cross-check ran and agreed
};

namespace detail {

inline void require_fibered(const FunctorData& K, const NullityAssignment& F,
                            const SetFunctor& gammaD) {
  if (!same_category(K.source, F.gamma.source) || !same_category(K.target, gammaD.source))
    throw InputError("kan: K, F and the target carriers do not line up");
  auto pulled = compose(gammaD, K);
  if (pulled.sets != F.gamma.sets || pulled.maps != F.gamma.maps)
    throw InputError("kan: carriers of F are not the target carriers pulled back along K");
}

// F x moved onto the carrier of d along the slice leg k.
inline SubsetFamily transport(const SetFunctor& gammaD, SubsetFamily nx, std::size_t k,
                              Side side) {
  auto phi = gammaD.map(k);
  if (side == Side::left)
    return push_forward(phi, nx);
  SubsetFamily out;
  for (Subset s = 0; s <= phi.dom.full(); ++s)
    if (nx.contains(phi.image(s)))
      out.insert(s);
  return out;
}

} // namespace detail

inline SubsetFamily kan_value_at(const NullityAssignment& F, const SetFunctor& gammaD,
                                 std::size_t d, Side side, const std::vector<SliceObject>& slice) {
  const auto& carrier = gammaD.set(d);
  SubsetFamily acc = side == Side::left ? SubsetFamily::of({0})
                                        : SubsetFamily::all(carrier.size());
  for (const auto& [x, k] : slice) {
    auto v = detail::transport(gammaD, F.nulls[x], k, side);
    acc = side == Side::left ? acc | v : acc & v;
  }
  return acc;
}

/// Same value computed as a (co)limit in the fiber of down-sets over the carrier of d.
/// Index category is the slice itself when the transported values form a diagram,
/// otherwise the discrete category on the slice objects.
inline SubsetFamily brute_force_kan_at(const FunctorData& K, const NullityAssignment& F,
                                       const SetFunctor& gammaD, std::size_t d, Side side,
                                       Budget& budget) {
  const auto& carrier = gammaD.set(d);
  auto fiber = nullity_fiber(carrier);
  auto slice = slice_category(K, d, side);
  std::vector<std::size_t> tip_of;
  for (const auto& o : slice.objects) {
    auto x = side == Side::left ? o.a : o.b;
    auto v = detail::transport(gammaD, F.nulls[x], o.phi, side);
    auto idx = fiber.find({carrier, v});
    if (!idx)
      throw InputError("brute_force_kan_at: transported value is not a nullity structure");
    tip_of.push_back(*idx);
  }
  FunctorData D{slice.cat, fiber.cat, tip_of, {}, "slice-values"};
  bool functorial = true;
  for (const auto& m : slice.morphisms) {
    auto h = fiber.cat->hom(tip_of[m.src], tip_of[m.tgt]);
    if (h.empty()) {
      functorial = false;
      break;
    }
    D.mor_map.push_back(h.front());
  }
  if (!functorial) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < slice.objects.size(); ++i)
      ids.push_back(slice.cat->object_id(i));
    D = {discrete_category(ids, "slice-objects", comma_bounds()), fiber.cat, tip_of, {}, "slice-values"};
    for (std::size_t i = 0; i < ids.size(); ++i)
      D.mor_map.push_back(fiber.cat->identity(tip_of[i]));
  }
  auto u = side == Side::left ? colimit(D, budget) : limit(D, budget);
  if (!u)
    throw MissingUniversal(side == Side::left ? "NonCocomplete" : "NonComplete",
                           gammaD.source->object_id(d));
  return fiber.objects[u->tip].nulls;
}

struct KanOptions {
  bool cross_check = false;  // run the brute-force path wherever the carrier guard allows
  Budget budget{};
};

/// Pointwise Kan extension of a nullity assignment F along K, over carriers gammaD.
inline KanResult kan_extension(const FunctorData& K, const NullityAssignment& F,
                               const SetFunctor& gammaD, Side side, KanOptions opt = {}) {
  detail::require_fibered(K, F, gammaD);
  const auto& D = *K.target;
  KanResult r{{gammaD, {}}, {}, {}, {}};
  for (std::size_t d = 0; d < D.object_count(); ++d) {
    auto slice = slice_objects(K, d, side);
    bool fast = true;
    for (const auto& s : slice)
      fast = fast && gammaD.map(s.k).is_identity();
    auto v = kan_value_at(F, gammaD, d, side, slice);
    bool checked = false;
    if (opt.cross_check && gammaD.set(d).size() <= 3) {
      auto b = brute_force_kan_at(K, F, gammaD, d, side, opt.budget);
      if (b != v)
        throw Error(std::string(to_string(side)) + " Kan extension: brute force disagrees at " +
                    D.object_id(d));
      checked = true;
    }
    r.extension.nulls.push_back(v);
    r.path.push_back(fast ? KanPath::fast : KanPath::general);
    r.slice_size.push_back(slice.size());
    r.brute_checked.push_back(checked);
  }
  return r;
}

inline KanResult left_kan(const FunctorData& K, const NullityAssignment& F,
                          const SetFunctor& gammaD, KanOptions opt = {}) {
  return kan_extension(K, F, gammaD, Side::left, opt);
}

inline KanResult right_kan(const FunctorData& K, const NullityAssignment& F,
                           const SetFunctor& gammaD, KanOptions opt = {}) {
  return kan_extension(K, F, gammaD, Side::right, opt);
}

// ---------------------------------------------------------------------------
// Universal property

/// Every nullity assignment over gammaD that respects images along every morphism, in
/// lexicographic order of per-object down-set choices. `prune(d, nulls)` may reject
/// a partial assignment early. Stops when `visit` returns false.
inline void enumerate_nullity_assignments(
    const SetFunctor& gammaD,
    const std::function<bool(std::size_t, const std::vector<SubsetFamily>&)>& prune,
    const std::function<bool(const NullityAssignment&)>& visit, Budget& budget) {
  const auto& D = *gammaD.source;
  std::vector<std::vector<SubsetFamily>> choices;
  for (std::size_t d = 0; d < D.object_count(); ++d)
    choices.push_back(down_sets_with_empty(gammaD.set(d).size()));
  NullityAssignment H{gammaD, std::vector<SubsetFamily>(D.object_count())};
  bool stop = false;
  auto consistent = [&](std::size_t d) {
    for (std::size_t f = 0; f < D.morphism_count(); ++f) {
      auto a = D.dom(f), b = D.cod(f);
      if (a > d || b > d || (a != d && b != d))
        continue;
      if (!image_preserves(gammaD.map(f), H.at(a), H.at(b)))
        return false;
    }
    return true;
  };
  std::function<void(std::size_t)> go = [&](std::size_t d) {
    if (stop)
      return;
    if (d == D.object_count()) {
      if (!visit(H))
        stop = true;
      return;
    }
    for (auto c : choices[d]) {
      budget.spend();
      H.nulls[d] = c;
      if (consistent(d) && prune(d, H.nulls))
        go(d + 1);
      if (stop)
        return;
    }
  };
  go(0);
}

/// Left: the unit F ⊆ L∘K exists and every competitor H with F ⊆ H∘K contains L.
/// Right: the counit R∘K ⊆ F exists and every competitor H with H∘K ⊆ F lies inside R.
/// Competitors are enumerated exhaustively unless supplied.
inline ValidationReport check_universal(const FunctorData& K, const NullityAssignment& F,
                                        const NullityAssignment& candidate, Side side,
                                        Budget& budget,
                                        const std::vector<NullityAssignment>* against = nullptr) {
  ValidationReport r;
  const auto& X = *K.source;
  const auto& D = *K.target;
  auto related = [&](const std::vector<SubsetFamily>& H, std::size_t x) {
    auto hk = H[K.obj(x)];
    return side == Side::left ? F.nulls[x].subset_of(hk) : hk.subset_of(F.nulls[x]);
  };
  for (std::size_t x = 0; x < X.object_count(); ++x)
    if (!related(candidate.nulls, x))
      r.add(side == Side::left ? "unit-missing" : "counit-missing", X.object_id(x));
  auto fact = check_nullity_assignment(candidate);
  if (!fact.ok())
    r.merge(fact, "candidate");
  if (!r.ok())
    return r;

  auto test = [&](const NullityAssignment& H) {
    for (std::size_t x = 0; x < X.object_count(); ++x)
      if (!related(H.nulls, x))
        return true;  // not a competitor
    for (std::size_t d = 0; d < D.object_count(); ++d) {
      bool fits = side == Side::left ? candidate.nulls[d].subset_of(H.nulls[d])
                                     : H.nulls[d].subset_of(candidate.nulls[d]);
      if (!fits) {
        std::string w;
        for (std::size_t e = 0; e < D.object_count(); ++e)
          w += (e ? "; " : "") + D.object_id(e) + "=" + family_label(H.gamma.set(e), H.nulls[e]);
        r.add("no-factoring", "competitor {" + w + "} at " + D.object_id(d));
        return false;
      }
    }
    return true;
  };
  if (against) {
    for (const auto& H : *against)
      if (!test(H))
        break;
    return r;
  }
  // only objects in the image of K constrain a partial competitor
  auto prune = [&](std::size_t d, const std::vector<SubsetFamily>& H) {
    for (std::size_t x = 0; x < X.object_count(); ++x)
      if (K.obj(x) == d && !related(H, x))
        return false;
    return true;
  };
  enumerate_nullity_assignments(candidate.gamma, prune, test, budget);
  return r;
}

// ---------------------------------------------------------------------------
// Kan extensions valued in an arbitrary finite category, via fincat (co)limits

/// Lan_K F (left) or Ran_K F (right) as an object assignment; nullopt where the slice
/// (co)limit does not exist.
inline std::vector<std::optional<std::size_t>> general_kan_objects(const FunctorData& K,
                                                                   const FunctorData& F,
                                                                   Side side, Budget& budget) {
  if (!same_category(K.source, F.source))
    throw InputError("general_kan_objects: K and F do not share a source");
  std::vector<std::optional<std::size_t>> out;
  for (std::size_t d = 0; d < K.target->object_count(); ++d) {
    auto diagram = compose(F, slice_diagram(K, d, side));
    auto u = side == Side::left ? colimit(diagram, budget) : limit(diagram, budget);
    out.push_back(u ? std::optional<std::size_t>(u->tip) : std::nullopt);
  }
  return out;
}

} // namespace nullkan
