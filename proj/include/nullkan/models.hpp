#pragma once

#include <map>
#include <string>
#include <vector>

#include "setup.hpp"

namespace nullkan {

namespace detail {

// Category with one object per carrier and every set map accepted by `keep` as a morphism.
inline std::pair<CatRef, SetFunctor> concrete_category(
    const std::string& name, const std::vector<std::pair<std::string, FiniteSet>>& objects,
    const std::function<bool(const SetMap&)>& keep) {
  CategoryBuilder b(name, Bounds::relaxed());
  std::vector<FiniteSet> sets;
  std::vector<std::vector<std::size_t>> maps;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> index;
  for (const auto& [id, set] : objects) {
    b.add_object(id);
    sets.push_back(set);
  }
  for (std::size_t x = 0; x < sets.size(); ++x)
    for (std::size_t y = 0; y < sets.size(); ++y) {
      const auto& A = sets[x];
      const auto& C = sets[y];
      if (C.size() == 0 && A.size() > 0)
        continue;
      std::vector<std::size_t> assign(A.size(), 0);
      for (bool more = true; more;) {
        SetMap phi{A, C, assign};
        if (keep(phi)) {
          std::string id = objects[x].first + ">" + objects[y].first + ":";
          for (auto v : assign)
            id += C.elements[v];
          if (x == y && phi.is_identity())
            id = "id_" + objects[x].first;
          auto m = b.add_morphism(id, x, y);
          maps.push_back(assign);
          index[{x, y, assign}] = m;
          if (x == y && phi.is_identity())
            b.set_identity(x, m);
        }
        std::size_t i = 0;
        for (; i < assign.size(); ++i) {
          if (++assign[i] < C.size())
            break;
          assign[i] = 0;
        }
        more = i < assign.size();
      }
    }
  for (std::size_t g = 0; g < maps.size(); ++g)
    for (std::size_t f = 0; f < maps.size(); ++f) {
      if (b.cod(f) != b.dom(g))
        continue;
      std::vector<std::size_t> h;
      for (auto v : maps[f])
        h.push_back(maps[g][v]);
      b.set_composite(g, f, index.at({b.dom(f), b.cod(g), h}));
    }
  auto cat = std::move(b).build_shared();
  return {cat, SetFunctor{cat, sets, maps}};
}

// B = I = M with identity functors throughout.
inline Setup identity_arrangement(std::string name, CatRef C, SetFunctor gamma) {
  Setup s;
  s.name = std::move(name);
  s.B = s.I = s.M = C;
  s.j2 = identity_functor(C, "j2");
  s.j1 = identity_functor(C, "j1");
  s.pi = identity_functor(C, "pi");
  s.gamma = std::move(gamma);
  auto id = identity_functor(C, "Id");
  s.iota3_rstar = std::array<FunctorData, 3>{id, id, id};
  return s;
}

inline void set_base(Setup& s, BaseKind kind, std::size_t k = 0) {
  s.base.clear();
  auto g = s.gamma_B();
  for (std::size_t b = 0; b < s.B->object_count(); ++b)
    s.base.push_back(base_nullity(kind, g.set(b), k).nulls);
}

} // namespace detail

inline FiniteSet carrier_of_size(std::size_t n) {
  FiniteSet s;
  for (std::size_t i = 0; i < n; ++i)
    s.elements.push_back(std::to_string(i));
  return s;
}

/// Vector spaces F2^0, F2^1 with injective linear maps, inside affine injections.
inline Setup f2_model(BaseKind kind) {
  Setup s;
  s.name = kind == BaseKind::trivial ? "f2_trivial" : "f2_proper";

  CategoryBuilder lin("Lin");
  auto f0 = lin.add_object_with_identity("F0");
  auto f1 = lin.add_object_with_identity("F1");
  lin.add_morphism("z", f0, f1);
  lin.fill_identity_composites();
  s.B = s.I = std::move(lin).build_shared();

  CategoryBuilder aff("Aff");
  aff.add_object_with_identity("F0");
  aff.add_object_with_identity("F1");
  auto t0 = aff.add_morphism("t0", f0, f1);
  auto t1 = aff.add_morphism("t1", f0, f1);
  auto sh = aff.add_morphism("s", f1, f1);
  aff.fill_identity_composites();
  aff.set_composite(sh, t0, t1);
  aff.set_composite(sh, t1, t0);
  aff.set_composite(sh, sh, aff.morphism("id_F1"));
  s.M = std::move(aff).build_shared();

  const auto& M = *s.M;
  s.gamma = {s.M, {carrier_of_size(1), carrier_of_size(2)}, {}};
  for (std::size_t f = 0; f < M.morphism_count(); ++f) {
    const auto& id = M.morphism_id(f);
    if (id == "id_F0" || id == "t0")
      s.gamma.maps.push_back({0});
    else if (id == "t1")
      s.gamma.maps.push_back({1});
    else if (id == "s")
      s.gamma.maps.push_back({1, 0});
    else
      s.gamma.maps.push_back({0, 1});
  }

  const auto& B = *s.B;
  s.j2 = identity_functor(s.B, "j2");
  s.j1 = {s.I, s.M, {0, 1}, {}, "j1"};
  for (std::size_t f = 0; f < B.morphism_count(); ++f)
    s.j1.mor_map.push_back(M.morphism_index(B.morphism_id(f) == "z" ? "t0" : B.morphism_id(f)));
  s.pi = {s.M, s.I, {0, 1}, {}, "pi"};
  for (std::size_t f = 0; f < M.morphism_count(); ++f) {
    const auto& id = M.morphism_id(f);
    s.pi.mor_map.push_back(B.morphism_index(id == "t0" || id == "t1" ? "z"
                                            : id == "s"              ? "id_F1"
                                                                     : id));
  }
  auto id = identity_functor(s.B, "Id");
  s.iota3_rstar = std::array<FunctorData, 3>{id, id, id};
  detail::set_base(s, kind);
  return s;
}

/// P = {0} and Q = {0,1} with the swap of Q; base = proper subsets.
inline Setup identity_model() {
  CategoryBuilder b("Sym");
  b.add_object_with_identity("P");
  auto q = b.add_object_with_identity("Q");
  auto sw = b.add_morphism("swap", q, q);
  b.fill_identity_composites();
  b.set_composite(sw, sw, b.morphism("id_Q"));
  auto C = std::move(b).build_shared();
  SetFunctor g{C, {carrier_of_size(1), carrier_of_size(2)}, {}};
  for (std::size_t f = 0; f < C->morphism_count(); ++f)
    g.maps.push_back(C->morphism_id(f) == "swap" ? std::vector<std::size_t>{1, 0}
                     : C->morphism_id(f) == "id_P" ? std::vector<std::size_t>{0}
                                                   : std::vector<std::size_t>{0, 1});
  auto s = detail::identity_arrangement("identity", C, g);
  detail::set_base(s, BaseKind::proper);
  return s;
}

/// Sets of size 0..3 with all injections; base = subsets of cardinality ≤ k.
inline Setup injections_model(std::size_t k) {
  std::vector<std::pair<std::string, FiniteSet>> objects;
  for (std::size_t n = 0; n <= 3; ++n)
    objects.push_back({"n" + std::to_string(n), carrier_of_size(n)});
  auto [C, g] = detail::concrete_category("Inj", objects,
                                          [](const SetMap& m) { return m.is_injective(); });
  auto s = detail::identity_arrangement("injections_card_" + std::to_string(k), C, g);
  detail::set_base(s, BaseKind::cardinality, k);
  return s;
}

inline std::vector<std::string> builtin_model_names() {
  return {"identity", "f2_trivial", "f2_proper", "injections_card_1"};
}

inline Setup builtin_model(const std::string& name) {
  if (name == "identity")
    return identity_model();
  if (name == "f2_trivial")
    return f2_model(BaseKind::trivial);
  if (name == "f2_proper")
    return f2_model(BaseKind::proper);
  const std::string prefix = "injections_card_";
  if (name.rfind(prefix, 0) == 0 && name.size() == prefix.size() + 1 &&
      name.back() >= '0' && name.back() <= '3')
    return injections_model(static_cast<std::size_t>(name.back() - '0'));
  throw InputError("unknown builtin model '" + name + "'");
}

} // namespace nullkan
