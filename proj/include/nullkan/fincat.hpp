#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace nullkan {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// Materialization limits for finite categories.
struct Bounds {
  std::size_t max_objects = 64;
  std::size_t max_morphisms = 4096;

  static Bounds relaxed() { return {4096, 1u << 20}; }
};

/// Step budget shared by every exhaustive search.
struct Budget {
  std::size_t remaining = 1'000'000;

  void spend(std::size_t n = 1) {
    if (n > remaining)
      throw BudgetExceeded("search budget exceeded");
    remaining -= n;
  }
};

struct MorphismRecord {
  std::string id;
  std::size_t dom = npos;
  std::size_t cod = npos;

  friend bool operator==(const MorphismRecord&, const MorphismRecord&) = default;
};

class CategoryBuilder;

/// An explicitly presented finite category: every hom-set and every composite is stored.
///
/// Objects and morphisms are addressed by dense indices; their string ids are opaque and
/// only used for lookup and reporting. A FinCategory can hold a table that violates the
/// category axioms (that is what validate_category is for), so nothing here assumes the
/// laws hold.
class FinCategory {
public:
  const std::string& name() const { return name_; }
  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  const std::string& object_id(std::size_t a) const { return objects_.at(a); }
  const std::vector<std::string>& objects() const { return objects_; }
  const MorphismRecord& morphism(std::size_t f) const { return morphisms_.at(f); }
  const std::vector<MorphismRecord>& morphisms() const { return morphisms_; }
  const std::string& morphism_id(std::size_t f) const { return morphisms_.at(f).id; }
  std::size_t dom(std::size_t f) const { return morphisms_[f].dom; }
  std::size_t cod(std::size_t f) const { return morphisms_[f].cod; }

  /// Identity morphism of object a, or npos when the table declares none.
  std::size_t identity(std::size_t a) const { return identities_.at(a); }

  /// Stored composite g∘f, or npos when the table has no entry.
  std::size_t compose(std::size_t g, std::size_t f) const {
    return comp_[g * morphisms_.size() + f];
  }

  std::span<const std::size_t> hom(std::size_t a, std::size_t b) const {
    return hom_[a * objects_.size() + b];
  }

  std::optional<std::size_t> find_object(std::string_view id) const {
    auto it = object_index_.find(std::string(id));
    if (it == object_index_.end())
      return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> find_morphism(std::string_view id) const {
    auto it = morphism_index_.find(std::string(id));
    if (it == morphism_index_.end())
      return std::nullopt;
    return it->second;
  }

  std::size_t object_index(std::string_view id) const {
    if (auto i = find_object(id))
      return *i;
    throw InputError("category '" + name_ + "': unknown object '" + std::string(id) + "'");
  }

  std::size_t morphism_index(std::string_view id) const {
    if (auto i = find_morphism(id))
      return *i;
    throw InputError("category '" + name_ + "': unknown morphism '" + std::string(id) + "'");
  }

  bool is_identity(std::size_t f) const { return identities_[morphisms_[f].dom] == f; }

  /// Every hom-set has at most one element.
  bool is_thin() const {
    return std::all_of(hom_.begin(), hom_.end(), [](const auto& h) { return h.size() <= 1; });
  }

  /// Copy with one composition entry overwritten; used to build mutants.
  FinCategory with_composite(std::size_t g, std::size_t f, std::size_t gf) const {
    FinCategory copy = *this;
    copy.comp_[g * morphisms_.size() + f] = gf;
    return copy;
  }

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ &&
           a.identities_ == b.identities_ && a.comp_ == b.comp_;
  }

private:
  friend class CategoryBuilder;

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<MorphismRecord> morphisms_;
  std::vector<std::size_t> identities_;
  std::vector<std::size_t> comp_;
  std::vector<std::vector<std::size_t>> hom_;
  std::unordered_map<std::string, std::size_t> object_index_;
  std::unordered_map<std::string, std::size_t> morphism_index_;
};

using CatRef = std::shared_ptr<const FinCategory>;

class CategoryBuilder {
public:
  explicit CategoryBuilder(std::string name, Bounds bounds = {}) : bounds_(bounds) {
    cat_.name_ = std::move(name);
  }

  std::size_t add_object(std::string id) {
    if (cat_.object_index_.count(id))
      throw InputError("category '" + cat_.name_ + "': duplicate object id '" + id + "'");
    if (cat_.objects_.size() >= bounds_.max_objects)
      throw GuardExceeded("category '" + cat_.name_ + "': more than " +
                          std::to_string(bounds_.max_objects) + " objects");
    cat_.object_index_.emplace(id, cat_.objects_.size());
    cat_.objects_.push_back(std::move(id));
    cat_.identities_.push_back(npos);
    return cat_.objects_.size() - 1;
  }

  std::size_t add_morphism(std::string id, std::size_t dom, std::size_t cod) {
    if (cat_.morphism_index_.count(id))
      throw InputError("category '" + cat_.name_ + "': duplicate morphism id '" + id + "'");
    if (dom >= cat_.objects_.size() || cod >= cat_.objects_.size())
      throw InputError("category '" + cat_.name_ + "': morphism '" + id +
                       "' has an endpoint outside the object list");
    if (cat_.morphisms_.size() >= bounds_.max_morphisms)
      throw GuardExceeded("category '" + cat_.name_ + "': more than " +
                          std::to_string(bounds_.max_morphisms) + " morphisms");
    cat_.morphism_index_.emplace(id, cat_.morphisms_.size());
    cat_.morphisms_.push_back({std::move(id), dom, cod});
    return cat_.morphisms_.size() - 1;
  }

  std::size_t add_morphism(std::string id, std::string_view dom, std::string_view cod) {
    return add_morphism(std::move(id), object(dom), object(cod));
  }

  /// Adds an object together with a fresh identity morphism named `id_<object>`.
  std::size_t add_object_with_identity(std::string id) {
    auto a = add_object(id);
    set_identity(a, add_morphism("id_" + id, a, a));
    return a;
  }

  void set_identity(std::size_t a, std::size_t f) { cat_.identities_.at(a) = f; }

  void set_composite(std::size_t g, std::size_t f, std::size_t gf) {
    pending_.push_back({g, f, gf});
  }

  std::size_t object(std::string_view id) const { return cat_.object_index(id); }
  std::size_t morphism(std::string_view id) const { return cat_.morphism_index(id); }
  std::size_t object_count() const { return cat_.objects_.size(); }
  std::size_t morphism_count() const { return cat_.morphisms_.size(); }
  std::size_t dom(std::size_t f) const { return cat_.morphisms_.at(f).dom; }
  std::size_t cod(std::size_t f) const { return cat_.morphisms_.at(f).cod; }

  /// Fills every composite with `f` or `g` an identity, for tables that only list the rest.
  void fill_identity_composites() {
    for (std::size_t f = 0; f < cat_.morphisms_.size(); ++f) {
      auto i_dom = cat_.identities_[cat_.morphisms_[f].dom];
      auto i_cod = cat_.identities_[cat_.morphisms_[f].cod];
      if (i_dom != npos)
        pending_.push_back({f, i_dom, f});
      if (i_cod != npos)
        pending_.push_back({i_cod, f, f});
    }
  }

  FinCategory build() && {
    const auto n = cat_.objects_.size();
    const auto m = cat_.morphisms_.size();
    cat_.comp_.assign(m * m, npos);
    for (const auto& [g, f, gf] : pending_) {
      if (g >= m || f >= m || gf >= m)
        throw InputError("category '" + cat_.name_ + "': composition entry out of range");
      cat_.comp_[g * m + f] = gf;
    }
    cat_.hom_.assign(n * n, {});
    for (std::size_t f = 0; f < m; ++f)
      cat_.hom_[cat_.morphisms_[f].dom * n + cat_.morphisms_[f].cod].push_back(f);
    return std::move(cat_);
  }

  CatRef build_shared() && { return std::make_shared<const FinCategory>(std::move(*this).build()); }

private:
  struct Entry {
    std::size_t g, f, gf;
  };
  FinCategory cat_;
  Bounds bounds_;
  std::vector<Entry> pending_;
};

// ---------------------------------------------------------------------------
// Category axioms

inline ValidationReport validate_category(const FinCategory& c) {
  ValidationReport r;
  const auto n = c.object_count();
  const auto m = c.morphism_count();
  auto mid = [&](std::size_t f) { return f == npos ? std::string("<none>") : c.morphism_id(f); };

  for (std::size_t a = 0; a < n; ++a) {
    auto i = c.identity(a);
    if (i == npos)
      r.add("identity-missing", c.object_id(a));
    else if (c.dom(i) != a || c.cod(i) != a)
      r.add("identity-hom", c.object_id(a) + ":" + mid(i));
  }

  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t f = 0; f < m; ++f) {
      auto gf = c.compose(g, f);
      const bool composable = c.cod(f) == c.dom(g);
      if (!composable) {
        if (gf != npos)
          r.add("composite-not-composable", "(" + mid(g) + "," + mid(f) + ")");
        continue;
      }
      if (gf == npos)
        r.add("composition-totality", "(" + mid(g) + "," + mid(f) + ")");
      else if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g))
        r.add("composite-hom", "(" + mid(g) + "," + mid(f) + ")=" + mid(gf));
    }
  }
  if (!r.ok())
    return r;  // the law checks below assume totality

  for (std::size_t f = 0; f < m; ++f) {
    if (c.compose(f, c.identity(c.dom(f))) != f)
      r.add("identity-law-right", "(" + mid(f) + "," + mid(c.identity(c.dom(f))) + ")");
    if (c.compose(c.identity(c.cod(f)), f) != f)
      r.add("identity-law-left", "(" + mid(c.identity(c.cod(f))) + "," + mid(f) + ")");
  }

  for (std::size_t f = 0; f < m; ++f)
    for (std::size_t b = 0; b < n; ++b)
      for (auto g : c.hom(c.cod(f), b))
        for (std::size_t d = 0; d < n; ++d)
          for (auto h : c.hom(b, d))
            if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
              r.add("associativity", "(" + mid(h) + "," + mid(g) + "," + mid(f) + ")");
  return r;
}

inline bool same_category(const CatRef& a, const CatRef& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------
// Builders

inline CatRef terminal_category(const std::string& object = "*") {
  CategoryBuilder b("1");
  b.add_object_with_identity(object);
  b.fill_identity_composites();
  return std::move(b).build_shared();
}

inline CatRef discrete_category(const std::vector<std::string>& objects,
                                const std::string& name = "discrete", Bounds bounds = {}) {
  CategoryBuilder b(name, bounds);
  for (const auto& o : objects)
    b.add_object_with_identity(o);
  b.fill_identity_composites();
  return std::move(b).build_shared();
}

/// One morphism x→y per related pair; ids are "x<=y". Rejects non-reflexive or
/// non-transitive relations with the violating pair.
inline CatRef build_preorder(const std::vector<std::string>& elements,
                             const std::vector<std::pair<std::string, std::string>>& leq,
                             const std::string& name = "preorder", Bounds bounds = {}) {
  const auto n = elements.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(elements[i], i).second)
      throw InputError("preorder: duplicate element '" + elements[i] + "'");
  std::vector<char> rel(n * n, 0);
  for (const auto& [x, y] : leq) {
    auto ix = index.find(x), iy = index.find(y);
    if (ix == index.end() || iy == index.end())
      throw InputError("preorder: relation mentions unknown element (" + x + "," + y + ")");
    rel[ix->second * n + iy->second] = 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!rel[i * n + i])
      throw InputError("preorder: not reflexive at (" + elements[i] + "," + elements[i] + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i * n + j] && rel[j * n + k] && !rel[i * n + k])
          throw InputError("preorder: not transitive at (" + elements[i] + "," + elements[k] +
                           ") via " + elements[j]);

  CategoryBuilder b(name, bounds);
  for (const auto& e : elements)
    b.add_object(e);
  std::vector<std::size_t> arrow(n * n, npos);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i * n + j])
        arrow[i * n + j] = b.add_morphism(elements[i] + "<=" + elements[j], i, j);
  for (std::size_t i = 0; i < n; ++i)
    b.set_identity(i, arrow[i * n + i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i * n + j] && rel[j * n + k])
          b.set_composite(arrow[j * n + k], arrow[i * n + j], arrow[i * n + k]);
  return std::move(b).build_shared();
}

/// Total order e0 ≤ e1 ≤ ... on the given elements.
inline CatRef build_chain(const std::vector<std::string>& elements,
                          const std::string& name = "chain") {
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i; j < elements.size(); ++j)
      leq.emplace_back(elements[i], elements[j]);
  return build_preorder(elements, leq, name);
}

inline std::string subset_label(const std::vector<std::string>& elements, std::uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (mask & (1u << i)) {
      if (!first)
        s += ",";
      s += elements[i];
      first = false;
    }
  return s + "}";
}

/// Inclusion order on all subsets of `elements` (at most `max_size` of them).
inline CatRef power_set_preorder(const std::vector<std::string>& elements,
                                 std::size_t max_size = 5) {
  if (elements.size() > max_size)
    throw GuardExceeded("power_set_preorder: |s| = " + std::to_string(elements.size()) +
                        " exceeds bound " + std::to_string(max_size));
  const std::uint32_t count = 1u << elements.size();
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::uint32_t s = 0; s < count; ++s)
    labels.push_back(subset_label(elements, s));
  for (std::uint32_t s = 0; s < count; ++s)
    for (std::uint32_t t = 0; t < count; ++t)
      if ((s & t) == s)
        leq.emplace_back(labels[s], labels[t]);
  return build_preorder(labels, leq, "2^" + subset_label(elements, count - 1),
                        Bounds::relaxed());
}

// ---------------------------------------------------------------------------
// Functors

struct FunctorData {
  CatRef source;
  CatRef target;
  std::vector<std::size_t> obj_map;
  std::vector<std::size_t> mor_map;
  std::string name;

  std::size_t obj(std::size_t a) const { return obj_map.at(a); }
  std::size_t mor(std::size_t f) const { return mor_map.at(f); }
};

inline bool functor_equal(const FunctorData& F, const FunctorData& G) {
  return same_category(F.source, G.source) && same_category(F.target, G.target) &&
         F.obj_map == G.obj_map && F.mor_map == G.mor_map;
}

inline FunctorData identity_functor(const CatRef& c, std::string name = "Id") {
  FunctorData F{c, c, {}, {}, std::move(name)};
  for (std::size_t a = 0; a < c->object_count(); ++a)
    F.obj_map.push_back(a);
  for (std::size_t f = 0; f < c->morphism_count(); ++f)
    F.mor_map.push_back(f);
  return F;
}

inline FunctorData constant_functor(const CatRef& source, const CatRef& target, std::size_t object,
                                    std::string name = "const") {
  FunctorData F{source, target, {}, {}, std::move(name)};
  F.obj_map.assign(source->object_count(), object);
  F.mor_map.assign(source->morphism_count(), target->identity(object));
  return F;
}

/// G∘F.
inline FunctorData compose(const FunctorData& G, const FunctorData& F) {
  if (!same_category(F.target, G.source))
    throw InputError("compose: target of " + F.name + " is not the source of " + G.name);
  FunctorData H{F.source, G.target, {}, {}, G.name + "." + F.name};
  for (auto a : F.obj_map)
    H.obj_map.push_back(G.obj(a));
  for (auto f : F.mor_map)
    H.mor_map.push_back(G.mor(f));
  return H;
}

inline ValidationReport check_functor(const FunctorData& F) {
  ValidationReport r;
  const auto& A = *F.source;
  const auto& B = *F.target;
  if (F.obj_map.size() != A.object_count() || F.mor_map.size() != A.morphism_count()) {
    r.add("functor-shape", F.name);
    return r;
  }
  for (std::size_t a = 0; a < A.object_count(); ++a)
    if (F.obj_map[a] >= B.object_count())
      r.add("functor-object-range", A.object_id(a));
  for (std::size_t f = 0; f < A.morphism_count(); ++f)
    if (F.mor_map[f] >= B.morphism_count())
      r.add("functor-morphism-range", A.morphism_id(f));
  if (!r.ok())
    return r;
  for (std::size_t f = 0; f < A.morphism_count(); ++f) {
    auto Ff = F.mor_map[f];
    if (B.dom(Ff) != F.obj_map[A.dom(f)] || B.cod(Ff) != F.obj_map[A.cod(f)])
      r.add("functor-hom", A.morphism_id(f) + "->" + B.morphism_id(Ff));
  }
  for (std::size_t a = 0; a < A.object_count(); ++a) {
    auto i = A.identity(a);
    if (i != npos && F.mor_map[i] != B.identity(F.obj_map[a]))
      r.add("functor-identity", A.morphism_id(i));
  }
  for (std::size_t g = 0; g < A.morphism_count(); ++g)
    for (std::size_t f = 0; f < A.morphism_count(); ++f) {
      if (A.cod(f) != A.dom(g))
        continue;
      auto gf = A.compose(g, f);
      if (gf == npos)
        continue;
      if (F.mor_map[gf] != B.compose(F.mor_map[g], F.mor_map[f]))
        r.add("functor-composition", "(" + A.morphism_id(g) + "," + A.morphism_id(f) + ")");
    }
  return r;
}

/// Calls `visit` with every functor source→target (object map, then morphism map), in
/// lexicographic order of the maps. Stops early when `visit` returns false.
inline void enumerate_functors(const CatRef& source, const CatRef& target,
                               const std::function<bool(const FunctorData&)>& visit,
                               Budget& budget) {
  const auto& A = *source;
  const auto& B = *target;
  FunctorData F{source, target, std::vector<std::size_t>(A.object_count(), npos),
                std::vector<std::size_t>(A.morphism_count(), npos), "candidate"};
  bool stop = false;

  auto consistent = [&](std::size_t f) {
    // Composition constraints among already-assigned morphisms involving f.
    for (std::size_t g = 0; g < A.morphism_count(); ++g) {
      if (F.mor_map[g] == npos)
        continue;
      if (A.cod(f) == A.dom(g)) {
        auto gf = A.compose(g, f);
        if (gf != npos && F.mor_map[gf] != npos &&
            F.mor_map[gf] != B.compose(F.mor_map[g], F.mor_map[f]))
          return false;
      }
      if (A.cod(g) == A.dom(f)) {
        auto fg = A.compose(f, g);
        if (fg != npos && F.mor_map[fg] != npos &&
            F.mor_map[fg] != B.compose(F.mor_map[f], F.mor_map[g]))
          return false;
      }
    }
    return true;
  };

  std::function<void(std::size_t)> assign_mor = [&](std::size_t f) {
    if (stop)
      return;
    if (f == A.morphism_count()) {
      budget.spend();
      if (!visit(F))
        stop = true;
      return;
    }
    const auto a = F.obj_map[A.dom(f)], b = F.obj_map[A.cod(f)];
    if (A.is_identity(f)) {
      F.mor_map[f] = B.identity(a);
      if (consistent(f))
        assign_mor(f + 1);
      F.mor_map[f] = npos;
      return;
    }
    for (auto h : B.hom(a, b)) {
      budget.spend();
      F.mor_map[f] = h;
      if (consistent(f))
        assign_mor(f + 1);
      F.mor_map[f] = npos;
      if (stop)
        return;
    }
  };

  std::function<void(std::size_t)> assign_obj = [&](std::size_t a) {
    if (stop)
      return;
    if (a == A.object_count()) {
      assign_mor(0);
      return;
    }
    for (std::size_t b = 0; b < B.object_count(); ++b) {
      budget.spend();
      F.obj_map[a] = b;
      assign_obj(a + 1);
      if (stop)
        return;
    }
    F.obj_map[a] = npos;
  };
  assign_obj(0);
}

// ---------------------------------------------------------------------------
// Natural transformations

struct NatTransData {
  FunctorData from;
  FunctorData to;
  std::vector<std::size_t> components;
};

inline ValidationReport check_natural(const NatTransData& eta) {
  ValidationReport r;
  const auto& F = eta.from;
  const auto& G = eta.to;
  if (!same_category(F.source, G.source) || !same_category(F.target, G.target)) {
    r.add("precondition", "functors do not share source and target");
    return r;
  }
  const auto& A = *F.source;
  const auto& B = *F.target;
  if (eta.components.size() != A.object_count()) {
    r.add("precondition", "component count");
    return r;
  }
  for (std::size_t a = 0; a < A.object_count(); ++a) {
    auto c = eta.components[a];
    if (c >= B.morphism_count() || B.dom(c) != F.obj(a) || B.cod(c) != G.obj(a))
      r.add("precondition", "component at " + A.object_id(a) + " is not in Hom(F a, G a)");
  }
  if (!r.ok())
    return r;
  for (std::size_t f = 0; f < A.morphism_count(); ++f) {
    auto a = A.dom(f), b = A.cod(f);
    if (B.compose(G.mor(f), eta.components[a]) != B.compose(eta.components[b], F.mor(f)))
      r.add("naturality", A.morphism_id(f));
  }
  return r;
}

/// First natural transformation F ⇒ G in component-declaration order, if any.
inline std::optional<NatTransData> find_natural_transformation(const FunctorData& F,
                                                               const FunctorData& G,
                                                               Budget& budget) {
  if (!same_category(F.source, G.source) || !same_category(F.target, G.target))
    throw InputError("find_natural_transformation: functors are not parallel");
  const auto& A = *F.source;
  const auto& B = *F.target;
  std::vector<std::size_t> comp(A.object_count(), npos);

  auto ok_upto = [&](std::size_t a) {
    for (std::size_t f = 0; f < A.morphism_count(); ++f) {
      auto x = A.dom(f), y = A.cod(f);
      if ((x != a && y != a) || x > a || y > a)
        continue;
      if (B.compose(G.mor(f), comp[x]) != B.compose(comp[y], F.mor(f)))
        return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t a) {
    if (a == A.object_count())
      return true;
    for (auto c : B.hom(F.obj(a), G.obj(a))) {
      budget.spend();
      comp[a] = c;
      if (ok_upto(a) && search(a + 1))
        return true;
    }
    comp[a] = npos;
    return false;
  };
  if (!search(0))
    return std::nullopt;
  return NatTransData{F, G, comp};
}

/// T∗ is a pre-right adjoint of T when some transformation T∘T∗ ⇒ Id exists.
inline bool check_pre_right_adjoint(const FunctorData& T, const FunctorData& Tstar,
                                    Budget budget = {}) {
  auto TT = compose(T, Tstar);
  return find_natural_transformation(TT, identity_functor(T.target), budget).has_value();
}

/// T∗ is a post-right adjoint of T when some transformation Id ⇒ T∘T∗ exists.
inline bool check_post_right_adjoint(const FunctorData& T, const FunctorData& Tstar,
                                     Budget budget = {}) {
  auto TT = compose(T, Tstar);
  return find_natural_transformation(identity_functor(T.target), TT, budget).has_value();
}

/// Searches all functors target→source of T for a pre- (or post-) right adjoint.
inline std::optional<FunctorData> find_right_adjoint_like(const FunctorData& T, bool post,
                                                          Budget& budget) {
  std::optional<FunctorData> found;
  enumerate_functors(
      T.target, T.source,
      [&](const FunctorData& cand) {
        bool ok = post ? check_post_right_adjoint(T, cand, budget)
                       : check_pre_right_adjoint(T, cand, budget);
        if (ok) {
          found = cand;
          found->name = T.name + (post ? "^post" : "^pre");
        }
        return !ok;
      },
      budget);
  return found;
}

// ---------------------------------------------------------------------------
// Limits and colimits, by exhaustive search over (co)cones

struct Cocone {
  std::size_t tip = npos;
  std::vector<std::size_t> components;  // one per diagram-index object
};
using Cone = Cocone;

namespace detail {

// All cocones (or cones, when `cone`) over D with the given tip, in lexicographic order.
inline void enumerate_cones(const FunctorData& D, std::size_t tip, bool cone,
                            std::vector<Cocone>& out, Budget& budget) {
  const auto& J = *D.source;
  const auto& C = *D.target;
  std::vector<std::size_t> comp(J.object_count(), npos);

  auto ok_upto = [&](std::size_t j) {
    for (std::size_t u = 0; u < J.morphism_count(); ++u) {
      auto x = J.dom(u), y = J.cod(u);
      if ((x != j && y != j) || x > j || y > j)
        continue;
      // cocone: c_y ∘ D(u) = c_x ; cone: D(u) ∘ c_x = c_y
      bool good = cone ? C.compose(D.mor(u), comp[x]) == comp[y]
                       : C.compose(comp[y], D.mor(u)) == comp[x];
      if (!good)
        return false;
    }
    return true;
  };
  std::function<void(std::size_t)> go = [&](std::size_t j) {
    if (j == J.object_count()) {
      out.push_back({tip, comp});
      budget.spend();
      return;
    }
    auto h = cone ? C.hom(tip, D.obj(j)) : C.hom(D.obj(j), tip);
    for (auto c : h) {
      budget.spend();
      comp[j] = c;
      if (ok_upto(j))
        go(j + 1);
    }
    comp[j] = npos;
  };
  go(0);
}

inline std::optional<Cocone> universal(const FunctorData& D, bool cone, Budget& budget) {
  const auto& C = *D.target;
  std::vector<Cocone> all;
  for (std::size_t x = 0; x < C.object_count(); ++x)
    enumerate_cones(D, x, cone, all, budget);
  for (const auto& cand : all) {
    bool universal = true;
    for (const auto& other : all) {
      std::size_t factorings = 0;
      auto h = cone ? C.hom(other.tip, cand.tip) : C.hom(cand.tip, other.tip);
      for (auto m : h) {
        budget.spend();
        bool fits = true;
        for (std::size_t j = 0; j < cand.components.size() && fits; ++j) {
          auto lhs = cone ? C.compose(cand.components[j], m) : C.compose(m, cand.components[j]);
          fits = lhs == other.components[j];
        }
        factorings += fits;
      }
      if (factorings != 1) {
        universal = false;
        break;
      }
    }
    if (universal)
      return cand;
  }
  return std::nullopt;
}

} // namespace detail

/// A universal cocone over D, or nullopt when none exists. Tips are tried in declared order.
inline std::optional<Cocone> colimit(const FunctorData& D, Budget budget = {}) {
  return detail::universal(D, false, budget);
}

inline std::optional<Cone> limit(const FunctorData& D, Budget budget = {}) {
  return detail::universal(D, true, budget);
}

inline std::optional<std::pair<std::size_t, std::size_t>> find_isomorphism(const FinCategory& c,
                                                                           std::size_t a,
                                                                           std::size_t b) {
  for (auto f : c.hom(a, b))
    for (auto g : c.hom(b, a))
      if (c.compose(g, f) == c.identity(a) && c.compose(f, g) == c.identity(b))
        return std::pair{f, g};
  return std::nullopt;
}

} // namespace nullkan
