#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "fincat.hpp"

namespace nullkan {

/// Largest carrier a nullity structure may have: 2^6 subsets fit one 64-bit family word.
inline constexpr std::size_t kMaxCarrier = 6;

using Subset = std::uint32_t;  // bitmask over the ordered carrier

struct FiniteSet {
  std::vector<std::string> elements;

  std::size_t size() const { return elements.size(); }
  Subset full() const { return static_cast<Subset>((1u << elements.size()) - 1); }
  std::size_t index(const std::string& e) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == e)
        return i;
    throw InputError("element '" + e + "' is not in the set");
  }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};

inline std::string to_string(const FiniteSet& s) { return subset_label(s.elements, s.full()); }

/// Total function between finite sets, stored as the image index of each domain element.
struct SetMap {
  FiniteSet dom;
  FiniteSet cod;
  std::vector<std::size_t> assign;

  bool is_identity() const {
    if (!(dom == cod))
      return false;
    for (std::size_t i = 0; i < assign.size(); ++i)
      if (assign[i] != i)
        return false;
    return true;
  }

  bool is_injective() const {
    std::vector<char> hit(cod.size(), 0);
    for (auto a : assign)
      if (hit[a]++)
        return false;
    return true;
  }

  Subset image(Subset s) const {
    Subset out = 0;
    for (std::size_t i = 0; i < assign.size(); ++i)
      if (s & (1u << i))
        out |= 1u << assign[i];
    return out;
  }

  Subset preimage(Subset s) const {
    Subset out = 0;
    for (std::size_t i = 0; i < assign.size(); ++i)
      if (s & (1u << assign[i]))
        out |= 1u << i;
    return out;
  }

  friend bool operator==(const SetMap&, const SetMap&) = default;
};

inline ValidationReport check_set_map(const SetMap& f) {
  ValidationReport r;
  if (f.assign.size() != f.dom.size())
    r.add("set-map-total", "assignment has " + std::to_string(f.assign.size()) +
                               " entries for a domain of " + std::to_string(f.dom.size()));
  for (std::size_t i = 0; i < f.assign.size(); ++i)
    if (f.assign[i] >= f.cod.size())
      r.add("set-map-codomain", i < f.dom.size() ? f.dom.elements[i] : std::to_string(i));
  return r;
}

inline SetMap identity_map(const FiniteSet& s) {
  SetMap m{s, s, {}};
  for (std::size_t i = 0; i < s.size(); ++i)
    m.assign.push_back(i);
  return m;
}

/// g∘f
inline SetMap compose(const SetMap& g, const SetMap& f) {
  if (!(f.cod == g.dom))
    throw InputError("set map composition: carrier mismatch");
  SetMap h{f.dom, g.cod, {}};
  for (auto a : f.assign)
    h.assign.push_back(g.assign[a]);
  return h;
}

/// A family of subsets of a carrier with at most kMaxCarrier elements.
class SubsetFamily {
public:
  constexpr SubsetFamily() = default;
  constexpr explicit SubsetFamily(std::uint64_t bits) : bits_(bits) {}

  static SubsetFamily of(std::initializer_list<Subset> sets) {
    SubsetFamily f;
    for (auto s : sets)
      f.insert(s);
    return f;
  }

  /// Every subset of a carrier of size n.
  static SubsetFamily all(std::size_t n) {
    const std::size_t count = std::size_t{1} << n;
    return SubsetFamily(count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1));
  }

  bool contains(Subset s) const { return (bits_ >> s) & 1u; }
  void insert(Subset s) { bits_ |= std::uint64_t{1} << s; }
  void erase(Subset s) { bits_ &= ~(std::uint64_t{1} << s); }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  std::uint64_t bits() const { return bits_; }

  std::vector<Subset> members() const {
    std::vector<Subset> out;
    for (std::uint64_t b = bits_; b; b &= b - 1)
      out.push_back(static_cast<Subset>(std::countr_zero(b)));
    return out;
  }

  bool subset_of(SubsetFamily o) const { return (bits_ & ~o.bits_) == 0; }

  friend SubsetFamily operator|(SubsetFamily a, SubsetFamily b) { return SubsetFamily(a.bits_ | b.bits_); }
  friend SubsetFamily operator&(SubsetFamily a, SubsetFamily b) { return SubsetFamily(a.bits_ & b.bits_); }
  friend bool operator==(SubsetFamily, SubsetFamily) = default;
  friend auto operator<=>(SubsetFamily a, SubsetFamily b) { return a.bits_ <=> b.bits_; }

private:
  std::uint64_t bits_ = 0;
};

inline bool is_down_set(SubsetFamily f) {
  // closed under removing one element at a time is enough
  for (auto s : f.members())
    for (Subset rest = s; rest; rest &= rest - 1)
      if (!f.contains(s & ~(rest & -rest)))
        return false;
  return true;
}

/// Smallest down-set of 2^carrier containing every member of f.
inline SubsetFamily down_closure(SubsetFamily f) {
  SubsetFamily out;
  for (auto s : f.members()) {
    for (Subset t = s;; t = (t - 1) & s) {
      out.insert(t);
      if (t == 0)
        break;
    }
  }
  return out;
}

/// All down-sets of 2^n that contain the empty set, in increasing bit order.
inline std::vector<SubsetFamily> down_sets_with_empty(std::size_t n) {
  if (n > 4)
    throw GuardExceeded("down-set enumeration beyond a 4-element carrier");
  const std::size_t count = std::size_t{1} << n;
  std::vector<SubsetFamily> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << count); ++bits) {
    SubsetFamily f(bits);
    if (f.contains(0) && is_down_set(f))
      out.push_back(f);
  }
  return out;
}

inline std::string family_label(const FiniteSet& carrier, SubsetFamily f) {
  std::string s = "[";
  bool first = true;
  for (auto m : f.members()) {
    if (!first)
      s += ",";
    s += subset_label(carrier.elements, m);
    first = false;
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// Down-sets in an arbitrary preorder category

struct DownSet {
  CatRef preorder;
  std::vector<char> members;  // indexed by object

  bool contains(std::size_t a) const { return members.at(a) != 0; }
  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < members.size(); ++a)
      if (members[a])
        out.push_back(a);
    return out;
  }

  friend bool operator==(const DownSet& a, const DownSet& b) {
    return same_category(a.preorder, b.preorder) && a.members == b.members;
  }
};

inline bool is_down_set(const DownSet& d) {
  const auto& p = *d.preorder;
  for (std::size_t f = 0; f < p.morphism_count(); ++f)
    if (d.contains(p.cod(f)) && !d.contains(p.dom(f)))
      return false;
  return true;
}

inline DownSet downward_closure(const CatRef& p, const std::vector<std::size_t>& seed) {
  if (!p->is_thin())
    throw InputError("downward_closure: '" + p->name() + "' is not a preorder");
  DownSet d{p, std::vector<char>(p->object_count(), 0)};
  std::vector<std::size_t> stack;
  for (auto a : seed) {
    if (a >= p->object_count())
      throw InputError("downward_closure: seed object out of range");
    stack.push_back(a);
  }
  while (!stack.empty()) {
    auto b = stack.back();
    stack.pop_back();
    if (d.members[b])
      continue;
    d.members[b] = 1;
    for (std::size_t a = 0; a < p->object_count(); ++a)
      if (!p->hom(a, b).empty() && !d.members[a])
        stack.push_back(a);
  }
  return d;
}

inline DownSet down_set_union(const DownSet& a, const DownSet& b) {
  if (!same_category(a.preorder, b.preorder))
    throw InputError("down-set union: preorder mismatch");
  DownSet out = a;
  for (std::size_t i = 0; i < out.members.size(); ++i)
    out.members[i] = a.members[i] || b.members[i];
  return out;
}

inline DownSet down_set_intersect(const DownSet& a, const DownSet& b) {
  if (!same_category(a.preorder, b.preorder))
    throw InputError("down-set intersection: preorder mismatch");
  DownSet out = a;
  for (std::size_t i = 0; i < out.members.size(); ++i)
    out.members[i] = a.members[i] && b.members[i];
  return out;
}

// ---------------------------------------------------------------------------
// Nullity structures

/// A carrier together with a down-set of its power set that contains the empty set.
struct NullityStructure {
  FiniteSet carrier;
  SubsetFamily nulls;

  friend bool operator==(const NullityStructure&, const NullityStructure&) = default;
};

inline ValidationReport check_nullity_structure(const NullityStructure& n) {
  ValidationReport r;
  if (n.carrier.size() > kMaxCarrier)
    r.add("carrier-size", to_string(n.carrier));
  if (!n.nulls.subset_of(SubsetFamily::all(n.carrier.size())))
    r.add("nulls-outside-carrier", to_string(n.carrier));
  if (!n.nulls.contains(0))
    r.add("empty-set-not-null", to_string(n.carrier));
  if (!is_down_set(n.nulls))
    r.add("not-a-down-set", family_label(n.carrier, n.nulls));
  return r;
}

inline NullityStructure make_nullity(FiniteSet carrier, SubsetFamily nulls) {
  NullityStructure n{std::move(carrier), nulls};
  auto r = check_nullity_structure(n);
  if (!r.ok())
    throw InputError("invalid nullity structure: " + r.violations.front().rule + " " +
                     r.violations.front().witness);
  return n;
}

/// { S ⊆ cod f : f⁻¹(S) is null in the source }.
inline NullityStructure preimage_nullity(const SetMap& f, const NullityStructure& src) {
  if (!(src.carrier == f.dom))
    throw InputError("preimage_nullity: carrier does not match the map's domain");
  NullityStructure out{f.cod, {}};
  for (Subset s = 0; s <= f.cod.full(); ++s)
    if (src.nulls.contains(f.preimage(s)))
      out.nulls.insert(s);
  return out;
}

inline SubsetFamily push_forward(const SetMap& f, SubsetFamily nulls) {
  SubsetFamily img;
  for (auto s : nulls.members())
    img.insert(f.image(s));
  return down_closure(img);
}

/// True iff f maps every null set of src onto a null set of dst.
inline bool image_preserves(const SetMap& f, const NullityStructure& src,
                            const NullityStructure& dst) {
  if (!(src.carrier == f.dom) || !(dst.carrier == f.cod))
    throw InputError("image_preserves: carrier mismatch");
  for (auto s : src.nulls.members())
    if (!dst.nulls.contains(f.image(s)))
      return false;
  return true;
}

} // namespace nullkan
