#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "construct.hpp"

namespace nullkan {

/// Outcome counts for one lemma over a batch of seeded instances.
struct LemmaStats {
  std::string name;
  std::size_t tried = 0;
  std::size_t hypotheses_held = 0;
  std::size_t verified = 0;
  std::size_t refuted = 0;
  std::size_t skipped = 0;  // hypotheses failed or a needed (co)limit is missing
  std::vector<std::string> witnesses;

  void refute(std::string w) {
    ++refuted;
    if (witnesses.size() < 3)
      witnesses.push_back(std::move(w));
  }
  bool passed(std::size_t min_verified) const { return refuted == 0 && verified >= min_verified; }
};

// ---------------------------------------------------------------------------
// Random posets and monotone maps

class InstanceGenerator {
public:
  explicit InstanceGenerator(std::uint64_t seed) : rng_(seed) {}

  /// A poset on 2..max_size elements from a random DAG, transitively closed.
  CatRef poset(const std::string& name, std::size_t max_size = 4) {
    std::uniform_int_distribution<std::size_t> size(2, max_size);
    std::bernoulli_distribution edge(0.4);
    const auto n = size(rng_);
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      le[i][i] = 1;
      for (std::size_t j = i + 1; j < n; ++j)
        le[i][j] = edge(rng_);
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (le[i][k] && le[k][j])
            le[i][j] = 1;
    std::vector<std::string> elems;
    for (std::size_t i = 0; i < n; ++i)
      elems.push_back(name + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> rel;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][j])
          rel.emplace_back(elems[i], elems[j]);
    return build_preorder(elems, rel, name);
  }

  /// Uniform choice among all monotone maps source → target satisfying `keep`.
  std::optional<FunctorData> monotone(const CatRef& source, const CatRef& target,
                                      const std::string& name,
                                      const std::function<bool(const FunctorData&)>& keep = {}) {
    std::vector<FunctorData> all;
    Budget budget{200'000};
    enumerate_functors(
        source, target,
        [&](const FunctorData& F) {
          if (!keep || keep(F))
            all.push_back(F);
          return true;
        },
        budget);
    if (all.empty())
      return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    auto F = all[pick(rng_)];
    F.name = name;
    return F;
  }

  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

/// Target lattice for the lemma instances: subsets of {p,q} under inclusion.
inline CatRef lemma_lattice() { return power_set_preorder({"p", "q"}); }

namespace detail {

inline bool has_right_adjoint_like(const FunctorData& T, bool post) {
  Budget b{500'000};
  try {
    return find_right_adjoint_like(T, post, b).has_value();
  } catch (const BudgetExceeded&) {
    return false;
  }
}

inline std::string objects_label(const CatRef& C, const std::vector<std::optional<std::size_t>>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + (v[i] ? C->object_id(*v[i]) : std::string("none"));
  return s + "]";
}

// Values of a pointwise extension along e, with nullopt where missing.
inline std::vector<std::optional<std::size_t>> along(const std::vector<std::optional<std::size_t>>& v,
                                                     const FunctorData& e) {
  std::vector<std::optional<std::size_t>> out;
  for (auto x : e.obj_map)
    out.push_back(v[x]);
  return out;
}

inline bool complete(const std::vector<std::optional<std::size_t>>& v) {
  for (const auto& x : v)
    if (!x)
      return false;
  return true;
}

} // namespace detail

/// X --f--> Y --g--> Z: colim g∘f = colim g when f has a post-right adjoint (i);
/// lim g∘f = lim g when f has a pre-right adjoint (ii).
inline LemmaStats check_preadj1(std::uint64_t seed, std::size_t instances) {
  LemmaStats st;
  st.name = "preadj:1";
  InstanceGenerator gen(seed);
  auto Z = lemma_lattice();
  for (std::size_t t = 0; t < instances; ++t) {
    ++st.tried;
    auto X = gen.poset("x", 3), Y = gen.poset("y", 3);
    auto f = gen.monotone(X, Y, "f");
    auto g = gen.monotone(Y, Z, "g");
    bool post = t % 2 == 0;
    if (!f || !g || !detail::has_right_adjoint_like(*f, post)) {
      ++st.skipped;
      continue;
    }
    auto gf = compose(*g, *f);
    auto u = post ? colimit(*g) : limit(*g);
    auto v = post ? colimit(gf) : limit(gf);
    if (!u || !v) {
      ++st.skipped;
      continue;
    }
    ++st.hypotheses_held;
    if (find_isomorphism(*Z, u->tip, v->tip))
      ++st.verified;
    else
      st.refute(std::string(post ? "(i)" : "(ii)") + " seed " + std::to_string(seed) +
                " instance " + std::to_string(t) + ": " + Z->object_id(u->tip) + " vs " +
                Z->object_id(v->tip));
  }
  return st;
}

/// A --a--> B --f--> E: the induced a_*: Comma(fa, E) → Comma(f, E) has a pre (post)
/// right adjoint when a does.
inline LemmaStats check_preadj2(std::uint64_t seed, std::size_t instances) {
  LemmaStats st;
  st.name = "preadj:2";
  InstanceGenerator gen(seed);
  for (std::size_t t = 0; t < instances; ++t) {
    ++st.tried;
    auto A = gen.poset("a", 3), B = gen.poset("b", 3), E = gen.poset("e", 3);
    auto a = gen.monotone(A, B, "a");
    auto f = gen.monotone(B, E, "f");
    bool post = t % 2 == 0;
    if (!a || !f || !detail::has_right_adjoint_like(*a, post)) {
      ++st.skipped;
      continue;
    }
    ++st.hypotheses_held;
    auto idE = identity_functor(E, "Id_E");
    auto src = build_comma(compose(*f, *a), idE);
    auto dst = build_comma(*f, idE);
    auto a_star = induced_comma_functor(*a, idE, idE, src, dst, "a_*");
    Budget b{2'000'000};
    try {
      if (find_right_adjoint_like(a_star, post, b))
        ++st.verified;
      else
        st.refute(std::string(post ? "post" : "pre") + " seed " + std::to_string(seed) +
                  " instance " + std::to_string(t) + ": a has one, a_* has none");
    } catch (const BudgetExceeded&) {
      --st.hypotheses_held;
      ++st.skipped;
    }
  }
  return st;
}

/// A --a--> B --b--> C, f: B → E: Lan_f b = Lan_{fa}(b a) with a post-right adjoint (i);
/// Ran_f b = Ran_{fa}(b a) with a pre-right adjoint (ii).
inline LemmaStats check_kan_id2(std::uint64_t seed, std::size_t instances) {
  LemmaStats st;
  st.name = "Kan_id:2";
  InstanceGenerator gen(seed);
  auto C = lemma_lattice();
  for (std::size_t t = 0; t < instances; ++t) {
    ++st.tried;
    auto A = gen.poset("a", 3), B = gen.poset("b", 3), E = gen.poset("e", 3);
    auto a = gen.monotone(A, B, "a");
    auto b = gen.monotone(B, C, "b");
    auto f = gen.monotone(B, E, "f");
    bool post = t % 2 == 0;
    if (!a || !b || !f || !detail::has_right_adjoint_like(*a, post)) {
      ++st.skipped;
      continue;
    }
    Side side = post ? Side::left : Side::right;
    Budget bud{};
    auto lhs = general_kan_objects(*f, *b, side, bud);
    auto rhs = general_kan_objects(compose(*f, *a), compose(*b, *a), side, bud);
    if (!detail::complete(lhs) || !detail::complete(rhs)) {
      ++st.skipped;
      continue;
    }
    ++st.hypotheses_held;
    if (lhs == rhs)
      ++st.verified;
    else
      st.refute(std::string(post ? "(i)" : "(ii)") + " seed " + std::to_string(seed) +
                " instance " + std::to_string(t) + ": " + detail::objects_label(C, lhs) + " vs " +
                detail::objects_label(C, rhs));
  }
  return st;
}

/// A --d--> D --e--> E, c: A → C: Ran_{ed} c ∘ e = Ran_d c with a pre-right adjoint for e (i);
/// Lan_{ed} c ∘ e = Lan_d c with a post-right adjoint (ii).
inline LemmaStats check_kan_id3(std::uint64_t seed, std::size_t instances) {
  LemmaStats st;
  st.name = "Kan_id:3";
  InstanceGenerator gen(seed);
  auto C = lemma_lattice();
  for (std::size_t t = 0; t < instances; ++t) {
    ++st.tried;
    auto A = gen.poset("a", 3), D = gen.poset("d", 3), E = gen.poset("e", 3);
    auto d = gen.monotone(A, D, "d");
    auto e = gen.monotone(D, E, "e");
    auto c = gen.monotone(A, C, "c");
    bool pre = t % 2 == 0;
    if (!d || !e || !c || !detail::has_right_adjoint_like(*e, !pre)) {
      ++st.skipped;
      continue;
    }
    Side side = pre ? Side::right : Side::left;
    Budget bud{};
    auto ed = general_kan_objects(compose(*e, *d), *c, side, bud);
    auto dd = general_kan_objects(*d, *c, side, bud);
    if (!detail::complete(ed) || !detail::complete(dd)) {
      ++st.skipped;
      continue;
    }
    ++st.hypotheses_held;
    auto lhs = detail::along(ed, *e);
    if (lhs == dd)
      ++st.verified;
    else
      st.refute(std::string(pre ? "(i)" : "(ii)") + " seed " + std::to_string(seed) +
                " instance " + std::to_string(t) + ": " + detail::objects_label(C, lhs) + " vs " +
                detail::objects_label(C, dd));
  }
  return st;
}

/// Square f∘a = e∘d over A, with b: B → C: Ran_d(b a) = Ran_f b ∘ e when e and a have pre-right
/// adjoints (i); Lan_d(b a) = Lan_f b ∘ e when both have post-right adjoints (ii).
inline LemmaStats check_kan_id4(std::uint64_t seed, std::size_t instances) {
  LemmaStats st;
  st.name = "Kan_id:4";
  InstanceGenerator gen(seed);
  auto C = lemma_lattice();
  for (std::size_t t = 0; t < instances; ++t) {
    ++st.tried;
    auto A = gen.poset("a", 3), B = gen.poset("b", 3), D = gen.poset("d", 3),
         E = gen.poset("e", 3);
    auto a = gen.monotone(A, B, "a");
    auto d = gen.monotone(A, D, "d");
    auto b = gen.monotone(B, C, "b");
    auto f = gen.monotone(B, E, "f");
    std::optional<FunctorData> e;
    if (a && d && f) {
      auto fa = compose(*f, *a);
      e = gen.monotone(D, E, "e", [&](const FunctorData& cand) {
        return compose(cand, *d).obj_map == fa.obj_map;
      });
    }
    bool pre = t % 2 == 0;
    if (!e || !b || !detail::has_right_adjoint_like(*a, !pre) ||
        !detail::has_right_adjoint_like(*e, !pre)) {
      ++st.skipped;
      continue;
    }
    Side side = pre ? Side::right : Side::left;
    Budget bud{};
    auto lhs = general_kan_objects(*d, compose(*b, *a), side, bud);
    auto fb = general_kan_objects(*f, *b, side, bud);
    if (!detail::complete(lhs) || !detail::complete(fb)) {
      ++st.skipped;
      continue;
    }
    ++st.hypotheses_held;
    auto rhs = detail::along(fb, *e);
    if (lhs == rhs)
      ++st.verified;
    else
      st.refute(std::string(pre ? "(i)" : "(ii)") + " seed " + std::to_string(seed) +
                " instance " + std::to_string(t) + ": " + detail::objects_label(C, lhs) + " vs " +
                detail::objects_label(C, rhs));
  }
  return st;
}

// ---------------------------------------------------------------------------
// Right inverses and adjoint-like functors of the construction

struct Claim {
  std::string name;
  bool holds = false;
  std::string detail;
};

/// V ↦ (b0, φ_V, V) where b0 is the first B object with exactly one A: j2 b0 → π V for
/// every V; g ↦ (id, g).
inline std::optional<FunctorData> forget2_section(const Arrangement& a) {
  const auto& s = *a.setup;
  const auto& M = *s.M;
  for (std::size_t b0 = 0; b0 < s.B->object_count(); ++b0) {
    FunctorData sec{s.M, a.linear.cat, {}, {}, "Forget2^-1"};
    bool ok = true;
    for (std::size_t V = 0; V < M.object_count() && ok; ++V) {
      auto h = s.I->hom(s.j2.obj(b0), s.pi.obj(V));
      ok = h.size() == 1;
      if (ok)
        sec.obj_map.push_back(*a.linear.find({b0, h.front(), V}));
    }
    for (std::size_t g = 0; g < M.morphism_count() && ok; ++g) {
      auto m = a.linear.find_morphism(s.B->identity(b0), g, sec.obj_map[M.dom(g)],
                                      sec.obj_map[M.cod(g)]);
      ok = m.has_value();
      if (ok)
        sec.mor_map.push_back(*m);
    }
    if (ok && check_functor(sec).ok())
      return sec;
  }
  return std::nullopt;
}

/// Right inverses of π_* and Forget2, the ι-composite adjoint candidates for ι1 and ι2,
/// and the two triangles the composites rely on.
inline std::vector<Claim> check_null_ext5(const Arrangement& a, Budget budget = {}) {
  std::vector<Claim> out;
  const auto& s = *a.setup;
  auto pi_star = build_iota(Iota::pi_star, a);

  {
    Claim c{"pi_star right inverse (constructed)", false, ""};
    try {
      auto sec = induced_comma_functor(identity_functor(s.B), s.j1, identity_functor(s.M),
                                       a.linear, a.probes, "pi_star^-1");
      c.holds = check_right_inverse(pi_star, sec);
      c.detail = c.holds ? "pi_star . section = Id" : "pi_star . section != Id";
    } catch (const InputError& e) {
      c.detail = e.what();
    }
    out.push_back(c);
  }
  {
    Claim c{"pi_star right inverse (exhaustive)", false, ""};
    try {
      Budget b = budget;
      auto found = find_right_inverse(pi_star, b);
      c.holds = found.has_value();
      c.detail = c.holds ? "found" : "no functor G with pi_star . G = Id";
    } catch (const BudgetExceeded&) {
      c.detail = "budget exceeded";
    }
    out.push_back(c);
  }
  {
    Claim c{"Forget2 right inverse", false, ""};
    auto sec = forget2_section(a);
    c.holds = sec && check_right_inverse(a.linear.forget2, *sec);
    c.detail = "section through a base object with unique comparisons";
    if (!c.holds) {
      try {
        Budget b = budget;
        c.holds = find_right_inverse(a.linear.forget2, b).has_value();
        c.detail = c.holds ? "found by search" : "no functor G with Forget2 . G = Id";
      } catch (const BudgetExceeded&) {
        c.detail = "budget exceeded";
      }
    }
    out.push_back(c);
    Claim p{"Forget2 pre-right adjoint", false, ""};
    if (sec && check_pre_right_adjoint(a.linear.forget2, *sec, budget)) {
      p.holds = true;
      p.detail = "via the section";
    } else {
      try {
        Budget b = budget;
        p.holds = find_right_adjoint_like(a.linear.forget2, false, b).has_value();
        p.detail = p.holds ? "found by search" : "no functor G with Forget2 . G => Id";
      } catch (const BudgetExceeded&) {
        p.detail = "budget exceeded";
      }
    }
    out.push_back(p);
  }

  std::optional<FunctorData> r3;
  try {
    r3 = build_iota(Iota::i3_rstar, a);
  } catch (const InputError& e) {
    out.push_back({"iota3_rstar", false, e.what()});
    return out;
  }
  auto i1 = build_iota(Iota::i1, a), i2 = build_iota(Iota::i2, a);
  auto i4 = build_iota(Iota::i4, a), i5 = build_iota(Iota::i5, a);
  auto i6 = build_iota(Iota::i6, a), i7 = build_iota(Iota::i7, a);
  auto i1r = compose(*r3, i4);
  auto i2r = compose(*r3, i7);
  auto claim = [&](std::string name, bool holds, const std::string& what) {
    out.push_back({std::move(name), holds, (holds ? "" : "no ") + what});
  };
  claim("iota2 post-right adjoint (iota3_rstar . iota7)",
        check_post_right_adjoint(i2, i2r, budget), "transformation Id => iota2 . iota2^R*");
  claim("iota1 pre-right adjoint (iota3_rstar . iota4)",
        check_pre_right_adjoint(i1, i1r, budget), "transformation iota1 . iota1^R* => Id");
  claim("triangle iota5 . iota4 = Id",
        functor_equal(compose(i5, i4), identity_functor(a.linear.cat)), "equality iota5 . iota4 = Id");
  claim("triangle iota6 . iota7 = Id",
        functor_equal(compose(i6, i7), identity_functor(a.probes.cat)), "equality iota6 . iota7 = Id");
  return out;
}

} // namespace nullkan
