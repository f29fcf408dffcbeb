#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "models.hpp"

namespace nullkan {

/// Input error pinned to a line of a spec file.
class ParseError : public InputError {
public:
  ParseError(std::size_t line, const std::string& field, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + field + ": " + what), line_(line),
        field_(field) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

private:
  std::size_t line_;
  std::string field_;
};

struct CarrierBlock {
  std::string name;
  SetFunctor sets;
};

/// Null subsets per object of a category, written by element id.
struct NullityBlock {
  std::string name;
  CatRef category;
  std::vector<std::vector<std::vector<std::string>>> nulls;  // object -> subsets -> elements
};

struct SetupBlock {
  std::string name;
  std::string B, I, M, j2, j1, pi, gamma, base;
  std::optional<std::array<std::string, 3>> iota3_rstar;

  friend bool operator==(const SetupBlock&, const SetupBlock&) = default;
};

struct SpecDocument {
  int version = 1;
  std::optional<std::string> model;
  std::vector<CatRef> categories;
  std::vector<FunctorData> functors;
  std::vector<CarrierBlock> carriers;
  std::vector<NullityBlock> nullities;
  std::optional<SetupBlock> setup;
};

namespace detail {

inline bool same_named(const CatRef& a, const CatRef& b) {
  return a->name() == b->name() && same_category(a, b);
}

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string t; in >> t;)
    out.push_back(t);
  return out;
}

inline bool plain_id(const std::string& s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (c == '{' || c == '}' || c == ',' || c == '#' || static_cast<unsigned char>(c) <= ' ')
      return false;
  return true;
}

/// "{}" or "{a,b}" into its element ids.
inline std::optional<std::vector<std::string>> parse_subset(const std::string& tok) {
  if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
    return std::nullopt;
  std::vector<std::string> out;
  auto body = tok.substr(1, tok.size() - 2);
  if (body.empty())
    return out;
  std::size_t start = 0;
  while (true) {
    auto comma = body.find(',', start);
    auto item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!plain_id(item))
      return std::nullopt;
    out.push_back(item);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return out;
}

inline std::string subset_token(const std::vector<std::string>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + s[i];
  return out + "}";
}

class SpecParser {
public:
  explicit SpecParser(const std::string& text) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
      if (!l.empty() && l.back() == '\r')
        l.pop_back();
      lines_.push_back(l);
    }
  }

  SpecDocument parse() {
    bool header_seen = false;
    while (auto toks = next()) {
      const auto& t = *toks;
      const auto& kw = t[0];
      if (kw == "nullkan-spec") {
        if (header_seen || !doc_.categories.empty() || doc_.model || doc_.setup)
          fail("header", "version line must come first");
        arity(t, 2, "header");
        if (t[1] != "1")
          fail("header", "unsupported version '" + t[1] + "'");
        header_seen = true;
      } else if (kw == "model" || kw == "model:") {
        arity(t, 2, "model");
        if (doc_.model)
          fail("model", "model given twice");
        doc_.model = t[1];
      } else if (kw == "category") {
        arity(t, 2, "category");
        category(t[1]);
      } else if (kw == "functor") {
        arity(t, 4, "functor");
        functor(t[1], t[2], t[3]);
      } else if (kw == "carriers") {
        arity(t, 3, "carriers");
        carriers(t[1], t[2]);
      } else if (kw == "nullity") {
        arity(t, 3, "nullity");
        nullity(t[1], t[2]);
      } else if (kw == "setup") {
        arity(t, 2, "setup");
        setup(t[1]);
      } else {
        fail("keyword", "unknown keyword '" + kw + "'");
      }
    }
    if (!doc_.setup && !doc_.model)
      throw ParseError(lines_.size() + 1, "document", "missing setup block");
    if (doc_.setup && doc_.model)
      throw ParseError(lines_.size() + 1, "document", "both a model shortcut and a setup block");
    if (doc_.model) {
      try {
        builtin_model(*doc_.model);
      } catch (const InputError& e) {
        throw ParseError(model_line_, "model", e.what());
      }
    }
    return std::move(doc_);
  }

private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;  // index of the next unread line
  std::size_t model_line_ = 0;
  SpecDocument doc_;

  std::size_t line() const { return pos_; }

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError(line(), field, what);
  }

  void arity(const std::vector<std::string>& t, std::size_t n, const std::string& field) const {
    if (t.size() != n)
      fail(field, "expected " + std::to_string(n - 1) + " argument(s), got " +
                      std::to_string(t.size() - 1));
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!plain_id(t[i]))
        fail(field, "malformed id '" + t[i] + "'");
  }

  std::optional<std::vector<std::string>> next() {
    while (pos_ < lines_.size()) {
      auto l = lines_[pos_++];
      if (auto h = l.find('#'); h != std::string::npos)
        l.erase(h);
      auto t = tokenize(l);
      if (t.empty())
        continue;
      if ((t[0] == "model" || t[0] == "model:") && !model_line_)
        model_line_ = pos_;
      return t;
    }
    return std::nullopt;
  }

  std::vector<std::string> body_line(const std::string& block) {
    auto t = next();
    if (!t)
      throw ParseError(lines_.size(), block, "unterminated block (missing 'end')");
    return *t;
  }

  CatRef find_category(const std::string& id, const std::string& field) const {
    for (const auto& c : doc_.categories)
      if (c->name() == id)
        return c;
    fail(field, "dangling reference to category '" + id + "'");
  }

  const FunctorData& find_functor(const std::string& id, const std::string& field) const {
    for (const auto& f : doc_.functors)
      if (f.name == id)
        return f;
    fail(field, "dangling reference to functor '" + id + "'");
  }

  bool name_taken(const std::string& id) const {
    for (const auto& c : doc_.categories)
      if (c->name() == id)
        return true;
    for (const auto& f : doc_.functors)
      if (f.name == id)
        return true;
    for (const auto& c : doc_.carriers)
      if (c.name == id)
        return true;
    for (const auto& n : doc_.nullities)
      if (n.name == id)
        return true;
    return false;
  }

  void fresh(const std::string& id, const std::string& field) const {
    if (name_taken(id))
      fail(field, "duplicate id '" + id + "'");
  }

  void category(const std::string& name) {
    fresh(name, "category");
    CategoryBuilder b(name, Bounds::relaxed());
    std::vector<std::array<std::size_t, 3>> comps;
    auto mor = [&](const std::string& id) -> std::size_t {
      try {
        return b.morphism(id);
      } catch (const InputError&) {
        fail("category " + name, "dangling reference to morphism '" + id + "'");
      }
    };
    for (auto t = body_line("category " + name); t[0] != "end"; t = body_line("category " + name)) {
      const std::string field = "category " + name + " " + t[0];
      try {
        if (t[0] == "object") {
          arity(t, 2, field);
          b.add_object(t[1]);
        } else if (t[0] == "morphism") {
          arity(t, 4, field);
          std::size_t d = 0, c = 0;
          try {
            d = b.object(t[2]);
            c = b.object(t[3]);
          } catch (const InputError&) {
            fail(field, "dangling reference to object in '" + t[2] + " " + t[3] + "'");
          }
          b.add_morphism(t[1], d, c);
        } else if (t[0] == "identity") {
          arity(t, 3, field);
          std::size_t a = 0;
          try {
            a = b.object(t[1]);
          } catch (const InputError&) {
            fail(field, "dangling reference to object '" + t[1] + "'");
          }
          b.set_identity(a, mor(t[2]));
        } else if (t[0] == "compose") {
          arity(t, 4, field);
          comps.push_back({mor(t[1]), mor(t[2]), mor(t[3])});
        } else {
          fail(field, "unknown entry");
        }
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail(field, e.what());
      }
    }
    b.fill_identity_composites();
    for (const auto& [g, f, gf] : comps)
      b.set_composite(g, f, gf);
    doc_.categories.push_back(std::move(b).build_shared());
  }

  void functor(const std::string& name, const std::string& src, const std::string& tgt) {
    fresh(name, "functor");
    auto S = find_category(src, "functor " + name);
    auto T = find_category(tgt, "functor " + name);
    FunctorData F{S, T, std::vector<std::size_t>(S->object_count(), npos),
                  std::vector<std::size_t>(S->morphism_count(), npos), name};
    for (auto t = body_line("functor " + name); t[0] != "end"; t = body_line("functor " + name)) {
      const std::string field = "functor " + name + " " + t[0];
      arity(t, 3, field);
      if (t[0] == "obj") {
        auto a = S->find_object(t[1]);
        auto b = T->find_object(t[2]);
        if (!a || !b)
          fail(field, "dangling reference to object '" + (!a ? t[1] : t[2]) + "'");
        if (F.obj_map[*a] != npos)
          fail(field, "duplicate id '" + t[1] + "'");
        F.obj_map[*a] = *b;
      } else if (t[0] == "mor") {
        auto f = S->find_morphism(t[1]);
        auto g = T->find_morphism(t[2]);
        if (!f || !g)
          fail(field, "dangling reference to morphism '" + (!f ? t[1] : t[2]) + "'");
        if (F.mor_map[*f] != npos)
          fail(field, "duplicate id '" + t[1] + "'");
        F.mor_map[*f] = *g;
      } else {
        fail(field, "unknown entry");
      }
    }
    for (std::size_t a = 0; a < F.obj_map.size(); ++a)
      if (F.obj_map[a] == npos)
        fail("functor " + name, "object '" + S->object_id(a) + "' is not mapped");
    for (std::size_t f = 0; f < F.mor_map.size(); ++f)
      if (F.mor_map[f] == npos)
        fail("functor " + name, "morphism '" + S->morphism_id(f) + "' is not mapped");
    doc_.functors.push_back(std::move(F));
  }

  void carriers(const std::string& name, const std::string& cat) {
    fresh(name, "carriers");
    auto C = find_category(cat, "carriers " + name);
    SetFunctor g{C, std::vector<FiniteSet>(C->object_count()), {}};
    std::vector<bool> set_seen(C->object_count(), false);
    std::vector<std::optional<std::vector<std::string>>> images(C->morphism_count());
    for (auto t = body_line("carriers " + name); t[0] != "end"; t = body_line("carriers " + name)) {
      const std::string field = "carriers " + name + " " + t[0];
      if (t.size() < 2)
        fail(field, "missing id");
      for (const auto& tok : t)
        if (!plain_id(tok))
          fail(field, "malformed id '" + tok + "'");
      if (t[0] == "set") {
        auto a = C->find_object(t[1]);
        if (!a)
          fail(field, "dangling reference to object '" + t[1] + "'");
        if (set_seen[*a])
          fail(field, "duplicate id '" + t[1] + "'");
        set_seen[*a] = true;
        std::vector<std::string> els(t.begin() + 2, t.end());
        if (els.size() > kMaxCarrier)
          fail(field, "carrier larger than " + std::to_string(kMaxCarrier) + " elements");
        for (std::size_t i = 0; i < els.size(); ++i)
          for (std::size_t j = 0; j < i; ++j)
            if (els[i] == els[j])
              fail(field, "duplicate id '" + els[i] + "'");
        g.sets[*a].elements = std::move(els);
      } else if (t[0] == "map") {
        auto f = C->find_morphism(t[1]);
        if (!f)
          fail(field, "dangling reference to morphism '" + t[1] + "'");
        if (images[*f])
          fail(field, "duplicate id '" + t[1] + "'");
        images[*f] = std::vector<std::string>(t.begin() + 2, t.end());
      } else {
        fail(field, "unknown entry");
      }
    }
    for (std::size_t a = 0; a < C->object_count(); ++a)
      if (!set_seen[a])
        fail("carriers " + name, "object '" + C->object_id(a) + "' has no set");
    for (std::size_t f = 0; f < C->morphism_count(); ++f) {
      if (!images[f])
        fail("carriers " + name, "morphism '" + C->morphism_id(f) + "' has no map");
      const auto& dom = g.sets[C->dom(f)];
      const auto& cod = g.sets[C->cod(f)];
      if (images[f]->size() != dom.size())
        fail("carriers " + name, "map of '" + C->morphism_id(f) + "' has " +
                                     std::to_string(images[f]->size()) + " images for " +
                                     std::to_string(dom.size()) + " elements");
      std::vector<std::size_t> assign;
      for (const auto& e : *images[f]) {
        auto it = std::find(cod.elements.begin(), cod.elements.end(), e);
        if (it == cod.elements.end())
          fail("carriers " + name, "map of '" + C->morphism_id(f) +
                                       "': dangling reference to element '" + e + "'");
        assign.push_back(static_cast<std::size_t>(it - cod.elements.begin()));
      }
      g.maps.push_back(std::move(assign));
    }
    doc_.carriers.push_back({name, std::move(g)});
  }

  void nullity(const std::string& name, const std::string& cat) {
    fresh(name, "nullity");
    auto C = find_category(cat, "nullity " + name);
    NullityBlock n{name, C, std::vector<std::vector<std::vector<std::string>>>(C->object_count())};
    std::vector<bool> seen(C->object_count(), false);
    for (auto t = body_line("nullity " + name); t[0] != "end"; t = body_line("nullity " + name)) {
      const std::string field = "nullity " + name + " " + t[0];
      if (t[0] != "at" || t.size() < 2)
        fail(field, "expected 'at OBJECT {..} ...'");
      auto a = C->find_object(t[1]);
      if (!a)
        fail(field, "dangling reference to object '" + t[1] + "'");
      if (seen[*a])
        fail(field, "duplicate id '" + t[1] + "'");
      seen[*a] = true;
      for (std::size_t i = 2; i < t.size(); ++i) {
        auto s = parse_subset(t[i]);
        if (!s)
          fail(field, "malformed subset '" + t[i] + "'");
        n.nulls[*a].push_back(std::move(*s));
      }
    }
    for (std::size_t a = 0; a < C->object_count(); ++a)
      if (!seen[a])
        fail("nullity " + name, "object '" + C->object_id(a) + "' has no entry");
    doc_.nullities.push_back(std::move(n));
  }

  void setup(const std::string& name) {
    if (doc_.setup)
      fail("setup", "second setup block");
    SetupBlock s{name, {}, {}, {}, {}, {}, {}, {}, {}, std::nullopt};
    std::map<std::string, std::string*> slots{{"B", &s.B},   {"I", &s.I},   {"M", &s.M},
                                              {"j2", &s.j2}, {"j1", &s.j1}, {"pi", &s.pi},
                                              {"gamma", &s.gamma}, {"base", &s.base}};
    for (auto t = body_line("setup"); t[0] != "end"; t = body_line("setup")) {
      const std::string field = "setup " + t[0];
      if (t[0] == "iota3_rstar") {
        arity(t, 4, field);
        for (std::size_t i = 1; i < 4; ++i)
          find_functor(t[i], field);
        s.iota3_rstar = std::array<std::string, 3>{t[1], t[2], t[3]};
        continue;
      }
      auto it = slots.find(t[0]);
      if (it == slots.end())
        fail(field, "unknown entry");
      arity(t, 2, field);
      if (!it->second->empty())
        fail(field, "given twice");
      *it->second = t[1];
      if (t[0] == "B" || t[0] == "I" || t[0] == "M")
        find_category(t[1], field);
      else if (t[0] == "gamma") {
        if (std::none_of(doc_.carriers.begin(), doc_.carriers.end(),
                         [&](const auto& c) { return c.name == t[1]; }))
          fail(field, "dangling reference to carriers '" + t[1] + "'");
      } else if (t[0] == "base") {
        if (std::none_of(doc_.nullities.begin(), doc_.nullities.end(),
                         [&](const auto& n) { return n.name == t[1]; }))
          fail(field, "dangling reference to nullity '" + t[1] + "'");
      } else {
        find_functor(t[1], field);
      }
    }
    for (const auto& [key, slot] : slots)
      if (slot->empty())
        fail("setup", "missing entry '" + key + "'");
    doc_.setup = std::move(s);
  }
};

} // namespace detail

inline bool operator==(const SpecDocument& a, const SpecDocument& b) {
  auto cats = [](const std::vector<CatRef>& x, const std::vector<CatRef>& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), detail::same_named);
  };
  auto funs = [](const FunctorData& x, const FunctorData& y) {
    return x.name == y.name && functor_equal(x, y) && x.source->name() == y.source->name() &&
           x.target->name() == y.target->name();
  };
  auto cars = [](const CarrierBlock& x, const CarrierBlock& y) {
    if (x.name != y.name || !detail::same_named(x.sets.source, y.sets.source) ||
        x.sets.maps != y.sets.maps || x.sets.sets.size() != y.sets.sets.size())
      return false;
    for (std::size_t i = 0; i < x.sets.sets.size(); ++i)
      if (x.sets.sets[i].elements != y.sets.sets[i].elements)
        return false;
    return true;
  };
  auto nuls = [](const NullityBlock& x, const NullityBlock& y) {
    return x.name == y.name && detail::same_named(x.category, y.category) && x.nulls == y.nulls;
  };
  return a.version == b.version && a.model == b.model && cats(a.categories, b.categories) &&
         std::equal(a.functors.begin(), a.functors.end(), b.functors.begin(), b.functors.end(),
                    funs) &&
         std::equal(a.carriers.begin(), a.carriers.end(), b.carriers.begin(), b.carriers.end(),
                    cars) &&
         std::equal(a.nullities.begin(), a.nullities.end(), b.nullities.begin(),
                    b.nullities.end(), nuls) &&
         a.setup == b.setup;
}

/// Parses a spec file; every failure is a ParseError carrying the line and field.
inline SpecDocument parse_spec(const std::string& text) {
  try {
    return detail::SpecParser(text).parse();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(0, "document", e.what());
  }
}

inline std::string serialize_spec(const SpecDocument& d) {
  std::ostringstream out;
  out << "nullkan-spec " << d.version << "\n";
  if (d.model)
    out << "model " << *d.model << "\n";
  for (const auto& cp : d.categories) {
    const auto& C = *cp;
    out << "\ncategory " << C.name() << "\n";
    for (std::size_t a = 0; a < C.object_count(); ++a)
      out << "  object " << C.object_id(a) << "\n";
    for (std::size_t f = 0; f < C.morphism_count(); ++f)
      out << "  morphism " << C.morphism_id(f) << " " << C.object_id(C.dom(f)) << " "
          << C.object_id(C.cod(f)) << "\n";
    for (std::size_t a = 0; a < C.object_count(); ++a)
      if (C.identity(a) != npos)
        out << "  identity " << C.object_id(a) << " " << C.morphism_id(C.identity(a)) << "\n";
    // composites implied by the declared identities are left out
    for (std::size_t g = 0; g < C.morphism_count(); ++g)
      for (std::size_t f = 0; f < C.morphism_count(); ++f) {
        auto gf = C.compose(g, f);
        if (gf == npos || C.cod(f) != C.dom(g))
          continue;
        bool implied = (C.identity(C.dom(g)) == f && gf == g) ||
                       (C.identity(C.cod(f)) == g && gf == f);
        if (!implied)
          out << "  compose " << C.morphism_id(g) << " " << C.morphism_id(f) << " "
              << C.morphism_id(gf) << "\n";
      }
    out << "end\n";
  }
  for (const auto& F : d.functors) {
    out << "\nfunctor " << F.name << " " << F.source->name() << " " << F.target->name() << "\n";
    for (std::size_t a = 0; a < F.obj_map.size(); ++a)
      out << "  obj " << F.source->object_id(a) << " " << F.target->object_id(F.obj(a)) << "\n";
    for (std::size_t f = 0; f < F.mor_map.size(); ++f)
      out << "  mor " << F.source->morphism_id(f) << " " << F.target->morphism_id(F.mor(f))
          << "\n";
    out << "end\n";
  }
  for (const auto& c : d.carriers) {
    const auto& C = *c.sets.source;
    out << "\ncarriers " << c.name << " " << C.name() << "\n";
    for (std::size_t a = 0; a < C.object_count(); ++a) {
      out << "  set " << C.object_id(a);
      for (const auto& e : c.sets.set(a).elements)
        out << " " << e;
      out << "\n";
    }
    for (std::size_t f = 0; f < C.morphism_count(); ++f) {
      out << "  map " << C.morphism_id(f);
      for (auto v : c.sets.maps[f])
        out << " " << c.sets.set(C.cod(f)).elements[v];
      out << "\n";
    }
    out << "end\n";
  }
  for (const auto& n : d.nullities) {
    out << "\nnullity " << n.name << " " << n.category->name() << "\n";
    for (std::size_t a = 0; a < n.nulls.size(); ++a) {
      out << "  at " << n.category->object_id(a);
      for (const auto& s : n.nulls[a])
        out << " " << detail::subset_token(s);
      out << "\n";
    }
    out << "end\n";
  }
  if (d.setup) {
    const auto& s = *d.setup;
    out << "\nsetup " << s.name << "\n";
    for (const auto& [k, v] : std::vector<std::pair<const char*, const std::string*>>{
             {"B", &s.B}, {"I", &s.I}, {"M", &s.M}, {"j2", &s.j2}, {"j1", &s.j1}, {"pi", &s.pi},
             {"gamma", &s.gamma}, {"base", &s.base}})
      out << "  " << k << " " << *v << "\n";
    if (s.iota3_rstar)
      out << "  iota3_rstar " << (*s.iota3_rstar)[0] << " " << (*s.iota3_rstar)[1] << " "
          << (*s.iota3_rstar)[2] << "\n";
    out << "end\n";
  }
  return out.str();
}

/// Resolves a document to the setup it describes.
inline Setup to_setup(const SpecDocument& d) {
  if (d.model)
    return builtin_model(*d.model);
  if (!d.setup)
    throw InputError("missing setup block");
  const auto& b = *d.setup;
  auto cat = [&](const std::string& id) {
    for (const auto& c : d.categories)
      if (c->name() == id)
        return c;
    throw InputError("setup: dangling reference to category '" + id + "'");
  };
  auto fun = [&](const std::string& id) {
    for (const auto& f : d.functors)
      if (f.name == id)
        return f;
    throw InputError("setup: dangling reference to functor '" + id + "'");
  };
  Setup s;
  s.name = b.name;
  s.B = cat(b.B);
  s.I = cat(b.I);
  s.M = cat(b.M);
  s.j2 = fun(b.j2);
  s.j1 = fun(b.j1);
  s.pi = fun(b.pi);
  for (const auto& c : d.carriers)
    if (c.name == b.gamma)
      s.gamma = c.sets;
  if (!s.gamma.source)
    throw InputError("setup: dangling reference to carriers '" + b.gamma + "'");
  if (b.iota3_rstar)
    s.iota3_rstar = std::array<FunctorData, 3>{fun((*b.iota3_rstar)[0]),
                                               fun((*b.iota3_rstar)[1]),
                                               fun((*b.iota3_rstar)[2])};
  auto check = check_a3(s);
  if (!same_category(s.gamma.source, s.M))
    check.add("shape", "gamma is not defined on M");
  if (!check.ok())
    throw InputError("setup: " + check.violations.front().rule + ": " +
                     check.violations.front().witness);
  const NullityBlock* base = nullptr;
  for (const auto& n : d.nullities)
    if (n.name == b.base)
      base = &n;
  if (!base)
    throw InputError("setup: dangling reference to nullity '" + b.base + "'");
  if (!same_category(base->category, s.B))
    throw InputError("setup: base nullity '" + b.base + "' is not indexed by B");
  auto gB = s.gamma_B();
  for (std::size_t x = 0; x < s.B->object_count(); ++x) {
    SubsetFamily fam;
    for (const auto& sub : base->nulls[x]) {
      Subset m = 0;
      for (const auto& e : sub) {
        try {
          m |= Subset{1} << gB.set(x).index(e);
        } catch (const InputError&) {
          throw InputError("nullity " + b.base + " at " + s.B->object_id(x) +
                           ": dangling reference to element '" + e + "'");
        }
      }
      fam.insert(m);
    }
    s.base.push_back(fam);
  }
  return s;
}

/// Spells a setup out as a full document, without model shortcuts.
inline SpecDocument export_setup(const Setup& s) {
  SpecDocument d;
  auto add_cat = [&](const CatRef& c) {
    for (const auto& e : d.categories) {
      if (e->name() != c->name())
        continue;
      if (!same_category(e, c))
        throw InputError("export: two different categories named '" + c->name() + "'");
      return;
    }
    d.categories.push_back(c);
  };
  add_cat(s.B);
  add_cat(s.I);
  add_cat(s.M);
  auto add_fun = [&](FunctorData F, const std::string& role) {
    F.name = role;
    d.functors.push_back(std::move(F));
  };
  add_fun(s.j2, "j2");
  add_fun(s.j1, "j1");
  add_fun(s.pi, "pi");
  SetupBlock b{s.name, s.B->name(), s.I->name(), s.M->name(), "j2", "j1", "pi",
               "gamma", "base", std::nullopt};
  if (s.iota3_rstar) {
    const char* names[] = {"rstar_I", "rstar_J", "rstar_K"};
    for (int i = 0; i < 3; ++i) {
      add_cat((*s.iota3_rstar)[i].source);
      add_cat((*s.iota3_rstar)[i].target);
      add_fun((*s.iota3_rstar)[i], names[i]);
    }
    b.iota3_rstar = std::array<std::string, 3>{names[0], names[1], names[2]};
  }
  d.carriers.push_back({"gamma", s.gamma});
  NullityBlock n{"base", s.B, {}};
  auto gB = s.gamma_B();
  for (std::size_t x = 0; x < s.B->object_count(); ++x) {
    std::vector<std::vector<std::string>> subs;
    for (auto m : s.base.at(x).members()) {
      std::vector<std::string> els;
      for (std::size_t i = 0; i < gB.set(x).size(); ++i)
        if (m & (Subset{1} << i))
          els.push_back(gB.set(x).elements[i]);
      subs.push_back(std::move(els));
    }
    n.nulls.push_back(std::move(subs));
  }
  d.nullities.push_back(std::move(n));
  d.setup = std::move(b);
  return d;
}

} // namespace nullkan
