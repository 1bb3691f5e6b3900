#pragma once

// Instance documents: JSON files declaring ambient objects, actions,
// precrossed modules, morphisms and squares, plus a task block. Loading
// validates every declaration; errors carry the path of the offending entry.

#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "../enumerate.hpp"

namespace peiffer::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Elements, objects, maps and actions as JSON

inline Json element_json(const FiniteGroup&, GroupElement x) { return x; }
inline Json element_json(const LieAlgebra&, const fp::Vector& v) { return v; }

inline GroupElement parse_element(const FiniteGroup& g, const Json& j)
{
  if (!j.is_number_integer())
    throw Error(ErrorKind::BadSpec, "group element must be an integer index");
  auto v = j.get<long long>();
  if (v < 0 || static_cast<std::size_t>(v) >= g.order())
    throw Error(ErrorKind::BadSpec, "element index " + std::to_string(v) + " out of range");
  return static_cast<GroupElement>(v);
}

inline fp::Vector parse_element(const LieAlgebra& l, const Json& j)
{
  if (!j.is_array() || j.size() != l.dim())
    throw Error(ErrorKind::BadSpec,
                "Lie element must be an array of " + std::to_string(l.dim()) + " coordinates");
  fp::Vector v;
  for (const auto& c : j) {
    if (!c.is_number_integer())
      throw Error(ErrorKind::BadSpec, "coordinate must be an integer");
    v.push_back(fp::reduce(c.get<long long>(), l.prime()));
  }
  return v;
}

template <Ambient A>
Json elements_json(const A& a, const std::vector<Element<A>>& xs)
{
  Json out = Json::array();
  for (const auto& x : xs)
    out.push_back(element_json(a, x));
  return out;
}

inline Json object_json(const FiniteGroup& g)
{
  Json rows = Json::array();
  for (GroupElement a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (GroupElement b = 0; b < g.order(); ++b)
      row.push_back(g.mul(a, b));
    rows.push_back(std::move(row));
  }
  return Json{{"kind", "group"}, {"table", std::move(rows)}};
}

inline Json object_json(const LieAlgebra& l)
{
  Json t = Json::array();
  for (std::size_t i = 0; i < l.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < l.dim(); ++j)
      row.push_back(l.structure(i, j));
    t.push_back(std::move(row));
  }
  return Json{{"kind", "lie"}, {"prime", l.prime()}, {"structure", std::move(t)}};
}

inline Json map_json(const GroupHom& f) { return Json{{"map", f.map}}; }
inline Json map_json(const LieHom& f) { return Json{{"matrix", f.matrix}}; }

inline Json action_body(const GroupAction& a)
{
  Json rows = Json::array();
  for (GroupElement b = 0; b < a.actor.order(); ++b) {
    Json row = Json::array();
    for (GroupElement x = 0; x < a.acted.order(); ++x)
      row.push_back(a(b, x));
    rows.push_back(std::move(row));
  }
  return Json{{"table", std::move(rows)}};
}

inline Json action_body(const LieAction& a) { return Json{{"derivations", a.derivations}}; }

/// Generators of a subobject, usable as a {"generators": [...]} spec.
template <Ambient A>
Json subobject_json(const Sub<A>& s)
{
  const auto& gens = small_generating_set(s);
  return Json{{"generators", elements_json(s.ambient, std::vector<Element<A>>(gens.begin(), gens.end()))}};
}

// ---------------------------------------------------------------------------
// Writer

/// Accumulates declarations; objects are deduplicated by identity.
template <Ambient A>
class DocumentWriter {
public:
  DocumentWriter()
  {
    doc_["theory"] = std::string(ambient_traits<A>::theory);
    for (const char* k : {"objects", "actions", "pxmods", "morphisms", "squares"})
      doc_[k] = Json::object();
  }

  std::string object(const A& a)
  {
    auto it = objects_.find(a.id());
    if (it != objects_.end())
      return it->second;
    std::string name = fresh("o");
    Json spec = object_json(a);
    if (!a.name().empty())
      spec["name"] = a.name();
    doc_["objects"][name] = std::move(spec);
    objects_.emplace(a.id(), name);
    return name;
  }

  std::string hom(const Hom<A>& f)
  {
    Json spec{{"from", object(f.domain)}, {"to", object(f.codomain)}};
    spec.update(map_json(f));
    std::string name = fresh("h");
    doc_["morphisms"][name] = std::move(spec);
    return name;
  }

  std::string action(const Action<A>& a)
  {
    Json spec{{"actor", object(a.actor)}, {"acted", object(a.acted)}};
    spec.update(action_body(a));
    std::string name = fresh("a");
    doc_["actions"][name] = std::move(spec);
    return name;
  }

  std::string pxmod(const PrecrossedModule<A>& p)
  {
    std::string d = hom(p.boundary);
    std::string xi = action(p.action);
    std::string name = fresh("P");
    doc_["pxmods"][name] = Json{{"X", object(p.X)}, {"B", object(p.B)}, {"boundary", d},
                                {"action", xi}};
    return name;
  }

  std::string morphism(const PXMorphism<A>& f, const std::string& src, const std::string& tgt)
  {
    Json spec{{"from", src}, {"to", tgt}};
    spec.update(map_json(f.map));
    std::string name = fresh("f");
    doc_["morphisms"][name] = std::move(spec);
    return name;
  }

  std::string morphism(const PXMorphism<A>& f)
  {
    return morphism(f, pxmod(f.source), pxmod(f.target));
  }

  std::string square(const DoubleExtension<A>& s)
  {
    std::string x = pxmod(s.top());
    std::string y = pxmod(s.f.target());
    std::string z = pxmod(s.g.target());
    std::string w = pxmod(s.j.target());
    Json spec{{"f", morphism(s.f.morphism, x, y)}, {"g", morphism(s.g.morphism, x, z)},
              {"h", morphism(s.h.morphism, z, w)}, {"j", morphism(s.j.morphism, y, w)}};
    std::string name = fresh("S");
    doc_["squares"][name] = std::move(spec);
    return name;
  }

  void task(Json t) { doc_["task"] = std::move(t); }

  const Json& document() const { return doc_; }

private:
  std::string fresh(const std::string& prefix) { return prefix + std::to_string(counter_++); }

  Json doc_;
  std::map<const void*, std::string> objects_;
  std::size_t counter_ = 0;
};

// ---------------------------------------------------------------------------
// Loader

template <Ambient A>
struct Document {
  std::map<std::string, A> objects;
  std::map<std::string, Hom<A>> homs;
  std::map<std::string, Action<A>> actions;
  std::map<std::string, PrecrossedModule<A>> pxmods;
  std::map<std::string, PXMorphism<A>> morphisms;
  std::map<std::string, DoubleExtension<A>> squares;
  Json task = Json::object();

  const A& object(const std::string& name) const { return lookup(objects, name, "object"); }
  const Hom<A>& hom(const std::string& name) const { return lookup(homs, name, "map"); }
  const Action<A>& action(const std::string& name) const { return lookup(actions, name, "action"); }
  const PrecrossedModule<A>& pxmod(const std::string& name) const
  { return lookup(pxmods, name, "precrossed module"); }
  const PXMorphism<A>& morphism(const std::string& name) const
  { return lookup(morphisms, name, "morphism of precrossed modules"); }
  const DoubleExtension<A>& square(const std::string& name) const
  { return lookup(squares, name, "square"); }

private:
  template <class M>
  static const typename M::mapped_type& lookup(const M& m, const std::string& name,
                                               const char* what)
  {
    auto it = m.find(name);
    if (it == m.end())
      throw Error(ErrorKind::BadSpec, std::string("undeclared ") + what + " '" + name + "'");
    return it->second;
  }
};

using AnyDocument = std::variant<Document<FiniteGroup>, Document<LieAlgebra>>;

namespace detail {

/// Strips the "Kind: " prefix that Error adds to its message.
inline std::string bare_message(const Error& e)
{
  std::string m = e.what();
  auto k = std::string(to_string(e.kind())) + ": ";
  return m.rfind(k, 0) == 0 ? m.substr(k.size()) : m;
}

/// Runs fn, prefixing any error with the JSON path being processed.
template <class Fn>
auto at(const std::string& path, Fn&& fn) -> decltype(fn())
{
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + bare_message(e), e.witness());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadSpec, path + ": " + e.what());
  }
}

inline const Json& require(const Json& spec, const char* key)
{
  if (!spec.is_object() || !spec.contains(key))
    throw Error(ErrorKind::BadSpec, std::string("missing key '") + key + "'");
  return spec.at(key);
}

inline std::vector<std::vector<long long>> int_rows(const Json& j)
{
  return j.get<std::vector<std::vector<long long>>>();
}

inline FiniteGroup build_object(const Document<FiniteGroup>& doc, const Json& spec,
                                const std::string& key)
{
  std::string name = spec.value("name", key);
  if (spec.contains("table"))
    return FiniteGroup::from_table(int_rows(spec.at("table")), name);
  if (spec.contains("permutations"))
    return FiniteGroup::from_permutations(int_rows(spec.at("permutations")), name);
  if (spec.contains("catalog"))
    return catalog_group(spec.at("catalog").get<std::string>());
  if (spec.contains("cyclic"))
    return cyclic_group(spec.at("cyclic").get<std::size_t>());
  if (spec.contains("product")) {
    auto parts = spec.at("product").get<std::vector<std::string>>();
    if (parts.size() != 2)
      throw Error(ErrorKind::BadSpec, "product takes two objects");
    return direct_product(doc.object(parts[0]), doc.object(parts[1])).object;
  }
  throw Error(ErrorKind::BadSpec, "group needs one of table, permutations, catalog, cyclic, product");
}

inline LieAlgebra build_object(const Document<LieAlgebra>& doc, const Json& spec,
                               const std::string& key)
{
  if (spec.contains("product")) {
    auto parts = spec.at("product").get<std::vector<std::string>>();
    if (parts.size() != 2)
      throw Error(ErrorKind::BadSpec, "product takes two objects");
    return direct_product(doc.object(parts[0]), doc.object(parts[1])).object;
  }
  long long p = require(spec, "prime").get<long long>();
  if (!is_supported_prime(p))
    throw Error(ErrorKind::BadSpec, "prime must be one of 2, 3, 5, 7; got " + std::to_string(p));
  std::string name = spec.value("name", key);
  if (spec.contains("structure"))
    return LieAlgebra::from_structure(
        p, spec.at("structure").get<std::vector<std::vector<std::vector<long long>>>>(), name);
  if (spec.contains("catalog"))
    return catalog_lie(static_cast<int>(p), spec.at("catalog").get<std::string>());
  if (spec.contains("abelian"))
    return abelian_lie_algebra(static_cast<int>(p), spec.at("abelian").get<std::size_t>());
  throw Error(ErrorKind::BadSpec, "Lie algebra needs one of structure, catalog, abelian");
}

inline GroupHom build_map(const FiniteGroup& dom, const FiniteGroup& cod, const Json& spec)
{
  auto values = require(spec, "map").get<std::vector<long long>>();
  std::vector<GroupElement> map;
  for (long long v : values) {
    if (v < 0)
      throw Error(ErrorKind::BadSpec, "map value out of range");
    map.push_back(static_cast<GroupElement>(v));
  }
  return make_hom(dom, cod, std::move(map));
}

inline LieHom build_map(const LieAlgebra& dom, const LieAlgebra& cod, const Json& spec)
{
  auto m = int_rows(require(spec, "matrix"));
  if (m.size() != cod.dim())
    throw Error(ErrorKind::BadSpec, "matrix needs one row per codomain basis vector");
  fp::Matrix mat;
  for (auto& r : m) {
    if (r.size() != dom.dim())
      throw Error(ErrorKind::BadSpec, "matrix needs one column per domain basis vector");
    mat.emplace_back(r.begin(), r.end());
  }
  return make_hom(dom, cod, std::move(mat));
}

template <Ambient A>
Hom<A> build_hom(const Document<A>& doc, const Json& spec)
{
  if (spec.is_string())
    return doc.hom(spec.get<std::string>());
  if (spec.contains("compose")) {
    auto names = spec.at("compose").get<std::vector<std::string>>();
    if (names.empty())
      throw Error(ErrorKind::BadSpec, "empty composite");
    Hom<A> h = doc.hom(names.back());
    for (auto it = std::next(names.rbegin()); it != names.rend(); ++it)
      h = compose(doc.hom(*it), h);
    return h;
  }
  const A& dom = doc.object(require(spec, "from").template get<std::string>());
  const A& cod = doc.object(require(spec, "to").template get<std::string>());
  if (spec.value("zero", false))
    return zero_hom(dom, cod);
  if (spec.value("identity", false)) {
    if (!same_object(dom, cod))
      throw Error(ErrorKind::AmbientMismatch, "identity between different objects");
    return identity_hom(dom);
  }
  return build_map(dom, cod, spec);
}

inline GroupAction build_action_table(const FiniteGroup& b, const FiniteGroup& x, const Json& spec)
{
  auto rows = int_rows(require(spec, "table"));
  if (rows.size() != b.order())
    throw Error(ErrorKind::BadSpec, "action table needs one row per element of the actor");
  std::vector<GroupElement> table;
  for (const auto& r : rows) {
    if (r.size() != x.order())
      throw Error(ErrorKind::BadSpec, "action row needs one entry per element of X");
    for (long long v : r) {
      if (v < 0)
        throw Error(ErrorKind::BadSpec, "action value out of range");
      table.push_back(static_cast<GroupElement>(v));
    }
  }
  return make_action(b, x, std::move(table));
}

inline LieAction build_action_table(const LieAlgebra& b, const LieAlgebra& x, const Json& spec)
{
  auto raw = require(spec, "derivations").get<std::vector<std::vector<std::vector<long long>>>>();
  std::vector<fp::Matrix> ds;
  for (const auto& m : raw) {
    fp::Matrix d;
    for (const auto& r : m)
      d.emplace_back(r.begin(), r.end());
    ds.push_back(std::move(d));
  }
  return make_action(b, x, std::move(ds));
}

template <Ambient A>
Action<A> build_action(const Document<A>& doc, const Json& spec)
{
  if (spec.is_string())
    return doc.action(spec.get<std::string>());
  if (spec.contains("conjugation"))
    return conjugation_action(doc.object(spec.at("conjugation").template get<std::string>()));
  if (spec.contains("pullback")) {
    Action<A> xi = build_action(doc, spec.at("pullback"));
    return pullback_action(xi, build_hom(doc, require(spec, "along")));
  }
  const A& b = doc.object(require(spec, "actor").template get<std::string>());
  const A& x = doc.object(require(spec, "acted").template get<std::string>());
  if (spec.value("trivial", false))
    return trivial_action(b, x);
  return build_action_table(b, x, spec);
}

} // namespace detail

/// Subobject of `a` from a spec: "whole", "trivial", {"generators": [...],
/// "normal": bool} or {"elements": [...]} (must already be closed).
template <Ambient A>
Sub<A> parse_subobject(const A& a, const Json& spec)
{
  if (spec.is_string()) {
    auto s = spec.get<std::string>();
    if (s == "whole")
      return whole(a);
    if (s == "trivial")
      return trivial_subobject(a);
    throw Error(ErrorKind::BadSpec, "unknown subobject keyword '" + s + "'");
  }
  std::vector<Element<A>> gens;
  const Json& list = spec.contains("elements") ? spec.at("elements") : detail::require(spec, "generators");
  for (const auto& e : list)
    gens.push_back(parse_element(a, e));
  Sub<A> s = generated_subobject(a, std::span<const Element<A>>(gens), spec.value("normal", false));
  if (spec.contains("elements") && cardinality(s) != gens.size())
    throw Error(ErrorKind::BadSpec, "listed elements are not closed under the operation");
  return s;
}

/// Submodule of p: a subobject spec closed under the B-action, or
/// {"kernel": morphism}.
template <Ambient A>
PXSubmodule<A> parse_submodule(const Document<A>& doc, const PrecrossedModule<A>& p,
                               const Json& spec)
{
  if (spec.is_object() && spec.contains("kernel")) {
    const auto& f = doc.morphism(spec.at("kernel").template get<std::string>());
    if (!same_object(f.source.X, p.X))
      throw Error(ErrorKind::AmbientMismatch, "kernel of a morphism out of a different module");
    return kernel(f);
  }
  Sub<A> s = parse_subobject(p.X, spec);
  bool normal = spec.is_object() && spec.value("normal", false);
  s = stable_closure(p.action, s, normal);
  return PXSubmodule<A>{p, s, is_normal(s)};
}

namespace detail {

template <Ambient A>
void load_pxmod(Document<A>& doc, const std::string& name, const Json& spec)
{
  if (spec.contains("quotient")) {
    const auto& p = doc.pxmod(spec.at("quotient").template get<std::string>());
    auto n = parse_submodule(doc, p, require(spec, "by"));
    auto q = quotient_pxmod(p, n.carrier);
    doc.pxmods.insert_or_assign(name, q.object);
    doc.morphisms.insert_or_assign(name + ".projection", q.projection);
    return;
  }
  if (spec.contains("submodule")) {
    const auto& p = doc.pxmod(spec.at("submodule").template get<std::string>());
    auto m = parse_submodule(doc, p, require(spec, "of"));
    auto e = submodule_object(m);
    doc.pxmods.insert_or_assign(name, e.object);
    doc.morphisms.insert_or_assign(name + ".inclusion", e.inclusion);
    return;
  }
  const A& x = doc.object(require(spec, "X").template get<std::string>());
  const A& b = doc.object(require(spec, "B").template get<std::string>());
  auto need_equal = [&](const char* what) {
    if (!same_object(x, b))
      throw Error(ErrorKind::AmbientMismatch, std::string(what) + " needs X = B");
  };
  const Json& d = require(spec, "boundary");
  Hom<A> boundary = zero_hom(x, b);
  if (d == "identity") {
    need_equal("identity boundary");
    boundary = identity_hom(x);
  } else if (d != "zero") {
    boundary = build_hom(doc, d);
  }
  const Json& a = require(spec, "action");
  Action<A> xi = trivial_action(b, x);
  if (a == "conjugation") {
    need_equal("conjugation action");
    xi = conjugation_action(x);
  } else if (a != "trivial") {
    xi = build_action(doc, a);
  }
  if (!same_object(boundary.domain, x) || !same_object(boundary.codomain, b))
    throw Error(ErrorKind::AmbientMismatch, "boundary does not go from X to B");
  if (!same_object(xi.acted, x) || !same_object(xi.actor, b))
    throw Error(ErrorKind::AmbientMismatch, "action is not an action of B on X");
  doc.pxmods.insert_or_assign(name, make_pxmod<A>(boundary, xi));
}

template <Ambient A>
bool is_pxmod_morphism(const Document<A>& doc, const Json& spec)
{
  if (!spec.is_object() || !spec.contains("from"))
    return false;
  return doc.pxmods.count(spec.at("from").template get<std::string>()) > 0;
}

template <Ambient A>
void load_pxmorphism(Document<A>& doc, const std::string& name, const Json& spec)
{
  const auto& s = doc.pxmod(require(spec, "from").template get<std::string>());
  const auto& t = doc.pxmod(require(spec, "to").template get<std::string>());
  Hom<A> f = spec.value("identity", false) ? identity_hom(s.X)
             : spec.contains("hom")        ? build_hom(doc, spec.at("hom"))
                                           : build_map(s.X, t.X, spec);
  doc.morphisms.insert_or_assign(name, make_pxmorphism(s, t, f));
}

template <Ambient A>
Document<A> load_as(const Json& j)
{
  Document<A> doc;
  auto section = [&](const char* key) -> const Json& {
    static const Json empty = Json::object();
    if (!j.contains(key))
      return empty;
    if (!j.at(key).is_object())
      throw Error(ErrorKind::BadSpec, std::string(key) + " must be an object");
    return j.at(key);
  };
  for (const auto& [name, spec] : section("objects").items())
    at("objects." + name, [&] { doc.objects.insert_or_assign(name, build_object(doc, spec, name)); });
  const Json& morphisms = section("morphisms");
  for (const auto& [name, spec] : morphisms.items()) {
    const std::string from = spec.is_object() ? spec.value("from", "") : "";
    bool between_objects = !spec.is_object() || spec.contains("compose") ||
                           doc.objects.count(from) > 0;
    if (between_objects)
      at("morphisms." + name, [&] { doc.homs.insert_or_assign(name, build_hom(doc, spec)); });
  }
  for (const auto& [name, spec] : section("actions").items())
    at("actions." + name, [&] { doc.actions.insert_or_assign(name, build_action(doc, spec)); });
  for (const auto& [name, spec] : section("pxmods").items())
    at("pxmods." + name, [&] { load_pxmod(doc, name, spec); });
  for (const auto& [name, spec] : morphisms.items()) {
    if (doc.homs.count(name))
      continue;
    at("morphisms." + name, [&] {
      if (!is_pxmod_morphism(doc, spec))
        throw Error(ErrorKind::BadSpec, "'from' names neither an object nor a precrossed module");
      load_pxmorphism(doc, name, spec);
    });
  }
  for (const auto& [name, spec] : section("squares").items())
    at("squares." + name, [&] {
      auto ext = [&](const char* k) {
        return make_extension(doc.morphism(require(spec, k).template get<std::string>()));
      };
      doc.squares.insert_or_assign(
          name, make_double_extension(ext("f"), ext("g"), ext("h"), ext("j")));
    });
  if (j.contains("task"))
    doc.task = j.at("task");
  return doc;
}

inline std::string theory_of(const Json& j)
{
  std::string theory = j.value("theory", "");
  if (j.contains("objects") && j.at("objects").is_object())
    for (const auto& [name, spec] : j.at("objects").items()) {
      std::string kind = spec.value("kind", "");
      if (kind.empty())
        kind = spec.contains("prime") ? "lie" : "group";
      if (kind != "group" && kind != "lie")
        throw Error(ErrorKind::BadSpec, "objects." + name + ": kind must be group or lie");
      if (!theory.empty() && theory != kind)
        throw Error(ErrorKind::BadSpec, "objects." + name + ": mixes groups and Lie algebras");
      theory = kind;
    }
  if (theory.empty())
    throw Error(ErrorKind::BadSpec, "document declares no objects");
  return theory;
}

} // namespace detail

inline AnyDocument load_document(const Json& j)
{
  if (!j.is_object())
    throw Error(ErrorKind::BadSpec, "document must be a JSON object");
  if (detail::theory_of(j) == "group")
    return detail::load_as<FiniteGroup>(j);
  return detail::load_as<LieAlgebra>(j);
}

inline AnyDocument parse_document(const std::string& text)
{
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::BadSpec, std::string("malformed JSON: ") + e.what());
  }
  return load_document(j);
}

} // namespace peiffer::io
