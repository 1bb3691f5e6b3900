#pragma once

// The operations behind the command-line subcommands, run against a loaded
// instance document. Each returns a Report; a false verdict means the
// checked property fails for the given instance.

#include <chrono>
#include <string>

#include "report.hpp"

namespace peiffer::io {

struct TaskOptions {
  /// Include carriers (element lists) in addition to orders and fingerprints.
  bool elements = false;
};

inline const std::vector<std::string>& task_names()
{
  static const std::vector<std::string> names{
      "validate",     "crossed",       "peiffer",     "reflect",           "central",
      "central-crosscheck", "centralize", "trivial",   "double",            "double-central",
      "double-centralize",  "galois-group", "hopf2",   "hopf3",             "five-term",
      "relative-commutator"};
  return names;
}

namespace detail {

inline std::string arg(const Json& task, const char* key)
{
  if (!task.contains(key) || !task.at(key).is_string())
    throw Error(ErrorKind::BadSpec, std::string("task.") + key + " must name a declaration");
  return task.at(key).get<std::string>();
}

inline const Json& sub_arg(const Json& task, const char* key)
{
  static const Json whole_spec = "whole";
  return task.contains(key) ? task.at(key) : whole_spec;
}

template <Ambient A>
Extension<A> extension_arg(const Document<A>& doc, const Json& task)
{
  const char* key = task.contains("extension") ? "extension" : "presentation";
  return make_extension(doc.morphism(arg(task, key)));
}

template <Ambient A>
PXSubmodule<A> submodule_arg(const Document<A>& doc, const PrecrossedModule<A>& p,
                             const Json& task, const char* key)
{
  return at("task." + std::string(key), [&] { return parse_submodule(doc, p, sub_arg(task, key)); });
}

template <Ambient A>
Json describe_pxsub(const PXSubmodule<A>& m, const TaskOptions& o)
{
  Json j = describe(m.carrier, o.elements);
  j["normal"] = m.normal_in_parent;
  return j;
}

template <Ambient A>
Json describe_subquotient(const Subquotient<A>& q, const TaskOptions& o)
{
  return Json{{"numerator", describe(q.numerator, o.elements)},
              {"denominator", describe(q.denominator, o.elements)},
              {"quotient", describe_object(q.object())},
              {"closure_proper", q.closure_proper}};
}

template <Ambient A>
void run_on(Report& r, const std::string& op, const Document<A>& doc, const TaskOptions& o)
{
  const Json& t = doc.task;
  if (op == "validate") {
    r.verdict = true;
    r.result["objects"] = doc.objects.size();
    r.result["actions"] = doc.actions.size();
    r.result["pxmods"] = Json::object();
    for (const auto& [name, p] : doc.pxmods)
      r.result["pxmods"][name] = describe_pxmod(p);
    r.result["morphisms"] = doc.homs.size() + doc.morphisms.size();
    r.result["squares"] = doc.squares.size();
    return;
  }
  if (op == "crossed") {
    const auto& p = doc.pxmod(arg(t, "pxmod"));
    auto v = is_crossed(p);
    r.verdict = v.holds;
    r.result["pxmod"] = describe_pxmod(p);
    if (!v.holds)
      r.witness = v.witness;
    return;
  }
  if (op == "peiffer") {
    const auto& p = doc.pxmod(arg(t, "pxmod"));
    auto m = submodule_arg(doc, p, t, "M");
    auto n = submodule_arg(doc, p, t, "N");
    auto c = peiffer_commutator(m, n);
    r.result["M"] = describe_pxsub(m, o);
    r.result["N"] = describe_pxsub(n, o);
    r.result["commutator"] = describe_pxsub(c, o);
    r.result["trivial"] = is_trivial(c.carrier);
    if (!is_trivial(c.carrier))
      r.witness = peiffer_witness(p, m.carrier, n.carrier).value_or("");
    if (!c.normal_in_parent)
      r.caveats.push_back("commutator is not normal in X");
    return;
  }
  if (op == "reflect") {
    const auto& p = doc.pxmod(arg(t, "pxmod"));
    Sub<A> all = whole(p.X);
    auto pc = peiffer_commutator(p, all, all);
    auto q = reflect_to_xmod(p);
    auto corr = reflection_correspondence(p);
    r.result["peiffer"] = describe_pxsub(pc, o);
    r.result["reflection"] = describe_pxmod(q.object);
    r.result["unit_is_iso"] = is_isomorphism(q.projection);
    r.result["crossed_after"] = is_crossed(q.object).holds;
    r.result["graph_correspondence"] = corr.holds;
    if (q.closure_proper)
      r.caveats.push_back("normal closure was proper");
    r.verdict = corr.holds;
    if (!corr.holds)
      r.witness = corr.witness;
    return;
  }
  if (op == "central") {
    auto f = extension_arg(doc, t);
    auto c = is_central(f);
    r.verdict = c.central;
    r.result["kernel"] = describe_pxsub(f.kernel, o);
    r.result["obstruction"] = describe_pxsub(c.obstruction, o);
    if (!c.central)
      r.witness = c.witness;
    if (t.contains("along")) {
      auto g = make_extension(doc.morphism(arg(t, "along")));
      auto pb = pullback_extension(f, g);
      auto cp = is_central(pb);
      r.result["pullback"] = {{"object", describe_pxmod(pb.source())},
                              {"central", cp.central},
                              {"obstruction", describe_pxsub(cp.obstruction, o)}};
    }
    return;
  }
  if (op == "central-crosscheck") {
    auto f = extension_arg(doc, t);
    auto a = is_central(f);
    auto b = is_central_via_huq(f);
    r.verdict = a.central == b.central;
    r.result["central"] = a.central;
    r.result["peiffer_route"] = {{"central", a.central},
                                 {"obstruction", describe_pxsub(a.obstruction, o)}};
    r.result["huq_route"] = {{"central", b.central},
                             {"with_kd", describe(b.with_kd, o.elements)},
                             {"with_kc", describe(b.with_kc, o.elements)}};
    if (!*r.verdict)
      r.witness = "routes disagree";
    return;
  }
  if (op == "centralize") {
    auto f = extension_arg(doc, t);
    auto c = centralize(f);
    auto obstruction = is_central(f).obstruction;
    r.result["obstruction"] = describe_pxsub(obstruction, o);
    r.result["centralized"] = describe_pxmod(c.extension.source());
    r.result["quotient_is_iso"] = is_isomorphism(c.quotient);
    r.result["central_after"] = is_central(c.extension).central;
    if (c.closure_proper)
      r.caveats.push_back("normal closure was proper");
    return;
  }
  if (op == "trivial") {
    auto f = extension_arg(doc, t);
    auto tr = is_trivial_extension(f);
    r.verdict = tr.trivial;
    r.result["domain_order"] = tr.domain_size;
    r.result["pullback_order"] = tr.pullback_size;
    r.result["comparison_injective"] = tr.comparison_injective;
    r.result["central"] = is_central(f).central;
    if (!tr.trivial)
      r.witness = tr.comparison_injective ? "comparison map is not onto"
                                          : "comparison map is not injective";
    return;
  }
  auto square_arg = [&]() -> DoubleExtension<A> {
    if (t.contains("square"))
      return doc.square(arg(t, "square"));
    auto ext = [&](const char* k) { return make_extension(doc.morphism(arg(t, k))); };
    return make_double_extension(ext("f"), ext("g"), ext("h"), ext("j"));
  };
  if (op == "double") {
    try {
      auto s = square_arg();
      r.verdict = true;
      r.result["top"] = describe_pxmod(s.top());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotDouble && e.kind() != ErrorKind::NotCommuting)
        throw;
      r.verdict = false;
      r.result["reason"] = std::string(to_string(e.kind()));
      r.witness = e.witness().empty() ? Json(e.what()) : Json(e.witness());
    }
    return;
  }
  if (op == "double-central") {
    auto s = square_arg();
    auto c = is_double_central(s);
    r.verdict = c.central;
    r.result["meet_obstruction"] = describe_pxsub(c.meet_obstruction, o);
    r.result["kernels_obstruction"] = describe_pxsub(c.kernels_obstruction, o);
    if (!c.central)
      r.witness = c.witness;
    return;
  }
  if (op == "double-centralize") {
    auto s = square_arg();
    auto dc = double_centralize(s);
    r.result["J"] = describe(dc.j, o.elements);
    r.result["top"] = describe_pxmod(dc.square.top());
    r.result["quotient_is_iso"] = is_isomorphism(dc.quotient);
    r.result["double_central_after"] = is_double_central(dc.square).central;
    if (dc.closure_proper)
      r.caveats.push_back("normal closure was proper");
    return;
  }
  if (op == "galois-group") {
    auto f = extension_arg(doc, t);
    auto g = galois_group(f);
    r.result["galois_group"] = describe(g.value.numerator, o.elements);
    return;
  }
  if (op == "hopf2" || op == "hopf3") {
    auto h = op == "hopf2" ? hopf_h2(extension_arg(doc, t)) : hopf_h3(square_arg());
    r.result = describe_subquotient(h.value, o);
    r.result["fingerprint"] = h.fingerprint;
    r.caveats.push_back(h.caveat);
    if (h.value.closure_proper)
      r.caveats.push_back("normal closure was proper");
    return;
  }
  if (op == "five-term") {
    if (!t.contains("ses") || !t.at("ses").is_object())
      throw Error(ErrorKind::BadSpec, "task.ses must be an object with f and g");
    const auto& f = doc.morphism(arg(t.at("ses"), "f"));
    const auto& g = doc.morphism(arg(t.at("ses"), "g"));
    auto p = make_extension(doc.morphism(arg(t, "presentation")));
    auto s = five_term(f, g, p);
    Json nodes = Json::array();
    for (const auto& n : s.nodes)
      nodes.push_back(describe_object(n.object()));
    r.result["nodes"] = std::move(nodes);
    r.result["well_defined"] = s.well_defined;
    r.result["composites_zero"] = s.composites_zero;
    r.result["exact_at_1_2"] = s.exact_at_1_2;
    r.result["exact_at_3"] = s.exact_at_3;
    r.result["exact_at_4"] = s.exact_at_4;
    r.result["exact_at_5"] = s.exact_at_5;
    r.verdict = s.holds();
    r.caveats.push_back(kProjectivityCaveat);
    return;
  }
  if (op == "relative-commutator") {
    const auto& p = doc.pxmod(arg(t, "pxmod"));
    auto h = submodule_arg(doc, p, t, "H");
    auto k = submodule_arg(doc, p, t, "K");
    auto rc = relative_commutator(p, h, k);
    r.result["commutator"] = describe_pxsub(rc.value, o);
    r.result["agrees_with_peiffer"] = rc.agrees_with_peiffer;
    r.verdict = rc.agrees_with_peiffer;
    if (!rc.agrees_with_peiffer)
      r.witness = "normal closure of <H,K> differs from [H,K]";
    return;
  }
  throw Error(ErrorKind::BadSpec, "unknown task '" + op + "'");
}

} // namespace detail

/// Runs `op` on the document; the timing covers the operation only.
inline Report run_task(const std::string& op, const AnyDocument& doc, const TaskOptions& o = {})
{
  Report r;
  r.task = op;
  auto start = std::chrono::steady_clock::now();
  std::visit(
      [&](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        r.theory = std::is_same_v<D, Document<FiniteGroup>> ? "group" : "lie";
        detail::run_on(r, op, d, o);
      },
      doc);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

} // namespace peiffer::io
