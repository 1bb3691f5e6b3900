#pragma once

// Reports produced by the command-line tasks: verdict, computed values,
// witness, caveats and timing, as JSON or as indented text.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "document.hpp"

namespace peiffer::io {

struct Report {
  std::string task;
  std::string theory;
  std::optional<bool> verdict;
  /// Computed values: orders, fingerprints, flags, nested sections.
  Json result = Json::object();
  /// Counterexample for a failed verdict; null when there is none.
  Json witness;
  std::vector<std::string> caveats;
  std::optional<double> seconds;
};

inline bool operator==(const Report& a, const Report& b)
{
  return a.task == b.task && a.theory == b.theory && a.verdict == b.verdict &&
         a.result == b.result && a.witness == b.witness && a.caveats == b.caveats &&
         a.seconds == b.seconds;
}

inline Json to_json(const Report& r)
{
  Json j;
  j["task"] = r.task;
  j["theory"] = r.theory;
  if (r.verdict)
    j["verdict"] = *r.verdict;
  j["result"] = r.result;
  if (!r.witness.is_null())
    j["witness"] = r.witness;
  j["caveats"] = r.caveats;
  if (r.seconds)
    j["seconds"] = *r.seconds;
  return j;
}

inline Report report_from_json(const Json& j)
{
  Report r;
  r.task = j.at("task").get<std::string>();
  r.theory = j.at("theory").get<std::string>();
  if (j.contains("verdict"))
    r.verdict = j.at("verdict").get<bool>();
  r.result = j.at("result");
  if (j.contains("witness"))
    r.witness = j.at("witness");
  r.caveats = j.at("caveats").get<std::vector<std::string>>();
  if (j.contains("seconds"))
    r.seconds = j.at("seconds").get<double>();
  return r;
}

namespace detail {

inline void render_value(std::ostringstream& out, const std::string& key, const Json& v,
                         int depth)
{
  std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object()) {
    out << pad << key << ":\n";
    for (const auto& [k, x] : v.items())
      render_value(out, k, x, depth + 1);
  } else if (v.is_array() && !v.empty() && v.front().is_object()) {
    out << pad << key << ":\n";
    for (std::size_t i = 0; i < v.size(); ++i)
      render_value(out, "[" + std::to_string(i) + "]", v[i], depth + 1);
  } else {
    out << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

} // namespace detail

inline std::string render_text(const Json& j)
{
  std::ostringstream out;
  for (const auto& [k, v] : j.items())
    detail::render_value(out, k, v, 0);
  return out.str();
}

inline std::string render_text(const Report& r) { return render_text(to_json(r)); }

// ---------------------------------------------------------------------------
// Summaries of computed values

/// Order and fingerprint of a subobject; carrier only when asked.
template <class S>
Json describe(const S& s, bool elements)
{
  auto emb = as_object(s);
  Json j{{"order", size_of(s)}, {"fingerprint", fingerprint(emb.object)}};
  if (elements)
    j["carrier"] = render(s);
  return j;
}

template <Ambient A>
Json describe_object(const A& a)
{
  return Json{{"order", size_of(a)}, {"fingerprint", fingerprint(a)}};
}

template <Ambient A>
Json describe_pxmod(const PrecrossedModule<A>& p)
{
  return Json{{"X", describe_object(p.X)},
              {"B", describe_object(p.B)},
              {"boundary_image_order", size_of(image(p.boundary))}};
}

} // namespace peiffer::io
