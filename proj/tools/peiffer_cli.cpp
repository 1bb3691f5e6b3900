#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <peiffer/io/tasks.hpp>
#include <peiffer/verify.hpp>

namespace {

using peiffer::Error;
using peiffer::ErrorKind;
using peiffer::io::Json;

struct Options {
  std::string input;
  std::string format = "text";
  std::string out;
  std::string theory = "group";
  std::vector<std::string> properties;
  std::uint64_t seed = 1;
  std::optional<std::size_t> max_order;
  std::optional<std::size_t> max_dim;
  std::size_t threads = 1;
  std::size_t samples = 1000;
  std::size_t pair_cap = 20000;
  bool witness = false;
  bool no_timing = false;
};

const std::map<std::string, std::string>& descriptions()
{
  static const std::map<std::string, std::string> d{
      {"validate", "load a document and check every declaration"},
      {"crossed", "check the Peiffer identity for task.pxmod"},
      {"peiffer", "Peiffer commutator <M,N> of submodules task.M, task.N (default: whole)"},
      {"reflect", "reflect task.pxmod into crossed modules"},
      {"central", "centrality of task.extension, optionally pulled back along task.along"},
      {"central-crosscheck", "centrality by Peiffer commutator and by Huq commutator"},
      {"centralize", "universal central quotient of task.extension"},
      {"trivial", "whether task.extension is trivial (pullback of its reflection)"},
      {"double", "whether task.square (or task.f, g, h, j) is a double extension"},
      {"double-central", "double centrality of task.square"},
      {"double-centralize", "double central quotient of task.square"},
      {"galois-group", "Galois group of the central extension task.extension"},
      {"hopf2", "Hopf-type second homology of task.presentation"},
      {"hopf3", "Hopf-type third homology of the double presentation task.square"},
      {"five-term", "five-term sequence of task.ses with presentation task.presentation"},
      {"relative-commutator", "relative commutator [H,K] against the Peiffer commutator"},
  };
  return d;
}

std::string read_input(const std::string& path)
{
  if (path.empty())
    throw Error(ErrorKind::BadSpec, "--input is required");
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::BadSpec, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, const Json& j)
{
  std::string text = o.format == "json" ? j.dump(2) + "\n" : peiffer::io::render_text(j);
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f)
    throw Error(ErrorKind::BadSpec, "cannot write '" + o.out + "'");
  f << text;
}

void apply_caps(const Options& o)
{
  if (const char* env = std::getenv("PEIFFER_MAX_ORDER"))
    peiffer::limits::set_group_order_cap(std::stoull(env));
  if (o.max_order)
    peiffer::limits::set_group_order_cap(*o.max_order);
  if (o.max_dim)
    peiffer::limits::set_lie_dim_cap(*o.max_dim);
}

peiffer::VerifyOptions verify_options(const Options& o)
{
  peiffer::VerifyOptions v;
  if (o.max_order)
    v.bounds.max_order = *o.max_order;
  if (o.max_dim)
    v.bounds.max_dim = *o.max_dim;
  v.seed = o.seed;
  v.threads = o.threads;
  v.samples = o.samples;
  v.pair_cap = o.pair_cap;
  v.timing = !o.no_timing;
  return v;
}

int run_task(const std::string& op, const Options& o)
{
  apply_caps(o);
  auto doc = peiffer::io::parse_document(read_input(o.input));
  auto report = peiffer::io::run_task(op, doc, {o.witness});
  if (o.no_timing)
    report.seconds.reset();
  emit(o, to_json(report));
  return report.verdict.value_or(true) ? 0 : 1;
}

template <class A>
Json enumerate_counts(const peiffer::Bounds& b, bool labels)
{
  auto start = std::chrono::steady_clock::now();
  auto pxmods = peiffer::enumerate_pxmods<A>(b);
  peiffer::ExtensionEnumerator<A> ext(pxmods);
  std::size_t extensions = 0, squares = 0;
  for (std::size_t i = 0; i < pxmods.size(); ++i) {
    extensions += ext.refs_from(i).size();
    squares += peiffer::double_extensions_of(pxmods[i]).size();
  }
  Json j;
  j["pxmods"] = pxmods.size();
  j["extensions"] = extensions;
  j["double_extensions"] = squares;
  if (labels) {
    j["labels"] = Json::array();
    for (const auto& p : pxmods)
      j["labels"].push_back(p.label);
  }
  j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return j;
}

int run_enumerate(const Options& o)
{
  auto v = verify_options(o);
  Json j;
  j["theory"] = o.theory;
  if (o.theory == "lie") {
    j["bounds"] = {{"max_dim", v.bounds.max_dim}, {"primes", v.bounds.primes}};
    j.update(enumerate_counts<peiffer::LieAlgebra>(v.bounds, o.witness));
  } else {
    j["bounds"] = {{"max_order", v.bounds.max_order}};
    j.update(enumerate_counts<peiffer::FiniteGroup>(v.bounds, o.witness));
  }
  if (o.no_timing)
    j.erase("seconds");
  emit(o, j);
  return 0;
}

int run_verify(const Options& o)
{
  auto v = verify_options(o);
  std::vector<std::string> names = o.properties;
  if (names.empty() || (names.size() == 1 && names[0] == "all")) {
    names.clear();
    for (const auto& info : peiffer::property_catalog())
      names.emplace_back(info.name);
  }
  for (const auto& n : names)
    peiffer::property_info(n);
  Json reports = Json::array();
  bool ok = true;
  for (const auto& n : names) {
    auto r = peiffer::verify_property(n, o.theory, v);
    ok = ok && r.holds();
    reports.push_back(peiffer::to_json(r));
  }
  if (reports.size() == 1) {
    emit(o, reports[0]);
  } else if (o.format == "json") {
    emit(o, reports);
  } else {
    Json all;
    for (const auto& r : reports)
      all[r["property"].get<std::string>()] = r;
    emit(o, all);
  }
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Precrossed modules of finite groups and Lie algebras: Peiffer commutators, "
               "central extensions, Galois groups and property checks over enumerated instances.",
               "peiffer"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options o;
  app.add_option("-i,--input", o.input, "instance document (JSON); '-' reads stdin");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-o,--out", o.out, "write the report to this file");
  app.add_option("--seed", o.seed, "seed for sampled streams");
  app.add_option("--max-order", o.max_order,
                 "enumerate/verify: bound on |X||B|; otherwise the group order cap");
  app.add_option("--max-dim", o.max_dim,
                 "enumerate/verify: bound on dim X + dim B; otherwise the Lie dimension cap");
  app.add_option("--theory", o.theory, "enumerate/verify: group or lie")
      ->check(CLI::IsMember({"group", "lie"}));
  app.add_option("--property", o.properties, "verify: property name (repeatable, or 'all')");
  app.add_option("--threads", o.threads, "verify: worker threads")->check(CLI::PositiveNumber);
  app.add_option("--samples", o.samples, "verify: random quotients for image preservation");
  app.add_option("--pair-cap", o.pair_cap, "verify: exhaustive pair limit before sampling");
  app.add_flag("--witness", o.witness,
               "list elements of computed subobjects; enumerate: list instance labels");
  app.add_flag("--no-timing", o.no_timing, "omit timings so reports are byte-stable");

  for (const auto& [name, text] : descriptions())
    app.add_subcommand(name, text);
  app.add_subcommand("enumerate", "count precrossed modules, extensions and double extensions");
  app.add_subcommand("verify", "check a named property over the enumerated stream");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string op = app.get_subcommands().front()->get_name();
  try {
    if (op == "enumerate")
      return run_enumerate(o);
    if (op == "verify")
      return run_verify(o);
    return run_task(op, o);
  } catch (const Error& e) {
    std::cerr << "peiffer " << op << ": " << e.what() << "\n";
    if (!e.witness().empty())
      std::cerr << "  witness: " << e.witness() << "\n";
    if (o.format == "json")
      std::cout << Json{{"error", {{"kind", std::string(peiffer::to_string(e.kind()))},
                                   {"message", e.what()}}}}
                       .dump(2)
                << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "peiffer " << op << ": " << e.what() << "\n";
    return 2;
  }
}
