// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <peiffer/verify.hpp>

#include "oracle.hpp"

using namespace peiffer;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Runs {
  Outcome out;
  double seconds = 0;

  void add(const std::string& property, const std::string& theory, const VerifyOptions& opt,
           std::size_t min_instances = 1)
  {
    auto r = verify_property(property, theory, opt);
    seconds += r.seconds.value_or(0);
    bool ok = r.holds() && r.instances >= min_instances;
    out.pass = out.pass && ok;
    std::ostringstream s;
    if (!out.detail.empty())
      s << "; ";
    s << property << "[" << theory;
    if (theory == "group")
      s << " |X||B|<=" << opt.bounds.max_order;
    s << "] " << r.instances << " " << r.coverage << ", " << r.failed << " failed";
    if (r.first_failure)
      s << " (first: " << r.first_failure->label << ": " << r.first_failure->witness << ")";
    out.detail += s.str();
  }
};

VerifyOptions defaults()
{
  VerifyOptions o;
  o.timing = true;
  return o;
}

Outcome criterion1()
{
  Runs r;
  r.add("main-theorem-equivalence", "group", defaults(), 500);
  if (r.seconds > 300)
    r.out.pass = false;
  return r.out;
}

Outcome criterion2()
{
  Runs r;
  r.add("reflection-correspondence", "group", defaults());
  r.add("reflection-is-crossed", "group", defaults());
  r.add("normalize-roundtrip", "group", defaults());
  return r.out;
}

Outcome criterion3()
{
  Runs r;
  r.add("crossed-iff-trivial-peiffer", "group", defaults());
  return r.out;
}

Outcome peiffer_laws(const std::string& theory)
{
  Runs r;
  r.add("peiffer-monotone", theory, defaults());
  r.add("peiffer-image-preservation", theory, defaults(), 200);
  r.add("peiffer-lemma-normal", theory, defaults());
  r.add("peiffer-huq-normal", theory, defaults());
  return r.out;
}

Outcome criterion5()
{
  Runs r;
  r.add("centralize-central", "group", defaults());
  r.add("centralize-idempotent", "group", defaults());
  // Every pair is feasible up to |X||B| <= 24; beyond that the pair count
  // runs into the hundreds of millions and a seeded sample is used.
  auto exhaustive = defaults();
  exhaustive.bounds.max_order = 24;
  exhaustive.pair_cap = 50'000'000;
  r.add("centralize-universal", "group", exhaustive);
  r.add("centralize-universal", "group", defaults());
  return r.out;
}

Outcome criterion6()
{
  Runs r;
  r.add("double-centralize", "group", defaults());
  r.add("double-central-transpose", "group", defaults());
  r.add("trivial-implies-central", "group", defaults());
  return r.out;
}

// Concrete values: derived by the brute-force oracle, compared with the
// frozen numbers, then with the library.
Outcome criterion7()
{
  Outcome out;
  auto note = [&](const std::string& what, bool ok) {
    out.pass = out.pass && ok;
    out.detail += (out.detail.empty() ? "" : "; ") + what + (ok ? " ok" : " MISMATCH");
  };
  FiniteGroup one;
  auto over_trivial = [&](const FiniteGroup& g) {
    return make_pxmod<FiniteGroup>(zero_hom(g, one), trivial_action(one, g));
  };
  auto raw = [](const PrecrossedModule<FiniteGroup>& p) {
    return oracle::PX{oracle::group_of(p.X), oracle::group_of(p.B),
                      std::vector<std::uint32_t>(p.boundary.map.begin(), p.boundary.map.end()),
                      std::vector<std::uint32_t>(p.action.table.begin(), p.action.table.end())};
  };
  auto center = [](const oracle::Group& g) {
    oracle::Set z;
    for (std::uint32_t a = 0; a < g.n; ++a) {
      bool c = true;
      for (std::uint32_t x = 0; x < g.n; ++x)
        c = c && g(a, x) == g(x, a);
      if (c)
        z.insert(a);
    }
    return z;
  };
  auto meet = [](const oracle::Set& a, const oracle::Set& b) {
    oracle::Set m;
    for (auto x : a)
      if (b.count(x))
        m.insert(x);
    return m;
  };
  auto sub = [](const FiniteGroup& g, const oracle::Set& s) {
    std::vector<GroupElement> gens(s.begin(), s.end());
    return generated_subobject(g, gens, true);
  };

  {
    auto p = over_trivial(catalog_group("S3"));
    auto o = raw(p);
    auto derived = oracle::peiffer(o, oracle::whole(o.X), oracle::whole(o.X)).size();
    auto lib = size_of(peiffer_commutator(p, whole(p.X), whole(p.X)).carrier);
    note("<X,X> of S3 over 0: oracle " + std::to_string(derived) + " library " + std::to_string(lib),
         derived == 3 && lib == 3);
  }
  {
    const auto& q8 = catalog_group("Q8");
    auto p = over_trivial(q8);
    auto o = raw(p);
    auto z = center(o.X);
    auto all = oracle::whole(o.X);
    auto gal = meet(z, oracle::peiffer(o, all, all)).size();
    auto h2 = gal / oracle::peiffer(o, all, z).size();
    auto f = make_extension(quotient_pxmod(p, sub(q8, z)).projection);
    auto lib_gal = size_of(galois_group(f).value.numerator);
    auto lib_h2 = size_of(hopf_h2(f).value.object());
    note("Gal(Q8 -> Q8/Z): oracle " + std::to_string(gal) + " library " + std::to_string(lib_gal),
         gal == 2 && lib_gal == 2 && f.target().X.order() == 4);
    note("H2 of Q8 -> Q8/Z: oracle " + std::to_string(h2) + " library " + std::to_string(lib_h2),
         h2 == 2 && lib_h2 == 2);

    // Oracle: trivial iff K meet <X,X> = 1, central iff <X,K> = 1.
    bool o_trivial = meet(z, oracle::peiffer(o, all, all)).size() == 1;
    bool o_central = oracle::peiffer(o, all, z).size() == 1;
    bool ok = !o_trivial && o_central && !is_trivial_extension(f).trivial && is_central(f).central;
    note("Q8 -> Q8/Z central, not trivial", ok);
  }
  {
    auto z4 = cyclic_group(4);
    auto p = over_trivial(z4);
    auto o = raw(p);
    oracle::Set k{0, 2};
    auto all = oracle::whole(o.X);
    bool o_trivial = meet(k, oracle::peiffer(o, all, all)).size() == 1;
    auto f = make_extension(quotient_pxmod(p, sub(z4, k)).projection);
    note("Z/4 -> Z/2 trivial", o_trivial && is_trivial_extension(f).trivial &&
                                   f.target().X.order() == 2);
  }
  return out;
}

Outcome criterion8()
{
  Runs r;
  auto opt = defaults();
  opt.pair_cap = 10'000'000;
  r.add("five-term", "group", opt);
  // The unchecked nodes are reported with the fixed string.
  FiniteGroup one;
  const auto& s3 = catalog_group("S3");
  auto p = make_pxmod<FiniteGroup>(zero_hom(s3, one), trivial_action(one, s3));
  const GroupElement r3[] = {2};
  auto k = make_submodule(p, generated_subobject(s3, r3, true));
  auto seq = five_term(submodule_object(k).inclusion, quotient_pxmod(p, k.carrier).projection,
                       identity_extension(p));
  bool label = seq.exact_at_1_2 == "not checked (projectivity required)";
  r.out.pass = r.out.pass && label;
  r.out.detail += std::string("; nodes 1-2: ") + seq.exact_at_1_2;
  return r.out;
}

Outcome criterion9()
{
  Runs r;
  r.add("main-theorem-equivalence", "lie", defaults(), 500);
  r.add("crossed-iff-trivial-peiffer", "lie", defaults());
  auto laws = peiffer_laws("lie");
  r.out.pass = r.out.pass && laws.pass;
  r.out.detail += "; " + laws.detail;
  if (r.seconds > 120)
    r.out.pass = false;
  return r.out;
}

Outcome criterion10()
{
  Outcome out;
  auto opt = defaults();
  opt.timing = false;
  opt.seed = 2024;
  for (const auto& [name, theory] : std::vector<std::pair<std::string, std::string>>{
           {"peiffer-image-preservation", "group"},
           {"pullback-stability", "group"},
           {"centralize-universal", "lie"},
           {"main-theorem-equivalence", "lie"}}) {
    auto a = to_json(verify_property(name, theory, opt)).dump(2);
    auto b = to_json(verify_property(name, theory, opt)).dump(2);
    bool same = a == b;
    out.pass = out.pass && same;
    out.detail += (out.detail.empty() ? "" : "; ") + name + "[" + theory + "] " +
                  std::to_string(a.size()) + " bytes " + (same ? "identical" : "DIFFER");
  }
  return out;
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"main-theorem equivalence, groups", criterion1},
      {"reflection correspondence", criterion2},
      {"crossed iff trivial Peiffer commutator", criterion3},
      {"Peiffer commutator laws", [] { return peiffer_laws("group"); }},
      {"centralization", criterion5},
      {"double extensions", criterion6},
      {"concrete derived values", criterion7},
      {"five-term sequence", criterion8},
      {"Lie mirror of 1, 3, 4", criterion9},
      {"determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f s", s);
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << " (" << secs << ")\n    " << o.detail << "\n"
              << std::flush;
    failed += !o.pass;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
