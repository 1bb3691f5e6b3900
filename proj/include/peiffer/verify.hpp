#pragma once

// Named properties checked over the enumerated instance streams. Each run
// counts instances, passes and failures and keeps the first failure (by
// stream position) with a replayable instance document.

#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "io/document.hpp"

namespace peiffer {

struct VerifyOptions {
  Bounds bounds;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  /// Random quotients for peiffer-image-preservation.
  std::size_t samples = 1000;
  /// Pair-based properties run exhaustively up to this many pairs and on a
  /// seeded sample of this size beyond it.
  std::size_t pair_cap = 20000;
  bool timing = true;
};

struct Failure {
  std::size_t index = 0;
  std::string label;
  std::string witness;
  io::Json replay;
};

struct PropertyReport {
  std::string property;
  std::string theory;
  Bounds bounds;
  std::uint64_t seed = 0;
  /// How the stream was formed: "exhaustive" or "sampled N of M".
  std::string coverage = "exhaustive";
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::optional<Failure> first_failure;
  std::optional<double> seconds;

  bool holds() const { return failed == 0; }
};

struct PropertyInfo {
  std::string_view name;
  /// "pxmods", "extensions", "double-extensions" or "pairs".
  std::string_view stream;
  std::string_view summary;
};

inline const std::vector<PropertyInfo>& property_catalog()
{
  static const std::vector<PropertyInfo> props{
      {"main-theorem-equivalence", "extensions",
       "<K[f],X> = 0 iff K[f1] commutes with K[d] and K[c] in X semidirect B"},
      {"crossed-iff-trivial-peiffer", "pxmods", "Peiffer identity holds iff <X,X> = 0"},
      {"reflection-correspondence", "pxmods",
       "graph reflection of the semidirect product matches the crossed-module reflection"},
      {"reflection-is-crossed", "pxmods", "X/<X,X> satisfies the Peiffer identity"},
      {"normalize-roundtrip", "pxmods", "normalizing the semidirect-product graph gives back P"},
      {"peiffer-monotone", "pxmods", "M <= M', N <= N' implies <M,N> <= <M',N'>"},
      {"peiffer-lemma-normal", "pxmods", "<X,K> <= K for normal K with zero boundary"},
      {"peiffer-huq-normal", "pxmods",
       "normal closure of <H,K> equals [H,K] for normal H, K with zero boundary"},
      {"peiffer-image-preservation", "samples", "q<M,N> = <qM,qN> for random quotients q"},
      {"centralize-central", "extensions", "the centralization is central"},
      {"centralize-idempotent", "extensions", "centralizing twice changes nothing"},
      {"centralize-universal", "pairs",
       "maps into central extensions factor uniquely through the centralization"},
      {"trivial-implies-central", "extensions", "trivial extensions are central"},
      {"pullback-stability", "pairs", "centrality is reflected and preserved by pullback"},
      {"galois-group-kernel", "extensions",
       "K[f] meet <X,X> equals the kernel of the unit restricted to K[f]"},
      {"double-centralize", "double-extensions",
       "the double centralization is double central and J <= K[f] meet K[g]"},
      {"double-central-transpose", "double-extensions",
       "double centrality does not depend on the orientation of the square"},
      {"five-term", "pairs",
       "five-term sequence: composites zero, exact at nodes 3 and 4, onto at node 5"},
  };
  return props;
}

inline const PropertyInfo& property_info(std::string_view name)
{
  for (const auto& p : property_catalog())
    if (p.name == name)
      return p;
  throw Error(ErrorKind::UnknownProperty, "no property named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Chunked evaluation

namespace detail {

struct ChunkResult {
  std::size_t count = 0;
  std::size_t failed = 0;
  std::optional<Failure> first;
};

/// Per-chunk recorder. Library errors raised by a check count as failures.
class Tally {
public:
  template <class Label, class Replay, class Body>
  void check(Label&& label, Replay&& replay, Body&& body)
  {
    Verdict v;
    try {
      v = body();
    } catch (const Error& e) {
      v = fail(e.what());
    }
    ++r_.count;
    if (v.holds)
      return;
    ++r_.failed;
    if (!r_.first)
      r_.first = Failure{r_.count - 1, label(), v.witness, replay()};
  }

  ChunkResult take() { return std::move(r_); }

private:
  ChunkResult r_;
};

/// Runs fn(chunk, tally) for every chunk on up to `threads` workers. The
/// merge depends only on chunk order, never on scheduling.
template <class Fn>
std::vector<ChunkResult> run_chunks(std::size_t n, std::size_t threads, Fn&& fn)
{
  std::vector<ChunkResult> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        Tally t;
        fn(i, t);
        out[i] = t.take();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next = n;
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back(worker);
    for (auto& t : pool)
      t.join();
  }
  if (error)
    std::rethrow_exception(error);
  return out;
}

inline void merge_into(PropertyReport& r, const std::vector<ChunkResult>& chunks)
{
  std::size_t offset = 0;
  for (const auto& c : chunks) {
    if (c.first && !r.first_failure) {
      r.first_failure = *c.first;
      r.first_failure->index += offset;
    }
    offset += c.count;
    r.failed += c.failed;
  }
  r.instances = offset;
  r.passed = r.instances - r.failed;
}

/// Deterministic index in [0, n) from a 64-bit stream.
inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

// ---------------------------------------------------------------------------
// Replay documents

template <Ambient A>
io::Json replay_pxmod(const PrecrossedModule<A>& p, const std::string& op)
{
  io::DocumentWriter<A> w;
  auto name = w.pxmod(p);
  w.task({{"op", op}, {"pxmod", name}});
  return w.document();
}

template <Ambient A>
io::Json replay_peiffer(const PrecrossedModule<A>& p, const Sub<A>& m, const Sub<A>& n,
                        const std::string& op = "peiffer")
{
  io::DocumentWriter<A> w;
  auto name = w.pxmod(p);
  bool relative = op == "relative-commutator";
  w.task({{"op", op},
          {"pxmod", name},
          {relative ? "H" : "M", io::subobject_json<A>(m)},
          {relative ? "K" : "N", io::subobject_json<A>(n)}});
  return w.document();
}

template <Ambient A>
io::Json replay_extension(const Extension<A>& f, const std::string& op)
{
  io::DocumentWriter<A> w;
  auto name = w.morphism(f.morphism);
  w.task({{"op", op}, {"extension", name}});
  return w.document();
}

template <Ambient A>
io::Json replay_square(const DoubleExtension<A>& s, const std::string& op)
{
  io::DocumentWriter<A> w;
  auto name = w.square(s);
  w.task({{"op", op}, {"square", name}});
  return w.document();
}

// ---------------------------------------------------------------------------
// Stream context

template <Ambient A>
struct SubmoduleLists {
  /// Every action-stable subobject of X.
  std::vector<Sub<A>> stable;
  /// The normal ones inside ker(d).
  std::vector<Sub<A>> kernels;
};

template <Ambient A>
SubmoduleLists<A> submodule_lists(const PrecrossedModule<A>& p)
{
  auto subs = all_subobjects(p.X);
  return {all_submodules(p, subs, false), all_submodules(p, subs, true)};
}

template <Ambient A>
class Context {
public:
  Context(const VerifyOptions& opt)
  : opt_(opt), pxmods_(enumerate_pxmods<A>(opt.bounds)), ext_(pxmods_)
  {}

  const VerifyOptions& options() const { return opt_; }
  const std::vector<Instance<PrecrossedModule<A>>>& pxmods() const { return pxmods_; }
  ExtensionEnumerator<A>& extensions() { return ext_; }

  /// All extensions in stream order.
  const std::vector<ExtensionRef>& all_refs()
  {
    if (!refs_) {
      refs_.emplace();
      for (std::size_t i = 0; i < ext_.chunks(); ++i)
        for (const auto& r : ext_.refs_from(i))
          refs_->push_back(r);
      into_.assign(pxmods_.size(), {});
      for (std::size_t k = 0; k < refs_->size(); ++k)
        into_[(*refs_)[k].target].push_back(k);
    }
    return *refs_;
  }

  /// Positions in all_refs() of the extensions into instance j.
  const std::vector<std::size_t>& into(std::size_t j)
  {
    all_refs();
    return into_[j];
  }

  const SubmoduleLists<A>& lists(std::size_t i)
  {
    if (lists_.empty())
      lists_.resize(pxmods_.size());
    if (!lists_[i])
      lists_[i] = submodule_lists(pxmods_[i].value);
    return *lists_[i];
  }

private:
  VerifyOptions opt_;
  std::vector<Instance<PrecrossedModule<A>>> pxmods_;
  ExtensionEnumerator<A> ext_;
  std::optional<std::vector<ExtensionRef>> refs_;
  std::vector<std::vector<std::size_t>> into_;
  std::vector<std::optional<SubmoduleLists<A>>> lists_;
};

/// A property as a chunked job.
struct Plan {
  std::size_t chunks = 0;
  std::function<void(std::size_t, Tally&)> run;
  std::string coverage = "exhaustive";
};

template <Ambient A>
Plan over_pxmods(Context<A>& ctx,
                 std::function<void(const Instance<PrecrossedModule<A>>&, Tally&)> body)
{
  return {ctx.pxmods().size(),
          [&ctx, body](std::size_t i, Tally& t) { body(ctx.pxmods()[i], t); }};
}

template <Ambient A>
Plan over_extensions(Context<A>& ctx,
                     std::function<void(const Instance<Extension<A>>&, Tally&)> body)
{
  return {ctx.extensions().chunks(), [&ctx, body](std::size_t i, Tally& t) {
            ctx.extensions().for_each_from(
                i, [&](const Instance<Extension<A>>& e) { body(e, t); });
          }};
}

template <Ambient A>
Plan over_squares(Context<A>& ctx,
                  std::function<void(const Instance<DoubleExtension<A>>&, Tally&)> body)
{
  return {ctx.pxmods().size(), [&ctx, body](std::size_t i, Tally& t) {
            for (const auto& s : double_extensions_of(ctx.pxmods()[i]))
              body(s, t);
          }};
}

/// All pairs (a, b) with a < na and b < nb(a) when there are at most
/// `cap` of them, otherwise `cap` seeded random pairs; sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> pair_stream(
    std::size_t na, const std::function<std::size_t(std::size_t)>& nb, std::size_t cap,
    std::uint64_t seed, std::string& coverage)
{
  std::vector<std::size_t> offsets{0};
  for (std::size_t a = 0; a < na; ++a)
    offsets.push_back(offsets.back() + nb(a));
  std::size_t total = offsets.back();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  auto at = [&](std::size_t k) {
    std::size_t a = static_cast<std::size_t>(
        std::upper_bound(offsets.begin(), offsets.end(), k) - offsets.begin() - 1);
    return std::make_pair(a, k - offsets[a]);
  };
  if (total <= cap) {
    for (std::size_t k = 0; k < total; ++k)
      out.push_back(at(k));
    coverage = "exhaustive";
    return out;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picks;
  for (std::size_t i = 0; i < cap; ++i)
    picks.push_back(pick(rng, total));
  std::sort(picks.begin(), picks.end());
  for (auto k : picks)
    out.push_back(at(k));
  coverage = "sampled " + std::to_string(cap) + " of " + std::to_string(total);
  return out;
}

// ---------------------------------------------------------------------------
// Properties

inline std::string order_text(std::uint64_t n) { return std::to_string(n); }

template <Ambient A>
Plan plan_for(std::string_view name, Context<A>& ctx)
{
  using PX = Instance<PrecrossedModule<A>>;
  using EX = Instance<Extension<A>>;
  using SQ = Instance<DoubleExtension<A>>;
  const auto& opt = ctx.options();

  if (name == "crossed-iff-trivial-peiffer")
    return over_pxmods<A>(ctx, [](const PX& p, Tally& t) {
      t.check([&] { return p.label; }, [&] { return replay_pxmod(p.value, "crossed"); }, [&] {
        bool crossed = is_crossed(p.value).holds;
        Sub<A> all = whole(p.value.X);
        auto pc = peiffer_commutator(p.value, all, all);
        if (crossed == is_trivial(pc.carrier))
          return Verdict{};
        return fail("is_crossed=" + std::string(crossed ? "true" : "false") +
                    " |<X,X>|=" + order_text(size_of(pc.carrier)));
      });
    });

  if (name == "reflection-correspondence")
    return over_pxmods<A>(ctx, [](const PX& p, Tally& t) {
      t.check([&] { return p.label; }, [&] { return replay_pxmod(p.value, "reflect"); },
              [&] { return reflection_correspondence(p.value); });
    });

  if (name == "reflection-is-crossed")
    return over_pxmods<A>(ctx, [](const PX& p, Tally& t) {
      t.check([&] { return p.label; }, [&] { return replay_pxmod(p.value, "reflect"); },
              [&] { return is_crossed(reflect_to_xmod(p.value).object); });
    });

  if (name == "normalize-roundtrip")
    return over_pxmods<A>(ctx, [](const PX& p, Tally& t) {
      t.check([&] { return p.label; }, [&] { return replay_pxmod(p.value, "validate"); },
              [&] { return normalize_roundtrip(p.value); });
    });

  if (name == "peiffer-monotone")
    return over_pxmods<A>(ctx, [](const PX& p, Tally& t) {
      auto s = submodule_lists(p.value).stable;
      std::size_t n = s.size();
      std::vector<std::vector<Sub<A>>> c(n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          c[a].push_back(peiffer_commutator(p.value, s[a], s[b]).carrier);
      std::vector<std::pair<std::size_t, std::size_t>> nested;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t a2 = 0; a2 < n; ++a2)
          if (includes(s[a2], s[a]))
            nested.emplace_back(a, a2);
      for (auto [a, a2] : nested)
        for (auto [b, b2] : nested)
          t.check(
              [&] {
                return "[" + p.label + "] M#" + std::to_string(a) + "<=M#" + std::to_string(a2) +
                       " N#" + std::to_string(b) + "<=N#" + std::to_string(b2);
              },
              [&] { return replay_peiffer<A>(p.value, s[a2], s[b2]); },
              [&] {
                if (includes(c[a2][b2], c[a][b]))
                  return Verdict{};
                return fail("<M,N>=" + render(c[a][b]) + " not inside <M',N'>=" +
                            render(c[a2][b2]));
              });
    });

  if (name == "peiffer-lemma-normal")
    return over_pxmods<A>(ctx, [](const PX& p, Tally& t) {
      Sub<A> all = whole(p.value.X);
      const auto kernels = submodule_lists(p.value).kernels;
      for (std::size_t i = 0; i < kernels.size(); ++i) {
        const auto& k = kernels[i];
        t.check([&] { return "[" + p.label + "] K#" + std::to_string(i); },
                [&] { return replay_peiffer<A>(p.value, all, k); },
                [&] {
                  auto pc = peiffer_commutator(p.value, all, k);
                  if (includes(k, pc.carrier))
                    return Verdict{};
                  return fail("<X,K>=" + render(pc.carrier) + " not inside K=" + render(k));
                });
      }
    });

  if (name == "peiffer-huq-normal")
    return over_pxmods<A>(ctx, [](const PX& p, Tally& t) {
      const auto kernels = submodule_lists(p.value).kernels;
      for (std::size_t a = 0; a < kernels.size(); ++a)
        for (std::size_t b = 0; b < kernels.size(); ++b) {
          const auto &h = kernels[a], &k = kernels[b];
          t.check(
              [&] { return "[" + p.label + "] H#" + std::to_string(a) + " K#" + std::to_string(b); },
              [&] { return replay_peiffer<A>(p.value, h, k, "relative-commutator"); },
              [&] {
                PXSubmodule<A> hs{p.value, h, true}, ks{p.value, k, true};
                auto r = relative_commutator(p.value, hs, ks);
                if (r.agrees_with_peiffer)
                  return Verdict{};
                return fail("[H,K]=" + render(r.value.carrier) + " differs from closure of <H,K>");
              });
        }
    });

  if (name == "peiffer-image-preservation") {
    // Tuples (instance, N, M, N') drawn up front so the stream does not
    // depend on evaluation order.
    struct Draw {
      std::size_t i, n, m, m2;
    };
    auto draws = std::make_shared<std::vector<Draw>>();
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < ctx.pxmods().size(); ++i)
      if (!is_trivial(kernel(ctx.pxmods()[i].value.boundary)))
        eligible.push_back(i);
    std::mt19937_64 rng(opt.seed);
    for (std::size_t k = 0; k < opt.samples && !eligible.empty(); ++k) {
      std::size_t i = eligible[pick(rng, eligible.size())];
      const auto& l = ctx.lists(i);
      // Skip the trivial subobject at position 0 when a proper quotient exists.
      std::size_t lo = l.kernels.size() > 1 ? 1 : 0;
      std::size_t n = lo + pick(rng, l.kernels.size() - lo);
      draws->push_back(Draw{i, n, pick(rng, l.stable.size()), pick(rng, l.stable.size())});
    }
    Plan plan{draws->size(), [&ctx, draws](std::size_t k, Tally& t) {
                const auto& d = (*draws)[k];
                const auto& inst = ctx.pxmods()[d.i];
                const auto& l = ctx.lists(d.i);
                const auto &n = l.kernels[d.n], &m = l.stable[d.m], &m2 = l.stable[d.m2];
                t.check(
                    [&] {
                      return "[" + inst.label + "] N#" + std::to_string(d.n) + " M#" +
                             std::to_string(d.m) + " N'#" + std::to_string(d.m2);
                    },
                    [&] { return replay_peiffer<A>(inst.value, m, m2); },
                    [&] {
                      auto q = quotient_pxmod(inst.value, n).projection;
                      Sub<A> lhs = image(q.map, peiffer_commutator(inst.value, m, m2).carrier);
                      Sub<A> rhs = peiffer_commutator(q.target, image(q.map, m),
                                                      image(q.map, m2)).carrier;
                      if (lhs == rhs)
                        return Verdict{};
                      return fail("q<M,N>=" + render(lhs) + " but <qM,qN>=" + render(rhs));
                    });
              }};
    plan.coverage = "sampled " + std::to_string(draws->size()) + " random quotients";
    return plan;
  }

  if (name == "main-theorem-equivalence")
    return over_extensions<A>(ctx, [](const EX& e, Tally& t) {
      t.check([&] { return e.label; },
              [&] { return replay_extension(e.value, "central-crosscheck"); }, [&] {
                auto a = is_central(e.value);
                auto b = is_central_via_huq(e.value);
                if (a.central == b.central)
                  return Verdict{};
                return fail("peiffer route " + std::string(a.central ? "central" : "not central") +
                            ", huq route " + (b.central ? "central" : "not central"));
              });
    });

  if (name == "centralize-central")
    return over_extensions<A>(ctx, [](const EX& e, Tally& t) {
      t.check([&] { return e.label; }, [&] { return replay_extension(e.value, "centralize"); },
              [&] {
                auto c = is_central(centralize(e.value).extension);
                return c.central ? Verdict{} : fail(c.witness);
              });
    });

  if (name == "centralize-idempotent")
    return over_extensions<A>(ctx, [](const EX& e, Tally& t) {
      t.check([&] { return e.label; }, [&] { return replay_extension(e.value, "centralize"); },
              [&] {
                auto once = centralize(e.value);
                auto twice = centralize(once.extension);
                return is_isomorphism(twice.quotient) ? Verdict{}
                                                      : fail("second centralization is proper");
              });
    });

  if (name == "trivial-implies-central")
    return over_extensions<A>(ctx, [](const EX& e, Tally& t) {
      t.check([&] { return e.label; }, [&] { return replay_extension(e.value, "trivial"); }, [&] {
        if (!is_trivial_extension(e.value).trivial)
          return Verdict{};
        auto c = is_central(e.value);
        return c.central ? Verdict{} : fail("trivial but not central: " + c.witness);
      });
    });

  if (name == "galois-group-kernel")
    return over_extensions<A>(ctx, [](const EX& e, Tally& t) {
      if (!is_central(e.value).central)
        return;
      t.check([&] { return e.label; }, [&] { return replay_extension(e.value, "galois-group"); },
              [&] {
                Sub<A> a = galois_group(e.value).value.numerator;
                Sub<A> b = galois_group_via_unit(e.value);
                if (a == b)
                  return Verdict{};
                return fail("K meet <X,X>=" + render(a) + " but kernel of unit=" + render(b));
              });
    });

  if (name == "double-centralize")
    return over_squares<A>(ctx, [](const SQ& s, Tally& t) {
      t.check([&] { return s.label; }, [&] { return replay_square(s.value, "double-centralize"); },
              [&] {
                auto dc = double_centralize(s.value);
                Sub<A> km = meet(s.value.f.kernel.carrier, s.value.g.kernel.carrier);
                if (!includes(km, dc.j))
                  return fail("J=" + render(dc.j) + " not inside K[f] meet K[g]");
                auto r = is_double_central(dc.square);
                return r.central ? Verdict{} : fail(r.witness);
              });
    });

  if (name == "double-central-transpose")
    return over_squares<A>(ctx, [](const SQ& s, Tally& t) {
      t.check([&] { return s.label; }, [&] { return replay_square(s.value, "double-central"); },
              [&] {
                bool a = is_double_central(s.value).central;
                bool b = is_double_central(transpose(s.value)).central;
                return a == b ? Verdict{} : fail("square and its transpose disagree");
              });
    });

  if (name == "pullback-stability") {
    // Pairs (f, g) of extensions with a common target; f is pulled back along g.
    const auto& refs = ctx.all_refs();
    std::string coverage;
    auto pairs = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>(pair_stream(
        refs.size(), [&](std::size_t a) { return ctx.into(refs[a].target).size(); },
        opt.pair_cap, opt.seed, coverage));
    Plan plan{pairs->size(), [&ctx, pairs](std::size_t k, Tally& t) {
                const auto& refs = ctx.all_refs();
                auto [a, b] = (*pairs)[k];
                auto f = ctx.extensions().materialize(refs[a]);
                auto g = ctx.extensions().materialize(refs[ctx.into(refs[a].target)[b]]);
                t.check([&] { return f.label + " along " + g.label; },
                        [&] {
                          io::DocumentWriter<A> w;
                          auto y = w.pxmod(f.value.target());
                          auto fn = w.morphism(f.value.morphism, w.pxmod(f.value.source()), y);
                          auto gn = w.morphism(g.value.morphism, w.pxmod(g.value.source()), y);
                          w.task({{"op", "central"}, {"extension", fn}, {"along", gn}});
                          return w.document();
                        },
                        [&] {
                          bool before = is_central(f.value).central;
                          bool after = is_central(pullback_extension(f.value, g.value)).central;
                          if (before == after)
                            return Verdict{};
                          return fail(std::string("f ") + (before ? "central" : "not central") +
                                      ", pullback " + (after ? "central" : "not central"));
                        });
              }};
    plan.coverage = coverage;
    return plan;
  }

  if (name == "centralize-universal") {
    // Pairs (f, f') with a common target; every map h over the target from
    // f to f' is checked when f' is central.
    const auto& refs = ctx.all_refs();
    std::string coverage;
    auto pairs = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>(pair_stream(
        refs.size(), [&](std::size_t a) { return ctx.into(refs[a].target).size(); },
        opt.pair_cap, opt.seed, coverage));
    Plan plan{pairs->size(), [&ctx, pairs](std::size_t k, Tally& t) {
                const auto& refs = ctx.all_refs();
                auto [a, b] = (*pairs)[k];
                auto f = ctx.extensions().materialize(refs[a]);
                auto g = ctx.extensions().materialize(refs[ctx.into(refs[a].target)[b]]);
                if (!is_central(g.value).central)
                  return;
                auto c = centralize(f.value);
                const auto& xbar = c.extension.source();
                const auto& xg = g.value.source();
                // Candidates for the uniqueness count: every map over Y out of X/<K,X>.
                std::vector<Hom<A>> candidates;
                detail::for_each_map_over(xbar.X, xg.X, c.extension.map(), g.value.map(),
                                          [&](const Hom<A>& u) { candidates.push_back(u); });
                std::vector<PXMorphism<A>> maps;
                detail::for_each_map_over(f.value.source().X, xg.X, f.value.map(), g.value.map(),
                                          [&](const Hom<A>& h) {
                                            if (!morphism_equivariance_violation(
                                                    h, f.value.source().action, xg.action))
                                              maps.push_back(PXMorphism<A>{f.value.source(), xg, h});
                                          });
                std::size_t hi = 0;
                for (const auto& h : maps) {
                  t.check(
                      [&] { return f.label + " into " + g.label + " h#" + std::to_string(hi); },
                      [&] { return replay_extension(f.value, "centralize"); },
                      [&] {
                        auto gamma = factor_through_centralization(c, h.map);
                        if (!gamma)
                          return fail("h does not kill <K[f], X>");
                        if (!(compose(xg.boundary, *gamma) == xbar.boundary) ||
                            morphism_equivariance_violation(*gamma, xbar.action, xg.action))
                          return fail("factorization is not a morphism over B");
                        if (!(compose(g.value.map(), *gamma) == c.extension.map()))
                          return fail("factorization does not commute with the extensions");
                        std::size_t count = 0;
                        for (const auto& u : candidates)
                          if (compose(u, c.quotient.map) == h.map)
                            ++count;
                        if (count != 1)
                          return fail(std::to_string(count) + " factorizations");
                        return Verdict{};
                      });
                  ++hi;
                }
              }};
    plan.coverage = coverage;
    return plan;
  }

  if (name == "five-term") {
    // Pairs (p, K): a presentation p onto X and the sequence K -> X -> X/K
    // for a normal stable K inside ker(d).
    const auto& refs = ctx.all_refs();
    std::string coverage;
    auto pairs = std::make_shared<std::vector<std::pair<std::size_t, std::size_t>>>(pair_stream(
        refs.size(), [&](std::size_t a) { return ctx.lists(refs[a].target).kernels.size(); },
        opt.pair_cap, opt.seed, coverage));
    Plan plan{pairs->size(), [&ctx, pairs](std::size_t k, Tally& t) {
                const auto& refs = ctx.all_refs();
                auto [a, b] = (*pairs)[k];
                auto p = ctx.extensions().materialize(refs[a]);
                const auto& x = p.value.target();
                const auto& kk = ctx.lists(refs[a].target).kernels[b];
                auto incl = submodule_object(PXSubmodule<A>{x, kk, true}).inclusion;
                auto proj = quotient_pxmod(x, kk).projection;
                t.check([&] { return p.label + " K#" + std::to_string(b); },
                        [&] {
                          io::DocumentWriter<A> w;
                          auto xn = w.pxmod(x);
                          auto fn = w.morphism(incl, w.pxmod(incl.source), xn);
                          auto gn = w.morphism(proj, xn, w.pxmod(proj.target));
                          auto pn = w.morphism(p.value.morphism, w.pxmod(p.value.source()), xn);
                          w.task({{"op", "five-term"},
                                  {"ses", {{"f", fn}, {"g", gn}}},
                                  {"presentation", pn}});
                          return w.document();
                        },
                        [&] {
                          auto s = five_term(incl, proj, p.value);
                          if (!s.well_defined)
                            return fail("induced maps not well defined");
                          for (std::size_t i = 0; i < 3; ++i)
                            if (!s.composites_zero[i])
                              return fail("composite at node " + std::to_string(i + 2) +
                                          " is not zero");
                          if (!s.exact_at_3)
                            return fail("not exact at node 3");
                          if (!s.exact_at_4)
                            return fail("not exact at node 4");
                          if (!s.exact_at_5)
                            return fail("node 4 -> node 5 is not onto");
                          return Verdict{};
                        });
              }};
    plan.coverage = coverage;
    return plan;
  }

  throw Error(ErrorKind::UnknownProperty, "no property named '" + std::string(name) + "'");
}

} // namespace detail

template <Ambient A>
PropertyReport verify_property(std::string_view name, const VerifyOptions& opt)
{
  property_info(name);
  auto start = std::chrono::steady_clock::now();
  detail::Context<A> ctx(opt);
  auto plan = detail::plan_for<A>(name, ctx);
  PropertyReport r;
  r.property = std::string(name);
  r.theory = std::string(ambient_traits<A>::theory);
  r.bounds = opt.bounds;
  r.seed = opt.seed;
  r.coverage = plan.coverage;
  detail::merge_into(r, detail::run_chunks(plan.chunks, opt.threads, plan.run));
  if (opt.timing)
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline PropertyReport verify_property(std::string_view name, std::string_view theory,
                                      const VerifyOptions& opt)
{
  if (theory == "group")
    return verify_property<FiniteGroup>(name, opt);
  if (theory == "lie")
    return verify_property<LieAlgebra>(name, opt);
  throw Error(ErrorKind::BadSpec, "theory must be group or lie");
}

inline io::Json to_json(const PropertyReport& r)
{
  io::Json j;
  j["property"] = r.property;
  j["theory"] = r.theory;
  if (r.theory == "lie")
    j["bounds"] = {{"max_dim", r.bounds.max_dim}, {"primes", r.bounds.primes}};
  else
    j["bounds"] = {{"max_order", r.bounds.max_order}};
  j["seed"] = r.seed;
  j["coverage"] = r.coverage;
  j["instances"] = r.instances;
  j["passed"] = r.passed;
  j["failures"] = r.failed;
  if (r.first_failure)
    j["first_failure"] = {{"index", r.first_failure->index},
                          {"label", r.first_failure->label},
                          {"witness", r.first_failure->witness},
                          {"replay", r.first_failure->replay}};
  else
    j["first_failure"] = nullptr;
  if (r.seconds)
    j["seconds"] = *r.seconds;
  return j;
}

} // namespace peiffer
