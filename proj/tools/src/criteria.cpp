#include "criteria.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "rrlab/cfrac.hpp"
#include "rrlab/errors.hpp"
#include "rrlab/parallel.hpp"
#include "rrlab/rrcf.hpp"
#include "rrlab/schur.hpp"
#include "rrlab/verify.hpp"

#ifndef RRLAB_GOLDEN_DIR
#define RRLAB_GOLDEN_DIR "tests/golden"
#endif

namespace rrlab::tools {

namespace {

using cfrac::PartialQuotientStream;
using schur::RootOfUnity;

std::vector<RootOfUnity> roots_up_to(long m_max, bool skip_multiples_of_5) {
  std::vector<RootOfUnity> out;
  for (long m = 1; m <= m_max; ++m) {
    if (skip_multiples_of_5 && m % 5 == 0) continue;
    for (const auto& x : schur::primitive_roots(m)) out.push_back(x);
  }
  return out;
}

long root_index(const RootOfUnity& x) { return 100 * x.m + x.k; }

TraceReport merged(std::string id, const std::vector<TraceReport>& parts) {
  TraceReport rep;
  rep.id = std::move(id);
  for (const auto& p : parts) rep.merge(p);
  return rep;
}

// Uniform angle in [0, 1) with a 64-bit dyadic denominator.
mpq_class random_angle(std::mt19937_64& rng) {
  mpq_class t(mpz_class(static_cast<unsigned long>(rng())), mpz_class(1) << 64);
  t.canonicalize();
  return t;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CriterionResult schur_closed_form() {
  CriterionResult r;
  PrecisionContext ctx(256, 32);
  auto roots = roots_up_to(50, true);
  BigReal env = pow(golden_ratio(ctx), -78);
  auto parts = parallel_map(roots.size(), [&](std::size_t i) {
    TraceReport t;
    const RootOfUnity& x = roots[i];
    schur::SchurValue sv = schur::schur_eval(x, ctx);
    rrcf::ConvergentPair s = rrcf::run_checked(x.point(ctx), static_cast<std::size_t>(41 * x.m - 1));
    t.check("K_vs_schur", root_index(x), distance(s.P() / s.Q(), sv.K), std::nullopt, env);
    return t;
  });
  r.report = merged("schur-closed-form", parts);
  r.report.notes.push_back("index = 100 m + k; n = 41 m - 1; 256 bits");
  return r;
}

CriterionResult boundary_equivalence() {
  CriterionResult r;
  PrecisionContext ctx(256, 32);
  auto roots = roots_up_to(60, false);
  BigReal tol = two_pow(-200, ctx);
  auto parts = parallel_map(roots.size(), [&](std::size_t i) {
    TraceReport t;
    const RootOfUnity& x = roots[i];
    schur::BoundaryQuad q = schur::boundary_quad(x, ctx);
    rrcf::ConvergentPair s(x.point(ctx));
    s.advance_to(static_cast<std::size_t>(x.m - 1));
    const long idx = root_index(x);
    t.check("P_m2", idx, distance(q.P_m2, s.P_prev()), std::nullopt, tol);
    t.check("P_m1", idx, distance(q.P_m1, s.P()), std::nullopt, tol);
    t.check("Q_m2", idx, distance(q.Q_m2, s.Q_prev()), std::nullopt, tol);
    t.check("Q_m1", idx, distance(q.Q_m1, s.Q()), std::nullopt, tol);
    return t;
  });
  r.report = merged("boundary", parts);
  r.report.notes.push_back("index = 100 m + k; tolerance 2^-200 at 256 bits");
  return r;
}

CriterionResult divergence_certificate(Profile p) {
  CriterionResult r;
  std::size_t levels = p == Profile::Quick ? 3 : 4;
  r.report = verify::divergence_trace(PartialQuotientStream::s_minimal(), levels);
  return r;
}

CriterionResult tower_point() {
  CriterionResult r;
  auto tw = PartialQuotientStream::tower(2);
  r.report = verify::tower_growth_certificate(tw, 3);
  r.report.id = "tower-point";
  r.report.merge(verify::divergence_trace(tw, 2));
  return r;
}

CriterionResult lemma_suites(std::uint64_t seed) {
  CriterionResult r;
  TraceReport rep;
  rep.id = "lemmas";

  // Lipschitz: 100 pairs, y = x + delta with |delta| spread over 2^0 .. 2^-60.
  {
    PrecisionContext ctx = verify::recurrence_context(200);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<mpq_class, mpq_class>> pairs;
    for (int i = 0; i < 100; ++i) {
      mpq_class x = random_angle(rng);
      mpq_class u = random_angle(rng) - mpq_class(1, 2);
      unsigned shift = static_cast<unsigned>(rng() % 61);
      mpq_class y = x + u / mpq_class(mpz_class(1) << shift);
      pairs.emplace_back(x, y);
    }
    auto parts = parallel_map(pairs.size(), [&](std::size_t i) {
      return verify::check_lipschitz(unit_point(pairs[i].first, ctx), unit_point(pairs[i].second, ctx), 200);
    });
    rep.merge(merged("lipschitz", parts));
  }

  PrecisionContext ctx(256, 32);
  auto roots = roots_up_to(30, true);
  auto growth = parallel_map(roots.size(), [&](std::size_t i) {
    TraceReport t = verify::check_growth(roots[i], 20, ctx);
    for (auto& rec : t.records) rec.index += 1000 * root_index(roots[i]);
    return t;
  });
  rep.merge(merged("growth", growth));
  auto rate = parallel_map(roots.size(), [&](std::size_t i) {
    TraceReport t = verify::check_K_rate(roots[i], 20, ctx);
    for (auto& rec : t.records) rec.index += 1000 * root_index(roots[i]);
    return t;
  });
  rep.merge(merged("k-rate", rate));

  // Perturbation grid: m in {3, 4, 6, 7, 11}, q in {3, 5}, both subsequences,
  // eps at the boundary 1/(20 phi^2).
  std::vector<verify::PerturbationCase> grid;
  BigReal phi = golden_ratio(ctx);
  BigReal eps = BigReal(1, ctx) / (BigReal(20, ctx) * phi * phi);
  for (long m : {3L, 4L, 6L, 7L, 11L}) {
    for (long q : {3L, 5L}) {
      for (auto which : {verify::Subsequence::Last, verify::Subsequence::SecondLast}) {
        verify::PerturbationCase c{RootOfUnity(1, m), Angle{}, q, which, eps};
        mpq_class offset = q == 3 ? mpq_class(1, mpz_class("100000000000000000000"))
                                  : mpq_class(1, mpz_class("1000000000000000000000000000000"));
        c.y = mpq_class(mpq_class(1, m) + offset);
        grid.push_back(std::move(c));
      }
    }
  }
  auto pert = parallel_map(grid.size(), [&](std::size_t i) {
    TraceReport t = verify::check_perturbation(grid[i], ctx);
    for (auto& rec : t.records) rec.index += 1000 * static_cast<long>(i);
    return t;
  });
  rep.merge(merged("perturbation", pert));
  rep.notes.push_back("growth and k-rate index = 1000 (100 m + k) + q; perturbation index = 1000 case + q");
  r.report = std::move(rep);
  return r;
}

CriterionResult determinant_and_fibonacci(std::uint64_t seed) {
  CriterionResult r;
  PrecisionContext ctx(512, 32);
  std::mt19937_64 rng(seed);
  std::vector<mpq_class> angles;
  for (int i = 0; i < 200; ++i) angles.push_back(random_angle(rng));
  BigReal tol = BigReal::from_string("1e-60", ctx);
  BigReal one(1, ctx);
  std::vector<BigReal> fib;
  for (unsigned long n = 0; n <= 500; ++n) fib.push_back(BigReal::from_mpz(cfrac::fibonacci(n + 1), ctx));

  auto parts = parallel_map(angles.size(), [&](std::size_t i) {
    TraceReport t;
    rrcf::ConvergentPair s(unit_point(angles[i], ctx));
    BigReal det_err(0, ctx), fib_ratio(0, ctx);
    for (std::size_t n = 0; n <= 500; ++n) {
      if (n > 0) s.advance();
      det_err = max(det_err, abs(s.determinant().abs() - 1));
      fib_ratio = max(fib_ratio, s.Q().abs() / fib[n]);
    }
    const long idx = static_cast<long>(i);
    t.check("det_modulus", idx, det_err, std::nullopt, tol);
    t.check("Q_over_F", idx, fib_ratio, std::nullopt, one);
    return t;
  });
  r.report = merged("determinant", parts);
  r.report.notes.push_back("200 angles k/2^64 from mt19937_64 seed " + std::to_string(seed) +
                           "; n = 0..500; 512 bits; index = point number");
  return r;
}

CriterionResult outside_split() {
  CriterionResult r;
  PrecisionContext ctx(256, 32);
  auto real = [&](const char* s) { return BigReal::from_string(s, ctx); };
  std::vector<std::pair<std::string, BigComplex>> xs = {
      {"1/10", BigComplex(real("1/10"), BigReal(ctx))},   {"-1/10", BigComplex(real("-1/10"), BigReal(ctx))},
      {"1/20", BigComplex(real("1/20"), BigReal(ctx))},   {"-1/20", BigComplex(real("-1/20"), BigReal(ctx))},
      {"i/10", BigComplex(BigReal(ctx), real("1/10"))},
  };
  const std::size_t N = 400;
  BigReal gap = real("1e-6"), err = real("1e-15");
  TraceReport rep;
  rep.id = "outside";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const long idx = static_cast<long>(i + 1);
    TraceReport probe = verify::ratio_blowup_probe(xs[i].second, N, gap);
    for (auto& rec : probe.records) rec.index += 1000 * idx;
    rep.merge(probe);
    rrcf::OddEvenLimits oe = rrcf::odd_even_limits(xs[i].second, N);
    rep.check("odd_vs_F1", idx, oe.odd_error, std::nullopt, err);
    rep.check("even_vs_F2", idx, oe.even_error, std::nullopt, err);
    rep.check("gap", idx, oe.gap, gap, std::nullopt);
    rep.notes.push_back("point " + std::to_string(idx) + ": x = " + xs[i].first);
  }
  r.report = std::move(rep);
  return r;
}

CriterionResult general_convergence() {
  CriterionResult r;
  PrecisionContext ctx(256, 32);
  std::vector<RootOfUnity> roots;
  for (long m : {5L, 10L, 15L, 20L})
    for (const auto& x : schur::primitive_roots(m)) roots.push_back(x);
  auto parts = parallel_map(roots.size(), [&](std::size_t i) {
    TraceReport t = verify::general_convergence_check(roots[i], static_cast<std::size_t>(60 * roots[i].m), ctx);
    for (auto& rec : t.records) rec.index = root_index(roots[i]);
    return t;
  });
  r.report = merged("general-convergence", parts);
  r.report.notes.push_back("index = 100 m + k; n = 60 m");
  return r;
}

CriterionResult golden_patterns(const std::filesystem::path& golden) {
  CriterionResult r;
  TraceReport rep;
  rep.id = "mod-patterns";
  PrecisionContext ctx;
  struct Case {
    const char* file;
    PartialQuotientStream stream;
  };
  std::vector<Case> cases = {
      {"alpha_mod5.txt", PartialQuotientStream::periodic(cfrac::alpha_prefix(), cfrac::alpha_period())},
      {"tower2_mod5.txt", PartialQuotientStream::tower(2)},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::string got = cfrac::mod_convergents(cases[i].stream, 5).format();
    std::string want = read_file(golden / cases[i].file);
    bool same = got == want;
    rep.check("golden_match", static_cast<long>(i + 1), BigReal(same ? 1 : 0, ctx), BigReal(1, ctx), std::nullopt);
    if (!same) rep.notes.push_back(std::string(cases[i].file) + " differs from the computed pattern");
    r.extra.emplace_back(cases[i].file, got);
  }
  r.report = std::move(rep);
  return r;
}

CriterionResult ten_limits() {
  CriterionResult r;
  r.report = verify::ten_limits_trace(PartialQuotientStream::s_prime(), 3);
  return r;
}

bool same_tree(const std::filesystem::path& a, const std::filesystem::path& b, TraceReport& rep) {
  std::map<std::string, std::filesystem::path> fa, fb;
  for (const auto& e : std::filesystem::directory_iterator(a)) fa[e.path().filename().string()] = e.path();
  for (const auto& e : std::filesystem::directory_iterator(b)) fb[e.path().filename().string()] = e.path();
  bool ok = true;
  PrecisionContext ctx;
  long idx = 0;
  for (const auto& [name, path] : fa) {
    ++idx;
    auto it = fb.find(name);
    bool same = it != fb.end() && read_file(path) == read_file(it->second);
    rep.check("identical", idx, BigReal(same ? 1 : 0, ctx), BigReal(1, ctx), std::nullopt);
    if (!same) {
      rep.notes.push_back(name + " differs between runs");
      ok = false;
    }
  }
  for (const auto& [name, path] : fb) {
    if (!fa.count(name)) {
      rep.fail("identical", ++idx, name + " only in the second run");
      ok = false;
    }
  }
  return ok;
}

CriterionResult determinism(const SuiteOptions& opt) {
  CriterionResult r;
  r.report.id = "determinism";
  SuiteOptions quick = opt;
  quick.profile = Profile::Quick;
  nlohmann::json doc = {{"subcommand", "verify-all"}, {"profile", "quick"}, {"seed", opt.seed}};
  ExperimentConfig cfg = load_config(doc);
  auto base = std::filesystem::temp_directory_path() / ("rrlab-determinism-" + std::to_string(::getpid()));
  std::filesystem::remove_all(base);
  for (const char* run : {"a", "b"}) {
    ArtifactWriter w(base / run, cfg);
    verify_all(quick, &w, nullptr);
  }
  same_tree(base / "a", base / "b", r.report);
  r.report.notes.push_back("compared " + std::to_string(r.report.records.size()) + " files");
  std::filesystem::remove_all(base);
  return r;
}

}  // namespace

std::filesystem::path default_golden_dir() {
  if (const char* env = std::getenv("RRLAB_GOLDEN_DIR")) return env;
  return RRLAB_GOLDEN_DIR;
}

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "Schur closed form vs K_{41m-1}, m <= 50";
    case 2: return "boundary values at m-2, m-1 vs recurrence, m <= 60";
    case 3: return "divergence certificate, S-minimal point";
    case 4: return "tower-of-twos point: a_{i+1} >= 2^{d_i} and level-2 certificate";
    case 5: return "lemma suites: Lipschitz, growth, K-rate, perturbation";
    case 6: return "determinant modulus and Fibonacci bound, 200 random points";
    case 7: return "outside the circle: odd/even limits vs F1, F2";
    case 8: return "general convergence at 5m-th roots";
    case 9: return "mod-5 convergent patterns vs golden files";
    case 10: return "ten-limit trace, S-prime point";
    case 11: return "determinism of verify-all quick";
  }
  throw PreconditionViolation("no criterion " + std::to_string(id));
}

std::optional<double> runtime_limit(int id, Profile p) {
  switch (id) {
    case 1: return 60;
    case 2: return 30;
    case 3: return p == Profile::Quick ? 10 : 1200;
    case 5: return 180;
    case 6: return 120;
    case 7: return 30;
    case 8: return 120;
    case 9: return 1;
    case 10: return 300;
  }
  return std::nullopt;
}

CriterionResult run_criterion(int id, const SuiteOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = schur_closed_form(); break;
    case 2: r = boundary_equivalence(); break;
    case 3: r = divergence_certificate(opt.profile); break;
    case 4: r = tower_point(); break;
    case 5: r = lemma_suites(opt.seed); break;
    case 6: r = determinant_and_fibonacci(opt.seed); break;
    case 7: r = outside_split(); break;
    case 8: r = general_convergence(); break;
    case 9: r = golden_patterns(opt.golden_dir.empty() ? default_golden_dir() : opt.golden_dir); break;
    case 10: r = ten_limits(); break;
    case 11: r = determinism(opt); break;
    default: throw PreconditionViolation("no criterion " + std::to_string(id));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.id = id;
  r.title = criterion_title(id);
  r.limit_seconds = runtime_limit(id, opt.profile);
  return r;
}

std::string format_line(const CriterionResult& r) {
  char time[96];
  if (r.limit_seconds)
    std::snprintf(time, sizeof time, "%.2fs (limit %.0fs)", r.seconds, *r.limit_seconds);
  else
    std::snprintf(time, sizeof time, "%.2fs", r.seconds);
  std::string line = "criterion " + std::to_string(r.id) + " " + (r.pass() ? "PASS" : "FAIL") + ": " + r.title +
                     "; " + std::to_string(r.report.violations()) + " of " +
                     std::to_string(r.report.records.size()) + " checks violated; " + time;
  if (!r.within_time()) line += "; over the time limit";
  return line;
}

bool VerifySummary::all_pass() const {
  for (const auto& r : results)
    if (!r.checks_pass()) return false;
  return true;
}

nlohmann::json VerifySummary::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) {
    auto wm = r.report.worst_margin();
    rows.push_back({{"criterion", r.id},
                    {"title", r.title},
                    {"pass", r.checks_pass()},
                    {"checks", r.report.records.size()},
                    {"violations", r.report.violations()},
                    {"worst_margin", wm ? wm->to_string(12) : ""}});
  }
  return {{"schema", "rrlab-v1"}, {"kind", "verify-summary"}, {"all_pass", all_pass()}, {"criteria", rows}};
}

VerifySummary verify_all(const SuiteOptions& opt, ArtifactWriter* out, std::ostream* log) {
  VerifySummary s;
  for (int id = 1; id <= 10; ++id) {
    CriterionResult r = run_criterion(id, opt);
    if (log) *log << format_line(r) << std::endl;
    if (out) {
      char stem[32];
      std::snprintf(stem, sizeof stem, "criterion_%02d", id);
      out->write_json(std::string(stem) + ".json", r.report.to_json());
      out->write_text(std::string(stem) + ".csv", r.report.to_csv());
      for (const auto& [name, content] : r.extra) out->write_text(std::string(stem) + "_" + name, content);
    }
    s.results.push_back(std::move(r));
  }
  if (out) out->write_json("summary.json", s.to_json());
  return s;
}

}  // namespace rrlab::tools
