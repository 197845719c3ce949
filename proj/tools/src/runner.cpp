#include "runner.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "artifacts.hpp"
#include "criteria.hpp"
#include "rrlab/cfrac.hpp"
#include "rrlab/errors.hpp"
#include "rrlab/parallel.hpp"
#include "rrlab/rrcf.hpp"
#include "rrlab/schur.hpp"
#include "rrlab/verify.hpp"

namespace rrlab::tools {

namespace {

using cfrac::PartialQuotientStream;
using nlohmann::json;

Point point_from(const ExperimentConfig& cfg, const std::string& default_angle) {
  const PrecisionContext& ctx = cfg.ctx;
  if (!cfg.has("point")) return unit_point(mpq_class(default_angle), ctx);
  const json& p = cfg.raw["point"];
  if (p.contains("angle")) {
    std::string a = p["angle"];
    if (a.find_first_of(".eE") == std::string::npos) {
      mpq_class t;
      if (t.set_str(a, 10) != 0) throw ConfigInvalid("point.angle '" + a + "' is not a rational");
      t.canonicalize();
      return unit_point(t, ctx);
    }
    return unit_point(BigReal::from_string(a, ctx), ctx);
  }
  BigReal re = BigReal::from_string(p.value("re", std::string("0")), ctx);
  BigReal im = BigReal::from_string(p.value("im", std::string("0")), ctx);
  return plain_point(BigComplex(re, im));
}

BigComplex disk_point(const ExperimentConfig& cfg) {
  const PrecisionContext& ctx = cfg.ctx;
  if (!cfg.has("point")) return BigComplex(BigReal::from_string("1/10", ctx), BigReal(ctx));
  const json& p = cfg.raw["point"];
  if (p.contains("angle")) throw ConfigInvalid("outside needs a point given by 're'/'im'");
  return BigComplex(BigReal::from_string(p.value("re", std::string("0")), ctx),
                    BigReal::from_string(p.value("im", std::string("0")), ctx));
}

PartialQuotientStream stream_from(const ExperimentConfig& cfg, PartialQuotientStream fallback) {
  return cfg.has("stream") ? PartialQuotientStream::from_json(cfg.raw["stream"]) : std::move(fallback);
}

std::size_t positive(const ExperimentConfig& cfg, const char* key, long fallback) {
  long v = cfg.get_long(key, fallback);
  if (v < 1) throw ConfigInvalid(std::string(key) + " must be positive");
  return static_cast<std::size_t>(v);
}

std::vector<schur::RootOfUnity> roots_for(const ExperimentConfig& cfg, long default_max) {
  std::vector<schur::RootOfUnity> out;
  if (cfg.has("m")) {
    long m = cfg.get_long("m", 1);
    if (cfg.has("k")) {
      schur::RootOfUnity x(cfg.get_long("k", 1), m);
      if (!x.primitive()) throw ConfigInvalid("k/m does not give a primitive root");
      out.push_back(x);
    } else {
      out = schur::primitive_roots(m);
    }
    return out;
  }
  for (long m = cfg.get_long("m_min", 1); m <= cfg.get_long("m_max", default_max); ++m) {
    if (m % 5 == 0) continue;
    for (const auto& x : schur::primitive_roots(m)) out.push_back(x);
  }
  return out;
}

int emit_report(ArtifactWriter& w, const std::string& stem, const TraceReport& rep, std::ostream& log) {
  w.write_json(stem + ".json", rep.to_json());
  w.write_text(stem + ".csv", rep.to_csv());
  log << rep.id << ": " << rep.records.size() << " checks, " << rep.violations() << " violated";
  if (rep.reachable_levels) log << ", reachable levels " << *rep.reachable_levels;
  log << "\n";
  return rep.all_pass() ? kExitOk : kExitCheckFailed;
}

TraceReport per_root(const std::vector<schur::RootOfUnity>& roots, const std::string& id,
                     const std::function<TraceReport(const schur::RootOfUnity&)>& f) {
  auto parts = parallel_map(roots.size(), [&](std::size_t i) {
    TraceReport t = f(roots[i]);
    for (auto& r : t.records) r.index += 1000 * (100 * roots[i].m + roots[i].k);
    return t;
  });
  TraceReport rep;
  rep.id = id;
  for (const auto& p : parts) rep.merge(p);
  rep.notes.push_back("index = 1000 (100 m + k) + q");
  return rep;
}

int schur_catalog(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  json rows = schur::catalog_json(cfg.get_long("m_min", 1), cfg.get_long("m_max", 50), cfg.ctx);
  w.write_json("catalog.json", {{"schema", "rrlab-v1"}, {"kind", "schur-catalog"}, {"rows", rows}});
  std::ostringstream csv;
  csv << "m,k,lambda,sigma,e,K_re,K_im,R_j\n";
  for (const auto& r : rows)
    csv << r["m"] << ',' << r["k"] << ',' << r["lambda"] << ',' << r["sigma"] << ',' << r["e"] << ','
        << r["K"][0].get<std::string>() << ',' << r["K"][1].get<std::string>() << ',' << r["R_j"] << '\n';
  w.write_text("catalog.csv", csv.str());
  log << "schur-catalog: " << rows.size() << " roots\n";
  return kExitOk;
}

int trace(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  Point x = point_from(cfg, "1/7");
  rrcf::ApproximantTrace t = rrcf::classical_approximants(x, positive(cfg, "N", 100));
  w.write_text("trace.csv", t.to_csv());
  w.write_json("trace.json", t.to_json());
  log << "trace: " << t.records.size() << " approximants at " << t.point << "\n";
  return kExitOk;
}

int lipschitz(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  std::mt19937_64 rng(cfg.seed);
  std::size_t pairs = positive(cfg, "pairs", 100), N = positive(cfg, "N", 200);
  std::vector<std::pair<mpq_class, mpq_class>> xy;
  for (std::size_t i = 0; i < pairs; ++i) {
    mpq_class x(mpz_class(static_cast<unsigned long>(rng())), mpz_class(1) << 64);
    mpq_class u(mpz_class(static_cast<unsigned long>(rng())), mpz_class(1) << 64);
    unsigned shift = static_cast<unsigned>(rng() % 61);
    mpq_class y = x + (u - mpq_class(1, 2)) / mpq_class(mpz_class(1) << shift);
    x.canonicalize();
    y.canonicalize();
    xy.emplace_back(x, y);
  }
  // Without an explicit precision, size it to the recurrence length.
  const PrecisionContext ctx = cfg.has("precision_bits") ? cfg.ctx : verify::recurrence_context(N);
  auto parts = parallel_map(xy.size(), [&](std::size_t i) {
    TraceReport t = verify::check_lipschitz(unit_point(xy[i].first, ctx), unit_point(xy[i].second, ctx), N);
    for (auto& r : t.records) r.index += 100000 * static_cast<long>(i);
    return t;
  });
  TraceReport rep;
  rep.id = "lipschitz";
  for (const auto& p : parts) rep.merge(p);
  rep.notes.push_back("index = 100000 pair + n");
  return emit_report(w, "lipschitz", rep, log);
}

int perturb(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  const PrecisionContext& ctx = cfg.ctx;
  long m = cfg.get_long("m", 7), k = cfg.get_long("k", 1);
  schur::RootOfUnity x(k, m);
  verify::PerturbationCase c;
  c.x = x;
  c.q = cfg.get_long("q", 5);
  c.which = cfg.get_string("subsequence", "last") == "last" ? verify::Subsequence::Last
                                                             : verify::Subsequence::SecondLast;
  BigReal phi = golden_ratio(ctx);
  c.eps = cfg.has("eps") ? BigReal::from_string(cfg.get_string("eps", ""), ctx)
                         : BigReal(1, ctx) / (BigReal(20, ctx) * phi * phi);
  std::string off = cfg.get_string("offset", "1e-30");
  c.y = Angle{BigReal::from_mpq(x.angle(), ctx) + BigReal::from_string(off, ctx)};
  return emit_report(w, "perturb", verify::check_perturbation(c, ctx), log);
}

int outside(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  BigComplex x = disk_point(cfg);
  std::size_t N = positive(cfg, "N", 80);
  BigReal min_gap = BigReal::from_string(cfg.get_string("min_gap", "1e-6"), cfg.ctx);
  rrcf::OddEvenLimits oe = rrcf::odd_even_limits(x, N);
  const std::size_t d = BigReal::roundtrip_digits(cfg.ctx.bits);
  w.write_json("odd_even.json", {{"schema", "rrlab-v1"},
                                 {"kind", "odd-even-limits"},
                                 {"x", x.to_string(d)},
                                 {"N", N},
                                 {"odd", oe.odd.to_string(d)},
                                 {"even", oe.even.to_string(d)},
                                 {"F1", oe.f1.value.to_string(d)},
                                 {"F2", oe.f2.value.to_string(d)},
                                 {"gap", oe.gap.to_string(d)},
                                 {"odd_error", oe.odd_error.to_string(d)},
                                 {"even_error", oe.even_error.to_string(d)}});
  return emit_report(w, "outside", verify::ratio_blowup_probe(x, N, min_gap), log);
}

int mod_pattern(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  auto s = stream_from(cfg, PartialQuotientStream::periodic(cfrac::alpha_prefix(), cfrac::alpha_period()));
  auto m = static_cast<std::uint64_t>(cfg.get_long("modulus", 5));
  cfrac::ModPattern p = cfrac::mod_convergents(s, m, positive(cfg, "max_terms", 4096));
  w.write_text("pattern.txt", p.format());
  json res = json::array();
  for (const auto& r : p.residues) res.push_back({r.c, r.d});
  w.write_json("pattern.json", {{"schema", "rrlab-v1"},
                                {"kind", "mod-pattern"},
                                {"stream", s.to_json()},
                                {"modulus", m},
                                {"preperiod", p.preperiod ? json(*p.preperiod) : json()},
                                {"period", p.period ? json(*p.period) : json()},
                                {"residues", res}});
  log << p.format();
  return kExitOk;
}

int build_point(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  auto s = stream_from(cfg, PartialQuotientStream::s_minimal());
  cfrac::SPoint pt = cfrac::build_S_point(s, positive(cfg, "levels", 3), {}, cfrac::CapPolicy::Stop);
  json terms = json::array(), conv = json::array(), certs = json::array();
  for (const auto& a : pt.terms) terms.push_back(a.get_str());
  for (const auto& c : pt.convergents) conv.push_back({{"i", c.index}, {"c", c.c.get_str()}, {"d", c.d.get_str()}});
  for (const auto& c : pt.certificates)
    certs.push_back({{"level", c.level},
                     {"a_next", c.next_quotient.get_str()},
                     {"d", c.d.get_str()},
                     {"threshold_ceiling", c.threshold_ceiling.get_str()},
                     {"threshold_upper", c.threshold_upper},
                     {"verified", c.verified}});
  w.write_json("point.json", {{"schema", "rrlab-v1"},
                              {"kind", "s-point"},
                              {"rule", pt.rule.to_json()},
                              {"terms", terms},
                              {"convergents", conv},
                              {"certificates", certs},
                              {"capped", pt.capped}});
  bool ok = true;
  for (const auto& c : pt.certificates) ok = ok && c.verified;
  log << "build-point: " << pt.certificates.size() << " levels" << (pt.capped ? " (capped)" : "") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int sample_measure(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  verify::MeasureOptions o;
  if (cfg.has("rule")) {
    const json& r = cfg.raw["rule"];
    std::string kind = r["kind"];
    o.rule.kind = kind == "golden" ? cfrac::Growth::Golden
                  : kind == "diamond" ? cfrac::Growth::Diamond
                                      : cfrac::Growth::Constant;
    o.rule.value = r.value("value", std::string("1"));
  }
  o.from_index = positive(cfg, "from_index", 1);
  o.depth = positive(cfg, "depth", 10);
  o.samples = positive(cfg, "samples", 1000);
  o.seed = cfg.seed;
  o.bits = cfg.ctx.bits;
  verify::MeasureEstimate e = verify::measure_sampler(o);
  std::ostringstream csv;
  csv << "index,hits\n";
  for (std::size_t i = 0; i < e.hits_at.size(); ++i) csv << i + 1 << ',' << e.hits_at[i] << '\n';
  w.write_text("measure.csv", csv.str());
  w.write_json("measure.json", {{"schema", "rrlab-v1"},
                                {"kind", "measure-estimate"},
                                {"samples", e.samples},
                                {"hits", e.hits},
                                {"hits_at", e.hits_at},
                                {"frequency", e.frequency()}});
  log << "sample-measure: frequency " << e.frequency() << " over " << e.samples << " samples\n";
  return kExitOk;
}

int general_probe(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  auto s = stream_from(cfg, PartialQuotientStream::s_diamond(cfrac::alpha_residues()));
  verify::ProbeOptions o;
  o.levels = positive(cfg, "levels", 2);
  o.from_q = cfg.get_long("from_q", 3);
  verify::ProbeOutcome p = verify::general_divergence_probe(s, o);
  std::ostringstream csv;
  csv << "n,w_sum,v_sum,distance\n";
  for (std::size_t i = 0; i < p.indices.size(); ++i)
    csv << p.indices[i] << ',' << p.w_sums[i].to_string(20) << ',' << p.v_sums[i].to_string(20) << ','
        << p.distances[i].to_string(20) << '\n';
  w.write_text("ladder.csv", csv.str());
  json j = p.report.to_json();
  j["verdict"] = p.verdict;
  j["catalog_a"] = p.a;
  j["catalog_b"] = p.b;
  w.write_json("probe.json", j);
  w.write_text("probe.csv", p.report.to_csv());
  log << "general-probe: " << p.verdict << " (R_" << p.a << ", R_" << p.b << ")\n";
  return p.report.all_pass() ? kExitOk : kExitCheckFailed;
}

int verify_all_cmd(const ExperimentConfig& cfg, ArtifactWriter& w, std::ostream& log) {
  SuiteOptions o;
  o.profile = cfg.profile;
  o.seed = cfg.seed;
  o.golden_dir = cfg.has("golden_dir") ? std::filesystem::path(cfg.get_string("golden_dir", "")) : default_golden_dir();
  VerifySummary s = verify_all(o, &w, &log);
  return s.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const ExperimentConfig& cfg, std::ostream& log) {
  ArtifactWriter w(cfg.out, cfg);
  const std::string& sub = cfg.subcommand;
  const PrecisionContext& ctx = cfg.ctx;
  if (sub == "schur-catalog") return schur_catalog(cfg, w, log);
  if (sub == "trace") return trace(cfg, w, log);
  if (sub == "diverge")
    return emit_report(w, "diverge",
                       verify::divergence_trace(stream_from(cfg, PartialQuotientStream::s_minimal()),
                                                positive(cfg, "levels", 3)),
                       log);
  if (sub == "ten-limits")
    return emit_report(w, "ten_limits",
                       verify::ten_limits_trace(stream_from(cfg, PartialQuotientStream::s_prime()),
                                                positive(cfg, "levels", 3)),
                       log);
  if (sub == "general-probe") return general_probe(cfg, w, log);
  if (sub == "lipschitz") return lipschitz(cfg, w, log);
  if (sub == "growth") {
    long q_max = cfg.get_long("q_max", 20);
    return emit_report(w, "growth", per_root(roots_for(cfg, 30), "growth", [&](const schur::RootOfUnity& x) {
                         return verify::check_growth(x, q_max, ctx);
                       }),
                       log);
  }
  if (sub == "k-rate") {
    long q_max = cfg.get_long("q_max", 20);
    return emit_report(w, "k_rate", per_root(roots_for(cfg, 30), "k-rate", [&](const schur::RootOfUnity& x) {
                         return verify::check_K_rate(x, q_max, ctx);
                       }),
                       log);
  }
  if (sub == "perturb") return perturb(cfg, w, log);
  if (sub == "outside") return outside(cfg, w, log);
  if (sub == "mod-pattern") return mod_pattern(cfg, w, log);
  if (sub == "build-point") return build_point(cfg, w, log);
  if (sub == "sample-measure") return sample_measure(cfg, w, log);
  if (sub == "verify-all") return verify_all_cmd(cfg, w, log);
  throw ConfigInvalid("unknown subcommand '" + sub + "'");
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::ConfigInvalid: return kExitConfigInvalid;
      case ErrorKind::CapExceeded: return kExitCapExceeded;
      case ErrorKind::PrecisionTooLow: return kExitPrecisionTooLow;
      default: return kExitError;
    }
  }
  return kExitError;
}

}  // namespace rrlab::tools
