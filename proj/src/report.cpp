#include "speclab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

namespace speclab {

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json to_json(const UncertaintyCertificate& c) {
  Json j;
  j["manifold"] = c.manifold;
  j["basis"] = c.basis;
  j["region"] = c.region;
  j["window"] = c.window;
  j["epsilon"] = number(c.epsilon);
  j["epsilon_prime"] = number(c.epsilon_prime);
  j["level"] = number(c.level);
  j["level_prime"] = number(c.level_prime);
  j["region_measure"] = number(c.region_measure);
  j["volume"] = number(c.volume);
  j["window_count"] = c.window_count;
  j["sup_a_s"] = number(c.sup_a_s);
  j["integral_a_s"] = number(c.integral_a_s);
  j["defect"] = number(c.defect);
  j["lhs"] = number(c.lhs);
  j["rhs_quant"] = number(c.rhs_quant);
  j["rhs_classical"] = number(c.rhs_classical);
  j["vacuous"] = c.vacuous;
  j["holds_chain"] = c.holds_chain;
  j["holds_quant"] = c.holds_quant;
  j["holds_classical"] = c.holds_classical;
  j["sample_count"] = c.sample_count;
  return j;
}

Json to_json(const SuiteResult& r, bool include_draws) {
  Json j;
  j["valid"] = r.valid;
  j["vacuous"] = r.vacuous;
  j["violations"] = r.violations;
  j["min_margin"] = number(r.min_margin);
  std::size_t classical_fail = 0;
  for (const auto& d : r.draws) {
    if (!d.certificate.vacuous && !d.certificate.holds_classical) ++classical_fail;
  }
  j["classical_bound_failures"] = classical_fail;
  if (include_draws) {
    Json draws = Json::array();
    for (const auto& d : r.draws) {
      Json e = to_json(d.certificate);
      e["draw"] = d.draw;
      e["fingerprint"] = d.fingerprint;
      draws.push_back(std::move(e));
    }
    j["draws"] = std::move(draws);
  }
  return j;
}

Json to_json(const FourierRatioCheck& c) {
  Json j;
  j["R"] = number(c.R);
  j["fourier_ratio"] = number(c.fourier_ratio);
  j["neighborhood_measure"] = number(c.neighborhood_measure);
  j["ratio"] = number(c.ratio);
  j["outside_mass"] = number(c.outside_mass);
  return j;
}

Json to_json(const std::vector<FrSweepRow>& rows) {
  Json arr = Json::array();
  double lo = INFINITY;
  for (const auto& r : rows) {
    Json j = to_json(r.check);
    j["k"] = r.k;
    j["width"] = number(r.width);
    arr.push_back(std::move(j));
    lo = std::min(lo, r.check.ratio);
  }
  Json out;
  out["rows"] = std::move(arr);
  out["min_ratio"] = number(lo);
  return out;
}

Json to_json(const TubularReport& t) {
  Json j;
  j["mode"] = t.mode;
  j["lambda"] = number(t.lambda);
  j["R"] = number(t.R);
  j["p"] = number(t.p);
  j["q"] = number(t.q);
  j["r"] = number(t.r);
  j["n"] = t.n;
  j["k"] = t.k;
  j["A"] = number(t.A);
  j["window"] = {number(t.window_lo), number(t.window_hi)};
  j["window_count"] = t.window_count;
  j["tube_measure"] = number(t.tube_measure);
  j["delta_pq"] = number(t.delta_pq);
  j["delta_q"] = number(t.delta_q);
  j["log_power"] = number(t.log_power);
  j["lhs"] = number(t.lhs);
  j["rhs_without_C"] = number(t.rhs);
  j["ratio"] = number(t.ratio);
  j["vacuous"] = t.vacuous;
  return j;
}

Json to_json(const TubularSweep& s, bool include_reports) {
  Json j;
  j["certificates"] = s.reports.size();
  j["min_ratio"] = number(s.min_ratio);
  j["max_ratio"] = number(s.max_ratio);
  j["growth_exponent"] = number(s.growth_exponent);
  j["skipped_lambda_below_R"] = s.skipped;
  if (include_reports) {
    Json arr = Json::array();
    for (const auto& t : s.reports) arr.push_back(to_json(t));
    j["reports"] = std::move(arr);
  }
  return j;
}

Json to_json(const BrScan& s) {
  Json j;
  j["functions"] = s.functions;
  j["offsets"] = s.offsets;
  j["c1_center"] = number(s.min_ratio_center);
  j["C1_center"] = number(s.max_ratio_center);
  j["c1"] = number(s.min_ratio);
  j["C1"] = number(s.max_ratio);
  j["widening"] = number(s.widening);
  return j;
}

Json to_json(const SharpnessRow& r) {
  Json j;
  j["l"] = r.l;
  j["C"] = number(r.C);
  j["band_measure"] = number(r.band_measure);
  j["c_l_sq"] = number(r.c_l_sq);
  j["mass"] = number(r.mass);
  j["product"] = number(r.product);
  return j;
}

Json to_json(const WeylReport& r) {
  Json j;
  j["manifold"] = r.manifold;
  j["dimension"] = r.dimension;
  j["volume"] = number(r.volume);
  j["fitted_exponent"] = number(r.fitted_exponent);
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.lambdas.size(); ++i) {
    rows.push_back({{"lambda", number(r.lambdas[i])},
                    {"N", r.counts[i]},
                    {"leading", number(r.leading[i])},
                    {"remainder", number(r.remainder[i])},
                    {"window_max", number(r.window_max[i])}});
  }
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const HomogeneityDefect& d) {
  Json j;
  j["lambda"] = number(d.lambda);
  j["multiplicity"] = d.multiplicity;
  j["eps1"] = number(d.eps1);
  j["c1_sup"] = number(d.c1_sup);
  j["relative_deviation"] = number(d.relative_deviation);
  j["slice_integral"] = number(d.slice_integral);
  return j;
}

Json to_json(const UpForHvCertificate& c) {
  Json j;
  j["mode"] = c.mode;
  j["a0"] = number(c.a0);
  j["lhs"] = number(c.lhs);
  j["integral_a_s"] = number(c.integral_a_s);
  j["rhs"] = number(c.rhs);
  j["constant"] = number(c.constant);
  j["c_v"] = number(c.c_v);
  j["min_s"] = number(c.min_s);
  j["vacuous"] = c.vacuous;
  j["holds_chain"] = c.holds_chain;
  j["holds"] = c.holds;
  j["kato_threshold"] = c.kato_threshold;
  return j;
}

Json envelope(const std::string& command, const Json& config, Json result) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  Json j;
  j["tool"] = "speclab";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["provenance"] = config;
  j["generated_at"] = buf;
  j["result"] = std::move(result);
  return j;
}

std::string payload_without_timestamp(const std::string& report) {
  Json j = Json::parse(report);
  j.erase("generated_at");
  return j.dump();
}

}  // namespace speclab
