#include "speclab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "speclab/spectra.hpp"

namespace speclab {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"manifold", "auto",
       "circle | torus2-flat | torus2-warped | sphere | circle-fd (auto: weyl uses torus2-flat, "
       "others circle)"},
      {"metric", "2+sin", "metric coefficient h(t) for circles and the warped torus y-factor"},
      {"potential", "0", "potential V(s) for circle-fd; the constant L is available"},
      {"nmax", "20", "circle cutoff |n| <= nmax"},
      {"lmax", "5", "torus cutoff lambda <= lmax; sphere degree l <= lmax"},
      {"grid", "2048", "circle-fd grid size"},
      {"k", "20", "circle-fd number of eigenpairs"},
      {"seed", "20240601", "seed of the randomized suite"},
      {"valid", "125", "non-vacuous draws per manifold in the suite"},
      {"mode", "auto",
       "uncertainty: suite | single; restriction: stability | unit | summation"},
      {"region", "whole",
       "whole | arcs:lo:len,... | cells:xlo:xlen:ylo:ylen,... | band:half_width"},
      {"window", "groups:1", "groups:g,... | lambdas:l,... | range:lo:hi"},
      {"draws", "false", "include every suite draw in the report"},
      {"ls", "4,16,64,256", "sphere degrees"},
      {"c", "auto", "band constant: auto (l = 16 half-mass value), bisect (per l), or a number"},
      {"lambda-min", "auto", "scan start (weyl 10, restriction 20)"},
      {"lambda-max", "auto", "scan end (weyl 200, restriction 60)"},
      {"points", "40", "weyl scan points (log spaced)"},
      {"kmin", "3", "smallest bump exponent, width 2^-k"},
      {"kmax", "7", "largest bump exponent"},
      {"unit-scale", "false", "fourier-ratio with R = 1 instead of R = 2^k"},
      {"r-values", "8,16,32", "tube scales R"},
      {"p", "inf", "restriction exponent p"},
      {"q", "2", "restriction exponent q"},
      {"r", "3", "restriction exponent r"},
      {"a", "auto", "hypothesis constant A (auto: sqrt(R))"},
      {"reports", "false", "include every tubular certificate in the report"},
      {"br", "true", "run the restriction ratio scan"},
      {"br-lo", "10", "restriction scan lambda start"},
      {"br-hi", "50", "restriction scan lambda end"},
      {"br-r", "32", "offsets |y| <= 1/br-r"},
      {"offsets", "9", "number of offsets"},
      {"format", "auto", "csv | json (auto: the command's native format)"},
      {"output", "-", "output path, - for stdout"},
  };
  return keys;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidInput(what + ": '" + text + "' is not a number");
  }
  if (trim(text.substr(used)) != "") throw InvalidInput(what + ": '" + text + "' is not a number");
  return v;
}

}  // namespace

RunConfig::RunConfig() {
  for (const auto& k : config_keys()) values_[k.name] = k.default_value;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvalidInput("unknown configuration key '" + key + "'");
  it->second = value;
}

void RunConfig::load_text(const std::string& text, const std::string& origin) {
  std::istringstream is(text);
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput(origin + ":" + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    try {
      set(key, value);
    } catch (const InvalidInput& e) {
      throw InvalidInput(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path);
}

const std::string& RunConfig::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InvalidInput("unknown configuration key '" + key + "'");
  return it->second;
}

double RunConfig::num(const std::string& key) const { return parse_double(str(key), key); }

long long RunConfig::integer(const std::string& key) const {
  const double v = num(key);
  if (v != std::floor(v) || std::abs(v) > 9e15) {
    throw InvalidInput(key + ": '" + str(key) + "' is not an integer");
  }
  return static_cast<long long>(v);
}

bool RunConfig::flag(const std::string& key) const {
  const std::string& v = str(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InvalidInput(key + ": '" + v + "' is not a boolean");
}

std::vector<double> RunConfig::list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(str(key), ',')) out.push_back(parse_double(part, key));
  if (out.empty()) throw InvalidInput(key + ": empty list");
  return out;
}

Json RunConfig::to_json() const {
  Json j;
  for (const auto& k : config_keys()) j[k.name] = values_.at(k.name);
  return j;
}

// --- commands ------------------------------------------------------------------

namespace {

struct Output {
  std::ostream& stream;
  std::unique_ptr<std::ofstream> file;
};

Output open_output(const RunConfig& cfg, std::ostream& out) {
  const std::string& path = cfg.str("output");
  if (path == "-") return {out, nullptr};
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw InvalidInput("cannot write '" + path + "'");
  std::ostream& s = *f;
  return {s, std::move(f)};
}

std::string resolve_format(RunConfig& cfg, const std::string& native,
                           const std::vector<std::string>& allowed) {
  if (cfg.is_auto("format")) cfg.set("format", native);
  const std::string f = cfg.str("format");
  for (const auto& a : allowed) {
    if (a == f) return f;
  }
  throw InvalidInput("format '" + f + "' is not available for this command");
}

void resolve_auto(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (cfg.is_auto(key)) cfg.set(key, value);
}

int checked_int(const RunConfig& cfg, const std::string& key, long long lo, long long hi) {
  const long long v = cfg.integer(key);
  if (v < lo || v > hi) {
    throw InvalidInput(key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "]");
  }
  return static_cast<int>(v);
}

SpectralBasis build_basis(const RunConfig& cfg) {
  const std::string& m = cfg.str("manifold");
  if (m == "circle") {
    return circle_basis(ManifoldModel::circle(MetricProfile1D::parse(cfg.str("metric"))),
                        checked_int(cfg, "nmax", 0, 1'000'000));
  }
  if (m == "torus2-flat") return torus2_basis(ManifoldModel::flat_torus(), cfg.num("lmax"));
  if (m == "torus2-warped") {
    return torus2_basis(ManifoldModel::warped_torus(MetricProfile1D::parse(cfg.str("metric"))),
                        cfg.num("lmax"));
  }
  if (m == "sphere") return sphere_basis(checked_int(cfg, "lmax", 0, 128));
  if (m == "circle-fd") {
    const MetricProfile1D h = MetricProfile1D::parse(cfg.str("metric"));
    const double length = arc_length_reparam(h, 512).length;
    return fd_eigensolve_circle(h, PotentialProfile::parse(cfg.str("potential"), length),
                                checked_int(cfg, "grid", 128, 4096),
                                checked_int(cfg, "k", 1, 512));
  }
  throw InvalidInput("unknown manifold '" + m + "'");
}

RegionSpec parse_region(const std::string& text, const ManifoldModel& m) {
  if (text == "whole") return RegionSpec::whole(m);
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("malformed region '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (kind == "band") return RegionSpec::equatorial_band(m, parse_double(body, "region"));
  if (kind == "arcs") {
    std::vector<Interval> arcs;
    for (const auto& a : split(body, ',')) {
      const auto f = split(a, ':');
      if (f.size() != 2) throw InvalidInput("arc must be lo:len in '" + text + "'");
      arcs.push_back({parse_double(f[0], "region"), parse_double(f[1], "region")});
    }
    return RegionSpec::arcs(m, arcs);
  }
  if (kind == "cells") {
    std::vector<std::pair<Interval, Interval>> cells;
    for (const auto& c : split(body, ',')) {
      const auto f = split(c, ':');
      if (f.size() != 4) throw InvalidInput("cell must be xlo:xlen:ylo:ylen in '" + text + "'");
      cells.push_back({{parse_double(f[0], "region"), parse_double(f[1], "region")},
                       {parse_double(f[2], "region"), parse_double(f[3], "region")}});
    }
    return RegionSpec::cells(m, cells);
  }
  throw InvalidInput("unknown region kind '" + kind + "'");
}

SpectralWindow parse_window(const std::string& text, const SpectralBasis& basis) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("malformed window '" + text + "'");
  const std::string kind = text.substr(0, colon);
  std::vector<double> values;
  for (const auto& v : split(text.substr(colon + 1), ',')) {
    values.push_back(parse_double(v, "window"));
  }
  if (kind == "groups") {
    std::vector<std::size_t> groups;
    for (double v : values) {
      if (v < 0 || v != std::floor(v)) throw InvalidInput("window group ids must be integers");
      groups.push_back(static_cast<std::size_t>(v));
    }
    return SpectralWindow::from_groups(basis, groups);
  }
  if (kind == "lambdas") return SpectralWindow::from_lambdas(basis, values);
  if (kind == "range") {
    const auto f = split(text.substr(colon + 1), ':');
    if (f.size() != 2) throw InvalidInput("range window must be range:lo:hi");
    return SpectralWindow::lambda_range(basis, parse_double(f[0], "window"),
                                        parse_double(f[1], "window"));
  }
  throw InvalidInput("unknown window kind '" + kind + "'");
}

int cmd_spectrum(RunConfig& cfg, std::ostream& out, std::ostream&) {
  resolve_auto(cfg, "manifold", "circle");
  resolve_format(cfg, "csv", {"csv"});
  const SpectralBasis basis = build_basis(cfg);
  Output o = open_output(cfg, out);
  write_spectrum_csv(o.stream, basis);
  return 0;
}

int cmd_uncertainty(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  resolve_auto(cfg, "mode", "suite");
  resolve_auto(cfg, "manifold", "circle");
  resolve_format(cfg, "json", {"json"});
  const std::string mode = cfg.str("mode");
  Json result;
  std::vector<std::uint64_t> offending;
  if (mode == "suite") {
    SuiteOptions o;
    o.seed = static_cast<std::uint64_t>(cfg.integer("seed"));
    o.valid_per_manifold = static_cast<std::size_t>(checked_int(cfg, "valid", 1, 100000));
    o.circle_metric = cfg.str("metric");
    o.warped_metric = cfg.str("metric");
    const SuiteResult r = run_uncertainty_suite(o);
    result = to_json(r, cfg.flag("draws"));
    for (const auto& d : r.draws) {
      const auto& c = d.certificate;
      if (!c.vacuous && (!c.holds_quant || !c.holds_chain)) {
        err << "violation: draw " << d.draw << " fingerprint " << d.fingerprint << " f in "
            << c.window << " on " << c.region << " (" << c.manifold << ")\n";
        offending.push_back(d.fingerprint);
      }
    }
  } else if (mode == "single") {
    const SpectralBasis basis = build_basis(cfg);
    const SpectralWindow w = parse_window(cfg.str("window"), basis);
    const RegionSpec region = parse_region(cfg.str("region"), basis.manifold());
    const double c = 1.0 / std::sqrt(static_cast<double>(w.count()));
    const Field f =
        Field::from_coefficients(w.indices(), std::vector<cplx>(w.count(), cplx(c, 0.0)));
    const UncertaintyCertificate cert = certify(basis, f, region, w);
    result = to_json(cert);
    if (!cert.vacuous && !cert.holds_quant) {
      err << "violation: f = normalized sum over " << cert.window << " on " << cert.region << "\n";
      offending.push_back(0);
    }
  } else {
    throw InvalidInput("uncertainty mode must be suite or single");
  }
  Output o = open_output(cfg, out);
  o.stream << envelope("uncertainty", cfg.to_json(), std::move(result)).dump(2) << '\n';
  return offending.empty() ? 0 : 1;
}

int cmd_sphere_sharp(RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::string format = resolve_format(cfg, "csv", {"csv", "json"});
  std::vector<int> ls;
  for (double v : cfg.list("ls")) {
    if (v < 1 || v > 100000 || v != std::floor(v)) throw InvalidInput("ls must be integers >= 1");
    ls.push_back(static_cast<int>(v));
  }
  double C = 0.0;
  if (cfg.is_auto("c")) {
    C = find_half_mass_C(16);
  } else if (cfg.str("c") != "bisect") {
    C = cfg.num("c");
    if (!(C > 0.0)) throw InvalidInput("c must be positive");
  }
  const auto rows = sharpness_sweep(ls, C);
  Output o = open_output(cfg, out);
  if (format == "csv") {
    write_sharpness_csv(o.stream, rows);
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    o.stream << envelope("sphere-sharp", cfg.to_json(), {{"rows", arr}}).dump(2) << '\n';
  }
  return 0;
}

int cmd_weyl(RunConfig& cfg, std::ostream& out, std::ostream& err) {
  resolve_auto(cfg, "manifold", "torus2-flat");
  resolve_auto(cfg, "lambda-min", "10");
  resolve_auto(cfg, "lambda-max", "200");
  const std::string format = resolve_format(cfg, "csv", {"csv", "json"});
  const std::string& name = cfg.str("manifold");
  ManifoldModel m = ManifoldModel::sphere();
  if (name == "circle") {
    m = ManifoldModel::circle(MetricProfile1D::parse(cfg.str("metric")));
  } else if (name == "torus2-flat") {
    m = ManifoldModel::flat_torus();
  } else if (name == "torus2-warped") {
    m = ManifoldModel::warped_torus(MetricProfile1D::parse(cfg.str("metric")));
  } else if (name != "sphere") {
    throw InvalidInput("weyl supports circle, torus2-flat, torus2-warped and sphere");
  }
  const double lo = cfg.num("lambda-min"), hi = cfg.num("lambda-max");
  if (!(lo > 0.0 && hi > lo)) throw InvalidInput("need 0 < lambda-min < lambda-max");
  WeylReport r = counting_scan(exact_counting_spectrum(m, hi),
                               log_spaced(lo, hi, checked_int(cfg, "points", 2, 100000)));
  r.fitted_exponent = remainder_fit(r);
  Output o = open_output(cfg, out);
  if (format == "csv") {
    write_weyl_csv(o.stream, r);
    err << "fitted remainder exponent " << r.fitted_exponent << "\n";
  } else {
    o.stream << envelope("weyl", cfg.to_json(), to_json(r)).dump(2) << '\n';
  }
  return 0;
}

int cmd_fourier_ratio(RunConfig& cfg, std::ostream& out, std::ostream&) {
  const std::string format = resolve_format(cfg, "csv", {"csv", "json"});
  const auto rows = fr_bump_sweep(checked_int(cfg, "kmin", 0, 12), checked_int(cfg, "kmax", 0, 12),
                                  cfg.flag("unit-scale"));
  Output o = open_output(cfg, out);
  if (format == "csv") {
    o.stream.precision(17);
    o.stream << "k,width,R,fourier_ratio,neighborhood_measure,ratio,outside_mass\n";
    for (const auto& r : rows) {
      o.stream << r.k << ',' << r.width << ',' << r.check.R << ',' << r.check.fourier_ratio << ','
               << r.check.neighborhood_measure << ',' << r.check.ratio << ','
               << r.check.outside_mass << '\n';
    }
  } else {
    o.stream << envelope("fourier-ratio", cfg.to_json(), to_json(rows)).dump(2) << '\n';
  }
  return 0;
}

int cmd_restriction(RunConfig& cfg, std::ostream& out, std::ostream&) {
  resolve_auto(cfg, "mode", "stability");
  resolve_auto(cfg, "lambda-min", "20");
  resolve_auto(cfg, "lambda-max", "60");
  const std::string format = resolve_format(cfg, "json", {"csv", "json"});
  TubularOptions opt;
  opt.mode = cfg.str("mode");
  opt.p = cfg.num("p");
  opt.q = cfg.num("q");
  opt.r = cfg.num("r");
  opt.A = cfg.is_auto("a") ? 0.0 : cfg.num("a");
  if (!cfg.is_auto("a") && !(opt.A > 0.0)) throw InvalidInput("a must be positive");
  const CurveSpec curve = CurveSpec::default_curve();
  const TubularSweep sweep =
      tubular_sweep(curve, cfg.list("r-values"), cfg.num("lambda-min"), cfg.num("lambda-max"), opt);
  Output o = open_output(cfg, out);
  if (format == "csv") {
    o.stream.precision(17);
    o.stream << "lambda,R,window_count,tube_measure,lhs,rhs_without_C,ratio\n";
    for (const auto& t : sweep.reports) {
      o.stream << t.lambda << ',' << t.R << ',' << t.window_count << ',' << t.tube_measure << ','
               << t.lhs << ',' << t.rhs << ',' << t.ratio << '\n';
    }
    return 0;
  }
  Json result;
  result["curve"] = curve.description();
  result["curve_length"] = curve.length();
  result["tubular"] = to_json(sweep, cfg.flag("reports"));
  if (cfg.flag("br")) {
    result["br_scan"] = to_json(br_ratio_scan(curve, cfg.num("br-lo"), cfg.num("br-hi"),
                                              cfg.num("br-r"), checked_int(cfg, "offsets", 1, 1000)));
  }
  o.stream << envelope("restriction", cfg.to_json(), std::move(result)).dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using Command = int (*)(RunConfig&, std::ostream&, std::ostream&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"spectrum", "eigenpairs of a model manifold (CSV)", cmd_spectrum},
      {"uncertainty", "uncertainty certificates and randomized suites (JSON)", cmd_uncertainty},
      {"sphere-sharp", "highest-weight sharpness sweep (CSV)", cmd_sphere_sharp},
      {"weyl", "Weyl counting scan and remainder fit (CSV)", cmd_weyl},
      {"fourier-ratio", "Fourier-ratio bump sweep (CSV)", cmd_fourier_ratio},
      {"restriction", "tubular certificates and restriction scans (JSON)", cmd_restriction},
  };
  CLI::App app{"speclab: spectral uncertainty laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<CLI::App*, std::vector<std::pair<std::string, CLI::Option*>>>> subs;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    std::vector<std::pair<std::string, CLI::Option*>> opts;
    for (const auto& k : config_keys()) {
      opts.emplace_back(k.name, sub->add_option("--" + k.name, flag_values[name + "/" + k.name],
                                                k.help + " [" + k.default_value + "]"));
    }
    subs.emplace_back(sub, std::move(opts));
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg.load_file(config_path);
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!subs[i].first->parsed()) continue;
      for (const auto& [key, opt] : subs[i].second) {
        if (opt->count() > 0) cfg.set(key, flag_values[std::get<0>(commands[i]) + "/" + key]);
      }
      return std::get<2>(commands[i])(cfg, out, err);
    }
    return 2;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const InequalityViolation& e) {
    err << "inequality violated: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace speclab
