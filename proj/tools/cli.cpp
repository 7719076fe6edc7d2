#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "calogero/acceptance.hpp"
#include "calogero/errors.hpp"
#include "calogero/extension.hpp"
#include "calogero/factorization.hpp"
#include "calogero/nonexistence.hpp"
#include "calogero/oracle.hpp"
#include "calogero/params.hpp"
#include "calogero/spectral.hpp"
#include "calogero/version.hpp"

namespace calogero::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kGammaFaultShift = 0.05;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoRepresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  double g1 = 0.0;
  double g2 = 1.0;
  std::optional<double> nu;
  bool unique = false;
  bool friedrichs = false;
  double mu = kHalfPi;
  std::string w = "0";
  std::size_t n = 5;
  std::string format;
  std::string out_path;
  std::string oracle = "off";
  std::vector<double> sweep;
  std::vector<double> interval;
  std::optional<double> u;
  bool quick = false;
  bool force = false;
  bool raw = false;
  double perturb_h = 0.0;
  bool inject_gamma_fault = false;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + cfg.out_path);
  f << text;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

// Rejects the non-existence quadrant (exit 3) and g2 = 0 (exit 2).
ReducedParams checked_reduce(const Couplings& c) {
  const auto reason = nonexistence_reason(c);
  if (!reason.empty()) throw NoRepresentation(reason);
  if (c.g2 == 0.0) throw UsageError("g2 = 0 (pure Calogero) is outside the scope of this tool");
  return reduce(c);
}

ExtensionLabel pick_extension(const Config& cfg, const ReducedParams& rp) {
  if (cfg.unique) return ExtensionLabel::unique();
  if (cfg.friedrichs) return ExtensionLabel::friedrichs();
  if (cfg.nu) return ExtensionLabel::nu(*cfg.nu);
  return rp.kappa >= 1.0 ? ExtensionLabel::unique() : ExtensionLabel::friedrichs();
}

json extension_json(const ExtensionLabel& e) {
  json j;
  j["kind"] = e.is_unique() ? "unique" : (e.is_friedrichs() ? "friedrichs" : "nu");
  if (e.is_unique()) {
    j["nu"] = nullptr;
  } else {
    j["nu"] = e.nu_value();
  }
  return j;
}

json reduced_json(const ReducedParams& rp, const Couplings& c) {
  json j;
  j["kappa"] = rp.kappa;
  j["upsilon"] = rp.upsilon;
  j["w0"] = rp.w0;
  j["u0"] = rp.u0;
  j["beta"] = rp.beta;
  j["region"] = std::string(to_string(classify(c)));
  return j;
}

json region_only_json(const Couplings& c) {
  json j;
  j["region"] = std::string(to_string(classify(c)));
  return j;
}

json base_inputs(const std::string& command, const Config& cfg) {
  json j;
  j["command"] = command;
  j["g1"] = cfg.g1;
  j["g2"] = cfg.g2;
  return j;
}

json document(json inputs, json reduced, json results, json checks) {
  json doc;
  doc["inputs"] = std::move(inputs);
  doc["reduced_params"] = std::move(reduced);
  doc["results"] = std::move(results);
  doc["checks"] = std::move(checks);
  doc["version"] = kVersion;
  return doc;
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CALOGERO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
  }
  return n;
}

// Evaluates body(i) for i in [0, count) on up to thread_cap() threads; rethrows the
// first exception by index.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

// ---------------------------------------------------------------------------------------------

int cmd_spectrum(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Couplings c{cfg.g1, cfg.g2};
  const auto rp = checked_reduce(c);
  const auto requested = pick_extension(cfg, rp);
  const auto resolved = resolve(rp, requested);
  if (resolved.warning) err << "warning: " << *resolved.warning << "\n";
  const auto ext = resolved.label;
  const bool with_oracle = cfg.oracle == "on";
  const double unit = cfg.raw ? 1.0 : rp.energy_unit();

  const auto sr = spectrum(rp, ext, cfg.n);
  std::optional<OracleSpectrum> orc;
  std::vector<double> rel_diff;
  if (with_oracle) {
    orc = shoot_spectrum(c, ext, cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) {
      rel_diff.push_back(std::abs(sr.energies[i] - orc->energies[i]) /
                         std::max(std::abs(orc->energies[i]), rp.energy_unit()));
    }
  }
  const bool increasing = strictly_increasing(sr.energies);
  const bool residuals_ok =
      std::all_of(sr.residuals.begin(), sr.residuals.end(), [](double r) { return r <= 1e-10; });
  const bool oracle_ok =
      std::all_of(rel_diff.begin(), rel_diff.end(), [](double d) { return d <= 1e-3; });

  std::vector<double> scaled(sr.energies), orc_scaled;
  for (double& e : scaled) e /= unit;
  if (orc) {
    for (double e : orc->energies) orc_scaled.push_back(e / unit);
  }

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "n,energy,residual" << (orc ? ",oracle_energy,relative_difference" : "") << "\n";
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      os << i << "," << num(scaled[i]) << "," << num(sr.residuals[i]);
      if (orc) os << "," << num(orc_scaled[i]) << "," << num(rel_diff[i]);
      os << "\n";
    }
    emit(cfg, os.str(), out);
  } else {
    json inputs = base_inputs("spectrum", cfg);
    inputs["extension"] = extension_json(ext);
    inputs["n"] = cfg.n;
    inputs["oracle"] = with_oracle;
    inputs["energy_units"] = cfg.raw ? "raw" : "upsilon^2";
    json results;
    results["method"] = std::string(to_string(sr.method));
    results["energies"] = scaled;
    results["residuals"] = sr.residuals;
    results["notes"] = sr.notes;
    if (orc) {
      results["oracle"] = {{"energies", orc_scaled},
                           {"relative_differences", rel_diff},
                           {"mismatch_residuals", orc->mismatch_residuals}};
    }
    json checks;
    checks["strictly_increasing"] = increasing;
    checks["residuals_within_1e-10"] = residuals_ok;
    if (orc) checks["oracle_agreement_1e-3"] = oracle_ok;
    emit(cfg, render(document(inputs, reduced_json(rp, c), results, checks)), out);
  }
  for (const auto& note : sr.notes) err << "note: " << note << "\n";
  if (!increasing || !residuals_ok || !oracle_ok) {
    err << "error: spectrum checks failed\n";
    return kNumericalFailure;
  }
  return kOk;
}

int cmd_sweep(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Couplings c{cfg.g1, cfg.g2};
  const auto rp = checked_reduce(c);
  if (rp.kappa >= 1.0) throw UsageError("sweep requires g1 < 3/4 (a one-parameter family of extensions)");
  double lo = -kHalfPi, hi = kHalfPi;
  std::size_t count = 21;
  if (!cfg.sweep.empty()) {
    lo = cfg.sweep[0];
    hi = cfg.sweep[1];
    const double cnt = cfg.sweep[2];
    if (!(cnt >= 2.0) || cnt != std::floor(cnt)) throw UsageError("--sweep COUNT must be an integer >= 2");
    count = static_cast<std::size_t>(cnt);
    if (!(lo < hi)) throw UsageError("--sweep needs LO < HI");
  }
  const double unit = cfg.raw ? 1.0 : rp.energy_unit();

  std::vector<double> nus(count);
  for (std::size_t i = 0; i < count; ++i) {
    nus[i] = i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  std::vector<ExtensionLabel> labels;
  for (double v : nus) labels.push_back(ExtensionLabel::nu(v));
  std::vector<std::vector<double>> rows(count);
  parallel_for(count, [&](std::size_t i) { rows[i] = spectrum(rp, labels[i], cfg.n).energies; });

  // Monotonicity over the open interval; the identified endpoints ±π/2 are closed-form rows.
  const bool expect_increasing = rp.kappa > 0.0;
  std::vector<std::string> direction(cfg.n);
  bool all_ok = true;
  for (std::size_t k = 0; k < cfg.n; ++k) {
    std::vector<double> col;
    for (std::size_t i = 0; i < count; ++i)
      if (!labels[i].is_friedrichs()) col.push_back(rows[i][k]);
    std::vector<double> neg(col);
    for (double& v : neg) v = -v;
    if (col.size() < 2) {
      direction[k] = "n/a";
    } else if (strictly_increasing(col)) {
      direction[k] = "increasing";
    } else if (strictly_increasing(neg)) {
      direction[k] = "decreasing";
    } else {
      direction[k] = "non-monotone";
    }
    const std::string expected = expect_increasing ? "increasing" : "decreasing";
    if (direction[k] != "n/a" && direction[k] != expected) all_ok = false;
  }

  if (cfg.format == "json") {
    json inputs = base_inputs("sweep", cfg);
    inputs["sweep"] = {{"lo", lo}, {"hi", hi}, {"count", count}};
    inputs["n"] = cfg.n;
    inputs["energy_units"] = cfg.raw ? "raw" : "upsilon^2";
    json jrows = json::array();
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> e(rows[i]);
      for (double& v : e) v /= unit;
      jrows.push_back({{"nu", nus[i]}, {"closed_form", labels[i].is_friedrichs()}, {"energies", e}});
    }
    json checks;
    checks["expected_direction"] = expect_increasing ? "increasing" : "decreasing";
    json mono;
    for (std::size_t k = 0; k < cfg.n; ++k) mono["E" + std::to_string(k)] = direction[k];
    checks["monotone"] = mono;
    checks["all_columns_as_expected"] = all_ok;
    emit(cfg, render(document(inputs, reduced_json(rp, c), {{"rows", jrows}}, checks)), out);
  } else {
    std::ostringstream os;
    os << "nu,closed_form";
    for (std::size_t k = 0; k < cfg.n; ++k) os << ",E" << k;
    os << "\n";
    for (std::size_t i = 0; i < count; ++i) {
      os << num(nus[i]) << "," << (labels[i].is_friedrichs() ? 1 : 0);
      for (double e : rows[i]) os << "," << num(e / unit);
      os << "\n";
    }
    emit(cfg, os.str(), out);
  }
  for (std::size_t k = 0; k < cfg.n; ++k) err << "column E" << k << ": " << direction[k] << "\n";
  if (!all_ok) {
    err << "error: spectral flow is not monotone in the expected direction\n";
    return kNumericalFailure;
  }
  return kOk;
}

int cmd_factorize_check(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Couplings c{cfg.g1, cfg.g2};
  const auto rp = checked_reduce(c);
  double w = 0.0;
  if (cfg.w == "w0") {
    w = rp.w0;
  } else {
    try {
      std::size_t pos = 0;
      w = std::stod(cfg.w, &pos);
      if (pos != cfg.w.size()) throw std::invalid_argument(cfg.w);
    } catch (const std::logic_error&) {
      throw UsageError("--w expects a number or 'w0'");
    }
  }
  const RepresentationParams p{cfg.mu, w, rp};
  const auto phi = make_phi(p);

  constexpr double kResidualBound = 1e-8;
  constexpr double kKernelBound = 1e-10;
  const auto grid = linear_grid(0.1, 5.0, 200);
  json tf = json::array();
  double worst = 0.0, worst_x = 0.0;
  std::string worst_name;
  for (const auto& f : default_test_functions()) {
    const auto rep = factorization_residual(phi, f, grid, cfg.perturb_h);
    tf.push_back({{"name", f.name}, {"max_residual", rep.max_residual}, {"worst_x", rep.worst_x}});
    if (!(rep.max_residual <= worst)) {
      worst = rep.max_residual;
      worst_x = rep.worst_x;
      worst_name = f.name;
    }
  }
  const auto kern = kernel_residual(phi, grid);
  const auto pos_grid = log_grid(1e-6 / rp.upsilon, 10.0 / rp.upsilon, 200);
  const auto bad = positivity_violations(phi, pos_grid);
  const bool ok_fact = worst <= kResidualBound;
  const bool ok_kernel = kern.max_residual <= kKernelBound;
  const bool ok_pos = bad.empty();
  const bool at_w0 = p.exceptional();

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "check,value,threshold,pass,worst_x\n";
    for (const auto& t : tf) {
      os << csv_field("factorization " + t["name"].get<std::string>()) << ","
         << num(t["max_residual"].get<double>()) << "," << num(kResidualBound) << ","
         << (t["max_residual"].get<double>() <= kResidualBound ? "PASS" : "FAIL") << ","
         << num(t["worst_x"].get<double>()) << "\n";
    }
    os << "kernel," << num(kern.max_residual) << "," << num(kKernelBound) << ","
       << (ok_kernel ? "PASS" : "FAIL") << "," << num(kern.worst_x) << "\n";
    os << "positivity," << bad.size() << ",0," << (ok_pos ? "PASS" : "FAIL") << ","
       << (bad.empty() ? std::string() : num(bad.front())) << "\n";
    emit(cfg, os.str(), out);
  } else {
    json inputs = base_inputs("factorize-check", cfg);
    inputs["mu"] = cfg.mu;
    inputs["w"] = w;
    inputs["perturb_h"] = cfg.perturb_h;
    json results;
    results["u"] = p.u();
    results["test_functions"] = tf;
    results["kernel"] = {{"max_residual", kern.max_residual},
                         {"worst_x", kern.worst_x},
                         {"nontrivial", at_w0}};
    results["positivity"] = {{"points", pos_grid.size()},
                             {"violations", bad.size()},
                             {"first_violation", bad.empty() ? json(nullptr) : json(bad.front())}};
    json checks;
    checks["factorization_within_1e-8"] = ok_fact;
    checks["kernel_within_1e-10"] = ok_kernel;
    checks["positive"] = ok_pos;
    emit(cfg, render(document(inputs, reduced_json(rp, c), results, checks)), out);
  }

  err << (ok_fact ? "PASS" : "FAIL") << " factorization residual " << num(worst) << "\n";
  err << (ok_kernel ? "PASS" : "FAIL") << " kernel residual " << num(kern.max_residual) << "\n";
  if (at_w0) err << (ok_kernel ? "PASS" : "FAIL") << " kernel nontrivial: ǎφ=0\n";
  err << (ok_pos ? "PASS" : "FAIL") << " positivity on " << pos_grid.size() << " points\n";
  if (!ok_fact) err << "error: factorization residual breached at x = " << num(worst_x) << " (" << worst_name << ")\n";
  if (!ok_kernel) err << "error: kernel residual breached at x = " << num(kern.worst_x) << "\n";
  if (!ok_pos) err << "error: phi not positive at x = " << num(bad.front()) << "\n";
  return ok_fact && ok_kernel && ok_pos ? kOk : kNumericalFailure;
}

int cmd_nonexistence(const Config& cfg, std::ostream& out, std::ostream& err) {
  const Couplings c{cfg.g1, cfg.g2};
  auto mode = default_zero_count_mode(c);
  double u = cfg.u.value_or(0.0);
  BoundaryData init;
  double x_lo, x_hi;
  bool existence = false;
  if (mode) {
    const bool origin = *mode == ZeroCountMode::Origin;
    x_lo = origin ? 1e-8 : 10.0;
    x_hi = origin ? 1e-2 : 20.0;
  } else {
    if (!cfg.force) {
      throw UsageError("couplings admit a generalized oscillator representation; pass --force to count zeros anyway");
    }
    const auto rp = checked_reduce(c);
    existence = true;
    mode = ZeroCountMode::Origin;
    u = cfg.u.value_or(rp.u0 + rp.energy_unit());
    const double w = u / (4.0 * rp.energy_unit());
    if (!(w >= rp.w0)) throw UsageError("--u must be >= u0 in the existence region");
    x_lo = 1e-4 / rp.upsilon;
    x_hi = 5.0 / rp.upsilon;
    if (!cfg.interval.empty()) x_hi = cfg.interval[1];
    const auto j = make_phi({0.0, w, rp}).jet(x_hi);
    init = BoundaryData{j.value, j.d1};
  }
  if (!cfg.interval.empty()) {
    x_lo = cfg.interval[0];
    x_hi = cfg.interval[1];
    if (!(x_lo > 0.0 && x_hi > x_lo)) throw UsageError("--interval needs 0 < LO < HI");
  }
  const auto rep = count_zeros(c, u, x_lo, x_hi, init, mode);
  const bool pass = existence ? rep.observed_zeros == 0 : rep.within_tolerance();

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "mode,x_lo,x_hi,u,sigma_or_omega,observed_zeros,predicted_zeros,pass\n";
    os << to_string(rep.mode) << "," << num(rep.x_lo) << "," << num(rep.x_hi) << "," << num(rep.u)
       << "," << num(rep.sigma_or_omega) << "," << rep.observed_zeros << ","
       << num(rep.predicted_zeros) << "," << (pass ? "PASS" : "FAIL") << "\n";
    emit(cfg, os.str(), out);
  } else {
    json inputs = base_inputs("nonexistence", cfg);
    inputs["interval"] = {x_lo, x_hi};
    inputs["u"] = u;
    inputs["force"] = cfg.force;
    json results;
    results["mode"] = std::string(to_string(rep.mode));
    results["observed_zeros"] = rep.observed_zeros;
    results["predicted_zeros"] = rep.predicted_zeros;
    results["sigma_or_omega"] = rep.sigma_or_omega;
    results["steps"] = rep.steps;
    results["reason"] = existence ? "existence region: positive solution as initial data"
                                  : nonexistence_reason(c);
    json checks;
    if (existence) {
      checks["no_zeros"] = pass;
    } else {
      checks["within_1_plus_10_percent"] = pass;
    }
    json reduced = existence ? reduced_json(reduce(c), c) : region_only_json(c);
    emit(cfg, render(document(inputs, reduced, results, checks)), out);
  }
  err << (pass ? "PASS" : "FAIL") << " observed " << rep.observed_zeros << " zeros, predicted "
      << num(rep.predicted_zeros) << "\n";
  return pass ? kOk : kNumericalFailure;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
  AcceptanceOptions opt;
  opt.quick = cfg.quick;
  if (cfg.inject_gamma_fault) opt.gamma_fault = kGammaFaultShift;
  const auto rows = run_acceptance(opt);
  const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.passed; });

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "id,name,status,measured,threshold,seconds,detail\n";
    for (const auto& r : rows) {
      os << r.id << "," << csv_field(r.name) << "," << (r.passed ? "PASS" : "FAIL") << ","
         << num(r.measured) << "," << num(r.threshold) << "," << num(r.seconds) << ","
         << csv_field(r.detail) << "\n";
    }
    emit(cfg, os.str(), out);
  } else {
    json inputs;
    inputs["command"] = "verify";
    inputs["quick"] = cfg.quick;
    inputs["inject_gamma_fault"] = cfg.inject_gamma_fault;
    json jrows = json::array();
    for (const auto& r : rows) {
      jrows.push_back({{"id", r.id},
                       {"name", r.name},
                       {"status", r.passed ? "PASS" : "FAIL"},
                       {"measured", r.measured},
                       {"threshold", r.threshold},
                       {"seconds", r.seconds},
                       {"detail", r.detail}});
    }
    json checks;
    checks["all_passed"] = all;
    emit(cfg, render(document(inputs, json::object(), {{"rows", jrows}}, checks)), out);
  }
  for (const auto& r : rows) {
    err << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << "\n";
  }
  if (!all) {
    const auto first = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return !r.passed; });
    err << "error: first failing row " << first->id << " (" << first->name << "): " << first->detail << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

void add_couplings(CLI::App* app, Config& cfg) {
  app->add_option("--g1", cfg.g1, "Inverse-square coupling g1")->capture_default_str();
  app->add_option("--g2", cfg.g2, "Oscillator coupling g2")->capture_default_str();
}

void add_output(CLI::App* app, Config& cfg, const std::string& default_format) {
  app->add_option("--format", cfg.format, "Output format (default " + default_format + ")")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", cfg.out_path, "Write data to this file instead of stdout");
}

void add_extension(CLI::App* app, Config& cfg) {
  auto* nu = app->add_option("--nu", cfg.nu, "Extension parameter nu in [-pi/2, pi/2] (radians)");
  auto* uq = app->add_flag("--unique", cfg.unique, "The unique extension (g1 >= 3/4)");
  auto* fr = app->add_flag("--friedrichs", cfg.friedrichs, "Alias for nu = +-pi/2");
  nu->excludes(uq)->excludes(fr);
  uq->excludes(fr);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Generalized Calogero Hamiltonian: factorizations, spectra and cross-checks",
               "calogero"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* sp = app.add_subcommand("spectrum", "Discrete spectrum of one self-adjoint extension");
  add_couplings(sp, cfg);
  add_extension(sp, cfg);
  sp->add_option("--n", cfg.n, "Number of levels")->capture_default_str()->check(CLI::PositiveNumber);
  sp->add_option("--oracle", cfg.oracle, "Cross-check with the shooting oracle")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  sp->add_flag("--raw", cfg.raw, "Report energies in raw units instead of units of upsilon^2");
  add_output(sp, cfg, "json");

  auto* sw = app.add_subcommand("sweep", "Spectral flow E_n(nu) over a nu range");
  add_couplings(sw, cfg);
  sw->add_option("--sweep", cfg.sweep, "LO HI COUNT (default -pi/2 pi/2 21)")->expected(3);
  sw->add_option("--n", cfg.n, "Number of levels per row")->capture_default_str()->check(CLI::PositiveNumber);
  sw->add_flag("--raw", cfg.raw, "Report energies in raw units instead of units of upsilon^2");
  add_output(sw, cfg, "csv");

  auto* fc = app.add_subcommand("factorize-check", "Verify the factorization identity for (mu, w)");
  add_couplings(fc, cfg);
  fc->add_option("--mu", cfg.mu, "Angle mu in [0, pi/2]")->capture_default_str();
  fc->add_option("--w", cfg.w, "w >= w0, or the literal 'w0'")->capture_default_str();
  fc->add_option("--perturb-h", cfg.perturb_h, "Add a constant to the superpotential (test hook)");
  add_output(fc, cfg, "json");

  auto* ne = app.add_subcommand("nonexistence", "Zero counting in the non-existence regions");
  add_couplings(ne, cfg);
  ne->add_option("--interval", cfg.interval, "LO HI")->expected(2);
  ne->add_option("--u", cfg.u, "Energy parameter u (default 0; u0 + upsilon^2 with --force)");
  ne->add_flag("--force", cfg.force, "Allow couplings inside the existence region");
  add_output(ne, cfg, "json");

  auto* vf = app.add_subcommand("verify", "Run the cross-validation acceptance table");
  vf->add_flag("--quick", cfg.quick, "Reduced grids");
  vf->add_flag("--inject-gamma-fault", cfg.inject_gamma_fault,
               "Evaluate Gamma at a shifted argument (mutation check)");
  add_output(vf, cfg, "json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidArguments;
  }

  if (cfg.format.empty()) cfg.format = sw->parsed() ? "csv" : "json";

  try {
    if (sp->parsed()) return cmd_spectrum(cfg, out, err);
    if (sw->parsed()) return cmd_sweep(cfg, out, err);
    if (fc->parsed()) return cmd_factorize_check(cfg, out, err);
    if (ne->parsed()) return cmd_nonexistence(cfg, out, err);
    if (vf->parsed()) return cmd_verify(cfg, out, err);
  } catch (const NoRepresentation& e) {
    err << "error: " << e.what() << "\n";
    return kNoRepresentation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidArguments;
  } catch (const std::exception& e) {
    err << "error: numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kInvalidArguments;
}

}  // namespace calogero::cli
