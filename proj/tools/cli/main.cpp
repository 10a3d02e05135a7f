#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "attenwave/attenwave.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

class cli_error : public std::runtime_error {
 public:
  cli_error(int exit_code, const std::string& msg)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

int exit_code_for(int status) {
  switch (status) {
    case AW_OK: return 0;
    case AW_EINVAL:
    case AW_EIO: return kExitValidation;
    default: return kExitNumerical;  // numerical diagnostics
  }
}

void check(int status, const std::string& context) {
  if (status != AW_OK)
    throw cli_error(exit_code_for(status), context + ": " + aw_last_error());
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : ptr(o.ptr) { o.ptr = nullptr; }
  Handle& operator=(Handle&& o) noexcept {
    if (this != &o) {
      reset();
      ptr = o.ptr;
      o.ptr = nullptr;
    }
    return *this;
  }
  ~Handle() { reset(); }
  void reset() {
    if (ptr != nullptr) Free(ptr);
    ptr = nullptr;
  }
};

using GridHandle = Handle<aw_grid, aw_grid_free>;
using ModelHandle = Handle<aw_model, aw_model_free>;
using SignalHandle = Handle<aw_signal, aw_signal_free>;
using FieldHandle = Handle<aw_field, aw_field_free>;
using SourceHandle = Handle<aw_source, aw_source_free>;

struct Options {
  std::optional<std::string> model;
  std::optional<double> gamma, alpha0, a0, tau0, alpha1, c0;
  std::optional<std::size_t> n;
  std::optional<double> dt, t0;
  std::optional<std::string> radii;
  std::optional<double> epsilon, threshold, level;
  std::optional<std::string> out, format;
  bool window = false;
  bool deterministic = false;
  bool shifted = false;
  std::string config_path;

  // subcommand-specific
  int order = 1;
  double band = 0.5;
  std::string source = "gaussian:0.5,0.05";
  std::optional<double> snapshot_t;
  std::string gammas, alpha0s, tau0s, alpha1s;

  json config;  // parsed --config file, if any
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli_error(kExitValidation, "cannot open config file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw cli_error(kExitValidation, "config file is not valid JSON: " + path);
  if (!j.is_object())
    throw cli_error(kExitValidation, "config file must hold a JSON object");
  return j;
}

template <typename T>
std::optional<T> config_value(const json& cfg, const char* key) {
  if (!cfg.contains(key)) return std::nullopt;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw cli_error(kExitValidation, std::string("config field has wrong type: ") + key);
  }
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw cli_error(kExitValidation,
                      std::string("malformed number in ") + what + ": " + item);
    }
  }
  if (out.empty())
    throw cli_error(kExitValidation, std::string("empty list for ") + what);
  return out;
}

// Flags override config-file values; config overrides built-in defaults.
ModelHandle resolve_model(const Options& opt) {
  json mj = json::object();
  if (opt.config.contains("model")) {
    if (!opt.config["model"].is_object())
      throw cli_error(kExitValidation, "config 'model' must be an object");
    mj = opt.config["model"];
  }
  if (opt.model) mj["kind"] = *opt.model;
  if (opt.gamma) mj["gamma"] = *opt.gamma;
  if (opt.alpha0) mj["alpha0"] = *opt.alpha0;
  if (opt.a0) mj["a0"] = *opt.a0;
  if (opt.tau0) mj["tau0"] = *opt.tau0;
  if (opt.alpha1) mj["alpha1"] = *opt.alpha1;
  if (opt.c0) mj["c0"] = *opt.c0;
  if (!mj.contains("kind"))
    throw cli_error(kExitValidation, "no model given: pass --model or a config file");

  ModelHandle h;
  check(aw_model_from_json(mj.dump().c_str(), &h.ptr), "model");
  return h;
}

std::size_t next_pow2(double x) {
  std::size_t n = 1024;
  while (static_cast<double>(n) < x && n < (1u << 24)) n <<= 1;
  return n;
}

// Default grid when none is given: thermo-viscous families resolve the
// relaxation spectrum (omega_max = 100/tau0); power-law families oversample
// 4x past the point where the kernel spectrum has decayed to 1e-8.
void default_grid(const ModelHandle& model, const std::string& kind, double tau0,
                  double c0, double r_max, std::size_t& n, double& dt, double& t0) {
  if ((kind == "ThermoViscous" || kind == "CausalThermoViscous") && tau0 > 0.0) {
    dt = M_PI * tau0 / 100.0;
    n = 1u << 22;
    t0 = -(static_cast<double>(n) * dt) / 4.0;
    return;
  }
  double wstar = 1000.0;
  double lo = 1e-6, hi = 1e12;
  auto decayed = [&](double w) {
    double re = 0.0, im = 0.0;
    if (aw_alpha_star(model.ptr, w, &re, &im) != AW_OK) return false;
    return re * r_max > 18.42;  // exp(-re*r) < 1e-8
  };
  if (decayed(hi)) {
    for (int i = 0; i < 200; ++i) {
      const double mid = std::sqrt(lo * hi);
      if (decayed(mid))
        hi = mid;
      else
        lo = mid;
    }
    wstar = hi;
  }
  const double omega_max = 4.0 * wstar;
  dt = M_PI / omega_max;
  const double window = std::max(4.0 * r_max / c0, 2.0);
  n = next_pow2(window / dt);
  t0 = -(static_cast<double>(n) * dt) / 4.0;
}

GridHandle resolve_grid(const Options& opt, const ModelHandle& model, const json& mj,
                        double r_max) {
  std::optional<std::size_t> n = opt.n;
  std::optional<double> dt = opt.dt, t0 = opt.t0;
  if (opt.config.contains("grid")) {
    const json& gj = opt.config["grid"];
    if (!gj.is_object())
      throw cli_error(kExitValidation, "config 'grid' must be an object");
    if (!n) n = config_value<std::size_t>(gj, "n");
    if (!dt) dt = config_value<double>(gj, "dt");
    if (!t0) t0 = config_value<double>(gj, "t0");
  }

  std::size_t dn = 0;
  double ddt = 0.0, dt0 = 0.0;
  if (!n || !dt) {
    const std::string kind = mj.value("kind", "");
    default_grid(model, kind, mj.value("tau0", 0.0), mj.value("c0", 1.0), r_max, dn,
                 ddt, dt0);
  }
  const std::size_t use_n = n.value_or(dn);
  const double use_dt = dt.value_or(ddt);
  const double use_t0 = t0.value_or(-(static_cast<double>(use_n) * use_dt) / 4.0);

  GridHandle h;
  check(aw_grid_make(use_n, use_dt, use_t0, &h.ptr), "grid");
  return h;
}

std::vector<double> resolve_radii(const Options& opt) {
  if (opt.radii) return parse_list(*opt.radii, "--radii");
  if (opt.config.contains("radii")) {
    try {
      auto v = opt.config["radii"].get<std::vector<double>>();
      if (!v.empty()) return v;
    } catch (const json::exception&) {
      throw cli_error(kExitValidation, "config 'radii' must be an array of numbers");
    }
  }
  return {0.25};
}

fs::path resolve_out_dir(const Options& opt) {
  std::string dir;
  if (opt.out)
    dir = *opt.out;
  else if (opt.config.contains("out"))
    dir = opt.config["out"].get<std::string>();
  else if (const char* env = std::getenv("ATTENWAVE_OUT"); env != nullptr && *env)
    dir = env;
  else
    dir = ".";
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec && !fs::is_directory(p))
    throw cli_error(kExitValidation, "cannot create output directory: " + dir);
  return p;
}

struct Formats {
  bool csv = true, jsonout = false, svg = false, bin = false;
};

Formats resolve_formats(const Options& opt) {
  std::string text;
  if (opt.format)
    text = *opt.format;
  else if (opt.config.contains("format")) {
    if (opt.config["format"].is_array()) {
      for (const auto& e : opt.config["format"])
        text += e.get<std::string>() + ",";
    } else {
      text = opt.config["format"].get<std::string>();
    }
  }
  if (text.empty()) return {};
  Formats f;
  f.csv = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "csv")
      f.csv = true;
    else if (item == "json")
      f.jsonout = true;
    else if (item == "svg")
      f.svg = true;
    else if (item == "bin")
      f.bin = true;
    else
      throw cli_error(kExitValidation, "unknown format: " + item);
  }
  return f;
}

double resolve_epsilon(const Options& opt) {
  if (opt.epsilon) return *opt.epsilon;
  if (auto v = config_value<double>(opt.config, "epsilon")) return *v;
  return -1.0;  // library default: 4*dt
}

double resolve_threshold(const Options& opt) {
  if (opt.threshold) return *opt.threshold;
  if (auto v = config_value<double>(opt.config, "threshold")) return *v;
  return 1e-3;
}

double resolve_level(const Options& opt) {
  if (opt.level) return *opt.level;
  if (auto v = config_value<double>(opt.config, "level")) return *v;
  return 1e-4;
}

std::string num_tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_signal_outputs(const SignalHandle& sig, const fs::path& dir,
                          const std::string& stem, const Formats& fm,
                          const std::string& title, bool deterministic) {
  if (fm.csv)
    check(aw_signal_write_csv(sig.ptr, (dir / (stem + ".csv")).string().c_str()),
          "write csv");
  if (fm.svg) {
    const size_t len = aw_signal_len(sig.ptr);
    std::vector<double> ts(len);
    for (size_t j = 0; j < len; ++j) ts[j] = aw_signal_time(sig.ptr, j);
    check(aw_svg_plot((dir / (stem + ".svg")).string().c_str(), ts.data(),
                      aw_signal_data(sig.ptr), len, title.c_str(), "t (s)", "amplitude",
                      deterministic ? 0 : 1),
          "write svg");
  }
}

json report_json(const aw_report& rep) {
  return json{{"schema_version", 1},
              {"metric", rep.metric},
              {"epsilon", rep.epsilon},
              {"classification", rep.noncausal ? "NonCausal" : "Causal"},
              {"threshold", rep.threshold},
              {"windowed", rep.windowed != 0},
              {"truncation_bound", rep.truncation_bound}};
}

// ---- subcommands ----

int cmd_kernel(const Options& opt) {
  ModelHandle model = resolve_model(opt);
  const json mj = json::parse(aw_model_json(model.ptr));
  const std::vector<double> radii = resolve_radii(opt);
  const double r_max = *std::max_element(radii.begin(), radii.end());
  GridHandle grid = resolve_grid(opt, model, mj, r_max);
  const fs::path dir = resolve_out_dir(opt);
  const Formats fm = resolve_formats(opt);
  const std::string kind = mj["kind"].get<std::string>();

  if (radii.size() == 1) {
    SignalHandle sig;
    check(aw_kernel_k(model.ptr, grid.ptr, radii[0], &sig.ptr), "kernel");
    const std::string stem = "kernel_" + kind + "_r" + num_tag(radii[0]);
    write_signal_outputs(sig, dir, stem, fm, "attenuation kernel, " + kind,
                         opt.deterministic);
    if (fm.jsonout) {
      aw_report rep{};
      check(aw_causality_report(sig.ptr, resolve_epsilon(opt), resolve_threshold(opt),
                                opt.window ? 1 : 0, &rep),
            "report");
      check(aw_report_write_json(&rep, (dir / (stem + "_report.json")).string().c_str()),
            "write report");
    }
    std::cout << "wrote " << (dir / stem).string() << ".*\n";
    return 0;
  }

  FieldHandle field;
  check(aw_kernel_field(model.ptr, grid.ptr, radii.data(), radii.size(), &field.ptr),
        "kernel field");
  const std::string stem = "kernel_field_" + kind;
  if (fm.csv)
    check(aw_field_write_csv(field.ptr, (dir / (stem + ".csv")).string().c_str()),
          "write csv");
  if (fm.bin)
    check(aw_field_write_binary(field.ptr, (dir / (stem + ".bin")).string().c_str(),
                                (dir / (stem + ".json")).string().c_str()),
          "write binary");
  std::cout << "wrote " << (dir / stem).string() << ".*\n";
  return 0;
}

int cmd_green(const Options& opt) {
  ModelHandle model = resolve_model(opt);
  const json mj = json::parse(aw_model_json(model.ptr));
  const std::vector<double> radii = resolve_radii(opt);
  const double r_max = *std::max_element(radii.begin(), radii.end());
  GridHandle grid = resolve_grid(opt, model, mj, r_max);
  const fs::path dir = resolve_out_dir(opt);
  const Formats fm = resolve_formats(opt);
  const std::string kind = mj["kind"].get<std::string>();

  for (double r : radii) {
    SignalHandle sig;
    check(aw_green_trace(model.ptr, grid.ptr, r, opt.shifted ? 1 : 0, &sig.ptr), "green");
    const std::string stem = std::string("green_") + (opt.shifted ? "shifted_" : "") +
                             kind + "_r" + num_tag(r);
    write_signal_outputs(sig, dir, stem, fm, "point-source response, " + kind,
                         opt.deterministic);
    std::cout << "wrote " << (dir / stem).string() << ".*\n";
  }
  return 0;
}

int cmd_causality(const Options& opt) {
  ModelHandle model = resolve_model(opt);
  const json mj = json::parse(aw_model_json(model.ptr));
  const std::vector<double> radii = resolve_radii(opt);
  GridHandle grid = resolve_grid(opt, model, mj, radii[0]);

  SignalHandle sig;
  check(aw_kernel_k(model.ptr, grid.ptr, radii[0], &sig.ptr), "kernel");
  aw_report rep{};
  check(aw_causality_report(sig.ptr, resolve_epsilon(opt), resolve_threshold(opt),
                            opt.window ? 1 : 0, &rep),
        "report");

  std::cout << report_json(rep).dump(2) << '\n';
  if (opt.out || opt.config.contains("out")) {
    const fs::path dir = resolve_out_dir(opt);
    const std::string stem =
        "causality_" + mj["kind"].get<std::string>() + "_r" + num_tag(radii[0]);
    check(aw_report_write_json(&rep, (dir / (stem + ".json")).string().c_str()),
          "write report");
  }
  return 0;
}

int cmd_kk_check(const Options& opt) {
  ModelHandle model = resolve_model(opt);
  const json mj = json::parse(aw_model_json(model.ptr));
  GridHandle grid = resolve_grid(opt, model, mj, 0.25);

  double residual = 0.0;
  check(aw_kk_residual(model.ptr, grid.ptr, opt.order, opt.band, &residual), "kk residual");
  json out{{"schema_version", 1},
           {"kind", mj["kind"]},
           {"deriv_order", opt.order},
           {"band_frac", opt.band},
           {"residual", residual}};
  std::cout << out.dump(2) << '\n';
  if (opt.out || opt.config.contains("out")) {
    const fs::path dir = resolve_out_dir(opt);
    std::ofstream f(dir / ("kk_" + mj["kind"].get<std::string>() + ".json"));
    f << out.dump(2) << '\n';
    if (!f) throw cli_error(kExitValidation, "cannot write kk report");
  }
  return 0;
}

int cmd_simulate(const Options& opt) {
  ModelHandle model = resolve_model(opt);
  const json mj = json::parse(aw_model_json(model.ptr));
  const std::vector<double> radii = resolve_radii(opt);
  const double r_max = *std::max_element(radii.begin(), radii.end());
  GridHandle grid = resolve_grid(opt, model, mj, r_max);
  const fs::path dir = resolve_out_dir(opt);
  const Formats fm = resolve_formats(opt);

  SourceHandle src;
  if (opt.source.rfind("gaussian:", 0) == 0) {
    const auto params = parse_list(opt.source.substr(9), "--source gaussian");
    if (params.size() != 2)
      throw cli_error(kExitValidation, "--source gaussian needs center,width");
    check(aw_source_gaussian(grid.ptr, params[0], params[1], &src.ptr), "source");
  } else if (opt.source.rfind("csv:", 0) == 0) {
    check(aw_source_from_csv(grid.ptr, opt.source.substr(4).c_str(), &src.ptr), "source");
  } else {
    throw cli_error(kExitValidation,
                    "--source must be gaussian:center,width or csv:path");
  }

  FieldHandle field;
  check(aw_propagate(model.ptr, src.ptr, radii.data(), radii.size(), &field.ptr), "propagate");

  const std::string stem = "pressure_" + mj["kind"].get<std::string>();
  if (fm.csv)
    check(aw_field_write_csv(field.ptr, (dir / (stem + ".csv")).string().c_str()),
          "write csv");
  if (fm.bin)
    check(aw_field_write_binary(field.ptr, (dir / (stem + ".bin")).string().c_str(),
                                (dir / (stem + ".json")).string().c_str()),
          "write binary");

  if (opt.snapshot_t) {
    const size_t rows = aw_field_rows(field.ptr);
    std::vector<double> rs(rows), ps(rows);
    check(aw_snapshot(field.ptr, *opt.snapshot_t, rs.data(), ps.data()), "snapshot");
    std::ofstream out(dir / (stem + "_snapshot.csv"));
    out << "r,p\n";
    char buf[80];
    for (size_t i = 0; i < rows; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", rs[i], ps[i]);
      out << buf;
    }
    if (!out) throw cli_error(kExitValidation, "cannot write snapshot csv");
  }
  std::cout << "wrote " << (dir / stem).string() << ".*\n";
  return 0;
}

int cmd_sweep(const Options& opt) {
  if (!opt.model && !opt.config.contains("model"))
    throw cli_error(kExitValidation, "sweep needs a model family (--model)");

  json base = json::object();
  if (opt.config.contains("model")) base = opt.config["model"];
  if (opt.model) base["kind"] = *opt.model;
  if (opt.a0) base["a0"] = *opt.a0;
  if (opt.c0) base["c0"] = *opt.c0;

  auto axis = [&](const std::string& list_flag, std::optional<double> single,
                  const char* key, double fallback) {
    if (!list_flag.empty()) return parse_list(list_flag, key);
    if (single) return std::vector<double>{*single};
    if (base.contains(key)) return std::vector<double>{base[key].get<double>()};
    return std::vector<double>{fallback};
  };
  const std::vector<double> gammas = axis(opt.gammas, opt.gamma, "gamma", 0.0);
  const std::vector<double> alpha0s = axis(opt.alpha0s, opt.alpha0, "alpha0", 0.0);
  const std::vector<double> tau0s = axis(opt.tau0s, opt.tau0, "tau0", 0.0);
  const std::vector<double> alpha1s = axis(opt.alpha1s, opt.alpha1, "alpha1", 0.0);
  const std::vector<double> radii = resolve_radii(opt);
  const double r = radii[0];
  const double threshold = resolve_threshold(opt);
  const double epsilon = resolve_epsilon(opt);
  const double level = resolve_level(opt);

  struct Combo {
    json mj;
    double gamma, alpha0, tau0, alpha1;
  };
  std::vector<Combo> combos;
  for (double g : gammas)
    for (double a : alpha0s)
      for (double t : tau0s)
        for (double a1 : alpha1s) {
          json mj = base;
          mj["gamma"] = g;
          mj["alpha0"] = a;
          mj["tau0"] = t;
          mj["alpha1"] = a1;
          combos.push_back({mj, g, a, t, a1});
        }
  if (combos.empty()) throw cli_error(kExitValidation, "empty sweep range");

  // validate every configuration before running any of them
  for (const auto& c : combos) {
    ModelHandle m;
    check(aw_model_from_json(c.mj.dump().c_str(), &m.ptr), "sweep config");
  }

  struct Row {
    std::string kind, classification;
    double gamma, alpha0, tau0, alpha1, r, metric, front_speed, kk_residual;
  };
  std::vector<Row> rows(combos.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> first_error{AW_OK};
  std::string error_context;
  std::mutex error_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= combos.size() || first_error.load() != AW_OK) return;
      const Combo& c = combos[i];
      ModelHandle model;
      GridHandle grid;
      SignalHandle sig;
      int st = aw_model_from_json(c.mj.dump().c_str(), &model.ptr);
      const json mj = st == AW_OK ? json::parse(aw_model_json(model.ptr)) : json{};
      if (st == AW_OK) {
        try {
          grid = resolve_grid(opt, model, mj, r);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lk(error_mu);
          first_error.store(AW_EINVAL);
          error_context = e.what();
          return;
        }
        st = aw_kernel_k(model.ptr, grid.ptr, r, &sig.ptr);
      }
      double metric = 0.0;
      if (st == AW_OK)
        st = aw_noncausality_metric(
            sig.ptr, epsilon < 0.0 ? 4.0 * aw_grid_dt(grid.ptr) : epsilon, &metric);
      int noncausal = 0;
      if (st == AW_OK) st = aw_classify(metric, threshold, &noncausal);
      if (st != AW_OK) {
        std::lock_guard<std::mutex> lk(error_mu);
        first_error.store(st);
        error_context = aw_last_error();
        return;
      }

      // secondary diagnostics: recorded as nan when undefined on this grid
      double speed = std::nan("");
      {
        const double fit_radii[4] = {0.6 * r, 0.8 * r, r, 1.2 * r};
        aw_front_fit fit{};
        if (aw_travel_time_fit(model.ptr, grid.ptr, fit_radii, 4, level, &fit, nullptr) ==
            AW_OK)
          speed = fit.front_speed;
      }
      double kk = std::nan("");
      (void)aw_kk_residual(model.ptr, grid.ptr, opt.order, opt.band, &kk);

      rows[i] = Row{mj["kind"].get<std::string>(),
                    noncausal ? "NonCausal" : "Causal",
                    c.gamma,
                    c.alpha0,
                    c.tau0,
                    c.alpha1,
                    r,
                    metric,
                    speed,
                    kk};
    }
  };

  const std::size_t nthreads =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()),
                            combos.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error.load() != AW_OK)
    throw cli_error(exit_code_for(first_error.load()), "sweep: " + error_context);

  const fs::path dir = resolve_out_dir(opt);
  const fs::path path = dir / "sweep.csv";
  std::ofstream out(path);
  if (!out) throw cli_error(kExitValidation, "cannot write " + path.string());
  out << "kind,gamma,alpha0,tau0,alpha1,r,metric,classification,front_speed,kk_residual\n";
  char buf[256];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", row.gamma,
                  row.alpha0, row.tau0, row.alpha1, row.r, row.metric);
    out << row.kind << ',' << buf << ',' << row.classification << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", row.front_speed, row.kk_residual);
    out << buf;
  }
  if (!out) throw cli_error(kExitValidation, "write failed: " + path.string());
  std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_reproduce_figures(const Options& opt) {
  const fs::path dir = resolve_out_dir(opt);

  struct Config {
    const char* kind;
    double gamma, alpha0, tau0, alpha1;
  };
  const Config catalog[] = {
      {"PowerLawKK", 0.5, 0.1581, 0.0, 0.0}, {"PowerLawKK", 1.5, 0.0316, 0.0, 0.0},
      {"PowerLawKK", 2.7, 0.0071, 0.0, 0.0}, {"PowerLawKK", 3.3, 0.0027, 0.0, 0.0},
      {"Szabo", 0.5, 0.1581, 0.0, 0.0},      {"Szabo", 1.5, 0.0316, 0.0, 0.0},
      {"Szabo", 2.7, 0.0071, 0.0, 0.0},      {"Szabo", 3.3, 0.0027, 0.0, 0.0},
      {"ThermoViscous", 0.0, 0.0, 1e-5, 0.0}, {"CausalThermoViscous", 0.0, 0.0, 1e-5, 1.0},
  };
  const double r = 0.25;
  json manifest{{"schema_version", 1}, {"radius", r}, {"entries", json::array()}};

  for (const auto& cfg : catalog) {
    json mj{{"kind", cfg.kind}, {"gamma", cfg.gamma}, {"alpha0", cfg.alpha0},
            {"tau0", cfg.tau0}, {"alpha1", cfg.alpha1}, {"c0", 1.0}};
    ModelHandle model;
    check(aw_model_from_json(mj.dump().c_str(), &model.ptr), "figure model");

    std::size_t n;
    double dt, t0;
    const bool tv_family = std::string(cfg.kind) == "ThermoViscous" ||
                           std::string(cfg.kind) == "CausalThermoViscous";
    if (tv_family) {
      dt = M_PI * cfg.tau0 / 100.0;
      n = 1u << 22;
      t0 = -(static_cast<double>(n) * dt) / 4.0;
    } else {
      n = 1u << 18;
      dt = std::pow(2.0, -14);
      t0 = -4.0;
    }
    if (opt.n) n = *opt.n;
    if (opt.dt) dt = *opt.dt;
    if (opt.n || opt.dt) t0 = -(static_cast<double>(n) * dt) / 4.0;
    if (opt.t0) t0 = *opt.t0;

    GridHandle grid;
    check(aw_grid_make(n, dt, t0, &grid.ptr), "figure grid");
    SignalHandle sig;
    check(aw_kernel_k(model.ptr, grid.ptr, r, &sig.ptr), "figure kernel");
    aw_report rep{};
    check(aw_causality_report(sig.ptr, resolve_epsilon(opt), resolve_threshold(opt), 0,
                              &rep),
          "figure report");

    std::string stem = std::string("fig_") + cfg.kind;
    if (std::string(cfg.kind) == "PowerLawKK" || std::string(cfg.kind) == "Szabo")
      stem += "_gamma" + num_tag(cfg.gamma);

    check(aw_signal_write_csv(sig.ptr, (dir / (stem + ".csv")).string().c_str()),
          "figure csv");
    {
      const size_t len = aw_signal_len(sig.ptr);
      std::vector<double> ts(len);
      for (size_t j = 0; j < len; ++j) ts[j] = aw_signal_time(sig.ptr, j);
      const std::string title = std::string("attenuation kernel, ") + cfg.kind;
      check(aw_svg_plot((dir / (stem + ".svg")).string().c_str(), ts.data(),
                        aw_signal_data(sig.ptr), len, title.c_str(), "t (s)",
                        "K(0.25, t)", opt.deterministic ? 0 : 1),
            "figure svg");
    }
    check(aw_report_write_json(&rep, (dir / (stem + "_report.json")).string().c_str()),
          "figure report json");

    int expected_noncausal = 0;
    char reason[256] = {0};
    check(aw_model_expected_causality(model.ptr, &expected_noncausal, reason,
                                      sizeof reason),
          "expected causality");

    manifest["entries"].push_back(
        json{{"kind", cfg.kind},
             {"model", json::parse(aw_model_json(model.ptr))},
             {"grid", {{"n", n}, {"dt", dt}, {"t0", t0}}},
             {"files", {stem + ".csv", stem + ".svg", stem + "_report.json"}},
             {"metric", rep.metric},
             {"classification", rep.noncausal ? "NonCausal" : "Causal"},
             {"expected", expected_noncausal ? "NonCausal" : "Causal"}});
  }

  std::ofstream mf(dir / "manifest.json");
  mf << manifest.dump(2) << '\n';
  if (!mf) throw cli_error(kExitValidation, "cannot write manifest");
  std::cout << "wrote " << (dir / "manifest.json").string() << " ("
            << manifest["entries"].size() << " configurations)\n";
  return 0;
}

void add_common_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--model", opt.model,
                  "model kind: PowerLawKK, Szabo, ThermoViscous, "
                  "CausalThermoViscous, CausalGamma, NoAttenuation");
  cmd->add_option("--gamma", opt.gamma, "family exponent");
  cmd->add_option("--alpha0", opt.alpha0, "power-law magnitude");
  cmd->add_option("--a0", opt.a0, "linear-term coefficient (PowerLawKK)");
  cmd->add_option("--tau0", opt.tau0, "relaxation time (s)");
  cmd->add_option("--alpha1", opt.alpha1, "causal-variant magnitude");
  cmd->add_option("--c0", opt.c0, "sound speed (m/s), default 1");
  cmd->add_option("--n", opt.n, "samples (power of two)");
  cmd->add_option("--dt", opt.dt, "sample spacing (s)");
  cmd->add_option("--t0", opt.t0, "window start (s), must be <= -n*dt/4");
  cmd->add_option("--radii", opt.radii, "comma-separated radii (m), default 0.25");
  cmd->add_option("--epsilon", opt.epsilon, "negative-time guard (s), default 4*dt");
  cmd->add_option("--threshold", opt.threshold, "classification threshold, default 1e-3");
  cmd->add_option("--level", opt.level, "front-detection energy level, default 1e-4");
  cmd->add_option("--out", opt.out, "output directory (or $ATTENWAVE_OUT)");
  cmd->add_option("--format", opt.format, "comma list of csv,json,svg,bin (default csv)");
  cmd->add_flag("--window", opt.window, "taper with a Tukey window (marks report)");
  cmd->add_flag("--seedless-deterministic", opt.deterministic,
                "suppress timestamps for bit-identical output");
  cmd->add_option("--config", opt.config_path, "JSON config file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency-dependent acoustic attenuation: kernels, point-source "
               "responses, and causality diagnostics"};
  app.require_subcommand(1);

  Options opt;
  auto* kernel = app.add_subcommand("kernel", "time-domain attenuation kernel(s)");
  auto* green = app.add_subcommand("green", "point-source response trace(s)");
  auto* causality = app.add_subcommand("causality", "causality report for a kernel");
  auto* kk = app.add_subcommand("kk-check", "dispersion-relation residual");
  auto* simulate = app.add_subcommand("simulate", "propagate a source pulse");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  auto* figures =
      app.add_subcommand("reproduce-figures", "kernel catalog with reports and plots");

  for (CLI::App* cmd : {kernel, green, causality, kk, simulate, sweep, figures})
    add_common_flags(cmd, opt);

  green->add_flag("--shifted", opt.shifted, "remove the r/c0 travel delay");
  kk->add_option("--order", opt.order, "derivative order, default 1");
  kk->add_option("--band", opt.band, "band fraction of omega_max, default 0.5");
  sweep->add_option("--order", opt.order, "kk derivative order, default 1");
  sweep->add_option("--band", opt.band, "kk band fraction, default 0.5");
  simulate->add_option("--source", opt.source,
                       "gaussian:center,width or csv:path (default gaussian:0.5,0.05)");
  simulate->add_option("--snapshot", opt.snapshot_t, "also write p(r, t) at this time");
  sweep->add_option("--gammas", opt.gammas, "comma list for a gamma axis");
  sweep->add_option("--alpha0s", opt.alpha0s, "comma list for an alpha0 axis");
  sweep->add_option("--tau0s", opt.tau0s, "comma list for a tau0 axis");
  sweep->add_option("--alpha1s", opt.alpha1s, "comma list for an alpha1 axis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!opt.config_path.empty()) opt.config = load_config(opt.config_path);
    if (kernel->parsed()) return cmd_kernel(opt);
    if (green->parsed()) return cmd_green(opt);
    if (causality->parsed()) return cmd_causality(opt);
    if (kk->parsed()) return cmd_kk_check(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (figures->parsed()) return cmd_reproduce_figures(opt);
  } catch (const cli_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
