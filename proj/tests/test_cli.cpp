// End-to-end checks of the command-line tool: exit codes, output files,
// stdout reports, config overlay, and rerun determinism.  Every case shells
// out to the real binary (path injected by the build as AW_CLI_PATH).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  const fs::path p = fs::temp_directory_path() / "attenwave_cli_test";
  fs::create_directories(p);
  return p;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = work_dir() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = work_dir() / ("stdout_" + std::to_string(counter) + ".txt");
  const fs::path err_path = work_dir() / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = std::string("\"") + AW_CLI_PATH + "\" " + args + " > \"" +
                          out_path.string() + "\" 2> \"" + err_path.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.out = slurp(out_path);
  res.err = slurp(err_path);
  return res;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) fields.push_back(item);
  return fields;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

constexpr const char* kPl05 = "--model PowerLawKK --gamma 0.5 --alpha0 0.1581";

}  // namespace

TEST_CASE("help and argument errors") {
  RunResult help = run("--help");
  CHECK(help.code == 0);
  CHECK(help.out.find("kernel") != std::string::npos);
  CHECK(help.out.find("sweep") != std::string::npos);

  CHECK(run("").code != 0);            // a subcommand is required
  CHECK(run("--bogus").code != 0);     // unknown flag
  CHECK(run("kernel --frobnicate 1").code != 0);

  RunResult nomodel = run("kernel --n 1024 --dt 0.001");
  CHECK(nomodel.code == 2);
  CHECK(nomodel.err.find("no model given") != std::string::npos);
}

TEST_CASE("invalid model parameters exit with the validation code") {
  CHECK(run("kernel --model PowerLawKK --gamma 1.0 --alpha0 0.1 --n 1024 --dt 0.001")
            .code == 2);
  CHECK(run("kernel --model Nope --n 1024 --dt 0.001").code == 2);
  CHECK(run("kernel --model CausalGamma --gamma 2.5 --alpha1 1 --tau0 1e-3 "
            "--n 1024 --dt 0.001")
            .code == 2);
  // bad grid: n not a power of two
  CHECK(run("kernel " + std::string(kPl05) + " --n 1000 --dt 0.001").code == 2);
}

TEST_CASE("kernel writes the documented filenames") {
  const fs::path dir = fresh_dir("kernel_out");
  RunResult r = run("kernel " + std::string(kPl05) +
                    " --n 4096 --dt 0.001 --radii 0.25 --format csv,json,svg "
                    "--seedless-deterministic --out " +
                    dir.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "kernel_PowerLawKK_r0.25.csv"));
  CHECK(fs::exists(dir / "kernel_PowerLawKK_r0.25.svg"));
  CHECK(fs::exists(dir / "kernel_PowerLawKK_r0.25_report.json"));

  const std::string csv = slurp(dir / "kernel_PowerLawKK_r0.25.csv");
  CHECK(csv.rfind("t,", 0) == 0);
  const json rep = json::parse(slurp(dir / "kernel_PowerLawKK_r0.25_report.json"));
  CHECK(rep.at("schema_version").get<int>() == 1);
  CHECK(rep.contains("metric"));
  CHECK(rep.at("threshold").get<double>() == doctest::Approx(1e-3));
  const std::string cls = rep.at("classification").get<std::string>();
  CHECK((cls == "Causal" || cls == "NonCausal"));

  // several radii together become one stacked field
  RunResult f = run("kernel " + std::string(kPl05) +
                    " --n 4096 --dt 0.001 --radii 0.1,0.2 --format csv,bin --out " +
                    dir.string());
  CHECK(f.code == 0);
  CHECK(fs::exists(dir / "kernel_field_PowerLawKK.csv"));
  CHECK(fs::exists(dir / "kernel_field_PowerLawKK.bin"));
  const json side = json::parse(slurp(dir / "kernel_field_PowerLawKK.json"));
  CHECK(side.at("rows").get<int>() == 2);
  CHECK(side.at("cols").get<int>() == 4096);
  CHECK(side.at("model").at("kind").get<std::string>() == "PowerLawKK");
}

TEST_CASE("green traces and the unresolved-delay exit code") {
  const fs::path dir = fresh_dir("green_out");
  RunResult r = run("green " + std::string(kPl05) +
                    " --n 4096 --dt 0.001 --radii 0.25 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "green_PowerLawKK_r0.25.csv"));

  RunResult s = run("green " + std::string(kPl05) +
                    " --shifted --n 4096 --dt 0.001 --radii 0.25 --out " + dir.string());
  CHECK(s.code == 0);
  CHECK(fs::exists(dir / "green_shifted_PowerLawKK_r0.25.csv"));

  // the travel delay for r=50 falls outside a 4s window: numerical failure, not usage
  RunResult far = run("green " + std::string(kPl05) +
                      " --n 4096 --dt 0.001 --radii 50 --out " + dir.string());
  CHECK(far.code == 3);
  CHECK(!far.err.empty());
}

TEST_CASE("causality prints a json report on stdout") {
  RunResult r = run("causality --model PowerLawKK --gamma 1.5 --alpha0 0.0316 "
                    "--n 32768 --dt 0.00048828125 --radii 0.25");
  CHECK(r.code == 0);
  const json rep = json::parse(r.out);
  CHECK(rep.at("schema_version").get<int>() == 1);
  CHECK(rep.at("classification").get<std::string>() == "NonCausal");
  CHECK(rep.at("metric").get<double>() > 0.05);
  CHECK(rep.at("epsilon").get<double>() == doctest::Approx(4.0 * 0.00048828125));
  CHECK(rep.at("threshold").get<double>() == doctest::Approx(1e-3));
  CHECK(rep.at("windowed").get<bool>() == false);

  RunResult w = run("causality --model PowerLawKK --gamma 1.5 --alpha0 0.0316 "
                    "--n 32768 --dt 0.00048828125 --radii 0.25 --window");
  CHECK(w.code == 0);
  CHECK(json::parse(w.out).at("windowed").get<bool>() == true);
}

TEST_CASE("kk-check reports a residual and flags override the config file") {
  const fs::path dir = fresh_dir("kk_out");
  const fs::path cfg_path = dir / "config.json";
  {
    json cfg{{"model", {{"kind", "ThermoViscous"}, {"tau0", 1e-5}}},
             {"grid", {{"n", 65536}, {"dt", 0.0009765625}, {"t0", -32.0}}},
             {"out", dir.string()}};
    std::ofstream f(cfg_path);
    f << cfg.dump(2) << '\n';
  }
  // flags replace the config's kind and parameters; grid and out come from the file
  RunResult r = run("kk-check --config " + cfg_path.string() + " " + kPl05);
  CHECK(r.code == 0);
  const json out = json::parse(r.out);
  CHECK(out.at("kind").get<std::string>() == "PowerLawKK");
  CHECK(out.at("deriv_order").get<int>() == 1);
  CHECK(out.at("band_frac").get<double>() == doctest::Approx(0.5));
  const double residual = out.at("residual").get<double>();
  CHECK(residual > 0.0);
  CHECK(residual < 0.05);

  CHECK(fs::exists(dir / "kk_PowerLawKK.json"));
  const json file_out = json::parse(slurp(dir / "kk_PowerLawKK.json"));
  CHECK(file_out.at("residual").get<double>() == doctest::Approx(residual));

  // a derivative that grows toward the grid edge is a numerical failure
  RunResult nd = run("kk-check --config " + cfg_path.string() +
                     " --model PowerLawKK --gamma 2.7 --alpha0 0.0071");
  CHECK(nd.code == 3);
}

TEST_CASE("simulate writes pressure traces and a snapshot") {
  const fs::path dir = fresh_dir("sim_out");
  RunResult r = run("simulate --model NoAttenuation --n 4096 --dt 0.001 "
                    "--radii 0.25,0.5 --source gaussian:0.5,0.05 --snapshot 1.0 --out " +
                    dir.string());
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "pressure_NoAttenuation.csv"));
  const auto snap = read_lines(dir / "pressure_NoAttenuation_snapshot.csv");
  REQUIRE(snap.size() == 3);
  CHECK(snap[0] == "r,p");
  CHECK(std::stod(split_csv_line(snap[1])[0]) == doctest::Approx(0.25));
  CHECK(std::stod(split_csv_line(snap[2])[0]) == doctest::Approx(0.5));

  CHECK(run("simulate --model NoAttenuation --n 4096 --dt 0.001 --source blob:1 --out " +
            dir.string())
            .code == 2);
}

TEST_CASE("sweep classifies the power-law family across the exponent transition") {
  const fs::path dir = fresh_dir("sweep_out");
  // the frequency window has to resolve the small negative-time mass at
  // gamma < 1; the coarse default would blur the classification boundary
  RunResult r = run("sweep --model PowerLawKK "
                    "--gammas 0.1,0.3,0.5,0.7,0.9,1.1,1.3,1.5,1.7,1.9 "
                    "--alpha0s 0.05 --radii 0.25 --n 262144 --dt 0.00006103515625 "
                    "--out " +
                    dir.string());
  CHECK(r.code == 0);

  const auto lines = read_lines(dir / "sweep.csv");
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] ==
        "kind,gamma,alpha0,tau0,alpha1,r,metric,classification,front_speed,kk_residual");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    REQUIRE(fields.size() == 10);
    CHECK(fields[0] == "PowerLawKK");
    const double gamma = std::stod(fields[1]);
    CHECK(std::stod(fields[2]) == doctest::Approx(0.05));
    CHECK(std::stod(fields[5]) == doctest::Approx(0.25));
    const double metric = std::stod(fields[6]);
    if (gamma < 1.0) {
      CHECK(fields[7] == "Causal");
      CHECK(metric < 1e-3);
    } else {
      CHECK(fields[7] == "NonCausal");
      CHECK(metric > 0.1);
    }
    if (gamma > 1.85) {
      // the weighted dispersion integrand no longer decays: recorded as nan
      CHECK(fields[9] == "nan");
    }
  }

  CHECK(run("sweep --model PowerLawKK --gammas 0.5,abc --alpha0s 0.05 "
            "--n 4096 --dt 0.001 --out " +
            dir.string())
            .code == 2);
}

TEST_CASE("reproduce-figures emits a manifest that matches its files") {
  const fs::path dir = fresh_dir("figs_out");
  RunResult r = run("reproduce-figures --n 8192 --dt 0.001 --seedless-deterministic "
                    "--out " +
                    dir.string());
  CHECK(r.code == 0);
  REQUIRE(fs::exists(dir / "manifest.json"));
  const json manifest = json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest.at("radius").get<double>() == doctest::Approx(0.25));
  const json& entries = manifest.at("entries");
  REQUIRE(entries.size() == 10);

  int pl = 0, sz = 0, tv = 0, ctv = 0;
  for (const json& e : entries) {
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "PowerLawKK") ++pl;
    if (kind == "Szabo") ++sz;
    if (kind == "ThermoViscous") ++tv;
    if (kind == "CausalThermoViscous") ++ctv;
    CHECK(e.contains("metric"));
    CHECK(e.contains("classification"));
    CHECK(e.contains("expected"));
    CHECK(e.at("grid").at("n").get<std::size_t>() == 8192);
    for (const json& f : e.at("files")) CHECK(fs::exists(dir / f.get<std::string>()));
  }
  CHECK(pl == 4);
  CHECK(sz == 4);
  CHECK(tv == 1);
  CHECK(ctv == 1);
}

TEST_CASE("identical runs produce identical bytes") {
  const fs::path d1 = fresh_dir("det_1");
  const fs::path d2 = fresh_dir("det_2");
  const std::string args = "kernel " + std::string(kPl05) +
                           " --n 4096 --dt 0.001 --radii 0.25 --format csv,svg "
                           "--seedless-deterministic --out ";
  CHECK(run(args + d1.string()).code == 0);
  CHECK(run(args + d2.string()).code == 0);
  CHECK(slurp(d1 / "kernel_PowerLawKK_r0.25.csv") ==
        slurp(d2 / "kernel_PowerLawKK_r0.25.csv"));
  CHECK(slurp(d1 / "kernel_PowerLawKK_r0.25.svg") ==
        slurp(d2 / "kernel_PowerLawKK_r0.25.svg"));
}
