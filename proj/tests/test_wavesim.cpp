#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/causality.hpp"
#include "core/kernels.hpp"
#include "core/models.hpp"
#include "core/wavesim.hpp"
#include "oracles.hpp"

using aw::SpectralGrid;

namespace {

SpectralGrid sim_grid() { return aw::make_grid(1024, std::ldexp(1.0, -7), -2.0); }

// Cyclic time-domain convolution p = dt * (green o source) with the t0
// offset folded into the index shift; the frequency-domain path must agree
// to rounding.
std::vector<double> direct_convolution(const aw::AttenuationModel& m, const SpectralGrid& g,
                                       const aw::SourcePulse& src, double r) {
  const auto green = aw::green_trace(m, g, r, false);
  const auto s0 = static_cast<std::size_t>(std::llround(-g.t0 / g.dt));
  std::vector<double> out(g.n, 0.0);
  for (std::size_t j = 0; j < g.n; ++j) {
    double acc = 0.0;
    for (std::size_t mm = 0; mm < g.n; ++mm) {
      acc += green.samples[mm] * src.samples[(j + g.n - mm + s0) % g.n];
    }
    out[j] = acc * g.dt;
  }
  return out;
}

}  // namespace

TEST_CASE("source construction") {
  const auto g = sim_grid();

  auto src = aw::gaussian_source(g, 0.5, 0.05);
  CHECK(src.samples.size() == g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    if (g.time(j) < 0.0) CHECK(src.samples[j] == 0.0);
  }
  const auto jc = static_cast<std::size_t>(std::llround((0.5 - g.t0) / g.dt));
  CHECK(src.samples[jc] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!src.description.empty());

  CHECK_THROWS_AS(aw::gaussian_source(g, -0.5, 0.05), aw::error);
  CHECK_THROWS_AS(aw::gaussian_source(g, 0.0, 0.05), aw::error);
  CHECK_THROWS_AS(aw::gaussian_source(g, 0.5, 0.0), aw::error);
  CHECK_THROWS_AS(aw::gaussian_source(g, 100.0, 0.05), aw::error);  // outside the window

  std::vector<double> ok(g.n, 0.0);
  ok[600] = 1.0;  // t > 0
  CHECK_NOTHROW(aw::make_source(g, ok, "impulse"));
  std::vector<double> bad(g.n, 0.0);
  bad[10] = 1.0;  // t < 0
  CHECK_THROWS_AS(aw::make_source(g, bad, "early"), aw::error);
  CHECK_THROWS_AS(aw::make_source(g, std::vector<double>(g.n - 1, 0.0), "short"), aw::error);
  bad.assign(g.n, 0.0);
  bad[600] = std::nan("");
  CHECK_THROWS_AS(aw::make_source(g, bad, "nan"), aw::error);
}

TEST_CASE("lossless propagation is a delayed spherical spread") {
  const auto g = sim_grid();
  const auto src = aw::gaussian_source(g, 0.5, 0.05);
  const double r = 0.25;  // r/c0 = 32 samples
  const auto field = aw::propagate(aw::no_attenuation(), src, {r});
  REQUIRE(field.values.size() == 1);

  const std::size_t s = 32;
  std::vector<double> want(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    want[j] = src.samples[(j + g.n - s) % g.n] / (4.0 * M_PI * r);
  }
  CHECK(oracle::rel_l2(field.values[0], want) < 1e-10);
}

TEST_CASE("propagation is linear in the source") {
  const auto g = sim_grid();
  const auto a = aw::gaussian_source(g, 0.5, 0.05);
  const auto b = aw::gaussian_source(g, 1.5, 0.2);
  std::vector<double> mix(g.n);
  for (std::size_t j = 0; j < g.n; ++j) mix[j] = 2.0 * a.samples[j] - 0.5 * b.samples[j];
  const auto src_mix = aw::make_source(g, mix, "mix");

  const auto m = aw::power_law_kk(1.5, 0.0316);
  const auto pa = aw::propagate(m, a, {0.25});
  const auto pb = aw::propagate(m, b, {0.25});
  const auto pm = aw::propagate(m, src_mix, {0.25});
  std::vector<double> combo(g.n);
  for (std::size_t j = 0; j < g.n; ++j) {
    combo[j] = 2.0 * pa.values[0][j] - 0.5 * pb.values[0][j];
  }
  CHECK(oracle::rel_l2(pm.values[0], combo) < 1e-10);
}

TEST_CASE("delaying the source delays the field") {
  const auto g = sim_grid();
  const auto src = aw::gaussian_source(g, 0.5, 0.05);
  const std::size_t shift = 40;
  std::vector<double> late(g.n);
  for (std::size_t j = 0; j < g.n; ++j) late[j] = src.samples[(j + g.n - shift) % g.n];
  const auto src_late = aw::make_source(g, late, "late");

  const auto m = aw::thermo_viscous(0.01);
  const auto p0 = aw::propagate(m, src, {0.25});
  const auto p1 = aw::propagate(m, src_late, {0.25});
  std::vector<double> rolled(g.n);
  for (std::size_t j = 0; j < g.n; ++j) rolled[j] = p0.values[0][(j + g.n - shift) % g.n];
  CHECK(oracle::rel_l2(p1.values[0], rolled) < 1e-10);
}

TEST_CASE("r-scaled lossless traces coincide after their own delays") {
  const auto g = sim_grid();
  const auto src = aw::gaussian_source(g, 0.5, 0.05);
  const std::vector<double> radii = {0.25, 0.5, 1.0};  // all on-lattice delays
  const auto field = aw::propagate(aw::no_attenuation(), src, radii);
  std::vector<std::vector<double>> unrolled;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto s = static_cast<std::size_t>(std::llround(radii[i] / g.dt));
    std::vector<double> v(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
      v[j] = field.values[i][(j + s) % g.n] * 4.0 * M_PI * radii[i];
    }
    unrolled.push_back(std::move(v));
  }
  CHECK(oracle::rel_l2(unrolled[1], unrolled[0]) < 1e-8);
  CHECK(oracle::rel_l2(unrolled[2], unrolled[0]) < 1e-8);
}

TEST_CASE("causal model with causal source stays causal") {
  const auto g = sim_grid();
  const auto src = aw::gaussian_source(g, 0.5, 0.05);
  const auto field = aw::propagate(aw::power_law_kk(0.5, 0.1581), src, {0.25});
  const aw::TimeSignal tr{g, field.values[0], "pa"};
  CHECK(aw::noncausality_metric(tr, 4.0 * g.dt) < 1e-3);
}

TEST_CASE("frequency route matches direct convolution") {
  const auto g = sim_grid();

  const auto gaussian = aw::gaussian_source(g, 0.5, 0.05);

  std::vector<double> burst(g.n, 0.0);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double t = g.time(j);
    if (t <= 0.0) continue;
    burst[j] = std::sin(40.0 * t) * std::exp(-(t - 1.0) * (t - 1.0) / 0.08);
  }
  const auto tone = aw::make_source(g, burst, "tone burst");

  std::vector<double> rampv(g.n, 0.0);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double t = g.time(j);
    if (t <= 0.0) continue;
    rampv[j] = t * std::exp(-t / 0.5);
  }
  const auto ramp = aw::make_source(g, rampv, "damped ramp");

  const struct { aw::AttenuationModel m; const aw::SourcePulse* s; } cases[] = {
      {aw::no_attenuation(), &gaussian},
      {aw::power_law_kk(1.5, 0.0316), &tone},
      {aw::thermo_viscous(0.01), &ramp},
  };
  for (const auto& c : cases) {
    const auto field = aw::propagate(c.m, *c.s, {0.25});
    const auto direct = direct_convolution(c.m, g, *c.s, 0.25);
    CHECK(oracle::rel_l2(field.values[0], direct) < 1e-8);
  }
}

TEST_CASE("propagation guards") {
  const auto g = sim_grid();
  const auto src = aw::gaussian_source(g, 0.5, 0.05);
  CHECK_THROWS_AS(aw::propagate(aw::no_attenuation(), src, {}), aw::error);
  CHECK_THROWS_AS(aw::propagate(aw::no_attenuation(), src, {-0.25}), aw::error);
  try {
    aw::propagate(aw::no_attenuation(), src, {0.25, 100.0});  // arrival past the window
    CHECK(false);
  } catch (const aw::error& e) {
    CHECK(e.code() == aw::errc::unresolved_shift);
  }
}

TEST_CASE("snapshots interpolate in time") {
  const auto g = sim_grid();
  const auto src = aw::gaussian_source(g, 0.5, 0.05);
  const std::vector<double> radii = {0.2, 0.3, 0.4};
  const auto field = aw::propagate(aw::power_law_kk(1.5, 0.0316), src, radii);

  const double t_on = g.time(700);
  auto rows = aw::snapshot(field, t_on);
  REQUIRE(rows.size() == radii.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].first == radii[i]);
    CHECK(rows[i].second == doctest::Approx(field.values[i][700]).epsilon(1e-12));
  }

  const double t_mid = g.time(700) + 0.5 * g.dt;
  rows = aw::snapshot(field, t_mid);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double want = 0.5 * (field.values[i][700] + field.values[i][701]);
    CHECK(rows[i].second == doctest::Approx(want).epsilon(1e-12));
  }

  CHECK_NOTHROW(aw::snapshot(field, g.time_last()));
  CHECK_THROWS_AS(aw::snapshot(field, g.t0 - 1.0), aw::error);
  try {
    aw::snapshot(field, g.time_last() + 1.0);
    CHECK(false);
  } catch (const aw::error& e) {
    CHECK(e.code() == aw::errc::out_of_window);
  }
}
