#include "moyal/app/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <set>

#include "json_util.hpp"
#include "moyal/bohm.hpp"
#include "moyal/dynamics.hpp"
#include "moyal/error.hpp"
#include "moyal/shadow.hpp"
#include "moyal/star.hpp"
#include "moyal/wigner.hpp"

#ifndef MOYAL_VERSION
#define MOYAL_VERSION "0.0.0"
#endif
#ifndef MOYAL_SCENARIO_DIR
#define MOYAL_SCENARIO_DIR ""
#endif

namespace moyal::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view version() { return MOYAL_VERSION; }

bool RunResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Context {
  const Scenario& scenario;
  const RunOptions& options;
  std::uint64_t seed;
  Grid grid;
  std::optional<Wavefunction> psi0;
  Potential V;
  std::optional<TimeSeries> evolved;
  std::vector<Check> checks;
  json metrics = json::object();
  Artifacts artifacts;

  const TimeSeries& series() {
    if (!evolved) {
      const EvolutionSpec& e = *scenario.evolution;
      evolved = split_step_evolve(*psi0, V, e.dt, e.steps, e.record_every);
    }
    return *evolved;
  }
  double scale() const { return options.tolerance_scale; }
  void check(Check c, std::string_view prefix) {
    c.name = std::string(prefix) + ": " + c.name;
    checks.push_back(std::move(c));
  }
  void plot(const std::string& name, std::string svg) {
    if (options.plots) artifacts.add(name, std::move(svg));
  }
};

void run_wigner(Context& c) {
  const Wavefunction& psi = *c.psi0;
  const Grid& g = psi.grid();
  const std::size_t n = g.n();
  const auto W = wigner_transform(psi);
  const auto m = marginals(W);
  const auto rho = psi.density(), phi = to_momentum(psi).density();
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max({err, std::abs(m.position[i] - rho[i]), std::abs(m.momentum[i] - phi[i])});
  const double pur = purity(W);
  const double wmin = *std::min_element(W.values().begin(), W.values().end());
  c.check(check_at_most("marginals match |psi|^2 and |phi|^2", err, 1e-8, c.scale()), "wigner");
  c.check(check_at_most("purity of the pure state is one", std::abs(pur - 1.0), 1e-8, c.scale()), "wigner");
  c.metrics["wigner.marginal_error"] = err;
  c.metrics["wigner.purity"] = pur;
  c.metrics["wigner.minimum"] = wmin;

  Csv marg({"x", "density", "marginal_x", "p", "momentum_density", "marginal_p"});
  for (std::size_t i = 0; i < n; ++i)
    marg.row({cell(g.x(i)), cell(rho[i]), cell(m.position[i]), cell(g.p(i)), cell(phi[i]), cell(m.momentum[i])});
  c.artifacts.add("marginals.csv", marg.str());

  const std::size_t stride = std::max<std::size_t>(1, n / 128);
  Csv table({"x", "p", "W"});
  std::vector<double> xs, ps, vals;
  for (std::size_t k = 0; k < n; k += stride) ps.push_back(g.p(k));
  for (std::size_t j = 0; j < n; j += stride) xs.push_back(g.x(j));
  for (std::size_t j = 0; j < n; j += stride)
    for (std::size_t k = 0; k < n; k += stride) table.row({cell(g.x(j)), cell(g.p(k)), cell(W(j, k))});
  for (std::size_t k = 0; k < n; k += stride)
    for (std::size_t j = 0; j < n; j += stride) vals.push_back(W(j, k));
  c.artifacts.add("wigner.csv", table.str());
  c.plot("wigner.svg", heatmap({"Wigner function", "x", "p"}, xs, ps, vals));
}

double nan_unless(bool ok, double v) { return ok ? v : std::nan(""); }

void run_fields(Context& c) {
  const Wavefunction& psi = *c.psi0;
  const Grid& g = psi.grid();
  const auto cm = conditional_momentum(psi);
  const auto grad = guidance_from_phase(polar_decompose(psi, -1.0, default_refine));
  double gap = 0.0;
  for (std::size_t i = 0; i < g.n(); ++i)
    if (cm.valid[i] && grad.valid[i]) gap = std::max(gap, std::abs(cm.values[i] - grad.values[i]));
  const auto dual = conditional_position(to_momentum(psi));
  const auto Q = quantum_potential(polar_decompose(psi, -1.0, 1), psi.config());
  c.check(check_at_most("Wigner p-moment matches the derivative formula", cm.route_gap, 1e-6, c.scale()), "fields");
  c.check(check_at_most("guidance field equals dS/dx", gap, 1e-5, c.scale()), "fields");
  c.check(check_at_most("x(p) equals -dS_p/dp", dual.route_gap, 1e-5, c.scale()), "fields");
  c.metrics["fields.moment_route_gap"] = cm.route_gap;
  c.metrics["fields.phase_route_gap"] = gap;
  c.metrics["fields.dual_route_gap"] = dual.route_gap;
  c.metrics["fields.quantum_potential_max"] = Q.max_abs();

  Csv t({"x", "density", "p_moment", "p_phase", "quantum_potential"});
  for (std::size_t i = 0; i < g.n(); ++i)
    t.row({cell(g.x(i)), cell(cm.density[i]), cell(nan_unless(cm.valid[i], cm.values[i])),
           cell(nan_unless(grad.valid[i], grad.values[i])), cell(nan_unless(Q.valid[i], Q.values[i]))});
  c.artifacts.add("fields.csv", t.str());
  Csv d({"p", "density", "x_phase"});
  for (std::size_t k = 0; k < g.n(); ++k)
    d.row({cell(g.p(k)), cell(dual.density[k]), cell(nan_unless(dual.valid[k], dual.values[k]))});
  c.artifacts.add("dual_field.csv", d.str());

  PlotSeries moment{"Wigner p-moment", g.positions(), {}, palette[0]};
  PlotSeries phase{"dS/dx", g.positions(), {}, palette[1], true};
  for (std::size_t i = 0; i < g.n(); ++i) {
    moment.y.push_back(nan_unless(cm.valid[i], cm.values[i]));
    phase.y.push_back(nan_unless(grad.valid[i], grad.values[i]));
  }
  c.plot("fields.svg", line_plot({"Conditional momentum", "x", "p(x)"}, {moment, phase}));

  if (c.scenario.evolution) {
    const auto s = split_step_evolve(psi, c.V, c.scenario.evolution->dt, 2, 1);
    const double qhj = qhj_residual(s, c.V.values, psi.config()).max_abs;
    const double cont = continuity_residual(s, 1).max_abs();
    c.check(check_at_most("quantum Hamilton-Jacobi residual", qhj, 1e-4, c.scale()), "fields");
    c.check(check_at_most("continuity residual", cont, 1e-4, c.scale()), "fields");
    c.metrics["fields.qhj_residual"] = qhj;
    c.metrics["fields.continuity_residual"] = cont;
  }
}

void run_trajectories(Context& c, const Analysis& a) {
  const TimeSeries& s = c.series();
  const Wavefunction& psi = *c.psi0;
  const auto ens = integrate_trajectories(s, sample_from_density(psi.coordinates(), psi.density(), a.paths, c.seed));
  const double gap = min_adjacent_gap(ens);
  const auto flagged = static_cast<std::size_t>(std::count(ens.flagged.begin(), ens.flagged.end(), 1));
  c.check(check_above("adjacent paths never cross", gap, 0.0), "trajectories");
  Check held = check_exact("no path entered a masked region", flagged == 0);
  held.value = static_cast<double>(flagged);
  held.tolerance = 0.0;
  c.check(held, "trajectories");
  c.metrics["trajectories.min_gap"] = gap;
  c.metrics["trajectories.flagged"] = flagged;

  Csv t({"path", "t", "x", "flagged"});
  std::vector<PlotSeries> lines;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    PlotSeries p{"", {}, {}, palette[i % 8], false, 0.6};
    for (std::size_t k = 0; k < ens.times.size(); ++k) {
      t.row({cell(i), cell(ens.times[k]), cell(ens.paths[i][k]), cell(static_cast<int>(ens.flagged[i]))});
      p.x.push_back(ens.paths[i][k]);
      p.y.push_back(ens.times[k]);
    }
    lines.push_back(std::move(p));
  }
  c.artifacts.add("trajectories.csv", t.str());
  c.plot("trajectories.svg", line_plot({"Trajectories", "x", "t"}, lines));

  if (a.density_paths == 0) return;
  const auto many =
      integrate_trajectories(s, sample_from_density(psi.coordinates(), psi.density(), a.density_paths, c.seed + 1));
  const double t_end = many.times.back();
  const double tv = transported_density_check(many, s, t_end);
  c.check(check_at_most("endpoint histogram matches |psi(T)|^2 (total variation)", tv, 0.05, c.scale()), "trajectories");
  c.metrics["trajectories.total_variation"] = tv;

  const auto it = std::find_if(s.times.begin(), s.times.end(), [&](double x) { return std::abs(x - t_end) <= 1e-9 * std::max(1.0, t_end); });
  const Wavefunction& last = s.states[static_cast<std::size_t>(it - s.times.begin())];
  const auto range = quantiles_of_density(last.coordinates(), last.density(), {1e-4, 1.0 - 1e-4});
  const std::size_t bins = 64;
  const double width = (range[1] - range[0]) / bins;
  std::vector<double> hist(bins, 0.0), centre(bins);
  const std::size_t k_end = many.times.size() - 1;
  for (const auto& p : many.paths) {
    const double x = p[k_end];
    if (x >= range[0] && x < range[1]) hist[std::min(bins - 1, static_cast<std::size_t>((x - range[0]) / width))] += 1.0;
  }
  for (std::size_t b = 0; b < bins; ++b) {
    centre[b] = range[0] + (b + 0.5) * width;
    hist[b] /= static_cast<double>(many.size()) * width;
  }
  Csv f({"x", "path_density", "psi_density"});
  const auto rho = last.density();
  std::vector<double> xs, ys;
  for (std::size_t j = 0; j < rho.size(); ++j)
    if (last.coordinate(j) >= range[0] && last.coordinate(j) <= range[1]) {
      xs.push_back(last.coordinate(j));
      ys.push_back(rho[j]);
    }
  for (std::size_t b = 0; b < bins; ++b) {
    // |psi|^2 at the bin centre by linear interpolation on the grid
    const double u = (centre[b] - last.coordinate(0)) / last.spacing();
    const auto j = static_cast<std::size_t>(u);
    const double w = u - static_cast<double>(j);
    f.row({cell(centre[b]), cell(hist[b]), cell((1 - w) * rho[j] + w * rho[j + 1])});
  }
  c.artifacts.add("fringe.csv", f.str());
  c.plot("fringe.svg", line_plot({"Endpoint histogram and |psi(T)|^2", "x", "density", false, true},
                                 {{"paths", centre, hist, palette[0]}, {"|psi|^2", xs, ys, palette[1]}}));
}

void run_shadow(Context& c, const Analysis& a) {
  const auto rep = streamline_divergence(c.series(), c.V, a.theta1, a.theta2, a.levels);
  c.metrics["shadow.divergence"] = rep.divergence;
  if (a.expect == "converge")
    c.check(check_at_most("streamlines agree across domains", rep.divergence, 1e-3, c.scale()), "shadow");
  else if (a.expect == "diverge")
    c.check(check_above("streamlines differ across domains", rep.divergence, 0.1, c.scale()), "shadow");
  Csv t({"level", "t", "u1", "u2", "z1", "z2"});
  std::vector<PlotSeries> lines;
  for (std::size_t i = 0; i < rep.levels.size(); ++i) {
    PlotSeries p1{i == 0 ? "theta1" : "", rep.times, rep.z1[i], palette[0]};
    PlotSeries p2{i == 0 ? "theta2" : "", rep.times, rep.z2[i], palette[1]};
    for (std::size_t k = 0; k < rep.times.size(); ++k)
      t.row({cell(rep.levels[i]), cell(rep.times[k]), cell(rep.paths1.paths[i][k]), cell(rep.paths2.paths[i][k]),
             cell(rep.z1[i][k]), cell(rep.z2[i][k])});
    lines.push_back(std::move(p1));
    lines.push_back(std::move(p2));
  }
  c.artifacts.add("shadow.csv", t.str());
  c.plot("shadow.svg", line_plot({"Quantile streamlines, standardized chart", "t", "z"}, lines));
}

void run_brackets(Context& c, const Analysis& a) {
  Csv t({"hbar", "norm_exact", "norm", "ratio_to_previous", "grid_relative_error"});
  std::optional<Rational> prev_norm;
  double prev_h = 0.0;
  PlotSeries exact{"|MB - PB|", {}, {}, palette[0], true};
  for (double h : a.hbar_sweep) {
    const PhysicsConfig cfg{h, c.scenario.physics.mass};
    const auto A = PolySymbol::parse(a.a, h), B = PolySymbol::parse(a.b, h);
    const PolySymbol mb = moyal_bracket(A, B);
    const PolySymbol diff = mb - poisson_bracket(A, B);
    const Rational norm = diff.coefficient_norm();
    const Grid g = Grid::self_dual(a.grid_n, h);
    const auto grid_mb = moyal_bracket_grid(sample_windowed(A, g, cfg), sample_windowed(B, g, cfg));
    const auto mask = central_quarter(g);
    double err = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < g.n(); ++j)
      for (std::size_t k = 0; k < g.n(); ++k) {
        if (!mask[j * g.n() + k]) continue;
        err = std::max(err, std::abs(grid_mb(j, k) - mb.evaluate(g.x(j), g.p(k))));
        scale = std::max(scale, std::abs(diff.evaluate(g.x(j), g.p(k))));
      }
    const double rel = scale > 0.0 ? err / scale : std::nan("");
    const std::string label = "hbar = " + cell(h);
    if (scale > 0.0) c.check(check_at_most("grid bracket correction within 5% at " + label, rel, 0.05, c.scale()), "brackets");
    double ratio = std::nan("");
    if (prev_norm && norm != 0) {
      const Rational r = *prev_norm / norm;
      const Rational hp = exact_from_double(prev_h), hc = exact_from_double(h);
      ratio = r.convert_to<double>();
      Check k = check_exact("exact correction scales as hbar^2 from hbar = " + cell(prev_h) + " to " + cell(h),
                            r == (hp / hc) * (hp / hc), moyal::to_string(r));
      k.value = ratio;
      k.tolerance = ((hp / hc) * (hp / hc)).convert_to<double>();
      c.check(k, "brackets");
    }
    t.row({cell(h), moyal::to_string(norm), cell(norm.convert_to<double>()), cell(ratio), cell(rel)});
    exact.x.push_back(h);
    exact.y.push_back(norm.convert_to<double>());
    prev_norm = norm;
    prev_h = h;
  }
  c.artifacts.add("brackets.csv", t.str());
  c.plot("brackets.svg", line_plot({"Moyal minus Poisson bracket", "hbar", "norm (log10)", true}, {exact}));
}

void run_clifford(Context& c) {
  Csv t({"identity", "pass", "detail"});
  for (auto& k : clifford_items()) {
    t.row({k.name, k.pass ? "true" : "false", k.detail});
    c.check(std::move(k), "clifford-demo");
  }
  c.artifacts.add("clifford.csv", t.str());
}

}  // namespace

RunResult run_scenario(const Scenario& s, const RunOptions& options) {
  if (!(options.tolerance_scale > 0.0) || !std::isfinite(options.tolerance_scale))
    throw ValidationError("--tolerance-scale", "must be a positive number");
  validate(s);
  const Grid grid = s.grid ? build_grid(s) : Grid::self_dual(16, s.physics.hbar);
  Context c{s, options, options.seed.value_or(s.seed), grid, std::nullopt, s.grid ? build_potential(s) : Potential::free(grid),
            std::nullopt, {}, json::object(), {}};
  if (s.state) c.psi0 = build_state(s);
  for (const auto& a : s.analyses) {
    try {
      switch (a.kind) {
        case Analysis::Kind::wigner: run_wigner(c); break;
        case Analysis::Kind::fields: run_fields(c); break;
        case Analysis::Kind::trajectories: run_trajectories(c, a); break;
        case Analysis::Kind::shadow: run_shadow(c, a); break;
        case Analysis::Kind::brackets: run_brackets(c, a); break;
        case Analysis::Kind::clifford_demo: run_clifford(c); break;
      }
    } catch (const Error& e) {
      c.check(check_exact("completed", false, e.what()), to_string(a.kind));
    }
  }

  json summary;
  summary["scenario"] = s.name;
  summary["seed"] = c.seed;
  summary["version"] = std::string(version());
  summary["tolerance_scale"] = options.tolerance_scale;
  summary["physics"] = {{"hbar", s.physics.hbar}, {"mass", s.physics.mass}};
  if (s.grid)
    summary["grid"] = {{"n", grid.n()}, {"x_min", grid.x_min()}, {"x_max", grid.x_max()}, {"dx", grid.dx()}, {"dp", grid.dp()}};
  if (s.evolution)
    summary["evolution"] = {{"dt", s.evolution->dt}, {"steps", s.evolution->steps}, {"record_every", s.evolution->record_every}};
  summary["analyses"] = json::array();
  for (const auto& a : s.analyses) summary["analyses"].push_back(std::string(to_string(a.kind)));
  summary["checks"] = json::array();
  for (const auto& k : c.checks) summary["checks"].push_back(to_json(k));
  for (auto& [key, value] : c.metrics.items())
    if (value.is_number_float() && !std::isfinite(value.get<double>())) value = nullptr;
  summary["metrics"] = c.metrics;
  RunResult r{s.name, c.seed, std::move(c.checks), {}};
  summary["passed"] = r.passed();
  summary["files"] = json::array();
  for (const auto& [name, _] : c.artifacts.files()) summary["files"].push_back(name);
  c.artifacts.add("summary.json", summary.dump(2) + "\n");
  r.artifacts = std::move(c.artifacts);
  return r;
}

fs::path default_output_dir() {
  if (const char* env = std::getenv("MOYAL_OUT_DIR"); env && *env) return env;
  return "moyal-out";
}

std::vector<fs::path> scenario_search_path() {
  std::vector<fs::path> out;
  if (const char* env = std::getenv("MOYAL_SCENARIO_PATH"); env && *env) {
    std::string_view rest(env);
    while (!rest.empty()) {
      const auto colon = rest.find(':');
      const auto part = rest.substr(0, colon);
      if (!part.empty()) out.emplace_back(std::string(part));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
  }
  if (std::string_view(MOYAL_SCENARIO_DIR).size()) out.emplace_back(MOYAL_SCENARIO_DIR);
  return out;
}

std::vector<ScenarioEntry> list_scenarios() {
  std::vector<ScenarioEntry> out;
  std::set<std::string> seen;
  for (const auto& dir : scenario_search_path()) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) continue;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir, ec))
      if (e.is_regular_file() && e.path().extension() == ".scenario") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const std::string stem = f.stem().string();
      if (!seen.insert(stem).second) continue;
      std::string title;
      try {
        title = load_scenario(f).name;
      } catch (const ValidationError& e) {
        title = std::string("invalid: ") + e.what();
      }
      out.push_back({stem, f, title});
    }
  }
  return out;
}

std::optional<fs::path> resolve_scenario(std::string_view name_or_path) {
  const fs::path direct{std::string(name_or_path)};
  std::error_code ec;
  if (fs::is_regular_file(direct, ec)) return direct;
  for (const auto& dir : scenario_search_path()) {
    for (const fs::path& candidate : {dir / direct, dir / (std::string(name_or_path) + ".scenario")})
      if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

}  // namespace moyal::app
