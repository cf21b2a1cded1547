#include "moyal/app/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "moyal/error.hpp"
#include "moyal/poly_symbol.hpp"
#include "moyal/shadow.hpp"
#include "moyal/star.hpp"

namespace moyal::app {

namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string indexed(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void expect_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsMap()) throw ValidationError(path, "expected a mapping");
}

void check_keys(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> allowed) {
  expect_map(node, path);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ValidationError(join(path, key), "unknown key");
  }
}

double number(const YAML::Node& map, const std::string& path, std::string_view key,
              std::optional<double> fallback = std::nullopt) {
  const YAML::Node v = map[std::string(key)];
  const std::string where = join(path, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ValidationError(where, "missing required field");
  }
  double d = 0.0;
  if (!v.IsScalar() || !YAML::convert<double>::decode(v, d)) throw ValidationError(where, "expected a number");
  if (!std::isfinite(d)) throw ValidationError(where, "must be finite");
  return d;
}

std::int64_t integer(const YAML::Node& map, const std::string& path, std::string_view key,
                     std::optional<std::int64_t> fallback = std::nullopt) {
  const YAML::Node v = map[std::string(key)];
  const std::string where = join(path, key);
  if (!v) {
    if (fallback) return *fallback;
    throw ValidationError(where, "missing required field");
  }
  long long i = 0;
  if (!v.IsScalar() || !YAML::convert<long long>::decode(v, i)) throw ValidationError(where, "expected an integer");
  return i;
}

std::size_t count(const YAML::Node& map, const std::string& path, std::string_view key,
                  std::optional<std::int64_t> fallback = std::nullopt) {
  const auto i = integer(map, path, key, fallback);
  if (i < 0) throw ValidationError(join(path, key), "must be >= 0");
  return static_cast<std::size_t>(i);
}

std::string text(const YAML::Node& map, const std::string& path, std::string_view key,
                 std::optional<std::string> fallback = std::nullopt) {
  const YAML::Node v = map[std::string(key)];
  if (!v) {
    if (fallback) return *fallback;
    throw ValidationError(join(path, key), "missing required field");
  }
  if (!v.IsScalar()) throw ValidationError(join(path, key), "expected a string");
  return v.as<std::string>();
}

bool flag(const YAML::Node& map, const std::string& path, std::string_view key, bool fallback) {
  const YAML::Node v = map[std::string(key)];
  if (!v) return fallback;
  bool b = false;
  if (!v.IsScalar() || !YAML::convert<bool>::decode(v, b)) throw ValidationError(join(path, key), "expected true or false");
  return b;
}

std::vector<double> numbers(const YAML::Node& map, const std::string& path, std::string_view key,
                            std::vector<double> fallback) {
  const YAML::Node v = map[std::string(key)];
  const std::string where = join(path, key);
  if (!v) return fallback;
  if (!v.IsSequence()) throw ValidationError(where, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double d = 0.0;
    if (!v[i].IsScalar() || !YAML::convert<double>::decode(v[i], d) || !std::isfinite(d))
      throw ValidationError(indexed(where, i), "expected a finite number");
    out.push_back(d);
  }
  return out;
}

GridSpec parse_grid(const YAML::Node& node) {
  const std::string path = "grid";
  check_keys(node, path, {"n", "self_dual", "x_min", "x_max"});
  GridSpec g;
  g.n = count(node, path, "n");
  g.self_dual = flag(node, path, "self_dual", false);
  if (g.self_dual) {
    for (const char* k : {"x_min", "x_max"})
      if (node[k]) throw ValidationError(join(path, k), "conflicts with self_dual: true");
  } else {
    g.x_min = number(node, path, "x_min");
    g.x_max = number(node, path, "x_max");
  }
  return g;
}

StateSpec parse_state(const YAML::Node& node) {
  const std::string path = "state";
  expect_map(node, path);
  const std::string kind = text(node, path, "kind");
  StateSpec s;
  if (kind == "gaussian") {
    check_keys(node, path, {"kind", "x0", "p0", "sigma"});
    s.kind = StateSpec::Kind::gaussian;
    s.x0 = number(node, path, "x0", 0.0);
    s.p0 = number(node, path, "p0", 0.0);
    s.sigma = number(node, path, "sigma");
  } else if (kind == "cat") {
    check_keys(node, path, {"kind", "x0", "p0", "sigma", "weight", "phase"});
    s.kind = StateSpec::Kind::cat;
    s.x0 = number(node, path, "x0");
    s.p0 = number(node, path, "p0", 0.0);
    s.sigma = number(node, path, "sigma");
    s.weight = number(node, path, "weight", 1.0);
    s.phase = number(node, path, "phase", 0.0);
  } else if (kind == "two-slit") {
    check_keys(node, path, {"kind", "separation", "sigma", "forward_momentum"});
    s.kind = StateSpec::Kind::two_slit;
    s.separation = number(node, path, "separation");
    s.sigma = number(node, path, "sigma");
    s.forward_momentum = number(node, path, "forward_momentum");
  } else {
    throw ValidationError(join(path, "kind"), "unknown state kind '" + kind + "' (gaussian, cat, two-slit)");
  }
  return s;
}

PotentialSpec parse_potential(const YAML::Node& node) {
  const std::string path = "potential";
  expect_map(node, path);
  const std::string kind = text(node, path, "kind");
  PotentialSpec p;
  if (kind == "free") {
    check_keys(node, path, {"kind"});
  } else if (kind == "harmonic") {
    check_keys(node, path, {"kind", "omega"});
    p.kind = Potential::Kind::harmonic;
    p.omega = number(node, path, "omega");
  } else if (kind == "tabulated") {
    check_keys(node, path, {"kind", "values"});
    p.kind = Potential::Kind::tabulated;
    if (!node["values"]) throw ValidationError(join(path, "values"), "missing required field");
    p.values = numbers(node, path, "values", {});
  } else {
    throw ValidationError(join(path, "kind"), "unknown potential kind '" + kind + "' (free, harmonic, tabulated)");
  }
  return p;
}

EvolutionSpec parse_evolution(const YAML::Node& node) {
  const std::string path = "evolution";
  check_keys(node, path, {"dt", "steps", "record_every"});
  EvolutionSpec e;
  e.dt = number(node, path, "dt");
  e.steps = count(node, path, "steps");
  e.record_every = count(node, path, "record_every", 1);
  return e;
}

Analysis parse_analysis(const YAML::Node& item, const std::string& path) {
  std::string name;
  YAML::Node opts;
  if (item.IsScalar()) {
    name = item.as<std::string>();
  } else if (item.IsMap() && item.size() == 1) {
    name = item.begin()->first.as<std::string>();
    opts = item.begin()->second;
  } else {
    throw ValidationError(path, "expected an analysis name or a single-key mapping");
  }
  const std::string where = join(path, name);
  const bool has_opts = opts && !opts.IsNull();
  const YAML::Node empty(YAML::NodeType::Map);
  const YAML::Node& o = has_opts ? opts : empty;
  Analysis a;
  if (name == "wigner" || name == "fields" || name == "clifford-demo") {
    if (has_opts) check_keys(o, where, {});
    a.kind = name == "wigner" ? Analysis::Kind::wigner
             : name == "fields" ? Analysis::Kind::fields
                                : Analysis::Kind::clifford_demo;
  } else if (name == "trajectories") {
    check_keys(o, where, {"paths", "density_paths"});
    a.kind = Analysis::Kind::trajectories;
    a.paths = count(o, where, "paths", 100);
    a.density_paths = count(o, where, "density_paths", 1000);
  } else if (name == "shadow") {
    check_keys(o, where, {"theta1", "theta2", "levels", "expect"});
    a.kind = Analysis::Kind::shadow;
    a.theta1 = number(o, where, "theta1", a.theta1);
    a.theta2 = number(o, where, "theta2", a.theta2);
    a.levels = numbers(o, where, "levels", a.levels);
    a.expect = text(o, where, "expect", a.expect);
  } else if (name == "brackets") {
    check_keys(o, where, {"a", "b", "hbar_sweep", "grid_n"});
    a.kind = Analysis::Kind::brackets;
    a.a = text(o, where, "a", a.a);
    a.b = text(o, where, "b", a.b);
    a.hbar_sweep = numbers(o, where, "hbar_sweep", a.hbar_sweep);
    a.grid_n = count(o, where, "grid_n", 128);
  } else {
    throw ValidationError(path, "unknown analysis '" + name +
                                    "' (wigner, fields, trajectories, shadow, brackets, clifford-demo)");
  }
  return a;
}

std::string analysis_path(const Scenario& s, const Analysis& a) {
  const auto i = static_cast<std::size_t>(&a - s.analyses.data());
  return join(indexed("analysis", i), to_string(a.kind));
}

// Runs fn and relabels library errors as validation errors at `path`.
template <typename Fn>
auto at(const std::string& path, Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw ValidationError(path, e.what());
  }
}

}  // namespace

std::string_view to_string(Analysis::Kind kind) {
  switch (kind) {
    case Analysis::Kind::wigner: return "wigner";
    case Analysis::Kind::fields: return "fields";
    case Analysis::Kind::trajectories: return "trajectories";
    case Analysis::Kind::shadow: return "shadow";
    case Analysis::Kind::brackets: return "brackets";
    case Analysis::Kind::clifford_demo: return "clifford-demo";
  }
  return "unknown";
}

bool Scenario::needs(Analysis::Kind kind) const {
  return std::any_of(analyses.begin(), analyses.end(), [kind](const Analysis& a) { return a.kind == kind; });
}

Grid GridSpec::build(double hbar) const {
  return self_dual ? Grid::self_dual(n, hbar) : Grid(n, x_min, x_max, hbar);
}

Scenario parse_scenario(std::string_view text_in) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text_in));
  } catch (const YAML::Exception& e) {
    throw ValidationError("line " + std::to_string(e.mark.line + 1) + ", column " + std::to_string(e.mark.column + 1),
                          "YAML syntax error: " + e.msg);
  }
  if (!root || root.IsNull()) throw ValidationError("(root)", "empty scenario");
  try {
    check_keys(root, "", {"name", "seed", "physics", "grid", "state", "potential", "evolution", "analysis"});
    Scenario s;
    s.name = text(root, "", "name");
    if (s.name.empty()) throw ValidationError("name", "must not be empty");
    const auto seed = integer(root, "", "seed", 0);
    if (seed < 0) throw ValidationError("seed", "must be >= 0");
    s.seed = static_cast<std::uint64_t>(seed);
    if (root["physics"]) {
      check_keys(root["physics"], "physics", {"hbar", "mass"});
      s.physics.hbar = number(root["physics"], "physics", "hbar", 1.0);
      s.physics.mass = number(root["physics"], "physics", "mass", 1.0);
    }
    if (root["grid"]) s.grid = parse_grid(root["grid"]);
    if (root["state"]) s.state = parse_state(root["state"]);
    if (root["potential"]) s.potential = parse_potential(root["potential"]);
    if (root["evolution"]) s.evolution = parse_evolution(root["evolution"]);
    const YAML::Node list = root["analysis"];
    if (!list) throw ValidationError("analysis", "missing required field");
    if (!list.IsSequence() || list.size() == 0) throw ValidationError("analysis", "expected a non-empty list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      Analysis a = parse_analysis(list[i], indexed("analysis", i));
      if (s.needs(a.kind)) throw ValidationError(indexed("analysis", i), "duplicate analysis");
      s.analyses.push_back(std::move(a));
    }
    return s;
  } catch (const YAML::Exception& e) {
    throw ValidationError("line " + std::to_string(e.mark.line + 1), e.msg);
  }
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ValidationError(file.string(), "cannot read scenario file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

Grid build_grid(const Scenario& s) {
  if (!s.grid) throw ValidationError("grid", "missing required section");
  return at("grid", [&] { return s.grid->build(s.physics.hbar); });
}

Wavefunction build_state(const Scenario& s) {
  if (!s.state) throw ValidationError("state", "missing required section");
  const Grid g = build_grid(s);
  const StateSpec& st = *s.state;
  try {
    switch (st.kind) {
      case StateSpec::Kind::gaussian: return gaussian_packet(g, st.x0, st.p0, st.sigma, s.physics);
      case StateSpec::Kind::cat:
        return superpose({{cplx{1.0, 0.0}, gaussian_packet(g, -st.x0, st.p0, st.sigma, s.physics)},
                          {std::polar(st.weight, st.phase), gaussian_packet(g, st.x0, -st.p0, st.sigma, s.physics)}});
      case StateSpec::Kind::two_slit: return two_slit_state(st.separation, st.sigma, st.forward_momentum, g, s.physics);
    }
  } catch (const Error& e) {
    const bool width = e.code() == ErrorCode::grid_too_coarse;
    throw ValidationError(width ? "state.sigma" : "state", e.what());
  }
  throw ValidationError("state.kind", "unsupported state kind");
}

Potential build_potential(const Scenario& s) {
  const Grid g = build_grid(s);
  if (!s.potential) return Potential::free(g);
  const PotentialSpec& p = *s.potential;
  switch (p.kind) {
    case Potential::Kind::free: return Potential::free(g);
    case Potential::Kind::harmonic: return at("potential.omega", [&] { return Potential::harmonic(g, p.omega, s.physics); });
    case Potential::Kind::tabulated: return at("potential.values", [&] { return Potential::tabulated(g, p.values); });
  }
  return Potential::free(g);
}

void validate(const Scenario& s) {
  if (!(s.physics.hbar > 0.0)) throw ValidationError("physics.hbar", "must be > 0");
  if (!(s.physics.mass > 0.0)) throw ValidationError("physics.mass", "must be > 0");

  const bool wants_state = s.needs(Analysis::Kind::wigner) || s.needs(Analysis::Kind::fields) ||
                           s.needs(Analysis::Kind::trajectories) || s.needs(Analysis::Kind::shadow);
  const bool wants_evolution = s.needs(Analysis::Kind::trajectories) || s.needs(Analysis::Kind::shadow);
  for (const auto& a : s.analyses) {
    const bool state_needed = a.kind == Analysis::Kind::wigner || a.kind == Analysis::Kind::fields ||
                              a.kind == Analysis::Kind::trajectories || a.kind == Analysis::Kind::shadow;
    if (state_needed && !s.state)
      throw ValidationError("state", "required by analysis '" + std::string(to_string(a.kind)) + "'");
    if (state_needed && !s.grid)
      throw ValidationError("grid", "required by analysis '" + std::string(to_string(a.kind)) + "'");
    const bool evo_needed = a.kind == Analysis::Kind::trajectories || a.kind == Analysis::Kind::shadow;
    if (evo_needed && !s.evolution)
      throw ValidationError("evolution", "required by analysis '" + std::string(to_string(a.kind)) + "'");
  }

  std::optional<Grid> grid;
  if (s.grid) {
    const GridSpec& g = *s.grid;
    if (g.n < 16 || g.n > 8192 || !is_power_of_two(g.n))
      throw ValidationError("grid.n", "must be a power of two between 16 and 8192");
    if (!g.self_dual && !(g.x_max > g.x_min)) throw ValidationError("grid.x_max", "must exceed grid.x_min");
    if (s.needs(Analysis::Kind::wigner) && g.n > 1024)
      throw ValidationError("grid.n", "the wigner analysis is limited to n <= 1024");
    grid = build_grid(s);
  }

  std::optional<Wavefunction> psi;
  if (s.state) {
    const StateSpec& st = *s.state;
    if (!(st.sigma > 0.0)) throw ValidationError("state.sigma", "must be > 0");
    if (st.kind == StateSpec::Kind::cat) {
      if (!(st.x0 > 0.0)) throw ValidationError("state.x0", "cat half-separation must be > 0");
      if (!(st.weight > 0.0)) throw ValidationError("state.weight", "must be > 0");
    }
    if (st.kind == StateSpec::Kind::two_slit) {
      if (!(st.forward_momentum > 0.0)) throw ValidationError("state.forward_momentum", "must be > 0");
      if (!(st.separation >= 4.0 * st.sigma))
        throw ValidationError("state.separation", "must be at least 4 * state.sigma so the slits are distinct");
    }
    if (!grid) throw ValidationError("grid", "required by section 'state'");
    psi = build_state(s);
  }

  if (s.potential) {
    const PotentialSpec& p = *s.potential;
    if (p.kind == Potential::Kind::harmonic && !(p.omega > 0.0)) throw ValidationError("potential.omega", "must be > 0");
    if (p.kind == Potential::Kind::tabulated) {
      if (!grid) throw ValidationError("grid", "required by a tabulated potential");
      if (p.values.size() != grid->n())
        throw ValidationError("potential.values", "expected " + std::to_string(grid->n()) + " values (grid.n), got " +
                                                      std::to_string(p.values.size()));
    }
    if (grid) build_potential(s);
  }

  if (s.evolution) {
    const EvolutionSpec& e = *s.evolution;
    if (!grid || !psi) throw ValidationError("evolution", "needs grid and state sections");
    if (!(e.dt > 0.0)) throw ValidationError("evolution.dt", "must be > 0");
    const double limit = max_stable_dt(*grid, s.physics);
    if (e.dt > limit * (1.0 + 1e-12))
      throw ValidationError("evolution.dt", "exceeds the split-step limit 0.1 m dx^2 / hbar = " + std::to_string(limit));
    if (e.record_every < 1) throw ValidationError("evolution.record_every", "must be >= 1");
    if (e.steps < 2) throw ValidationError("evolution.steps", "must be >= 2");
    if (e.steps / e.record_every < 2)
      throw ValidationError("evolution.steps", "must record at least three slices (steps / record_every >= 2)");
    if (edge_mass(*psi) > edge_mass_limit)
      throw ValidationError("state", "initial state has probability in the boundary region of the grid");
  }
  if (wants_evolution && !wants_state) throw ValidationError("state", "required");

  for (const auto& a : s.analyses) {
    const std::string path = analysis_path(s, a);
    switch (a.kind) {
      case Analysis::Kind::trajectories:
        if (a.paths < 2 || a.paths > 10000) throw ValidationError(join(path, "paths"), "must be between 2 and 10000");
        if (a.density_paths != 0 && (a.density_paths < 100 || a.density_paths > 100000))
          throw ValidationError(join(path, "density_paths"), "must be 0 (skip) or between 100 and 100000");
        break;
      case Analysis::Kind::shadow: {
        if (!s.grid->self_dual)
          throw ValidationError("grid.self_dual", "the shadow analysis needs a self-dual grid (self_dual: true)");
        if (s.potential && s.potential->kind == Potential::Kind::tabulated)
          throw ValidationError("potential.kind", "the shadow analysis needs free or harmonic evolution");
        if (a.levels.empty()) throw ValidationError(join(path, "levels"), "must not be empty");
        for (std::size_t i = 0; i < a.levels.size(); ++i) {
          if (!(a.levels[i] > 0.0 && a.levels[i] < 1.0))
            throw ValidationError(indexed(join(path, "levels"), i), "must lie in (0, 1)");
          if (i > 0 && !(a.levels[i] > a.levels[i - 1]))
            throw ValidationError(indexed(join(path, "levels"), i), "levels must be strictly ascending");
        }
        if (a.expect != "converge" && a.expect != "diverge" && a.expect != "report")
          throw ValidationError(join(path, "expect"), "must be converge, diverge or report");
        for (double th : {a.theta1, a.theta2}) at("state", [&] { return frft(*psi, th); });
        break;
      }
      case Analysis::Kind::brackets: {
        if (a.hbar_sweep.empty()) throw ValidationError(join(path, "hbar_sweep"), "must not be empty");
        for (std::size_t i = 0; i < a.hbar_sweep.size(); ++i)
          if (!(a.hbar_sweep[i] > 0.0)) throw ValidationError(indexed(join(path, "hbar_sweep"), i), "must be > 0");
        if (a.grid_n < 32 || a.grid_n > 512 || !is_power_of_two(a.grid_n))
          throw ValidationError(join(path, "grid_n"), "must be a power of two between 32 and 512");
        for (const auto& [key, src] : {std::pair{"a", &a.a}, std::pair{"b", &a.b}}) {
          const PolySymbol sym = at(join(path, key), [&] { return PolySymbol::parse(*src, a.hbar_sweep.front()); });
          if (sym.degree() > 4) throw ValidationError(join(path, key), "degree must be <= 4");
          if (!sym.is_real()) throw ValidationError(join(path, key), "symbol must be real");
          for (double h : a.hbar_sweep) {
            const PolySymbol sh = PolySymbol::parse(*src, h);
            const Grid g = Grid::self_dual(a.grid_n, h);
            const double oob = out_of_band_fraction(sample_windowed(sh, g, {h, s.physics.mass}));
            if (oob > band_limit_tolerance)
              throw ValidationError(join(path, "grid_n"), "windowed symbol is not band-limited at hbar = " +
                                                              std::to_string(h) + "; increase grid_n");
          }
        }
        break;
      }
      default: break;
    }
  }
}

}  // namespace moyal::app
