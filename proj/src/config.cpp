#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "tgm/errors.hpp"
#include "tgm/harness.hpp"

namespace tgm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  return value;
}

std::size_t parse_count(std::string_view text, std::string_view key) {
  text = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError(fmt::format("{}: '{}' is not a non-negative integer", key, text));
  return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  while (!trim(text).empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

EquationKind parse_equation(std::string_view v) {
  if (v == "wave") return EquationKind::wave;
  if (v == "diffusion") return EquationKind::diffusion;
  throw ConfigError(fmt::format("equation must be 'wave' or 'diffusion', got '{}'", v));
}

Scheme parse_scheme(std::string_view v) {
  if (v == "tgm") return Scheme::tgm;
  if (v == "fdm") return Scheme::fdm;
  throw ConfigError(fmt::format("scheme must be 'tgm' or 'fdm', got '{}'", v));
}

}  // namespace

std::string_view to_string(EquationKind kind) {
  return kind == EquationKind::wave ? "wave" : "diffusion";
}

std::string_view to_string(Scheme scheme) { return scheme == Scheme::tgm ? "tgm" : "fdm"; }

ExperimentConfig ExperimentConfig::default_wave() {
  ExperimentConfig cfg;
  cfg.equation = EquationKind::wave;
  cfg.c = 1.0;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.omega0 = std::numbers::pi;
  return cfg;
}

ExperimentConfig ExperimentConfig::default_diffusion() {
  ExperimentConfig cfg;
  cfg.equation = EquationKind::diffusion;
  cfg.c = 3.0;
  cfg.dt = 0.001;
  cfg.t_end = 0.1;
  cfg.omega0 = 20.0;
  return cfg;
}

void ExperimentConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError(fmt::format("{} must be positive, got {}", name, v));
  };
  if (n_points < 2 || n_points % 2 != 0)
    throw ConfigError(fmt::format("n_points must be even and >= 2, got {}", n_points));
  positive(length, "length");
  positive(c, "c");
  positive(dt, "dt");
  positive(t_end, "t_end");
  positive(omega0, "omega0");
  positive(sigma, "sigma");
  if (!std::isfinite(x0)) throw ConfigError("x0 must be finite");
  if (!std::isfinite(amplitude) || amplitude < 0.0)
    throw ConfigError(fmt::format("amplitude must be finite and non-negative, got {}", amplitude));
  if (t_end < dt) throw ConfigError(fmt::format("t_end ({}) must be at least dt ({})", t_end, dt));
  for (double t : snapshot_times)
    if (!(t >= 0.0) || t > t_end)
      throw ConfigError(fmt::format("snapshot time {} outside [0, t_end={}]", t, t_end));
}

std::vector<double> ExperimentConfig::output_times() const {
  if (snapshot_times.empty()) return {t_end};
  return snapshot_times;
}

ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    const auto key = std::string(trim(line.substr(0, eq)));
    const auto value = std::string(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line_no));
    if (!entries.emplace(key, value).second)
      throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
  }

  const auto eq_it = entries.find("equation");
  if (eq_it == entries.end()) throw ConfigError("config must set 'equation'");
  ExperimentConfig cfg = parse_equation(eq_it->second) == EquationKind::wave
                             ? ExperimentConfig::default_wave()
                             : ExperimentConfig::default_diffusion();

  const std::map<std::string_view, std::function<void(std::string_view)>> setters = {
      {"equation", [](std::string_view) {}},
      {"scheme", [&](std::string_view v) { cfg.scheme = parse_scheme(v); }},
      {"n_points", [&](std::string_view v) { cfg.n_points = parse_count(v, "n_points"); }},
      {"length", [&](std::string_view v) { cfg.length = parse_double(v, "length"); }},
      {"c", [&](std::string_view v) { cfg.c = parse_double(v, "c"); }},
      {"dt", [&](std::string_view v) { cfg.dt = parse_double(v, "dt"); }},
      {"t_end", [&](std::string_view v) { cfg.t_end = parse_double(v, "t_end"); }},
      {"omega0", [&](std::string_view v) { cfg.omega0 = parse_double(v, "omega0"); }},
      {"x0", [&](std::string_view v) { cfg.x0 = parse_double(v, "x0"); }},
      {"sigma", [&](std::string_view v) { cfg.sigma = parse_double(v, "sigma"); }},
      {"amplitude", [&](std::string_view v) { cfg.amplitude = parse_double(v, "amplitude"); }},
      {"snapshots", [&](std::string_view v) { cfg.snapshot_times = parse_list(v, "snapshots"); }},
      {"out_dir", [&](std::string_view v) { cfg.output_dir = std::string(v); }},
  };
  for (const auto& [key, value] : entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(fmt::format("unknown config key '{}'", key));
    it->second(value);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config file '{}'", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace tgm
