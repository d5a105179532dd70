#include "rydqr/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include "rydqr/csv_io.hpp"
#include "rydqr/error.hpp"

namespace rydqr {

namespace {

constexpr std::string_view kHzSuffix = "_hz_over_2pi";

std::string trim(std::string_view s) {
  const auto notSpace = [](unsigned char c) { return !std::isspace(c); };
  auto begin = std::find_if(s.begin(), s.end(), notSpace);
  auto end = std::find_if(s.rbegin(), s.rend(), notSpace).base();
  return begin < end ? std::string(begin, end) : std::string();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(std::string_view key, const std::string& why) {
  throw ConfigError({std::string(key) + ": " + why});
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) fail(key, "expected a number, got an empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) fail(key, "expected a number, got '" + s + "'");
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  const double v = parse_double(key, text);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) fail(key, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = lower(trim(text));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  fail(key, "expected true or false, got '" + s + "'");
}

bool is_unset(std::string_view text) {
  const std::string s = lower(trim(text));
  return s == "none" || s == "auto" || s == "default";
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  const std::string prefix = "linspace(";
  if (lower(s.substr(0, prefix.size())) == prefix) {
    if (s.back() != ')') fail(key, "unterminated linspace(...)");
    const auto args = parse_list(key, std::string_view(s).substr(prefix.size(), s.size() - prefix.size() - 1));
    if (args.size() != 3 || args[2] < 1.0 || args[2] != std::floor(args[2]))
      fail(key, "linspace expects (first, last, count)");
    return linspace(args[0], args[1], static_cast<std::size_t>(args[2]));
  }
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) fail(key, "expected a non-empty list");
  return out;
}

std::string format_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(xs[i]);
  }
  return out;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_double(*v) : "none"; }

struct KeyEntry {
  std::string name;
  bool angular = false;
  std::function<void(RunConfig&, std::string_view key, std::string_view value)> set;
  std::function<std::string(const RunConfig&)> get;
};


template <class Section>
KeyEntry number_in(std::string name, Section RunConfig::*section, double Section::*field,
                   bool angular = false) {
  return {std::move(name), angular,
          [=](RunConfig& c, std::string_view k, std::string_view v) { (c.*section).*field = parse_double(k, v); },
          [=](const RunConfig& c) { return format_double((c.*section).*field); }};
}

template <class Section>
KeyEntry optional_in(std::string name, Section RunConfig::*section, std::optional<double> Section::*field,
                     bool angular = false) {
  return {std::move(name), angular,
          [=](RunConfig& c, std::string_view k, std::string_view v) {
            if (is_unset(v))
              ((c.*section).*field).reset();
            else
              (c.*section).*field = parse_double(k, v);
          },
          [=](const RunConfig& c) { return format_optional((c.*section).*field); }};
}

template <class Section>
KeyEntry flag_in(std::string name, Section RunConfig::*section, bool Section::*field) {
  return {std::move(name), false,
          [=](RunConfig& c, std::string_view k, std::string_view v) { (c.*section).*field = parse_bool(k, v); },
          [=](const RunConfig& c) { return std::string((c.*section).*field ? "true" : "false"); }};
}

template <class Section>
KeyEntry list_in(std::string name, Section RunConfig::*section, std::vector<double> Section::*field) {
  return {std::move(name), false,
          [=](RunConfig& c, std::string_view k, std::string_view v) { (c.*section).*field = parse_list(k, v); },
          [=](const RunConfig& c) { return format_list((c.*section).*field); }};
}

// Optional physical fields echo their resolved value so the sidecar pins it.
KeyEntry resolved_physical(std::string name, std::optional<double> PhysicalConfig::*field,
                           double (*resolve)(const PhysicalConfig&), bool angular) {
  return {std::move(name), angular,
          [=](RunConfig& c, std::string_view k, std::string_view v) {
            if (is_unset(v))
              (c.physical.*field).reset();
            else
              c.physical.*field = parse_double(k, v);
          },
          [=](const RunConfig& c) { return format_double(resolve(c.physical)); }};
}

const std::vector<KeyEntry>& key_table() {
  using P = PhysicalConfig;
  static const std::vector<KeyEntry> table = [] {
    std::vector<KeyEntry> t;
    auto& phys = t;
    phys.push_back(number_in("physical.Gamma12", &RunConfig::physical, &P::Gamma12, true));
    phys.push_back(number_in("physical.Gamma23", &RunConfig::physical, &P::Gamma23, true));
    phys.push_back(number_in("physical.Delta2", &RunConfig::physical, &P::Delta2, true));
    phys.push_back(number_in("physical.Delta3", &RunConfig::physical, &P::Delta3, true));
    phys.push_back(number_in("physical.OmegaC", &RunConfig::physical, &P::OmegaC, true));
    phys.push_back(number_in("physical.C6", &RunConfig::physical, &P::C6, true));
    phys.push_back(number_in("physical.Na", &RunConfig::physical, &P::Na));
    phys.push_back(number_in("physical.kappaDefect", &RunConfig::physical, &P::kappaDefect));
    phys.push_back(number_in("physical.xg", &RunConfig::physical, &P::xg));
    phys.push_back(number_in("physical.lambdaP", &RunConfig::physical, &P::lambdaP));
    phys.push_back(number_in("physical.R0", &RunConfig::physical, &P::R0));
    phys.push_back(resolved_physical("physical.gamma21", &P::gamma21, &coherence_decay_21, true));
    phys.push_back(resolved_physical("physical.gamma31", &P::gamma31, &coherence_decay_31, true));
    phys.push_back(optional_in("physical.dipolePrefactor", &RunConfig::physical, &P::dipolePrefactor));
    phys.push_back(resolved_physical("physical.dipoleMoment", &P::dipoleMoment, &transition_dipole, false));

    t.push_back(number_in("potential.poleEpsilon", &RunConfig::potential, &PotentialOptions::poleEpsilon));
    t.push_back(number_in("potential.imagRatioThreshold", &RunConfig::potential,
                          &PotentialOptions::imagRatioThreshold));

    t.push_back(number_in("grid.xiMin", &RunConfig::grid, &Grid::xiMin));
    t.push_back(number_in("grid.xiMax", &RunConfig::grid, &Grid::xiMax));
    t.push_back({"grid.n", false,
                 [](RunConfig& c, std::string_view k, std::string_view v) { c.grid.n = parse_count(k, v); },
                 [](const RunConfig& c) { return std::to_string(c.grid.n); }});
    t.push_back(number_in("grid.dTau", &RunConfig::grid, &Grid::dTau));

    t.push_back(number_in("packet.a0", &RunConfig::packet, &GaussianSpec::a0));
    t.push_back(number_in("packet.xi0", &RunConfig::packet, &GaussianSpec::xi0));
    t.push_back(number_in("packet.widthParam", &RunConfig::packet, &GaussianSpec::widthParam));
    t.push_back(number_in("packet.v0", &RunConfig::packet, &GaussianSpec::v0));

    using S = ScatteringSettings;
    t.push_back(list_in("scattering.v0List", &RunConfig::scattering, &S::v0List));
    t.push_back(list_in("scattering.g0List", &RunConfig::scattering, &S::g0List));
    t.push_back(optional_in("scattering.g0", &RunConfig::scattering, &S::g0));
    t.push_back(number_in("scattering.epsilonV", &RunConfig::scattering, &S::epsilonV));
    t.push_back(optional_in("scattering.Lm", &RunConfig::scattering, &S::mediumLength));
    t.push_back(number_in("scattering.LmCap", &RunConfig::scattering, &S::lengthCap));
    t.push_back(flag_in("scattering.autoWiden", &RunConfig::scattering, &S::autoWiden));
    t.push_back(number_in("scattering.maxTrapping", &RunConfig::scattering, &S::maxTrapping));

    t.push_back({"outputs.dir", false,
                 [](RunConfig& c, std::string_view, std::string_view v) { c.outputs.dir = trim(v); },
                 [](const RunConfig& c) { return c.outputs.dir; }});
    t.push_back({"outputs.snapshotEvery", false,
                 [](RunConfig& c, std::string_view k, std::string_view v) {
                   c.outputs.snapshotEvery = parse_count(k, v);
                 },
                 [](const RunConfig& c) { return std::to_string(c.outputs.snapshotEvery); }});

    t.push_back(flag_in("mode.keepImaginary", &RunConfig::mode, &ModeFlags::keepImaginary));
    t.push_back(flag_in("mode.measurement", &RunConfig::mode, &ModeFlags::measurement));
    t.push_back(flag_in("mode.absorbingMask", &RunConfig::mode, &ModeFlags::absorbingMask));
    t.push_back(number_in("mode.maskWidth", &RunConfig::mode, &ModeFlags::maskWidth));
    return t;
  }();
  return table;
}

const KeyEntry* find_key(std::string_view name) {
  for (const auto& e : key_table())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace

std::vector<std::string> known_keys() {
  std::vector<std::string> names;
  for (const auto& e : key_table()) {
    names.push_back(e.name);
    if (e.angular) names.push_back(e.name + std::string(kHzSuffix));
  }
  return names;
}

KeyValues parse_key_values(std::istream& in, std::string_view source) {
  KeyValues out;
  std::vector<std::string> problems;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos || trim(std::string_view(content).substr(0, eq)).empty()) {
      problems.push_back(std::string(source) + ":" + std::to_string(lineNo) + ": expected 'key = value'");
      continue;
    }
    out.emplace_back(trim(std::string_view(content).substr(0, eq)),
                     trim(std::string_view(content).substr(eq + 1)));
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return out;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  if (const KeyEntry* e = find_key(key)) {
    e->set(config, key, value);
    return;
  }
  if (key.size() > kHzSuffix.size() && key.ends_with(kHzSuffix)) {
    const std::string base(key.substr(0, key.size() - kHzSuffix.size()));
    const KeyEntry* e = find_key(base);
    if (e && e->angular) {
      if (is_unset(value)) {
        e->set(config, key, value);
      } else {
        const double hz = parse_double(key, value);
        std::ostringstream angular;
        angular.precision(17);
        angular << constants::twoPi * hz;
        e->set(config, key, angular.str());
      }
      return;
    }
    if (e) fail(key, "'" + base + "' is not an angular quantity; drop the _hz_over_2pi suffix");
  }
  fail(key, "unknown configuration key");
}

void apply_settings(RunConfig& config, const KeyValues& settings) {
  std::vector<std::string> problems;
  for (const auto& [k, v] : settings) {
    try {
      apply_setting(config, k, v);
    } catch (const ConfigError& e) {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::vector<std::string> validation_problems(const RunConfig& config) {
  std::vector<std::string> problems;
  for (const auto& p : validation_problems(config.physical)) problems.push_back("physical." + p);
  if (!(config.potential.poleEpsilon > 0.0)) problems.push_back("potential.poleEpsilon: must be > 0");
  if (!(config.potential.imagRatioThreshold > 0.0))
    problems.push_back("potential.imagRatioThreshold: must be > 0");
  try {
    validate(config.grid);
  } catch (const std::invalid_argument& e) {
    problems.push_back(std::string("grid: ") + e.what());
  }
  if (!(config.packet.widthParam > 0.0)) problems.push_back("packet.widthParam: must be > 0");
  if (!(config.packet.a0 > 0.0)) problems.push_back("packet.a0: must be > 0");
  if (!std::isfinite(config.packet.v0)) problems.push_back("packet.v0: must be finite");
  const auto& s = config.scattering;
  if (!(s.epsilonV > 0.0 && s.epsilonV < 1.0)) problems.push_back("scattering.epsilonV: must lie in (0, 1)");
  if (s.g0 && !(*s.g0 >= 0.0)) problems.push_back("scattering.g0: must be >= 0");
  if (s.mediumLength && !(*s.mediumLength > 0.0)) problems.push_back("scattering.Lm: must be > 0");
  if (!(s.lengthCap > 0.0)) problems.push_back("scattering.LmCap: must be > 0");
  for (double v : s.v0List)
    if (!(v > 0.0)) {
      problems.push_back("scattering.v0List: every velocity must be > 0");
      break;
    }
  for (double g : s.g0List)
    if (!(g >= 0.0)) {
      problems.push_back("scattering.g0List: every depth must be >= 0");
      break;
    }
  if (config.mode.measurement && config.mode.keepImaginary)
    problems.push_back("mode.keepImaginary: incompatible with mode.measurement = true");
  if (config.mode.measurement && config.mode.absorbingMask)
    problems.push_back("mode.absorbingMask: incompatible with mode.measurement = true");
  if (!(config.mode.maskWidth > 0.0)) problems.push_back("mode.maskWidth: must be > 0");
  return problems;
}

void require_valid(const RunConfig& config) {
  auto problems = validation_problems(config);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

RunConfig load_run_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  RunConfig config;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError({"--config: cannot open '" + *path + "'"});
    apply_settings(config, parse_key_values(in, *path));
  }
  KeyValues extra;
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError({"--override: expected key=value, got '" + o + "'"});
    extra.emplace_back(trim(std::string_view(o).substr(0, eq)), trim(std::string_view(o).substr(eq + 1)));
  }
  apply_settings(config, extra);
  require_valid(config);
  return config;
}

std::string serialize(const RunConfig& config) {
  std::ostringstream out;
  for (const auto& e : key_table()) out << e.name << " = " << e.get(config) << '\n';
  return out.str();
}

EvolveOptions make_evolve_options(const RunConfig& config) {
  EvolveOptions o;
  o.keepImaginary = config.mode.keepImaginary;
  o.measurementMode = config.mode.measurement;
  if (config.mode.absorbingMask) o.mask = AbsorbingMask{config.mode.maskWidth};
  return o;
}

ScatteringRun make_scattering_run(const RunConfig& config) {
  ScatteringRun run;
  run.grid = config.grid;
  run.packet = config.packet;
  run.epsilonV = config.scattering.epsilonV;
  run.mediumLength = config.scattering.mediumLength;
  run.lengthCap = config.scattering.lengthCap;
  run.autoWiden = config.scattering.autoWiden;
  run.evolve = make_evolve_options(config);
  return run;
}

}  // namespace rydqr
