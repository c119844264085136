#include "bwsim/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "bwsim/errors.hpp"
#include "bwsim/lorentz.hpp"
#include "bwsim/qm_reference.hpp"

namespace bwsim {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;
using Document = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"topology", {"kind", "arm1", "arm2"}},
      {"geometry",
       {"cell_distance", "polarizer_distance", "detector_distance", "detour_height", "detour_height_1",
        "detour_height_2", "detour_position", "detour_after_polarizer", "source_detour_height",
        "source_detour_position"}},
      {"switch",
       {"delta_t", "delta_t_1", "delta_t_2", "phase", "phase_1", "phase_2", "theta", "theta_1", "theta_2", "drive",
        "drive_1", "drive_2"}},
      {"polarizers", {"angle", "angle_1", "angle_2"}},
      {"model", {"kind", "trigger_point", "preferred_frame_velocity", "tie_break"}},
      {"run", {"trials", "seed", "discard_fraction", "emission", "sync_mode", "threads"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Document tokenize(std::string_view text) {
  Document doc;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(current)) throw ConfigError("unknown section [" + current + "]", line_no);
      if (doc.contains(current)) throw ConfigError("duplicate section [" + current + "]", line_no);
      doc[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    if (current.empty()) throw ConfigError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_keys().at(current).contains(key))
      throw ConfigError("unknown key '" + key + "' in [" + current + "]", line_no);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", line_no);
    if (!doc[current].emplace(key, Entry{value, line_no}).second)
      throw ConfigError("duplicate key '" + key + "'", line_no);
    if (end == text.size()) break;
  }
  return doc;
}

double parse_number(std::string_view text, int line, std::size_t* consumed = nullptr) {
  text = trim(text);
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || !std::isfinite(value))
    throw ConfigError("invalid number '" + std::string(text) + "'", line);
  if (consumed) {
    *consumed = static_cast<std::size_t>(ptr - text.data());
  } else if (ptr != last) {
    throw ConfigError("unexpected trailing text in '" + std::string(text) + "'", line);
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view text, int line) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("invalid unsigned integer '" + std::string(text) + "'", line);
  return value;
}

bool parse_bool(std::string_view text, int line) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw ConfigError("invalid boolean '" + std::string(text) + "'", line);
}

template <typename Enum>
Enum parse_choice(std::string_view text, const std::vector<std::pair<std::string_view, Enum>>& choices, int line) {
  for (const auto& [name, value] : choices)
    if (text == name) return value;
  std::string allowed;
  for (const auto& [name, value] : choices) allowed += (allowed.empty() ? "" : "|") + std::string(name);
  throw ConfigError("invalid value '" + std::string(text) + "', expected " + allowed, line);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const Entry* find(const Document& doc, const std::string& section, const std::string& key) {
  const auto s = doc.find(section);
  if (s == doc.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

/// Per-arm key lookup: "key_<arm>" wins over the shared "key".
const Entry* find_arm(const Document& doc, const std::string& section, const std::string& key, int arm) {
  if (const Entry* e = find(doc, section, key + "_" + std::to_string(arm))) return e;
  return find(doc, section, key);
}

std::vector<Element> parse_elements(std::string_view text, int line) {
  std::vector<Element> elements;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find('(', pos);
    if (open == std::string_view::npos) throw ConfigError("expected element of the form kind(...)", line);
    const auto close = text.find(')', open);
    if (close == std::string_view::npos) throw ConfigError("unterminated element argument list", line);
    const std::string_view name = trim(text.substr(pos, open - pos));
    const std::string_view args = text.substr(open + 1, close - open - 1);

    Element e;
    e.kind = parse_choice<ElementKind>(name,
                                       {{"cell", ElementKind::Cell},
                                        {"detour", ElementKind::Detour},
                                        {"polarizer", ElementKind::Polarizer},
                                        {"detector", ElementKind::Detector}},
                                       line);
    const auto comma = args.find(',');
    e.position = parse_quantity(args.substr(0, comma), Dimension::Length, line);
    if (e.kind == ElementKind::Detour) {
      if (comma == std::string_view::npos) throw ConfigError("detour needs (position, height)", line);
      e.height = parse_quantity(args.substr(comma + 1), Dimension::Length, line);
    } else if (comma != std::string_view::npos) {
      throw ConfigError(std::string(to_string(e.kind)) + " takes a single position", line);
    }
    elements.push_back(e);

    const std::string_view rest = trim(text.substr(close + 1));
    if (rest.empty()) break;
    if (rest.front() != ',') throw ConfigError("elements must be separated by commas", line);
    pos = text.size() - rest.size() + 1;
  }
  return elements;
}

std::string format_elements(const std::vector<Element>& elements) {
  std::string out;
  for (const Element& e : elements) {
    if (!out.empty()) out += ", ";
    out += std::string(to_string(e.kind)) + "(" + format_double(e.position) + " m";
    if (e.kind == ElementKind::Detour) out += ", " + format_double(e.height) + " m";
    out += ")";
  }
  return out;
}

double length_or(const Document& doc, const std::string& key, double fallback) {
  const Entry* e = find(doc, "geometry", key);
  return e ? parse_quantity(e->value, Dimension::Length, e->line) : fallback;
}

std::array<std::vector<Element>, 2> build_layout(const Document& doc, Topology topology) {
  const Entry* arm1 = find(doc, "topology", "arm1");
  const Entry* arm2 = find(doc, "topology", "arm2");
  if (arm1 || arm2) {
    if (!arm1 || !arm2) throw ConfigError("explicit layouts need both arm1 and arm2", (arm1 ? arm1 : arm2)->line);
    return {parse_elements(arm1->value, arm1->line), parse_elements(arm2->value, arm2->line)};
  }
  if (topology == Topology::Custom) throw ConfigError("custom topology requires arm1 and arm2 element lists");

  PresetGeometry g;
  g.cell_distance = length_or(doc, "cell_distance", 0.0);
  g.detector_distance = length_or(doc, "detector_distance", 0.0);
  if (!find(doc, "geometry", "cell_distance") || !find(doc, "geometry", "detector_distance"))
    throw ConfigError("[geometry] needs cell_distance and detector_distance");
  g.polarizer_distance = length_or(doc, "polarizer_distance", 0.0);
  g.detour_position = length_or(doc, "detour_position", 0.0);
  g.source_detour_height = length_or(doc, "source_detour_height", 0.0);
  g.source_detour_position = length_or(doc, "source_detour_position", 0.0);
  for (int arm = 1; arm <= 2; ++arm) {
    if (const Entry* e = find_arm(doc, "geometry", "detour_height", arm))
      g.detour_height[static_cast<std::size_t>(arm - 1)] = parse_quantity(e->value, Dimension::Length, e->line);
  }
  if (const Entry* e = find(doc, "geometry", "detour_after_polarizer"))
    g.detour_after_polarizer = parse_bool(e->value, e->line);
  return preset_elements(topology, g);
}

}  // namespace

double parse_quantity(std::string_view text, Dimension dim, int line) {
  text = trim(text);
  std::size_t consumed = 0;
  const double value = parse_number(text, line, &consumed);
  const std::string unit(trim(text.substr(consumed)));

  struct Unit {
    const char* name;
    double factor;
  };
  static const std::vector<Unit> times{{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}};
  static const std::vector<Unit> lengths{{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"km", 1e3}};
  static const std::vector<Unit> angles{{"rad", 1.0}, {"deg", kPi / 180.0}};
  static const std::vector<Unit> velocities{{"m/s", 1.0}, {"c", kSpeedOfLight}};

  const std::vector<Unit>* table = nullptr;
  const char* what = "";
  switch (dim) {
    case Dimension::Time: table = &times; what = "time"; break;
    case Dimension::Length: table = &lengths; what = "length"; break;
    case Dimension::Angle: table = &angles; what = "angle"; break;
    case Dimension::Velocity: table = &velocities; what = "velocity"; break;
  }
  if (unit.empty()) {
    if (dim == Dimension::Angle) return value;
    throw ConfigError(std::string("missing unit on ") + what + " '" + std::string(text) + "'", line);
  }
  for (const Unit& u : *table)
    if (unit == u.name) return u.factor == 1.0 ? value : value * u.factor;
  throw ConfigError("unknown " + std::string(what) + " unit '" + unit + "'", line);
}

ExperimentConfig parse_config(std::string_view text) {
  const Document doc = tokenize(text);
  ExperimentConfig cfg;

  const Entry* kind = find(doc, "topology", "kind");
  if (!kind) throw ConfigError("[topology] kind is required");
  cfg.topology = parse_choice<Topology>(kind->value,
                                        {{"fig1", Topology::Fig1Symmetric},
                                         {"fig2", Topology::Fig2SymmetricDetours},
                                         {"fig3", Topology::Fig3Asymmetric},
                                         {"custom", Topology::Custom}},
                                        kind->line);
  auto layouts = build_layout(doc, cfg.topology);

  for (int arm = 1; arm <= 2; ++arm) {
    ArmLayout& layout = cfg.arms[static_cast<std::size_t>(arm - 1)];
    layout.elements = std::move(layouts[static_cast<std::size_t>(arm - 1)]);
    SwitchSchedule& s = layout.schedule;
    if (const Entry* e = find_arm(doc, "switch", "drive", arm))
      s.drive = parse_choice<CellDrive>(e->value,
                                        {{"periodic", CellDrive::Periodic},
                                         {"on", CellDrive::AlwaysActivated},
                                         {"off", CellDrive::AlwaysInactivated}},
                                        e->line);
    if (const Entry* e = find_arm(doc, "switch", "delta_t", arm)) {
      s.delta_t = parse_quantity(e->value, Dimension::Time, e->line);
    } else if (layout.has_cell() && s.periodic()) {
      throw ConfigError("[switch] delta_t is required for periodic cells on arm " + std::to_string(arm));
    }
    if (const Entry* e = find_arm(doc, "switch", "phase", arm)) s.phase = parse_quantity(e->value, Dimension::Time, e->line);
    if (const Entry* e = find_arm(doc, "switch", "theta", arm)) s.theta = parse_quantity(e->value, Dimension::Angle, e->line);
    if (const Entry* e = find_arm(doc, "polarizers", "angle", arm))
      layout.polarizer_angle = parse_quantity(e->value, Dimension::Angle, e->line);
  }

  if (const Entry* e = find(doc, "model", "kind"))
    cfg.model = parse_choice<ModelKind>(e->value, {{"qm", ModelKind::QuantumMechanics}, {"bwave", ModelKind::BWave}}, e->line);
  if (const Entry* e = find(doc, "model", "trigger_point"))
    cfg.trigger = parse_choice<TriggerPoint>(
        e->value, {{"detector", TriggerPoint::Detector}, {"polarizer", TriggerPoint::Polarizer}}, e->line);
  if (const Entry* e = find(doc, "model", "preferred_frame_velocity"))
    cfg.preferred_frame_velocity = parse_quantity(e->value, Dimension::Velocity, e->line);
  if (const Entry* e = find(doc, "model", "tie_break"))
    cfg.tie_break_arm = parse_choice<int>(e->value, {{"1", 1}, {"2", 2}}, e->line);

  RunSettings& r = cfg.run;
  if (const Entry* e = find(doc, "run", "trials")) r.trials = parse_unsigned(e->value, e->line);
  if (const Entry* e = find(doc, "run", "seed")) r.seed = parse_unsigned(e->value, e->line);
  if (const Entry* e = find(doc, "run", "discard_fraction")) r.discard_fraction = parse_number(e->value, e->line);
  if (const Entry* e = find(doc, "run", "emission"))
    r.emission = parse_choice<EmissionLaw>(
        e->value, {{"uniform", EmissionLaw::Uniform}, {"synchronized", EmissionLaw::Synchronized}}, e->line);
  if (const Entry* e = find(doc, "run", "sync_mode"))
    r.sync_mode = parse_choice<SyncMode>(e->value,
                                         {{"inactivated", SyncMode::Inactivated},
                                          {"activated", SyncMode::Activated},
                                          {"alternate", SyncMode::Alternate}},
                                         e->line);
  if (const Entry* e = find(doc, "run", "threads")) r.threads = static_cast<unsigned>(parse_unsigned(e->value, e->line));

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file '" + path.string() + "'");
  return parse_config(buf.str());
}

std::string dump_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "[topology]\n"
      << "kind = " << to_string(cfg.topology) << "\n"
      << "arm1 = " << format_elements(cfg.arms[0].elements) << "\n"
      << "arm2 = " << format_elements(cfg.arms[1].elements) << "\n\n[switch]\n";
  for (int arm = 1; arm <= 2; ++arm) {
    const SwitchSchedule& s = cfg.arms[static_cast<std::size_t>(arm - 1)].schedule;
    out << "delta_t_" << arm << " = " << format_double(s.delta_t) << " s\n"
        << "phase_" << arm << " = " << format_double(s.phase) << " s\n"
        << "theta_" << arm << " = " << format_double(s.theta) << " rad\n"
        << "drive_" << arm << " = " << to_string(s.drive) << "\n";
  }
  out << "\n[polarizers]\n"
      << "angle_1 = " << format_double(cfg.arms[0].polarizer_angle) << " rad\n"
      << "angle_2 = " << format_double(cfg.arms[1].polarizer_angle) << " rad\n\n[model]\n"
      << "kind = " << to_string(cfg.model) << "\n"
      << "trigger_point = " << to_string(cfg.trigger) << "\n"
      << "preferred_frame_velocity = " << format_double(cfg.preferred_frame_velocity) << " m/s\n"
      << "tie_break = " << cfg.tie_break_arm << "\n\n[run]\n"
      << "trials = " << cfg.run.trials << "\n"
      << "seed = " << cfg.run.seed << "\n";
  if (cfg.run.discard_fraction) out << "discard_fraction = " << format_double(*cfg.run.discard_fraction) << "\n";
  out << "emission = " << to_string(cfg.run.emission) << "\n"
      << "sync_mode = " << to_string(cfg.run.sync_mode) << "\n"
      << "threads = " << cfg.run.threads << "\n";
  return out.str();
}

std::uint64_t config_digest(const ExperimentConfig& cfg) {
  // Thread count does not change results.
  ExperimentConfig canonical = cfg;
  canonical.run.threads = 0;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : dump_config(canonical)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace bwsim
