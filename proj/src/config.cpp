#include "bellsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace bellsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  std::ostringstream out;
  out << source << ":" << line << ": " << msg;
  throw ConfigError(out.str());
}

double parse_double(std::string_view tok, const std::string& source, int line,
                    const std::string& key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(source, line, key + ": expected a number, got \"" + std::string(tok) + "\"");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view tok, const std::string& source, int line,
                        const std::string& key) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(source, line, key + ": expected a non-negative integer, got \"" + std::string(tok) + "\"");
  }
  return v;
}

std::vector<double> parse_array(std::string_view tok, const std::string& source, int line,
                                const std::string& key) {
  tok = trim(tok);
  if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']') {
    fail(source, line, key + ": expected [a, b, ...]");
  }
  tok.remove_prefix(1);
  tok.remove_suffix(1);
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= tok.size()) {
    std::size_t comma = tok.find(',', start);
    std::string_view item =
        trim(comma == std::string_view::npos ? tok.substr(start) : tok.substr(start, comma - start));
    if (item.empty()) fail(source, line, key + ": empty array element");
    out.push_back(parse_double(item, source, line, key));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Direction parse_direction(std::string_view tok, const std::string& source, int line,
                          const std::string& key) {
  auto v = parse_array(tok, source, line, key);
  if (v.size() != 3) fail(source, line, key + ": expected 3 components");
  try {
    return Direction(v[0], v[1], v[2]);
  } catch (const std::invalid_argument& e) {
    fail(source, line, key + ": " + e.what());
  }
}

// Shortest decimal that round-trips the exact double, so canonical text
// (and its hash) is stable across platforms.
std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string fmt_direction(const Direction& d) {
  return "[" + fmt_double(d.x()) + ", " + fmt_double(d.y()) + ", " + fmt_double(d.z()) + "]";
}

}  // namespace

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::Exact: return "exact";
    case RunMode::Sample: return "sample";
    case RunMode::Lhv: return "lhv";
  }
  return "?";
}

ExperimentConfig parse_config_text(std::string_view text, const std::string& source_name) {
  ExperimentConfig cfg;
  std::map<std::string, int> seen;  // key -> first definition line
  bool have[4] = {false, false, false, false};

  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(source_name, line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(source_name, line_no, "empty section name");
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(source_name, line_no, "expected key = value, got \"" + std::string(line) + "\"");
    }
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) fail(source_name, line_no, "missing key before '='");
    if (!section.empty()) key = section + "." + key;
    if (value.empty()) fail(source_name, line_no, key + ": missing value");

    auto [it, inserted] = seen.emplace(key, line_no);
    if (!inserted) {
      fail(source_name, line_no,
           key + ": duplicate key (first defined on line " + std::to_string(it->second) + ")");
    }

    if (key == "directions.A") {
      cfg.left_first = parse_direction(value, source_name, line_no, key);
      have[0] = true;
    } else if (key == "directions.a") {
      cfg.left_second = parse_direction(value, source_name, line_no, key);
      have[1] = true;
    } else if (key == "directions.B") {
      cfg.right_first = parse_direction(value, source_name, line_no, key);
      have[2] = true;
    } else if (key == "directions.b") {
      cfg.right_second = parse_direction(value, source_name, line_no, key);
      have[3] = true;
    } else if (key == "sampling.n") {
      cfg.n = parse_u64(value, source_name, line_no, key);
    } else if (key == "sampling.seed") {
      cfg.seed = parse_u64(value, source_name, line_no, key);
    } else if (key == "detection.eta_left" || key == "detection.eta_right") {
      double eta = parse_double(value, source_name, line_no, key);
      if (!(eta >= 0.0 && eta <= 1.0)) fail(source_name, line_no, key + ": must lie in [0, 1]");
      (key == "detection.eta_left" ? cfg.eta_left : cfg.eta_right) = eta;
    } else if (key == "mode") {
      if (value == "exact") cfg.mode = RunMode::Exact;
      else if (value == "sample") cfg.mode = RunMode::Sample;
      else if (value == "lhv") cfg.mode = RunMode::Lhv;
      else fail(source_name, line_no, "mode: expected exact, sample, or lhv");
    } else if (key == "lhv.weights") {
      auto v = parse_array(value, source_name, line_no, key);
      if (v.size() != 16) fail(source_name, line_no, key + ": expected 16 weights");
      std::array<double, 16> w{};
      std::copy(v.begin(), v.end(), w.begin());
      cfg.lhv_weights = w;
    } else if (key == "budget.t_s" || key == "budget.t_m") {
      double t = parse_double(value, source_name, line_no, key);
      if (!std::isfinite(t) || t < 0.0) fail(source_name, line_no, key + ": must be finite and >= 0");
      (key == "budget.t_s" ? cfg.budget_selection_time : cfg.budget_measurement_time) = t;
    } else {
      fail(source_name, line_no, key + ": unknown key");
    }
  }

  static const char* kDirKeys[4] = {"directions.A", "directions.a", "directions.B", "directions.b"};
  for (int i = 0; i < 4; ++i) {
    if (!have[i]) throw ConfigError(source_name + ": missing required key " + kDirKeys[i]);
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string canonical_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "directions.A = " << fmt_direction(cfg.left_first) << "\n";
  out << "directions.a = " << fmt_direction(cfg.left_second) << "\n";
  out << "directions.B = " << fmt_direction(cfg.right_first) << "\n";
  out << "directions.b = " << fmt_direction(cfg.right_second) << "\n";
  out << "sampling.n = " << cfg.n << "\n";
  out << "sampling.seed = " << cfg.seed << "\n";
  out << "detection.eta_left = " << fmt_double(cfg.eta_left) << "\n";
  out << "detection.eta_right = " << fmt_double(cfg.eta_right) << "\n";
  out << "mode = " << to_string(cfg.mode) << "\n";
  if (cfg.lhv_weights) {
    out << "lhv.weights = [";
    for (int i = 0; i < 16; ++i) out << (i ? ", " : "") << fmt_double((*cfg.lhv_weights)[i]);
    out << "]\n";
  }
  if (cfg.budget_selection_time) out << "budget.t_s = " << fmt_double(*cfg.budget_selection_time) << "\n";
  if (cfg.budget_measurement_time) out << "budget.t_m = " << fmt_double(*cfg.budget_measurement_time) << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = canonical_text(cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bellsim
