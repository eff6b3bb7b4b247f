#include "orbitlab/budget.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <thread>

#include "orbitlab/errors.hpp"

namespace orbitlab {

namespace {

std::uint64_t* slot(Budgets& b, const std::string& key) {
  if (key == "field_order") return &b.field_order;
  if (key == "table") return &b.table;
  if (key == "group") return &b.group;
  if (key == "pc_steps") return &b.pc_steps;
  if (key == "pc_length") return &b.pc_length;
  if (key == "algebra_dim") return &b.algebra_dim;
  if (key == "enumeration") return &b.enumeration;
  if (key == "dual") return &b.dual;
  if (key == "closure") return &b.closure;
  if (key == "series_cutoff") return &b.series_cutoff;
  if (key == "threads") return &b.threads;
  return nullptr;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Accepts plain integers and powers written as 2^k.
std::uint64_t parse_value(const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  auto parse_int = [&](const std::string& s) {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ValidationError("config key '" + key + "': cannot parse '" + raw + "'");
    return out;
  };
  auto caret = v.find('^');
  if (caret == std::string::npos) return parse_int(v);
  std::uint64_t base = parse_int(trim(v.substr(0, caret)));
  std::uint64_t exp = parse_int(trim(v.substr(caret + 1)));
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (out > UINT64_MAX / (base ? base : 1))
      throw ValidationError("config key '" + key + "': value overflows");
    out *= base;
  }
  return out;
}

}  // namespace

std::map<std::string, std::uint64_t> Budgets::as_map() const {
  return {{"field_order", field_order}, {"table", table},
          {"group", group},             {"pc_steps", pc_steps},
          {"pc_length", pc_length},     {"algebra_dim", algebra_dim},
          {"enumeration", enumeration}, {"dual", dual},
          {"closure", closure},         {"series_cutoff", series_cutoff},
          {"threads", threads}};
}

void Budgets::set(const std::string& key, const std::string& value) {
  std::uint64_t* s = slot(*this, key);
  if (!s) throw ValidationError("unknown config key '" + key + "'");
  *s = parse_value(key, value);
}

void Budgets::load_config_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void Budgets::load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load_config_text(ss.str());
}

std::uint64_t Budgets::effective_threads() const {
  if (threads != 0) return threads;
  auto hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void require_budget(const char* name, std::uint64_t value, std::uint64_t limit) {
  if (value > limit)
    throw BudgetError(name, std::to_string(value) + " > " + std::to_string(limit));
}

}  // namespace orbitlab
