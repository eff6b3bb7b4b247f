#include <fstream>
#include <sstream>

#include "orbitlab/errors.hpp"
#include "orbitlab/grouptab.hpp"

namespace orbitlab::grouptab {

namespace {

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

std::vector<std::uint32_t> read_numbers(const std::string& s, const std::string& where) {
  std::istringstream in(s);
  std::vector<std::uint32_t> out;
  long long v;
  while (in >> v) {
    if (v < 0) throw ValidationError(where + ": negative number");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (!in.eof()) throw ValidationError(where + ": expected integers");
  return out;
}

}  // namespace

PcPresentation parse_pc_presentation(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ValidationError("empty pc presentation");
  std::istringstream head(lines[0]);
  std::string tag;
  std::uint32_t p = 0, n = 0;
  if (!(head >> tag >> p >> n) || tag != "pc") throw ValidationError("pc header must be 'pc p n'");
  PcPresentation pres(p, n);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string where = "pc line " + std::to_string(k + 1);
    auto colon = lines[k].find(':');
    if (colon == std::string::npos) throw ValidationError(where + ": missing ':'");
    std::istringstream lhs(lines[k].substr(0, colon));
    std::string kind;
    lhs >> kind;
    auto word = read_numbers(lines[k].substr(colon + 1), where);
    if (word.size() != n) throw ValidationError(where + ": word must have " + std::to_string(n) + " exponents");
    if (kind == "pow") {
      std::uint32_t i = 0;
      if (!(lhs >> i) || i < 1 || i > n) throw ValidationError(where + ": bad 'pow i'");
      pres.power[i - 1] = word;
    } else if (kind == "comm") {
      std::uint32_t j = 0, i = 0;
      if (!(lhs >> j >> i) || !(j > i && i >= 1 && j <= n))
        throw ValidationError(where + ": 'comm j i' needs n >= j > i >= 1");
      pres.comm[{j - 1, i - 1}] = word;
    } else {
      throw ValidationError(where + ": unknown relation kind '" + kind + "'");
    }
  }
  return pres;
}

FiniteGroup parse_group(const std::string& text, const Budgets& budgets) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ValidationError("empty group file");
  std::istringstream head(lines[0]);
  std::string tag;
  head >> tag;
  if (tag == "pc") return FiniteGroup::from_power_commutator(parse_pc_presentation(text), budgets);
  if (tag == "cayley") {
    std::size_t m = 0;
    if (!(head >> m) || m == 0) throw ValidationError("cayley header must be 'cayley m'");
    require_budget("table", m, budgets.table);
    // Rows may wrap across lines; read all numbers after the header.
    std::string rest;
    for (std::size_t k = 1; k < lines.size(); ++k) rest += lines[k] + ' ';
    auto nums = read_numbers(rest, "cayley table");
    if (nums.size() != m * m)
      throw ValidationError("cayley table needs " + std::to_string(m * m) + " entries, got " +
                            std::to_string(nums.size()));
    std::vector<std::vector<Index>> t(m, std::vector<Index>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) t[a][b] = nums[a * m + b];
    return FiniteGroup::from_cayley_table(t, budgets);
  }
  if (tag == "perm") {
    std::size_t npts = 0, k = 0;
    if (!(head >> npts >> k)) throw ValidationError("perm header must be 'perm N k'");
    if (lines.size() != k + 1) throw ValidationError("perm file must list exactly k generators");
    std::vector<std::vector<std::uint32_t>> gens;
    for (std::size_t i = 1; i <= k; ++i) {
      auto g = read_numbers(lines[i], "perm generator " + std::to_string(i));
      if (g.size() != npts) throw ValidationError("perm generator " + std::to_string(i) + " must list N images");
      gens.push_back(std::move(g));
    }
    return FiniteGroup::from_permutation_generators(gens, budgets);
  }
  throw ValidationError("unknown group file header '" + tag + "'");
}

FiniteGroup load_group_file(const std::string& path, const Budgets& budgets) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open group file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  FiniteGroup g = parse_group(ss.str(), budgets);
  g.set_name(path);
  return g;
}

std::string cayley_text(const FiniteGroup& g) {
  std::ostringstream out;
  out << "cayley " << g.order() << '\n';
  for (Index a = 0; a < g.order(); ++a) {
    for (Index b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
  return out.str();
}

}  // namespace orbitlab::grouptab
