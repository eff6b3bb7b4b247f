// Drives the orbitlab binary and the corpus/verify layer.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sys/wait.h>

#include <json.hpp>

#include "orbitlab/corpus.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/verify.hpp"

using namespace orbitlab;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(ORBITLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "orbitlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::uint64_t quotient_exponent(const grouptab::FiniteGroup& g, const std::vector<grouptab::Index>& sub) {
  std::set<grouptab::Index> s(sub.begin(), sub.end());
  std::uint64_t ex = 1;
  for (grouptab::Index a = 0; a < g.order(); ++a) {
    std::uint64_t m = 1;
    grouptab::Index x = a;
    while (!s.count(x)) {
      x = g.mul(x, a);
      ++m;
    }
    ex = std::max(ex, m);
  }
  return ex;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("grouptab classes corpus:D8").code == 0);
  CHECK(run("grouptab classes /nonexistent/file").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("zeta sl2 8").code == 2);
  CHECK(run("--budget enumeration=10 algroup classes corpus:u4_F2").code == 3);
  CHECK(run("--budget nonsense=1 budget").code == 2);
  auto bad = scratch("bad.grp");
  std::ofstream(bad) << "cayley 3\n0 1 2\n1 0 2\n2 2 0\n";
  CHECK(run("grouptab classes " + bad.string()).code == 2);
}

TEST_CASE("budgets from config and flags") {
  auto cfg = scratch("budgets.cfg");
  std::ofstream(cfg) << "# limits\nenumeration = 1234\nseries_cutoff=99\n";
  auto r = run("--config " + cfg.string() + " --budget series_cutoff=77 budget");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["enumeration"] == 1234);
  CHECK(j["series_cutoff"] == 77);
  CHECK(j["dual"] == 1u << 24);
}

TEST_CASE("command output") {
  auto r = run("orbits census corpus:u3_F3");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["orbit_count"] == 11);
  auto m = json::parse(run("mq compute corpus:C4 --p 2 --e 1").out);
  CHECK(m["invariant_factors"] == json::array({2, 4}));
  auto z = json::parse(run("zeta sl2 7").out);
  CHECK(z["count"] == 11);
}

TEST_CASE("manifest replay reproduces the output") {
  auto man = scratch("run.json");
  auto r = run("--manifest " + man.string() + " orbits census corpus:I_F2[D8]");
  REQUIRE(r.code == 0);
  auto again = run("replay " + man.string());
  CHECK(again.code == 0);
  CHECK(json::parse(again.out)["identical"] == true);

  auto alg = scratch("u3.alg");
  std::ofstream(alg) << "alg 3 1 3\n0 1 2 1\n";
  auto man2 = scratch("run2.json");
  REQUIRE(run("--manifest " + man2.string() + " nilalg info " + alg.string()).code == 0);
  CHECK(run("replay " + man2.string()).code == 0);
  std::ofstream(alg) << "alg 3 1 3\n0 1 2 2\n";
  CHECK(run("replay " + man2.string()).code == 2);
}

TEST_CASE("thread count does not change output") {
  auto a = run("--threads 1 verify --only orbits");
  auto b = run("--threads 3 verify --only orbits");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("export") {
  auto csv = scratch("series.csv");
  CHECK(run("export csv series corpus:sl2_tower_p5 --N 500 --out " + csv.string()).code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("R_n") != std::string::npos);
  auto js = scratch("census.json");
  CHECK(run("export json census corpus:u3_F2 --out " + js.string()).code == 0);
  std::ifstream jin(js);
  CHECK(json::parse(jin)["orbit_count"] == 5);
}

TEST_CASE("verify restricted and with an injected fault") {
  auto r = run("verify --only mq");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["failed"] == 0);
  for (const auto& c : j["checks"]) CHECK(c["suite"] == "mq");

  auto f = run("verify --only nilalg --inject-fault");
  CHECK(f.code == 4);
  auto fj = json::parse(f.out);
  CHECK(fj["failed"] == 1);
  bool witnessed = false;
  for (const auto& c : fj["checks"])
    if (!c["pass"].get<bool>())
      witnessed = c["detail"].get<std::string>().find("associativity fails for basis triple") != std::string::npos;
  CHECK(witnessed);
}

TEST_CASE("library verify report") {
  verify::Options o;
  o.only = {"ffield", "zeta"};
  auto rep = verify::run(o);
  CHECK(rep.ok());
  CHECK(rep.failures() == 0);
  CHECK(!rep.checks.empty());
  CHECK_THROWS(verify::run(verify::Options{{"nope"}, false}));
}

TEST_CASE("corpus catalog") {
  const auto& cat = corpus::group_catalog();
  for (std::size_t i = 1; i < cat.size(); ++i)
    CHECK(std::tie(cat[i - 1].p, cat[i - 1].order, cat[i - 1].name) < std::tie(cat[i].p, cat[i].order, cat[i].name));
  for (const auto& e : cat) {
    if (e.order > 128) continue;
    auto g = corpus::make_group(e.name);
    CHECK(g.order() == e.order);
    CHECK(g.prime() == e.p);
  }
  CHECK(corpus::group_names(16, 2).size() == 22);
  CHECK_THROWS(corpus::make_group("nope"));
  for (const auto& name : corpus::algebra_names()) CHECK(corpus::make_algebra(name).dim() > 0);
}

TEST_CASE("order-16 groups are pairwise distinct") {
  std::set<std::vector<std::uint64_t>> sigs;
  auto names = corpus::group_names(16, 2);
  std::size_t count16 = 0;
  for (const auto& name : names) {
    auto g = corpus::make_group(name);
    if (g.order() != 16) continue;
    ++count16;
    auto derived = grouptab::commutator_subgroup(g);
    std::vector<std::uint64_t> sig{grouptab::conjugacy_classes(g).count(), derived.size(),
                                   grouptab::center(g).size(), g.exponent(), quotient_exponent(g, derived)};
    std::vector<std::uint64_t> hist(17, 0);
    for (grouptab::Index a = 0; a < 16; ++a) ++hist[g.element_order(a)];
    sig.insert(sig.end(), hist.begin(), hist.end());
    CHECK_MESSAGE(sigs.insert(sig).second, name);
  }
  CHECK(count16 == 14);
}
