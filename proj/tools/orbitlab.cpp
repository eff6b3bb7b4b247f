// orbitlab: command-line front end. Every command prints one JSON document on
// stdout; errors go to stderr as JSON and set the exit code (2 validation,
// 3 budget, 4 internal).

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "orbitlab/algroup.hpp"
#include "orbitlab/bogomod.hpp"
#include "orbitlab/coadjoint.hpp"
#include "orbitlab/corpus.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/grouptab.hpp"
#include "orbitlab/nilalg.hpp"
#include "orbitlab/verify.hpp"
#include "orbitlab/zetalab.hpp"

using namespace orbitlab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "orbitlab 1.0.0";

std::string sha256(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Per-invocation state: budgets, recorded inputs, side outputs.
struct Context {
  Budgets budgets;
  json inputs = json::array();
  std::string plot_path;

  // "corpus:NAME" or a file path; the digest covers the file bytes or the name.
  std::string note_input(const std::string& spec) {
    const bool bundled = spec.rfind("corpus:", 0) == 0;
    const std::string body = bundled ? spec : read_file(spec);
    inputs.push_back({{"input", spec}, {"sha256", sha256(body)}});
    return bundled ? spec.substr(7) : body;
  }

  grouptab::FiniteGroup group(const std::string& spec) {
    const std::string body = note_input(spec);
    if (spec.rfind("corpus:", 0) == 0) return corpus::make_group(body, budgets);
    return grouptab::parse_group(body, budgets);
  }

  nilalg::NilAlgebra algebra(const std::string& spec) {
    const std::string body = note_input(spec);
    if (spec.rfind("corpus:", 0) == 0) return corpus::make_algebra(body, budgets);
    return nilalg::parse_algebra(body, budgets);
  }

  zetalab::FactorSpec zeta_spec(const std::string& spec) {
    const std::string body = note_input(spec);
    if (spec.rfind("corpus:", 0) == 0) {
      for (const auto& z : corpus::zeta_specs())
        if (z.name == body) return z.spec;
      throw ValidationError("unknown corpus zeta spec '" + body + "'");
    }
    return zetalab::parse_spec_json(body);
  }
};

// --- payload builders ------------------------------------------------------

json group_summary(const grouptab::FiniteGroup& g, const Budgets& b) {
  const auto cl = grouptab::conjugacy_classes(g, b);
  return {{"order", g.order()},
          {"k", cl.count()},
          {"class_sizes", cl.sizes},
          {"derived_order", grouptab::commutator_subgroup(g, b).size()}};
}

json census_json(const coadjoint::Census& c) {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& o : c.orbits) ++hist[o.size];
  json sizes = json::object(), fake = json::object();
  for (auto [s, m] : hist) sizes[std::to_string(s)] = m;
  for (auto [d, m] : coadjoint::fake_degree_multiset(c)) fake[std::to_string(d)] = m;
  return {{"orbit_count", c.count()}, {"sizes_histogram", sizes}, {"fake_degrees", fake}};
}

json cyclotomic_json(const cyclotomic::CyclotomicValue& v) {
  json coeffs = json::array();
  for (const auto& c : v.coefficients()) coeffs.push_back(c.get_str());
  return {{"coeffs", coeffs}, {"den", v.denominator().get_str()}};
}

json characters_json(const nilalg::NilAlgebra& j, const Budgets& b) {
  coadjoint::DualSpace ds(j);
  const auto census = coadjoint::orbit_census(ds, b);
  const auto classes = coadjoint::group_classes_with_logs(ds, b);
  const auto table = coadjoint::orbit_method_characters(ds, census, classes);
  json cls = json::array(), chars = json::array();
  for (std::size_t c = 0; c < classes.data.count(); ++c)
    cls.push_back({{"rep", classes.data.representatives[c]}, {"size", classes.data.sizes[c]}});
  for (std::size_t o = 0; o < census.count(); ++o) {
    json vals = json::array();
    for (const auto& v : table.values[o]) vals.push_back(cyclotomic_json(v));
    chars.push_back({{"orbit_rep", census.orbits[o].rep}, {"degree", table.degrees[o]}, {"values", vals}});
  }
  return {{"p", ds.p()},
          {"zeta", "exp(2 pi i / p); value = sum_k coeffs[k-1] zeta^k / den"},
          {"classes", cls},
          {"characters", chars},
          {"orthonormal", coadjoint::orthonormality_check(table, census, classes)}};
}

json mq_json(const grouptab::FiniteGroup& g, std::uint32_t p, std::uint32_t e, std::uint64_t b0, const Budgets& b) {
  const auto r = bogomod::compute_mq(g, p, e, b);
  json layers = json::array();
  for (const auto& l : r.layers)
    layers.push_back({{"i", l.i},
                      {"classes", l.classes},
                      {"expected_log_p", l.expected_log_p},
                      {"observed_log_p", l.observed_log_p}});
  json out = {{"k", r.presentation.k},
              {"p", p},
              {"e", e},
              {"invariant_factors", r.factors},
              {"structure", bogomod::structure_string(r.factors)},
              {"order", r.order.get_str()},
              {"order_equals_q_pow_km1", r.order_equals_q_pow_km1},
              {"filtration_ok", r.filtration_ok},
              {"layers", layers}};
  if (b0) out["predicted_ab_order"] = bogomod::predicted_ab_order(r.presentation.k, p, e, b0).get_str();
  return out;
}

std::vector<std::uint64_t> checkpoint_grid(std::uint64_t n) {
  std::vector<std::uint64_t> grid;
  for (std::uint64_t m = 1; m < n; m *= 2) grid.push_back(m);
  grid.push_back(n);
  return grid;
}

json series_json(const zetalab::TruncatedDirichlet& s) {
  const auto cum = s.cumulative();
  json pts = json::array();
  for (auto n : checkpoint_grid(s.cutoff)) pts.push_back({{"n", n}, {"R_n", cum[n].get_str()}});
  return {{"cutoff", s.cutoff}, {"provenance", s.provenance}, {"checkpoints", pts}};
}

std::string series_csv(const zetalab::TruncatedDirichlet& s) {
  const auto cum = s.cumulative();
  std::ostringstream out;
  out << "n,r_n,R_n\n";
  for (auto n : checkpoint_grid(s.cutoff)) out << n << ',' << s.r[n].get_str() << ',' << cum[n].get_str() << '\n';
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

void emit_plot(const Context& ctx, const zetalab::TruncatedDirichlet& s) {
  if (ctx.plot_path.empty()) return;
  const auto cum = s.cumulative();
  std::ostringstream out;
  out << "# n R_n log(R_n)/log(n)\n" << std::setprecision(10);
  for (auto n : checkpoint_grid(s.cutoff)) {
    out << n << ' ' << cum[n].get_str() << ' ';
    if (n >= 2) out << std::log(cum[n].get_d()) / std::log(double(n));
    else out << '-';
    out << '\n';
  }
  write_text(ctx.plot_path, out.str());
}

zetalab::SeriesMode parse_mode(const std::string& m) {
  if (m == "exact") return zetalab::SeriesMode::kExactSl2;
  if (m == "akov") return zetalab::SeriesMode::kAkovApprox;
  throw ValidationError("mode must be 'exact' or 'akov'");
}

zetalab::LieType parse_type(const std::string& t) {
  if (t.size() >= 2 && t[0] == 'A' && std::all_of(t.begin() + 1, t.end(), ::isdigit))
    return zetalab::type_a(static_cast<std::uint32_t>(std::stoul(t.substr(1))));
  throw ValidationError("type must be A<n>; use --rank/--pos-roots/--coxeter for others");
}

// --- command table ---------------------------------------------------------

struct Outcome {
  json payload;
  int exit = 0;
  std::string stderr_text;
};

Outcome dispatch(const std::vector<std::string>& args, Context& ctx);

int run_replay(const std::string& path) {
  const json m = json::parse(read_file(path));
  const auto args = m.at("command").get<std::vector<std::string>>();
  for (const auto& in : m.at("inputs")) {
    const std::string spec = in.at("input");
    const std::string body = spec.rfind("corpus:", 0) == 0 ? spec : read_file(spec);
    if (sha256(body) != in.at("sha256"))
      throw ValidationError("input '" + spec + "' changed since the manifest was written");
  }
  Context ctx;
  for (const auto& [k, v] : m.at("budgets").items()) ctx.budgets.set(k, std::to_string(v.get<std::uint64_t>()));
  const Outcome o = dispatch(args, ctx);
  const std::string text = o.payload.dump(2);
  const bool same = sha256(text) == m.at("output_sha256");
  std::cout << json{{"replayed", args}, {"identical", same}, {"output_sha256", sha256(text)}}.dump(2) << '\n';
  if (!same) throw InternalError("replayed output differs from the manifest");
  return 0;
}

Outcome dispatch(const std::vector<std::string>& args, Context& ctx) {
  CLI::App app{"Orbit-method, M_q and representation-zeta toolkit", "orbitlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config;
  std::vector<std::string> budget_kv;
  std::uint64_t threads = 0;
  std::string manifest;
  app.add_option("--config", config, "flat key = value budget file");
  app.add_option("--budget", budget_kv, "override one budget, key=value");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--manifest", manifest, "write a replayable run manifest here");
  app.add_option("--emit-plot-data", ctx.plot_path, "write gnuplot columns for series commands");

  Outcome out;
  std::function<json()> action;
  std::string in1;

  auto* gt = app.add_subcommand("grouptab", "finite groups from files")->require_subcommand(1);
  for (const char* name : {"classes", "derived"}) {
    auto* c = gt->add_subcommand(name, "order, k, class sizes, |G'|");
    c->add_option("group", in1, "group file or corpus:NAME")->required();
    c->callback([&] { action = [&] { return group_summary(ctx.group(in1), ctx.budgets); }; });
  }

  auto* na = app.add_subcommand("nilalg", "nilpotent algebras")->require_subcommand(1);
  na->add_subcommand("info", "dimension, class, [J,J]_L")
      ->callback([&] {
        action = [&] {
          const auto j = ctx.algebra(in1);
          return json{{"dim", j.dim()},
                      {"field", j.field()->name()},
                      {"class", j.nilpotency_class()},
                      {"derived_dim", j.derived_lie_subspace().dim()},
                      {"p_nilpotent", j.is_p_nilpotent()}};
        };
      })
      ->add_option("algebra", in1, "algebra file or corpus:NAME")
      ->required();

  auto* ag = app.add_subcommand("algroup", "the group 1+J")->require_subcommand(1);
  for (const char* name : {"classes", "abelianization"}) {
    auto* c = ag->add_subcommand(name, "|1+J|, k(1+J), |(1+J)_ab|");
    c->add_option("algebra", in1, "algebra file or corpus:NAME")->required();
    c->callback([&] {
      action = [&] {
        const auto j = ctx.algebra(in1);
        const auto order = algroup::group_order_within(j, "enumeration", ctx.budgets.enumeration);
        return json{{"group_order", order},
                    {"k", algroup::k_of_group(j, ctx.budgets)},
                    {"abelianization_order", algroup::group_abelianization_order(j, ctx.budgets)}};
      };
    });
  }

  auto* orb = app.add_subcommand("orbits", "coadjoint orbits")->require_subcommand(1);
  orb->add_subcommand("census", "orbit count, sizes, fake degrees")
      ->callback([&] {
        action = [&] {
          const auto j = ctx.algebra(in1);
          coadjoint::DualSpace ds(j);
          return census_json(coadjoint::orbit_census(ds, ctx.budgets));
        };
      })
      ->add_option("algebra", in1, "algebra file or corpus:NAME")
      ->required();
  orb->add_subcommand("characters", "orbit-method character table (needs J^p = 0)")
      ->callback([&] { action = [&] { return characters_json(ctx.algebra(in1), ctx.budgets); }; })
      ->add_option("algebra", in1, "algebra file or corpus:NAME")
      ->required();
  orb->add_subcommand("probe", "|J/[J,J]_L| against |(1+J)_ab|")
      ->callback([&] {
        action = [&] {
          const auto r = coadjoint::conjecture_probe(ctx.algebra(in1), ctx.budgets);
          return json{{"lie_index", r.lie_index}, {"group_abelianization", r.group_abelianization}, {"equal", r.equal()}};
        };
      })
      ->add_option("algebra", in1, "algebra file or corpus:NAME")
      ->required();

  std::uint32_t mq_p = 0, mq_e = 1;
  std::uint64_t mq_b0 = 0;
  auto* mq = app.add_subcommand("mq", "the module M_q")->require_subcommand(1);
  auto* mqc = mq->add_subcommand("compute", "invariant factors and layers of M_q");
  mqc->add_option("group", in1, "p-group file or corpus:NAME")->required();
  mqc->add_option("--p", mq_p, "prime")->required();
  mqc->add_option("--e", mq_e, "q = p^e");
  mqc->add_option("--b0", mq_b0, "|B_0| for the predicted |(1+I)_ab|");
  mqc->callback([&] { action = [&] { return mq_json(ctx.group(in1), mq_p, mq_e, mq_b0, ctx.budgets); }; });

  std::uint64_t zq = 0, zn = 1000;
  std::string zmode = "exact", zc, ztype = "A1";
  std::uint32_t zp = 2, zrank = 0, zpos = 0, zcox = 0;
  std::uint64_t zimax = 400;
  auto* z = app.add_subcommand("zeta", "representation zeta data")->require_subcommand(1);
  z->add_subcommand("sl2", "degree multiset of SL_2(F_q)")
      ->callback([&] {
        action = [&] {
          const auto d = zetalab::sl2_degrees(zq);
          std::uint64_t count = 0;
          mpz_class sq = 0;
          for (auto [deg, m] : d) {
            count += m;
            sq += mpz_class(static_cast<unsigned long>(deg)) * static_cast<unsigned long>(deg) *
                  static_cast<unsigned long>(m);
          }
          return json{{"q", zq}, {"degrees", d}, {"count", count}, {"sum_squares", sq.get_str()}};
        };
      })
      ->add_option("q", zq, "odd prime power >= 5")
      ->required();
  auto* zprod = z->add_subcommand("product", "truncated product series");
  zprod->add_option("spec", in1, "spec.json or corpus:NAME")->required();
  zprod->add_option("--N", zn, "cutoff");
  zprod->add_option("--mode", zmode, "exact|akov");
  zprod->callback([&] {
    action = [&] {
      const auto spec = ctx.zeta_spec(in1);
      const auto mode = parse_mode(zmode);
      const auto s = zetalab::product_series(spec, zn, mode, ctx.budgets);
      emit_plot(ctx, s);
      json j = series_json(s);
      j["mode"] = zetalab::mode_name(mode);
      json l = json::array();
      for (auto n : checkpoint_grid(zn)) l.push_back({{"n", n}, {"l", zetalab::l_of_n(spec, n, mode).get_str()}});
      j["l_of_n"] = l;
      return j;
    };
  });
  auto* zab = z->add_subcommand("abscissa", "abscissa estimate from the truncated series");
  zab->add_option("spec", in1, "spec.json or corpus:NAME")->required();
  zab->add_option("--N", zn, "cutoff");
  zab->add_option("--mode", zmode, "exact|akov");
  zab->callback([&] {
    action = [&] {
      const auto s = zetalab::product_series(ctx.zeta_spec(in1), zn, parse_mode(zmode), ctx.budgets);
      emit_plot(ctx, s);
      const auto a = zetalab::abscissa_estimate(s);
      json path = json::array();
      for (const auto& pt : a.path) path.push_back({{"n", pt.n}, {"ratio", pt.ratio}});
      return json{{"estimate", a.estimate}, {"slope", a.slope}, {"cutoff", zn}, {"path", path}};
    };
  });
  auto* zt = z->add_subcommand("target", "factor spec with a prescribed abscissa");
  zt->add_option("--c", zc, "target abscissa, e.g. 1/2 or 0.5")->required();
  zt->add_option("--type", ztype, "A<n>");
  zt->add_option("--rank", zrank, "custom type: rank");
  zt->add_option("--pos-roots", zpos, "custom type: positive roots");
  zt->add_option("--coxeter", zcox, "custom type: Coxeter number");
  zt->add_option("--p", zp, "prime");
  zt->add_option("--imax", zimax, "last factor index");
  zt->callback([&] {
    action = [&] {
      const auto [num, den] = zetalab::parse_rational(zc);
      zetalab::LieType t = zrank ? zetalab::LieType{"custom", zrank, zpos, zcox} : parse_type(ztype);
      const auto spec = zetalab::target_abscissa_spec(num, den, t, zp, zimax);
      json factors = json::array();
      for (const auto& f : spec.factors) {
        std::size_t lg = 0;
        for (mpz_class m = f.mult; m > 1; m /= f.p) ++lg;
        factors.push_back({{"i", f.power}, {"log_p_mult", lg}});
      }
      const double c = double(num) / double(den);
      return json{{"c", std::to_string(num) + "/" + std::to_string(den)},
                  {"type", {{"rank", t.rank}, {"pos_roots", t.pos_roots}, {"coxeter", t.coxeter}}},
                  {"p", zp},
                  {"n0", spec.n0},
                  {"factors", factors},
                  {"log10_partial_sum_above", zetalab::target_log10_partial_sums(spec, c + 0.1).back()},
                  {"log10_partial_sum_below", zetalab::target_log10_partial_sums(spec, c - 0.1).back()}};
    };
  });

  std::vector<std::string> only;
  bool inject = false;
  auto* ver = app.add_subcommand("verify", "run the corpus identity suites");
  ver->add_option("--only", only, "restrict to these suites");
  ver->add_flag("--inject-fault", inject, "add an algebra with a corrupted structure constant");
  ver->callback([&] {
    action = [&] {
      verify::Options o;
      o.only = only;
      o.inject_fault = inject;
      const auto r = verify::run(o, ctx.budgets);
      out.stderr_text = r.table();
      if (!r.ok()) out.exit = static_cast<int>(ExitCode::kInternal);
      return json::parse(r.to_json());
    };
  });

  std::string kind, target_path;
  auto* ex = app.add_subcommand("export", "write tables to a file");
  ex->add_option("format", zmode, "json|csv")->required()->check(CLI::IsMember({"json", "csv"}));
  ex->add_option("kind", kind, "census|characters|mq|series")
      ->required()
      ->check(CLI::IsMember({"census", "characters", "mq", "series"}));
  ex->add_option("input", in1, "file or corpus:NAME")->required();
  ex->add_option("--out", target_path, "output file")->required();
  ex->add_option("--p", mq_p, "prime (mq)");
  ex->add_option("--e", mq_e, "q = p^e (mq)");
  ex->add_option("--N", zn, "cutoff (series)");
  ex->callback([&] {
    action = [&] {
      if (zmode == "csv" && kind != "series") throw ValidationError("csv export is only for series checkpoints");
      std::string text;
      if (kind == "census") {
        const auto j = ctx.algebra(in1);
        coadjoint::DualSpace ds(j);
        text = census_json(coadjoint::orbit_census(ds, ctx.budgets)).dump(2);
      } else if (kind == "characters") {
        text = characters_json(ctx.algebra(in1), ctx.budgets).dump(2);
      } else if (kind == "mq") {
        const auto g = ctx.group(in1);
        text = mq_json(g, mq_p ? mq_p : g.prime(), mq_e, 0, ctx.budgets).dump(2);
      } else {
        const auto s = zetalab::product_series(ctx.zeta_spec(in1), zn, zetalab::SeriesMode::kExactSl2, ctx.budgets);
        text = zmode == "csv" ? series_csv(s) : series_json(s).dump(2);
      }
      write_text(target_path, text + (zmode == "json" ? "\n" : ""));
      return json{{"written", target_path}, {"bytes", text.size()}, {"sha256", sha256(text)}};
    };
  });

  app.add_subcommand("budget", "print the effective budgets")->callback([&] {
    action = [&] { return json(ctx.budgets.as_map()); };
  });

  std::string replay_path;
  app.add_subcommand("replay", "rerun a manifest and compare its output")
      ->add_option("manifest", replay_path, "manifest file")
      ->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out.stderr_text = app.help();
    out.payload = json();
    return out;
  } catch (const CLI::CallForVersion&) {
    out.payload = json{{"version", kVersion}};
    return out;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }
  if (!replay_path.empty()) throw ValidationError("replay cannot be nested");  // handled by main
  // Budgets: defaults, then the config file, then flags.
  if (!config.empty()) ctx.budgets.load_config_file(config);
  for (const auto& kv : budget_kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("--budget expects key=value");
    ctx.budgets.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (threads) ctx.budgets.threads = threads;
  if (!action) throw ValidationError("no command given");

  const auto t0 = std::chrono::steady_clock::now();
  out.payload = action();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!manifest.empty()) {
    std::vector<std::string> cmd;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest") {
        ++i;
        continue;
      }
      if (args[i].rfind("--manifest=", 0) == 0) continue;
      cmd.push_back(args[i]);
    }
    const json m = {{"tool_version", kVersion},     {"command", cmd},
                    {"inputs", ctx.inputs},         {"budgets", ctx.budgets.as_map()},
                    {"seed", 0},                    {"output_sha256", sha256(out.payload.dump(2))},
                    {"timing_seconds", secs}};
    write_text(manifest, m.dump(2) + "\n");
  }
  return out;
}

int report_error(const char* kind, const std::string& what, int code) {
  std::cerr << json{{"error", kind}, {"message", what}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (args.size() == 2 && args[0] == "replay") return run_replay(args[1]);
    Context ctx;
    const Outcome o = dispatch(args, ctx);
    if (!o.stderr_text.empty()) std::cerr << o.stderr_text;
    if (!o.payload.is_null()) std::cout << o.payload.dump(2) << '\n';
    return o.exit;
  } catch (const Error& e) {
    return report_error(e.kind(), e.what(), static_cast<int>(e.code()));
  } catch (const nlohmann::json::exception& e) {
    return report_error("validation", e.what(), static_cast<int>(ExitCode::kValidation));
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), static_cast<int>(ExitCode::kInternal));
  }
}
