// Command-line front end: verification campaigns over the classified cases,
// determining-system generation, the exponential reduction example, catalog
// listings, and numeric residuals of the closed-form solution.
//
// Exit codes: 0 every expectation met, 1 a verdict mismatched, 2 usage or
// configuration error. Reports are deterministic; timing goes to stderr.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dlv/catalog.hpp"
#include "dlv/detgen.hpp"
#include "dlv/errors.hpp"
#include "dlv/reduction.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace dlv;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_json(const std::string& path, const json& doc) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

std::string trimmed(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// "key = expr" per line, '#' comments; unknown keys become parameters.
SubstMap parse_assignments(const std::string& text) {
  SubstMap out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    if (trimmed(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("expected key = value, got: " + trimmed(line));
    std::string key = trimmed(line.substr(0, eq));
    AtomId id = find_atom(key) ? *find_atom(key) : intern_param(key);
    out[id] = parse_expr(line.substr(eq + 1));
  }
  return out;
}

std::vector<double> parse_numbers(const std::string& s, size_t want,
                                  const std::string& what) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    size_t used = 0;
    out.push_back(std::stod(trimmed(item), &used));
    if (used != trimmed(item).size())
      throw Error("bad " + what + " component: " + item);
  }
  if (out.size() != want)
    throw Error(what + " needs " + std::to_string(want) +
                " comma-separated values");
  return out;
}

Grid make_grid(const std::string& grid_s, const std::string& domain_s) {
  Grid g;
  if (!grid_s.empty()) {
    auto v = parse_numbers(grid_s, 2, "--grid");
    g.nt = static_cast<int>(v[0]);
    g.nx = static_cast<int>(v[1]);
  }
  if (!domain_s.empty()) {
    auto v = parse_numbers(domain_s, 4, "--domain");
    g.t0 = v[0];
    g.t1 = v[1];
    g.x0 = v[2];
    g.x1 = v[3];
  }
  return g;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// --- verify ---------------------------------------------------------------

struct VerifyConfig {
  int table = 0;  // 0 selects everything
  int number = 0;
  std::string mode = "symbolic";
  std::vector<std::uint64_t> seeds;
  std::string json_path;
};

std::string pivot_string(const std::array<bool, 3>& ft) {
  static const char dep[] = "uvw";
  std::string s;
  for (int i = 0; i < 3; ++i)
    if (ft[i]) s += dep[i];
  return s.empty() ? "-" : s;
}

void emit_report(const EntryReport& rep, const std::string& mode,
                 std::optional<std::uint64_t> seed, json& records, int& checks,
                 int& failed) {
  for (const auto& op : rep.ops) {
    ++checks;
    if (!op.ok) ++failed;
    std::string label = mode;
    if (seed) label += "[" + std::to_string(*seed) + "]";
    std::ostringstream line;
    line << (op.ok ? "ok   " : "FAIL ") << "table " << rep.table << " case "
         << rep.number << " " << label << " " << op.name << ": lie "
         << (op.lie ? "pass" : op.lie_witness_nonzero ? "fail(witness)"
                                                      : "fail")
         << ", first-type " << pivot_string(op.first_type) << ", nonclassical "
         << (op.nonclassical ? "pass" : "fail");
    if (!op.ok) line << "  <- " << op.note;
    std::cout << line.str() << "\n";
    if (!op.ok && !op.witness.empty())
      std::cout << "     witness " << op.witness_where << ": " << op.witness
                << "\n";

    json r;
    r["table"] = rep.table;
    r["case"] = rep.number;
    r["mode"] = mode;
    if (seed)
      r["seed"] = *seed;
    else
      r["seed"] = nullptr;
    r["operator"] = op.name;
    r["display"] = op.display;
    r["lie"] = op.lie;
    r["lie_witness_nonzero"] = op.lie_witness_nonzero;
    if (op.witness.empty()) {
      r["witness"] = nullptr;
    } else {
      r["witness"] = op.witness;
      r["witness_where"] = op.witness_where;
    }
    r["first_type"] = {{"u", op.first_type[0]},
                       {"v", op.first_type[1]},
                       {"w", op.first_type[2]}};
    r["nonclassical"] = op.nonclassical;
    r["ok"] = op.ok;
    if (!op.note.empty()) r["note"] = op.note;
    records.push_back(std::move(r));
  }
}

int run_verify(const VerifyConfig& cfg) {
  std::vector<const CatalogEntry*> picked;
  if (cfg.number != 0) {
    if (cfg.table == 0) throw Error("--case requires --table");
    picked.push_back(&catalog_entry(cfg.table, cfg.number));
  } else {
    for (const auto& e : catalog())
      if (cfg.table == 0 || e.table == cfg.table) picked.push_back(&e);
    if (picked.empty())
      throw ClassError("no catalog cases in table " +
                       std::to_string(cfg.table));
  }
  if (cfg.mode != "symbolic" && cfg.mode != "instance" && cfg.mode != "both")
    throw Error("--mode must be symbolic, instance, or both");
  bool symbolic = cfg.mode != "instance";
  bool instance = cfg.mode != "symbolic";
  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (instance && seeds.empty()) seeds = {1};

  auto start = std::chrono::steady_clock::now();
  json records = json::array();
  int checks = 0, failed = 0;
  for (const CatalogEntry* e : picked) {
    if (symbolic)
      emit_report(verify_entry(*e, {}, VerifyMode::Symbolic), "symbolic",
                  std::nullopt, records, checks, failed);
    if (instance)
      for (auto seed : seeds)
        emit_report(
            verify_entry(*e, sample_params(*e, seed), VerifyMode::Instance),
            "instance", seed, records, checks, failed);
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cout << picked.size() << " cases, " << checks << " operator checks: "
            << checks - failed << " ok, " << failed << " failed\n";
  std::cerr << "elapsed " << ms << " ms\n";

  json doc;
  doc["config"] = {{"command", "verify"},
                   {"table", cfg.table ? json(cfg.table) : json(nullptr)},
                   {"case", cfg.number ? json(cfg.number) : json(nullptr)},
                   {"mode", cfg.mode},
                   {"seeds", instance ? json(seeds) : json::array()}};
  doc["records"] = std::move(records);
  doc["summary"] = {{"cases", picked.size()},
                    {"operator_checks", checks},
                    {"ok", checks - failed},
                    {"failed", failed}};
  write_json(cfg.json_path, doc);
  return failed ? 1 : 0;
}

// --- detgen ---------------------------------------------------------------

struct DetgenConfig {
  std::string params_path;  // system description; empty keeps it symbolic
  std::string mode = "lie";
  bool equal_lambda = false;
  std::string json_path;
};

int run_detgen(const DetgenConfig& cfg) {
  DLVSystem sys = cfg.params_path.empty()
                      ? general_dlv()
                      : parse_system(read_file(cfg.params_path));
  if (cfg.equal_lambda) {
    SubstMap collapse{{*find_atom("lambda2"), ev("lambda1")},
                      {*find_atom("lambda3"), ev("lambda1")}};
    for (auto& l : sys.lambda) l = l.substitute(collapse);
    for (auto& row : sys.row)
      for (auto& c : row) c = c.substitute(collapse);
  }
  DeterminingSystem ds;
  if (cfg.mode == "lie") {
    ds = determining_equations(sys.rd());
  } else if (cfg.mode == "first-u" || cfg.mode == "first-v" ||
             cfg.mode == "first-w") {
    ds = first_type_determining_equations(sys.rd(),
                                          cfg.mode.back() - 'u');
  } else {
    throw Error("--mode must be lie, first-u, first-v, or first-w");
  }
  std::cout << ds.str();
  std::cout << ds.equations.size() << " equations\n";

  json doc;
  doc["config"] = {{"command", "detgen"},
                   {"mode", cfg.mode},
                   {"equal_lambda", cfg.equal_lambda}};
  json eqs = json::array();
  for (const auto& p : ds.equations) eqs.push_back(Expr(p).str());
  doc["equations"] = std::move(eqs);
  doc["summary"] = {{"count", ds.equations.size()}};
  write_json(cfg.json_path, doc);
  return 0;
}

// --- reduce / residual ----------------------------------------------------

struct ReduceConfig {
  std::string params_path;
  std::string grid_s, domain_s;
  std::string json_path;
};

SubstMap reduce_assignment(const std::string& params_path) {
  SubstMap assign = example_defaults();
  if (!params_path.empty())
    for (auto& [id, val] : parse_assignments(read_file(params_path)))
      assign[id] = val;
  return assign;
}

int run_reduce(const ReduceConfig& cfg) {
  SubstMap assign = reduce_assignment(cfg.params_path);
  Ansatz ans = build_ansatz(assign);
  DLVSystem sys = competition_system(assign);
  ReducedODESystem red = reduce(sys, ans);
  ExactSolution sol = constant_profile_solution(assign);
  DLVSystem pinned_sys = competition_system(sol.assign);
  auto sres = symbolic_residual(pinned_sys, sol);
  bool sym_zero =
      sres[0].is_zero() && sres[1].is_zero() && sres[2].is_zero();
  Grid g = make_grid(cfg.grid_s, cfg.domain_s);
  double maxres = residual_numeric(pinned_sys, sol, g);

  static const char* dep[] = {"u", "v", "w"};
  std::cout << "ansatz (profiles phi1, phi2, phi3 of x):\n";
  for (int k = 0; k < 3; ++k)
    std::cout << "  " << dep[k] << " = " << ans.comp[k].str() << "\n";
  std::cout << "  kappa = " << ans.kappa.str() << "\n";
  std::cout << "reduced profile equations:\n";
  for (const auto& e : red.eq) std::cout << "  " << e.str() << " = 0\n";
  std::cout << "exact solution (phi2, phi3 constant, forces a3 = a2 and "
               "lambda3 = lambda2):\n";
  for (int k = 0; k < 3; ++k)
    std::cout << "  " << dep[k] << " = " << sol.comp[k].str() << "\n";
  std::cout << "  phi1'' + (" << sol.kappa2.str() << ") * phi1 = 0\n";
  std::cout << "symbolic residual: " << (sym_zero ? "zero" : "NONZERO")
            << "\n";
  std::cout << "max |residual| on " << g.nt << "x" << g.nx << " grid over ["
            << g.t0 << "," << g.t1 << "]x[" << g.x0 << "," << g.x1
            << "]: " << sci(maxres) << "\n";

  json doc;
  doc["config"] = {{"command", "reduce"},
                   {"grid", {g.nt, g.nx}},
                   {"domain", {g.t0, g.t1, g.x0, g.x1}}};
  doc["ansatz"] = {{"u", ans.comp[0].str()},
                   {"v", ans.comp[1].str()},
                   {"w", ans.comp[2].str()},
                   {"kappa", ans.kappa.str()}};
  doc["reduced_odes"] = {red.eq[0].str() + " = 0", red.eq[1].str() + " = 0",
                         red.eq[2].str() + " = 0"};
  doc["exact_solution"] = {{"u", sol.comp[0].str()},
                           {"v", sol.comp[1].str()},
                           {"w", sol.comp[2].str()},
                           {"profile_ode",
                            "phi1'' + (" + sol.kappa2.str() + ") * phi1 = 0"}};
  doc["symbolic_residual_zero"] = sym_zero;
  doc["max_residual"] = maxres;
  write_json(cfg.json_path, doc);
  return (!sym_zero || maxres > 1e-9) ? 1 : 0;
}

int run_residual(const ReduceConfig& cfg) {
  SubstMap assign = reduce_assignment(cfg.params_path);
  ExactSolution sol = constant_profile_solution(assign);
  DLVSystem sys = competition_system(sol.assign);
  auto sres = symbolic_residual(sys, sol);
  bool sym_zero =
      sres[0].is_zero() && sres[1].is_zero() && sres[2].is_zero();
  Grid g = make_grid(cfg.grid_s, cfg.domain_s);
  double maxres = residual_numeric(sys, sol, g);
  double perturbed = residual_numeric(sys, flip_alpha_v(sol), g);

  std::cout << "symbolic residual: " << (sym_zero ? "zero" : "NONZERO")
            << "\n";
  std::cout << "max |residual| on " << g.nt << "x" << g.nx << " grid over ["
            << g.t0 << "," << g.t1 << "]x[" << g.x0 << "," << g.x1
            << "]: " << sci(maxres) << "\n";
  std::cout << "with alpha sign flipped in v only: " << sci(perturbed)
            << "\n";

  json doc;
  doc["config"] = {{"command", "residual"},
                   {"grid", {g.nt, g.nx}},
                   {"domain", {g.t0, g.t1, g.x0, g.x1}}};
  doc["symbolic_residual_zero"] = sym_zero;
  doc["max_residual"] = maxres;
  doc["perturbed_max_residual"] = perturbed;
  write_json(cfg.json_path, doc);
  return (!sym_zero || maxres > 1e-9) ? 1 : 0;
}

// --- catalog --------------------------------------------------------------

struct CatalogConfig {
  int table = 0;
  int number = 0;
  std::string json_path;
};

int run_catalog(const CatalogConfig& cfg) {
  std::vector<const CatalogEntry*> picked;
  if (cfg.number != 0) {
    if (cfg.table == 0) throw Error("--case requires --table");
    picked.push_back(&catalog_entry(cfg.table, cfg.number));
  } else {
    for (const auto& e : catalog())
      if (cfg.table == 0 || e.table == cfg.table) picked.push_back(&e);
    if (picked.empty())
      throw ClassError("no catalog cases in table " +
                       std::to_string(cfg.table));
  }
  json entries = json::array();
  for (const CatalogEntry* e : picked) {
    std::cout << entry_str(*e) << "\n";
    json j;
    j["table"] = e->table;
    j["case"] = e->number;
    RDSystem rd = e->system.rd();
    json lam = json::array(), cs = json::array();
    for (int k = 0; k < 3; ++k) {
      lam.push_back(e->system.lambda[k].str());
      cs.push_back(rd.C[k].str());
    }
    j["lambda"] = std::move(lam);
    j["reaction"] = std::move(cs);
    json restr = json::array();
    for (const auto& r : e->restrictions) restr.push_back(r.text);
    j["restrictions"] = std::move(restr);
    json ops = json::array();
    for (const auto& op : e->ops) {
      json o;
      o["name"] = op.name;
      o["display"] = field_str(op.field);
      json needs = json::array();
      for (const auto& r : op.needs) needs.push_back(r.text);
      o["needs"] = std::move(needs);
      ops.push_back(std::move(o));
    }
    j["operators"] = std::move(ops);
    entries.push_back(std::move(j));
  }
  json doc;
  doc["config"] = {{"command", "catalog"},
                   {"table", cfg.table ? json(cfg.table) : json(nullptr)},
                   {"case", cfg.number ? json(cfg.number) : json(nullptr)}};
  doc["entries"] = std::move(entries);
  write_json(cfg.json_path, doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "symbolic symmetry verification for three-component diffusive "
      "Lotka-Volterra systems"};
  app.require_subcommand(1);

  VerifyConfig vc;
  auto* verify = app.add_subcommand(
      "verify", "check classified operators against their tables");
  verify->add_option("--table", vc.table, "restrict to one table (1 or 2)");
  verify->add_option("--case", vc.number, "restrict to one case number");
  verify->add_option("--mode", vc.mode, "symbolic, instance, or both")
      ->default_str("symbolic");
  verify->add_option("--seed", vc.seeds,
                     "instance-mode sampling seeds (repeatable)");
  verify->add_option("--json", vc.json_path, "write a JSON report here");

  DetgenConfig dc;
  auto* detgen = app.add_subcommand(
      "detgen", "print the determining system for symmetry coefficients");
  detgen->add_option("--params", dc.params_path,
                     "system description file (default: fully symbolic)");
  detgen->add_option("--mode", dc.mode, "lie, first-u, first-v, or first-w")
      ->default_str("lie");
  detgen->add_flag("--equal-lambda", dc.equal_lambda,
                   "collapse all diffusivities to lambda1");
  detgen->add_option("--json", dc.json_path, "write a JSON report here");

  ReduceConfig rc;
  auto* reduce = app.add_subcommand(
      "reduce", "run the exponential ansatz reduction and its exact solution");
  reduce->add_option("--params", rc.params_path,
                     "key = value overrides for the example parameters");
  reduce->add_option("--grid", rc.grid_s, "numeric grid as nt,nx");
  reduce->add_option("--domain", rc.domain_s, "numeric domain as t0,t1,x0,x1");
  reduce->add_option("--json", rc.json_path, "write a JSON report here");

  ReduceConfig sc;
  auto* residual = app.add_subcommand(
      "residual", "numeric residual of the closed-form solution");
  residual->add_option("--params", sc.params_path,
                       "key = value overrides for the example parameters");
  residual->add_option("--grid", sc.grid_s, "numeric grid as nt,nx");
  residual->add_option("--domain", sc.domain_s,
                       "numeric domain as t0,t1,x0,x1");
  residual->add_option("--json", sc.json_path, "write a JSON report here");

  CatalogConfig cc;
  auto* cat = app.add_subcommand("catalog", "list the classified cases");
  cat->add_option("--table", cc.table, "restrict to one table (1 or 2)");
  cat->add_option("--case", cc.number, "restrict to one case number");
  cat->add_option("--json", cc.json_path, "write a JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(vc);
    if (app.got_subcommand(detgen)) return run_detgen(dc);
    if (app.got_subcommand(reduce)) return run_reduce(rc);
    if (app.got_subcommand(residual)) return run_residual(sc);
    if (app.got_subcommand(cat)) return run_catalog(cc);
  } catch (const dlv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
