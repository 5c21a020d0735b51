#include "singosc4/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "singosc4/coords.hpp"
#include "singosc4/errors.hpp"
#include "singosc4/interbasis.hpp"
#include "singosc4/io.hpp"
#include "singosc4/model.hpp"
#include "singosc4/oracle.hpp"
#include "singosc4/spheroidal.hpp"
#include "singosc4/verify.hpp"

namespace singosc4 {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string m = "0", s = "0";
  SystemParams params;
  std::string format = "csv";
  std::string output;
  std::string config_file;
  int n = 0;
  int n_max = 8;
  std::string methods = "3f2,cg,quad";
  ConvergenceProtocol protocol;
  std::string r_list = "0,0.1,1,10";
  std::string suite = "all";
  double tol = 1e-8;
  std::string report;
  std::vector<std::string> set_tol;
  std::string inject_fault;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw DomainError(key + ": not a number: '" + v + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw DomainError(key + ": not an integer: '" + v + "'");
  return x;
}

// Flat "key = value" file; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

json params_json(const RunConfig& c, const SectorParams* sec) {
  json j = {{"schema", kSchemaVersion},
            {"mu", c.params.mu},
            {"omega", c.params.omega},
            {"hbar", c.params.hbar},
            {"c1", c.params.c1},
            {"c2", c.params.c2},
            {"m", c.m},
            {"s", c.s}};
  if (sec)
    j["sector"] = {{"M1", sec->M1},         {"M2", sec->M2},         {"delta1", sec->delta1},
                   {"delta2", sec->delta2}, {"m1", sec->m1},         {"m2", sec->m2},
                   {"m_plus", sec->m_plus.str()}, {"m_minus", sec->m_minus.str()}};
  return j;
}

std::string join(const std::vector<double>& v, char sep = ';') {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + format_double(v[i]);
  return s;
}

std::vector<double> row_of(const Eigen::MatrixXd& m, int r) {
  std::vector<double> v(m.cols());
  for (int c = 0; c < m.cols(); ++c) v[c] = m(r, c);
  return v;
}

// d = 2√R/a; undefined at R = 0
json interfocus_distance_or_null(double R, double a) {
  if (R == 0.0) return nullptr;
  return interfocus_distance(R, a);
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) rows.push_back(row_of(m, r));
  return rows;
}

void cmd_spectrum(const RunConfig& c, const SectorParams& sec, std::ostream& out) {
  if (c.n_max < 0) throw DomainError("--n-max must be nonnegative");
  json rows = json::array();
  bool counts_agree = true;
  if (c.format == "csv") out << csv_header("spectrum") << "\nN,m,s,delta1,delta2,energy,multiplet_size\n";
  for (int N = 0; N <= c.n_max; ++N) {
    const auto e = list_euler_states(N, sec);
    if (e.empty()) continue;
    counts_agree = counts_agree && e.size() == list_polar_states(N, sec).size();
    const double E = energy(c.params, N, sec);
    if (c.format == "csv") {
      out << N << ',' << sec.m.str() << ',' << sec.s.str() << ',' << format_double(sec.delta1) << ','
          << format_double(sec.delta2) << ',' << format_double(E) << ',' << e.size() << '\n';
    } else {
      rows.push_back({{"N", N}, {"energy", E}, {"multiplet_size", e.size()}});
    }
  }
  if (c.format == "json")
    write_json(out, {{"config", params_json(c, &sec)},
                     {"results", {{"levels", rows}}},
                     {"checks", json::array({{{"name", "multiplet_counts_agree"}, {"pass", counts_agree}}})}});
}

void cmd_coeffs(const RunConfig& c, const SectorParams& sec, std::ostream& out) {
  if (c.n < 0) throw DomainError("--n must be nonnegative");
  std::vector<CoefficientMethod> methods;
  for (const auto& name : split(c.methods, ',')) {
    const auto m = parse_coefficient_method(name);
    if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
  }
  if (methods.empty()) throw DomainError("--methods is empty");
  const auto reference = coefficient_table(c.n, sec, CoefficientMethod::cg);
  if (reference.size() == 0)
    throw DomainError("sector (m=" + sec.m.str() + ", s=" + sec.s.str() + ") has no states at N=" +
                      std::to_string(c.n));

  if (!(c.protocol.tol > 0) || c.protocol.max_nodes < c.protocol.start_nodes)
    throw DomainError("--quad-tol must be positive and --quad-max-nodes at least " +
                      std::to_string(c.protocol.start_nodes));
  std::vector<CoefficientTable> tables;
  json quad = nullptr;
  for (auto m : methods) {
    if (m == CoefficientMethod::quadrature) {
      auto q = quadrature_table(c.n, sec, c.params, c.protocol);
      const int flips = align_columns(q.table.values, reference.values);
      quad = {{"nodes", q.nodes}, {"max_delta", q.max_delta}, {"sign_flips", flips}};
      tables.push_back(q.table);
    } else {
      tables.push_back(coefficient_table(c.n, sec, m));
    }
  }
  json devs = json::array();
  for (std::size_t a = 0; a < tables.size(); ++a)
    for (std::size_t b = a + 1; b < tables.size(); ++b)
      devs.push_back({{"a", to_string(methods[a])},
                      {"b", to_string(methods[b])},
                      {"max_abs", (tables[a].values - tables[b].values).cwiseAbs().maxCoeff()}});

  if (c.format == "csv") {
    out << csv_header("coeffs") << "\nmethod,N,N1,N2,j,value\n";
    for (std::size_t t = 0; t < tables.size(); ++t)
      for (int r = 0; r < tables[t].size(); ++r)
        for (int k = 0; k < tables[t].size(); ++k)
          out << to_string(methods[t]) << ',' << c.n << ',' << tables[t].rows[r].N1 << ',' << tables[t].rows[r].N2
              << ',' << tables[t].cols[k].j.str() << ',' << format_double(tables[t].values(r, k)) << '\n';
    for (const auto& d : devs)
      out << "# max_deviation," << d["a"].get<std::string>() << ',' << d["b"].get<std::string>() << ','
          << format_double(d["max_abs"].get<double>()) << '\n';
    return;
  }
  json tj = json::object();
  for (std::size_t t = 0; t < tables.size(); ++t) {
    json rows = json::array(), cols = json::array();
    for (const auto& p : tables[t].rows) rows.push_back({{"N1", p.N1}, {"N2", p.N2}});
    for (const auto& e : tables[t].cols) cols.push_back(e.j.str());
    tj[to_string(methods[t])] = {{"rows", rows}, {"cols", cols}, {"values", matrix_json(tables[t].values)}};
  }
  json results = {{"N", c.n}, {"tables", tj}, {"deviations", devs}};
  if (!quad.is_null()) results["quadrature"] = quad;
  write_json(out, {{"config", params_json(c, &sec)}, {"results", results}, {"checks", json::array()}});
}

void cmd_spheroidal(const RunConfig& c, const SectorParams& sec, std::ostream& out) {
  if (c.n < 0) throw DomainError("--n must be nonnegative");
  std::vector<double> Rs;
  for (const auto& r : split(c.r_list, ',')) Rs.push_back(parse_double("--r-list", r));
  if (Rs.empty()) throw DomainError("--r-list is empty");
  if (sec.n1_max(c.n) < 0)
    throw DomainError("sector (m=" + sec.m.str() + ", s=" + sec.s.str() + ") has no states at N=" +
                      std::to_string(c.n));

  json runs = json::array();
  if (c.format == "csv")
    out << csv_header("spheroidal")
        << "\nR,q,Q,spectrum_delta,residual_u_oracle,residual_v_oracle,residual_u_printed,residual_v_printed,U,V\n";
  for (double R : Rs) {
    const auto sol = solve_spheroidal(c.n, sec, R);
    const auto pol = solve_spheroidal_polar(c.n, sec, R);
    const auto ro = recursion_residual(sol, RecursionSource::oracle_consistent);
    const auto rp = recursion_residual(sol, RecursionSource::printed);
    std::vector<double> delta(sol.size());
    for (int q = 0; q < sol.size(); ++q) delta[q] = std::abs(sol.q_values[q] - pol.q_values[q]);
    if (c.format == "csv") {
      for (int q = 0; q < sol.size(); ++q)
        out << format_double(R) << ',' << q << ',' << format_double(sol.q_values[q]) << ',' << format_double(delta[q])
            << ',' << format_double(ro.u_residual[q]) << ',' << format_double(ro.v_residual[q]) << ','
            << format_double(rp.u_residual[q]) << ',' << format_double(rp.v_residual[q]) << ','
            << join(row_of(sol.U, q)) << ',' << join(row_of(sol.V, q)) << '\n';
    } else {
      runs.push_back({{"R", R},
                      {"d", interfocus_distance_or_null(R, c.params.a())},
                      {"q_values", sol.q_values},
                      {"spectrum_delta", delta},
                      {"U", matrix_json(sol.U)},
                      {"V", matrix_json(sol.V)},
                      {"residual",
                       {{"oracle_consistent", {{"u", ro.u_residual}, {"v", ro.v_residual}}},
                        {"printed",
                         {{"u", rp.u_residual}, {"v", rp.v_residual}, {"undefined_rows", rp.undefined_rows}}}}}});
    }
  }
  if (c.format == "json") {
    json jl = json::array(), n1 = json::array();
    for (const auto& e : list_euler_states(c.n, sec)) jl.push_back(e.j.str());
    for (const auto& p : list_polar_states(c.n, sec)) n1.push_back(p.N1);
    write_json(out, {{"config", params_json(c, &sec)},
                     {"results", {{"N", c.n}, {"j", jl}, {"N1", n1}, {"runs", runs}}},
                     {"checks", json::array()}});
  }
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  VerifyConfig vc;
  vc.suites = split(c.suite, ',');
  vc.quad_tol = c.tol;
  vc.inject_fault = c.inject_fault;
  for (const auto& kv : c.set_tol) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw DomainError("--set-tol expects name=value, got '" + kv + "'");
    vc.overrides[trim(kv.substr(0, eq))] = parse_double("--set-tol", trim(kv.substr(eq + 1)));
  }
  const VerifyReport rep = run_verify(vc);
  const json j = rep.to_json(vc);
  if (!c.report.empty()) {
    std::ofstream f(c.report);
    if (!f) throw DomainError("cannot write report '" + c.report + "'");
    write_json(f, j);
  }
  if (c.format == "json") {
    write_json(out, j);
  } else {
    out << csv_header("verify") << "\nname,criterion,measured,comparison,bound,pass\n";
    for (const auto& ch : rep.checks)
      out << ch.name << ',' << ch.criterion << ',' << format_double(ch.measured) << ',' << (ch.strict ? "<" : "<=")
          << ',' << format_double(ch.bound) << ',' << (ch.pass ? "PASS" : "FAIL") << '\n';
  }
  for (const auto& ch : rep.checks)
    if (!ch.pass) err << "FAIL " << ch.name << ": " << format_double(ch.measured) << " vs bound " << format_double(ch.bound) << '\n';
  return rep.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double singular oscillator in four dimensions: spectra, interbasis coefficients, spheroidal bases"};
  app.name("singosc4");
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig c;
  auto* o_m = app.add_option("--m", c.m, "m as an exact integer or half-integer, e.g. 1/2");
  auto* o_s = app.add_option("--s", c.s, "s as an exact integer or half-integer");
  auto* o_c1 = app.add_option("--c1", c.params.c1, "singular coupling c1 >= 0");
  auto* o_c2 = app.add_option("--c2", c.params.c2, "singular coupling c2 >= 0");
  auto* o_mu = app.add_option("--mu", c.params.mu, "mass");
  auto* o_om = app.add_option("--omega", c.params.omega, "frequency");
  auto* o_hb = app.add_option("--hbar", c.params.hbar, "Planck constant");
  auto* o_fmt = app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* o_out = app.add_option("--output", c.output, "write the artifact here instead of stdout");
  app.add_option("--config", c.config_file, "flat key = value file; flags override it");

  auto* spectrum = app.add_subcommand("spectrum", "energy levels of one sector");
  auto* o_nmax = spectrum->add_option("--n-max", c.n_max, "highest level");

  auto* coeffs = app.add_subcommand("coeffs", "interbasis coefficient tables");
  auto* o_n1 = coeffs->add_option("--n", c.n, "level N")->required();
  auto* o_meth = coeffs->add_option("--methods", c.methods, "comma list of 3f2, cg, quad");
  auto* o_qtol = coeffs->add_option("--quad-tol", c.protocol.tol, "relative convergence tolerance of quadrature");
  auto* o_qmax = coeffs->add_option("--quad-max-nodes", c.protocol.max_nodes, "node cap per dimension");

  auto* spher = app.add_subcommand("spheroidal", "spheroidal eigenproblem for a list of couplings R");
  auto* o_n2 = spher->add_option("--n", c.n, "level N")->required();
  auto* o_rl = spher->add_option("--r-list", c.r_list, "comma list of R >= 0");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  auto* o_suite = verify->add_option("--suite", c.suite, "all, or comma list of c1..c10 / suite titles");
  auto* o_tol = verify->add_option("--tol", c.tol, "bound for the quadrature-table checks");
  auto* o_rep = verify->add_option("--report", c.report, "write the JSON report here");
  verify->add_option("--set-tol", c.set_tol, "override one bound: name=value (repeatable)");
  auto* o_fault = verify->add_option("--inject-fault", c.inject_fault, "perturb a closed-form value (cg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file;
  try {
    if (!c.config_file.empty()) {
      const std::map<std::string, CLI::Option*> keyed = {
          {"m", o_m},         {"s", o_s},       {"c1", o_c1},        {"c2", o_c2},     {"mu", o_mu},
          {"omega", o_om},    {"hbar", o_hb},   {"format", o_fmt},   {"output", o_out}, {"n-max", o_nmax},
          {"n", nullptr},     {"methods", o_meth}, {"r-list", o_rl}, {"suite", o_suite}, {"tol", o_tol},
          {"report", o_rep},  {"inject-fault", o_fault}, {"quad-tol", o_qtol}, {"quad-max-nodes", o_qmax}};
      for (const auto& [k, v] : read_config_file(c.config_file)) {
        const auto it = keyed.find(k);
        if (it == keyed.end()) throw DomainError("unknown config key '" + k + "'");
        if (k == "n") {
          if (!o_n1->count() && !o_n2->count()) c.n = parse_int(k, v);
          continue;
        }
        if (it->second->count()) continue;  // flag given
        if (k == "m") c.m = v;
        else if (k == "s") c.s = v;
        else if (k == "c1") c.params.c1 = parse_double(k, v);
        else if (k == "c2") c.params.c2 = parse_double(k, v);
        else if (k == "mu") c.params.mu = parse_double(k, v);
        else if (k == "omega") c.params.omega = parse_double(k, v);
        else if (k == "hbar") c.params.hbar = parse_double(k, v);
        else if (k == "format") {
          if (v != "csv" && v != "json") throw DomainError("format must be csv or json");
          c.format = v;
        } else if (k == "output") c.output = v;
        else if (k == "n-max") c.n_max = parse_int(k, v);
        else if (k == "methods") c.methods = v;
        else if (k == "r-list") c.r_list = v;
        else if (k == "suite") c.suite = v;
        else if (k == "tol") c.tol = parse_double(k, v);
        else if (k == "report") c.report = v;
        else if (k == "inject-fault") c.inject_fault = v;
        else if (k == "quad-tol") c.protocol.tol = parse_double(k, v);
        else if (k == "quad-max-nodes") c.protocol.max_nodes = parse_int(k, v);
      }
    }

    std::ostream* sink = &out;
    if (!c.output.empty()) {
      file.open(c.output);
      if (!file) throw DomainError("cannot write '" + c.output + "'");
      sink = &file;
    }

    if (verify->parsed()) return cmd_verify(c, *sink, err);

    c.params.validate();
    const auto sec = sector(c.params, HalfInt::parse(c.m), HalfInt::parse(c.s));
    if (spectrum->parsed()) cmd_spectrum(c, sec, *sink);
    else if (coeffs->parsed()) cmd_coeffs(c, sec, *sink);
    else if (spher->parsed()) cmd_spheroidal(c, sec, *sink);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n--- diagnostics ---\n" << e.diagnostics() << "\n--- end diagnostics ---\n";
    return kExitNoConvergence;
  }
}

}  // namespace singosc4
