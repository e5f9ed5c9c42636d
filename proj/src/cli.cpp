#include "oshn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oshn/oracle.hpp"
#include "oshn/presets.hpp"

namespace oshn {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void config_error(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

Rational parse_rat_field(const json& v, const std::string& origin, const std::string& field) {
  std::string s;
  if (v.is_number_integer()) {
    s = std::to_string(v.get<long long>());
  } else if (v.is_string()) {
    s = v.get<std::string>();
  } else {
    config_error(origin, field + ": expected a rational string \"p/q\" or an integer");
  }
  auto r = parse_rational(s);
  if (!r) config_error(origin, field + ": malformed rational '" + s + "'");
  return *r;
}

std::vector<Rational> parse_rat_list(const json& v, const std::string& origin,
                                     const std::string& field) {
  if (!v.is_array()) config_error(origin, field + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_rat_field(v[i], origin, field + "[" + std::to_string(i) + "]"));
  return out;
}

std::map<std::string, Rational> parse_params(const json& j, const std::string& origin) {
  std::map<std::string, Rational> params;
  if (!j.contains("params")) return params;
  for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
    params[it.key()] = parse_rat_field(it.value(), origin, "model.params." + it.key());
  return params;
}

// Conservative dependency bound: the z-coefficients of H_{g,n} to total
// degree d depend on c_k with k <= d + (2g-2+n) and s_k with k <= d.
int psi_order_needed(const std::vector<TaskSpec>& tasks) {
  int need = 1;
  for (const auto& t : tasks) need = std::max(need, t.order + std::max(0, 2 * t.g - 2 + t.n));
  return need;
}

int y_order_needed(const std::vector<TaskSpec>& tasks) {
  int need = 1;
  for (const auto& t : tasks) need = std::max(need, t.order);
  return need;
}

std::string format_monomial(const Exps& e, int n) {
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    if (e[i] == 0) continue;
    if (any) os << " ";
    any = true;
    if (n == 1)
      os << "z";
    else
      os << "z" << (i + 1);
    if (e[i] != 1) os << "^" << e[i];
  }
  if (!any) os << "1";
  return os.str();
}

std::string mu_string(const std::vector<int>& mu) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < mu.size(); ++i) os << (i ? "," : "") << mu[i];
  os << ")";
  return os.str();
}

}  // namespace

std::vector<std::pair<std::string, std::string>> coefficient_table(const LaurentSeries& h, int n) {
  std::vector<std::pair<Exps, Rational>> items(h.terms().begin(), h.terms().end());
  std::stable_sort(items.begin(), items.end(), [n](const auto& a, const auto& b) {
    long ta = 0, tb = 0;
    for (int i = 0; i < n; ++i) {
      ta += a.first[i];
      tb += b.first[i];
    }
    if (ta != tb) return ta < tb;
    return a.first < b.first;
  });
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(items.size());
  for (const auto& [e, c] : items) out.emplace_back(format_monomial(e, n), rat_to_string(c));
  return out;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    config_error(origin, "line " + std::to_string(line_of_offset(text, err.byte)) +
                             ": JSON parse error: " + err.what());
  }
  RunConfig cfg;
  if (!j.is_object()) config_error(origin, "top level must be an object");
  if (!j.contains("model")) config_error(origin, "missing 'model'");
  const json& jm = j["model"];

  if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
  if (cfg.mode != "compute" && cfg.mode != "oracle" && cfg.mode != "compare" &&
      cfg.mode != "table")
    config_error(origin, "mode must be one of compute|oracle|compare|table");

  if (j.contains("tasks")) {
    if (!j["tasks"].is_array()) config_error(origin, "'tasks' must be an array");
    for (const auto& jt : j["tasks"]) {
      TaskSpec t;
      if (!jt.contains("g") || !jt.contains("n") || !jt.contains("order"))
        config_error(origin, "each task needs g, n, order");
      t.g = jt["g"].get<int>();
      t.n = jt["n"].get<int>();
      t.order = jt["order"].get<int>();
      if (t.g < 0 || t.n < 1 || t.order < 1)
        config_error(origin, "task requires g >= 0, n >= 1, order >= 1");
      cfg.tasks.push_back(t);
    }
  }

  if (j.contains("table")) {
    const json& jt = j["table"];
    if (jt.contains("mu")) {
      for (const auto& row : jt["mu"]) {
        std::vector<int> mu;
        for (const auto& v : row) mu.push_back(v.get<int>());
        if (mu.empty()) config_error(origin, "table.mu rows must be nonempty");
        for (int m : mu)
          if (m < 1) config_error(origin, "table.mu parts must be >= 1");
        cfg.table_mu.push_back(mu);
      }
    }
    cfg.table_max_weight = jt.value("max_weight", 0);
    cfg.table_g_max = jt.value("g_max", 0);
  }
  if (cfg.mode == "table" && cfg.table_mu.empty() && cfg.table_max_weight < 1)
    config_error(origin, "table mode needs table.mu or table.max_weight");
  if (cfg.mode != "table" && cfg.tasks.empty())
    config_error(origin, "no tasks given");

  // Model: explicit lists take precedence, otherwise a named preset.
  auto params = parse_params(jm, origin);
  std::ostringstream desc;
  int psi_need = psi_order_needed(cfg.tasks);
  if (cfg.mode == "table") {
    int w = cfg.table_max_weight;
    for (const auto& mu : cfg.table_mu) {
      int s = 0;
      for (int m : mu) s += m;
      w = std::max(w, s);
    }
    psi_need = std::max(psi_need, w + std::max(0, 2 * cfg.table_g_max - 2 + 1));
  }
  if (jm.contains("psi")) {
    cfg.model.psi = parse_rat_list(jm["psi"], origin, "model.psi");
    desc << "psi=[explicit " << cfg.model.psi.size() << " coeffs]";
    if (static_cast<int>(cfg.model.psi.size()) < psi_need)
      std::cerr << "note: supplied psi coefficients stop at order " << cfg.model.psi.size()
                << "; orders up to " << psi_need
                << " could matter for the requested tasks (missing ones are treated as 0)\n";
  } else if (jm.contains("preset")) {
    std::string name = jm["preset"].get<std::string>();
    if (!is_psi_preset(name)) config_error(origin, "unknown preset '" + name + "'");
    cfg.model.psi = psi_preset(name, psi_need, params);
    desc << "preset=" << name;
  } else {
    config_error(origin, "model needs 'preset' or 'psi'");
  }

  int y_need = std::max(y_order_needed(cfg.tasks), cfg.mode == "table" ? psi_need : 1);
  if (jm.contains("y")) {
    const json& jy = jm["y"];
    if (jy.is_array()) {
      cfg.model.y = parse_rat_list(jy, origin, "model.y");
      desc << ", y=[explicit " << cfg.model.y.size() << " coeffs]";
    } else if (jy.is_object() && jy.contains("preset")) {
      std::string yname = jy["preset"].get<std::string>();
      auto yparams = params;
      if (jy.contains("q")) yparams["q"] = parse_rat_field(jy["q"], origin, "model.y.q");
      cfg.model.y = y_preset(yname, y_need, yparams);
      desc << ", y=" << yname;
    } else {
      config_error(origin, "model.y must be a coefficient array or {preset: ...}");
    }
  } else {
    cfg.model.y = y_preset("simple", y_need, {});
    desc << ", y=simple";
  }
  cfg.model_desc = desc.str();

  if (j.contains("output")) {
    cfg.out_path = j["output"].value("path", "");
    cfg.format = j["output"].value("format", "json");
  }
  if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
  if (cfg.format != "json" && cfg.format != "csv")
    config_error(origin, "format must be json or csv");
  if (cfg.threads < 1) config_error(origin, "threads must be >= 1");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

Report run(const RunConfig& config) {
  Report rep;
  rep.mode = config.mode;
  rep.model_desc = config.model_desc;

  if (config.mode == "table") {
    int h_top = std::max(0, 2 * config.table_g_max - 2 + 1);
    int w = config.table_max_weight;
    std::vector<std::vector<int>> mus = config.table_mu;
    if (mus.empty()) {
      for (const auto& lambda : partitions_up_to(config.table_max_weight))
        if (lambda.length() >= 1) mus.push_back(lambda.parts);
    }
    for (const auto& mu : mus) {
      int s = 0;
      for (int m : mu) s += m;
      w = std::max(w, s);
      h_top = std::max(h_top, 2 * config.table_g_max - 2 + static_cast<int>(mu.size()));
    }
    Oracle oracle(config.model, w, h_top);
    for (const auto& mu : mus)
      for (int g = 0; g <= config.table_g_max; ++g)
        rep.rows.push_back({g, mu, rat_to_string(oracle.hurwitz(g, mu))});
    return rep;
  }

  // Window feasibility is checked for the whole batch before any computation.
  for (const auto& t : config.tasks) make_task_context(t);

  for (const auto& t : config.tasks) {
    TaskResult res;
    res.task = t;
    if (config.mode == "compute" || config.mode == "compare") {
      NPointComputer comp(config.model, t);
      LaurentSeries h = comp.compute(config.threads);
      res.coefficients = coefficient_table(h, t.n);
      if (config.mode == "compare") {
        Oracle oracle(config.model, t.order, std::max(0, 2 * t.g - 2 + t.n));
        LaurentSeries ho = oracle.npoint(t.g, t.n, comp.cache(), t.order);
        if (h == ho) {
          long slots = 0;
          for (const auto& [e, c] : h.terms()) (void)e, ++slots;
          res.verdict = "MATCH (" + std::to_string(slots) + " coefficients)";
        } else {
          res.ok = false;
          LaurentSeries diff = h - ho;
          auto first = diff.terms().begin();
          res.verdict = "MISMATCH at " + format_monomial(first->first, t.n) + ": formula " +
                        rat_to_string(h.coefficient(first->first)) + " vs oracle " +
                        rat_to_string(ho.coefficient(first->first));
          rep.all_ok = false;
        }
      }
      for (const auto& w : comp.cache().drain_warnings()) rep.warnings.push_back(w);
    } else {  // oracle mode
      ContextPtr ctx = make_task_context(t);
      ModelCache cache(config.model, ctx, /*rmax=*/-1, /*kmax=*/2);
      Oracle oracle(config.model, t.order, std::max(0, 2 * t.g - 2 + t.n));
      LaurentSeries h = oracle.npoint(t.g, t.n, cache, t.order);
      res.coefficients = coefficient_table(h, t.n);
    }
    rep.tasks.push_back(std::move(res));
  }
  return rep;
}

void emit(const Report& report, std::ostream& os, const std::string& format) {
  if (format == "csv") {
    for (const auto& t : report.tasks) {
      for (const auto& [mono, val] : t.coefficients)
        os << "g=" << t.task.g << ",n=" << t.task.n << "," << mono << "," << val << "\n";
      if (!t.verdict.empty())
        os << "verdict,g=" << t.task.g << ",n=" << t.task.n << ",\"" << t.verdict << "\"\n";
    }
    for (const auto& r : report.rows) {
      os << "g=" << r.g << ",mu=";
      for (std::size_t i = 0; i < r.mu.size(); ++i) os << (i ? "+" : "") << r.mu[i];
      os << "," << r.value << "\n";
    }
    return;
  }
  json j;
  j["schema_version"] = 1;
  j["mode"] = report.mode;
  j["model"] = report.model_desc;
  j["tasks"] = json::array();
  for (const auto& t : report.tasks) {
    json jt;
    jt["g"] = t.task.g;
    jt["n"] = t.task.n;
    jt["order"] = t.task.order;
    json coeffs = json::object();
    for (const auto& [mono, val] : t.coefficients) coeffs[mono] = val;
    jt["coefficients"] = coeffs;
    if (!t.verdict.empty()) jt["verdict"] = t.verdict;
    j["tasks"].push_back(jt);
  }
  if (!report.rows.empty()) {
    j["table"] = json::array();
    for (const auto& r : report.rows) {
      json jr;
      jr["g"] = r.g;
      jr["mu"] = r.mu;
      jr["value"] = r.value;
      j["table"].push_back(jr);
    }
  }
  if (!report.warnings.empty()) j["warnings"] = report.warnings;
  if (report.mode == "compare") j["verdicts"] = report.all_ok ? "ALL MATCH" : "MISMATCH";
  os << j.dump(2) << "\n";
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Exact n-point functions of weighted double Hurwitz numbers, two ways"};
  app.require_subcommand(1);

  std::string config_path, preset, out_path, format = "json", mu_arg;
  int g = -1, n = -1, order = 0, threads = 1, gmax = 0;

  auto add_common = [&](CLI::App* sub, bool with_tasks) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--preset", preset, "model preset (usual|monotone|strictly-monotone|hypermaps|bms)");
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--format", format, "json|csv");
    sub->add_option("--threads", threads, "worker threads for graph sums");
    if (with_tasks) {
      sub->add_option("--g", g, "genus");
      sub->add_option("--n", n, "number of points");
      sub->add_option("--order", order, "z truncation order");
    }
  };
  CLI::App* c_compute = app.add_subcommand("compute", "closed-formula coefficient tables");
  CLI::App* c_oracle = app.add_subcommand("oracle", "Schur-expansion coefficient tables");
  CLI::App* c_compare = app.add_subcommand("compare", "both routes, verdict per task");
  CLI::App* c_table = app.add_subcommand("table", "Hurwitz numbers h_{g,mu} from the oracle");
  add_common(c_compute, true);
  add_common(c_oracle, true);
  add_common(c_compare, true);
  add_common(c_table, false);
  c_table->add_option("--mu", mu_arg, "comma-separated profile, e.g. 2,1,1");
  c_table->add_option("--gmax", gmax, "maximal genus");
  c_table->add_option("--order", order, "tabulate all |mu| <= order when --mu is absent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    RunConfig cfg;
    std::string mode = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) {
      cfg = load_config(config_path);
      cfg.mode = mode;
    } else {
      json j;
      j["mode"] = mode;
      if (preset.empty()) preset = "usual";
      j["model"] = {{"preset", preset}};
      if (mode == "table") {
        json jt = json::object();
        if (!mu_arg.empty()) {
          std::vector<int> mu;
          std::stringstream ss(mu_arg);
          for (std::string part; std::getline(ss, part, ',');) mu.push_back(std::stoi(part));
          jt["mu"] = json::array({mu});
        } else {
          jt["max_weight"] = order > 0 ? order : 4;
        }
        jt["g_max"] = gmax;
        j["table"] = jt;
      } else {
        if (g < 0 || n < 1 || order < 1)
          throw std::runtime_error("need --g, --n, --order (or --config)");
        j["tasks"] = json::array({{{"g", g}, {"n", n}, {"order", order}}});
      }
      cfg = parse_config(j.dump(), "<args>");
    }
    if (threads > 1) cfg.threads = threads;
    if (!out_path.empty()) cfg.out_path = out_path;
    if (format != "json") cfg.format = format;

    Report rep = run(cfg);
    if (!cfg.out_path.empty()) {
      std::ofstream f(cfg.out_path);
      if (!f) throw std::runtime_error(cfg.out_path + ": cannot open for writing");
      emit(rep, f, cfg.format);
    } else {
      emit(rep, std::cout, cfg.format);
    }
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    return rep.all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace oshn
