#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hynet/admissible.hpp"
#include "hynet/augment.hpp"
#include "hynet/fibration.hpp"
#include "hynet/model.hpp"
#include "hynet/partition.hpp"
#include "hynet/polyspec.hpp"
#include "hynet/sim.hpp"
#include "hynet/synchrony.hpp"

namespace {

using namespace hynet;

// Bad invocation (unreadable input path, inconsistent flags): exit code 2.
// Domain failures (invalid structure, unbalanced partition, ...) exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write file: " + path);
  out << text;
}

// One output line per record; fields are ordered. `raw` marks values that are
// JSON literals already (numbers, booleans).
struct Field {
  std::string key;
  std::string value;
  bool raw = false;
};

struct Record {
  std::vector<Field> fields;
  std::string text;  // text-format override; key/value lines when empty
};

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

void emit(const std::string& format, const std::vector<Record>& records,
          const std::string& text_preamble = "", const std::string& text_postamble = "") {
  std::ostream& os = std::cout;
  if (format == "json-lines") {
    for (const auto& r : records) {
      os << "{";
      bool first = true;
      for (const auto& f : r.fields) {
        if (!first) os << ",";
        first = false;
        os << "\"" << json_escape(f.key) << "\":";
        if (f.raw) os << f.value;
        else os << "\"" << json_escape(f.value) << "\"";
      }
      os << "}\n";
    }
  } else if (format == "csv") {
    if (records.empty()) return;
    bool first = true;
    for (const auto& f : records.front().fields) {
      if (!first) os << ",";
      first = false;
      os << csv_escape(f.key);
    }
    os << "\n";
    for (const auto& r : records) {
      first = true;
      for (const auto& f : r.fields) {
        if (!first) os << ",";
        first = false;
        os << csv_escape(f.value);
      }
      os << "\n";
    }
  } else {
    if (!text_preamble.empty()) os << text_preamble << "\n";
    for (const auto& r : records) {
      if (!r.text.empty()) {
        os << r.text << "\n";
      } else {
        for (const auto& f : r.fields) os << f.key << ": " << f.value << "\n";
      }
    }
    if (!text_postamble.empty()) os << text_postamble << "\n";
  }
}

std::string format_signature(const Signature& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

// 1-based image of a permutation, e.g. "2 1 3".
std::string format_sigma(const Perm& sigma) {
  std::string out;
  for (int i = 0; i < sigma.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(sigma(i) + 1);
  }
  return out;
}

std::string format_point(const std::vector<long long>& point) {
  std::string out;
  for (std::size_t c = 0; c < point.size(); ++c) {
    if (c) out += " ";
    out += "Z" + std::to_string(c + 1) + "=" + std::to_string(point[c]);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::map<std::string, ResponseFunction> build_responses(
    const Hypernetwork& n, const std::string& builtin,
    const std::vector<std::string>& polyspecs) {
  if (!builtin.empty() && !polyspecs.empty())
    throw UsageError("choose either --response or --poly, not both");
  if (!builtin.empty()) return builtin_responses(builtin, n);
  if (polyspecs.empty()) throw UsageError("need --response <name> or --poly <vtype>=<polynomial>");
  std::map<std::string, std::vector<Poly>> polys;
  for (const auto& spec : polyspecs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos)
      throw UsageError("--poly expects <vtype>=<polynomial>, got: " + spec);
    std::string vtype = spec.substr(0, eq);
    InputSchema schema = schema_for(n, vtype);
    polys[vtype].push_back(parse_poly(spec.substr(eq + 1), schema));
  }
  std::map<std::string, ResponseFunction> out;
  for (auto& [vtype, ps] : polys) {
    InputSchema schema = schema_for(n, vtype);
    if (static_cast<int>(ps.size()) != schema.self_dim)
      throw UsageError("vertex type " + vtype + " has dimension " +
                       std::to_string(schema.self_dim) + " but got " +
                       std::to_string(ps.size()) + " --poly components");
    out.emplace(vtype, ResponseFunction::from_polys(schema, std::move(ps)));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"dynamical systems on hypernetworks"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text, csv, json-lines")
      ->check(CLI::IsMember({"text", "csv", "json-lines"}));

  auto* c_validate =
      app.add_subcommand("validate", "check a hypernetwork file against the structural axioms");
  std::string validate_file;
  c_validate->add_option("file", validate_file, "hypernetwork file")->required();

  auto* c_balanced = app.add_subcommand("balanced", "decide whether a partition is balanced");
  std::string bal_file, bal_part;
  c_balanced->add_option("file", bal_file, "hypernetwork file")->required();
  c_balanced
      ->add_option("--partition", bal_part, "classes separated by '|', e.g. \"v0 v1 | w0 w1\"")
      ->required();

  auto* c_partitions =
      app.add_subcommand("partitions", "enumerate all balanced partitions, coarsest first");
  std::string parts_file;
  int parts_max = 12;
  c_partitions->add_option("file", parts_file, "hypernetwork file")->required();
  c_partitions->add_option("--max-vertices", parts_max,
                           "refuse exhaustive enumeration above this vertex count");

  auto* c_quotient = app.add_subcommand("quotient", "collapse a balanced partition");
  std::string q_file, q_part, q_out, q_map_out;
  c_quotient->add_option("file", q_file, "hypernetwork file")->required();
  c_quotient->add_option("--partition", q_part, "balanced partition")->required();
  c_quotient->add_option("-o,--output", q_out, "quotient file (default stdout)");
  c_quotient->add_option("--map-out", q_map_out, "write the projection mapfile here");

  auto* c_fibration =
      app.add_subcommand("fibration", "check a vertex/hyperedge map between two hypernetworks");
  std::string f_n, f_np, f_map;
  c_fibration->add_option("network", f_n, "source hypernetwork file")->required();
  c_fibration->add_option("image", f_np, "target hypernetwork file")->required();
  c_fibration
      ->add_option("--map", f_map, "mapfile with lines 'v <id> -> <id>' and 'h <id> -> <id>'")
      ->required();

  auto* c_augment = app.add_subcommand("augment", "attach w0/w1 and all permutation hyperedges");
  std::string a_file, a_nodes, a_out;
  c_augment->add_option("corefile", a_file, "core hypernetwork file")->required();
  c_augment->add_option("--nodes", a_nodes, "ordered core nodes, e.g. v0,v1,v2")->required();
  c_augment->add_option("-o,--output", a_out, "output file (default stdout)");

  auto* c_verdict =
      app.add_subcommand("verdict", "balance, breaking witness and randomized invariance probes");
  std::string v_file, v_part;
  int v_cap = -1;
  std::uint64_t v_seed = 0;
  c_verdict->add_option("file", v_file, "hypernetwork file")->required();
  c_verdict->add_option("--partition", v_part, "partition to judge")->required();
  c_verdict->add_option("--degree-cap", v_cap, "probe degree cap (default k(k+1)/2)");
  c_verdict->add_option("--seed", v_seed, "probe seed");

  auto* c_witness =
      app.add_subcommand("witness", "synchrony-breaking response for an unbalanced partition");
  std::string w_file, w_part;
  c_witness->add_option("file", w_file, "hypernetwork file")->required();
  c_witness->add_option("--partition", w_part, "partition to separate")->required();

  auto* c_simulate = app.add_subcommand("simulate", "integrate one trajectory, CSV trace output");
  std::string s_file, s_builtin, s_out;
  std::vector<std::string> s_polys;
  double s_lambda = 0.0;
  bool s_rk4 = false;
  std::uint64_t s_seed = 0;
  SimConfig s_cfg;
  s_cfg.stride = 10;
  c_simulate->add_option("file", s_file, "hypernetwork file")->required();
  c_simulate->add_option("--response", s_builtin, "builtin response library (example58)");
  c_simulate->add_option("--poly", s_polys,
                         "<vtype>=<polynomial> response, repeatable per component");
  c_simulate->add_option("--lambda", s_lambda, "parameter value");
  c_simulate->add_option("--dt", s_cfg.dt, "Euler step");
  c_simulate->add_option("--t-end", s_cfg.t_end, "integration horizon");
  c_simulate->add_option("--x0", s_cfg.x0, "initial state")->delimiter(',');
  c_simulate->add_option("--stride", s_cfg.stride, "record every stride-th step (0: final only)");
  c_simulate->add_option("--seed", s_seed, "reserved; integration is deterministic");
  c_simulate->add_flag("--rk4", s_rk4, "classical Runge-Kutta instead of forward Euler");
  c_simulate->add_option("-o,--output", s_out, "CSV file (default stdout)");

  auto* c_bifurcate = app.add_subcommand("bifurcate", "parameter sweep, CSV diagram output");
  std::string b_file, b_builtin, b_out;
  std::vector<std::string> b_polys;
  bool b_rk4 = false;
  int b_jobs = 1;
  std::uint64_t b_seed = 0;
  SimConfig b_cfg;
  c_bifurcate->add_option("file", b_file, "hypernetwork file")->required();
  c_bifurcate->add_option("--response", b_builtin, "builtin response library (example58)");
  c_bifurcate->add_option("--poly", b_polys,
                          "<vtype>=<polynomial> response, repeatable per component");
  c_bifurcate->add_option("--dt", b_cfg.dt, "Euler step");
  c_bifurcate->add_option("--t-end", b_cfg.t_end, "integration horizon");
  c_bifurcate->add_option("--x0", b_cfg.x0, "initial state")->delimiter(',');
  c_bifurcate->add_option("--lambda-min", b_cfg.lambda_min, "sweep start");
  c_bifurcate->add_option("--lambda-max", b_cfg.lambda_max, "sweep end");
  c_bifurcate->add_option("--lambda-steps", b_cfg.lambda_steps, "grid size");
  c_bifurcate->add_option("--jobs", b_jobs, "worker threads (result is order-independent)");
  c_bifurcate->add_option("--seed", b_seed, "reserved; the sweep is deterministic");
  c_bifurcate->add_flag("--rk4", b_rk4, "classical Runge-Kutta instead of forward Euler");
  c_bifurcate->add_option("-o,--output", b_out, "CSV file (default stdout)");

  auto* c_slope = app.add_subcommand("slope", "log-log slope of a diagram column difference");
  std::string sl_file, sl_col_a, sl_col_b;
  double sl_min = 0.005, sl_max = 0.03;
  c_slope->add_option("csv", sl_file, "bifurcation diagram CSV")->required();
  c_slope->add_option("--lambda-min", sl_min, "fit window start");
  c_slope->add_option("--lambda-max", sl_max, "fit window end");
  c_slope->add_option("--col-a", sl_col_a, "first column (default: second-to-last state column)");
  c_slope->add_option("--col-b", sl_col_b, "second column (default: last state column)");

  for (auto* sub : {c_validate, c_balanced, c_partitions, c_quotient, c_fibration, c_augment,
                    c_verdict, c_witness, c_simulate, c_bifurcate, c_slope})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*c_validate) {
    Hypernetwork n = parse_unchecked(read_file(validate_file));
    auto vios = validate(n);
    std::string name = n.name.empty() ? "(unnamed)" : n.name;
    if (vios.empty()) {
      Record r;
      r.fields = {{"status", "valid"},
                  {"name", name},
                  {"order", std::to_string(n.order()), true},
                  {"vertices", std::to_string(n.vertices.size()), true},
                  {"hyperedges", std::to_string(n.hyperedges.size()), true}};
      r.text = "valid: " + name + "\norder: " + std::to_string(n.order());
      emit(format, {r});
      return 0;
    }
    std::vector<Record> recs;
    for (const auto& v : vios) {
      Record r;
      r.fields = {{"status", "invalid"},
                  {"name", name},
                  {"condition", std::to_string(v.condition), true},
                  {"message", v.message}};
      r.text = "condition " + std::to_string(v.condition) + ": " + v.message;
      recs.push_back(r);
    }
    emit(format, recs, "invalid: " + name);
    return 1;
  }

  if (*c_balanced) {
    Hypernetwork n = parse(read_file(bal_file));
    Partition p = parse_partition(bal_part);
    BalanceCertificate cert = is_balanced(n, p);
    Record r;
    r.fields = {{"balanced", cert.balanced ? "true" : "false", true}};
    r.text = std::string("balanced: ") + (cert.balanced ? "true" : "false");
    if (!cert.refines) {
      r.fields.push_back({"reason", "partition does not refine vertex types"});
      r.text += "\nreason: partition does not refine vertex types";
    } else if (cert.mismatch) {
      const Mismatch& m = *cert.mismatch;
      std::string detail = "colour " + std::to_string(m.colour) + " etype " + m.etype +
                           " signature " + format_signature(m.sig) + " counts differ between " +
                           m.v1 + " and " + m.v2;
      r.fields.push_back({"mismatch", detail});
      r.text += "\nmismatch: " + detail;
    }
    emit(format, {r});
    return 0;
  }

  if (*c_partitions) {
    Hypernetwork n = parse(read_file(parts_file));
    auto balanced = enumerate_balanced(n, parts_max);
    std::vector<Record> recs;
    for (const auto& p : balanced) {
      Record r;
      std::string f = format_partition(p);
      r.fields = {{"classes", std::to_string(p.classes().size()), true}, {"partition", f}};
      r.text = f;
      recs.push_back(r);
    }
    emit(format, recs);
    return 0;
  }

  if (*c_quotient) {
    Hypernetwork n = parse(read_file(q_file));
    Partition p = parse_partition(q_part);
    QuotientResult res = quotient(n, p);
    write_output(q_out, serialize(res.quotient));
    if (!q_map_out.empty()) write_output(q_map_out, format_mapfile(res.phi));
    return 0;
  }

  if (*c_fibration) {
    Hypernetwork n = parse(read_file(f_n));
    Hypernetwork np = parse(read_file(f_np));
    FibrationMap phi = parse_mapfile(read_file(f_map));
    auto reports = check_fibration(n, np, phi);
    bool all = true;
    std::vector<Record> recs;
    for (const auto& rep : reports) {
      all = all && rep.pass;
      Record r;
      r.fields = {{"condition", std::to_string(rep.condition), true},
                  {"pass", rep.pass ? "true" : "false", true},
                  {"detail", rep.detail}};
      r.text = "condition " + std::to_string(rep.condition) + ": " +
               (rep.pass ? "pass" : "fail (" + rep.detail + ")");
      recs.push_back(r);
    }
    emit(format, recs, "", std::string("fibration: ") + (all ? "true" : "false"));
    return all ? 0 : 1;
  }

  if (*c_augment) {
    AugmentationSpec spec;
    spec.core = parse(read_file(a_file));
    spec.nodes = split(a_nodes, ',');
    Hypernetwork out = augment(spec);
    write_output(a_out, serialize(out));
    return 0;
  }

  if (*c_verdict) {
    Hypernetwork n = parse(read_file(v_file));
    Partition p = parse_partition(v_part);
    RobustnessVerdict verdict = robust_verdict(n, p, v_seed, v_cap);
    Record r;
    r.fields = {{"balanced", verdict.balanced ? "true" : "false", true},
                {"invariant", verdict.invariant_under_low_degree ? "true" : "false", true},
                {"degree-cap", std::to_string(verdict.degree_cap), true}};
    r.text = std::string("balanced: ") + (verdict.balanced ? "true" : "false") +
             "\ninvariant: " + (verdict.invariant_under_low_degree ? "true" : "false") +
             "\ndegree-cap: " + std::to_string(verdict.degree_cap);
    if (verdict.witness) {
      const Witness& w = *verdict.witness;
      std::string detail = "etype " + w.etype + " sigma (" + format_sigma(w.sigma) + ") pair " +
                           w.v1 + " " + w.v2;
      r.fields.push_back({"witness", detail});
      r.text += "\nwitness: " + detail;
    } else {
      r.fields.push_back({"witness", "none"});
      r.text += "\nwitness: none";
    }
    emit(format, {r});
    return 0;
  }

  if (*c_witness) {
    Hypernetwork n = parse(read_file(w_file));
    Partition p = parse_partition(w_part);
    auto w = find_breaking_witness(n, p);
    if (!w) {
      Record r;
      r.fields = {{"witness", "none"}};
      emit(format, {r});
      return 0;
    }
    AdmissibleSystem sys = witness_response(n, w->etype, w->sigma);
    std::string target_vtype;
    for (const auto& h : n.hyperedges)
      if (h.etype == w->etype) {
        target_vtype = n.vertex(h.target).vtype;
        break;
      }
    const ResponseFunction& resp = sys.responses().at(target_vtype);
    std::string polytext = format_poly(resp.polys[0], resp.schema);
    auto restricted = eval_symbolic_on_syn(sys, p);
    int colours = static_cast<int>(p.classes().size());
    auto at_point = [&](const Poly& q) {
      return q.eval<Rat>([&](int var) {
        return var < colours ? Rat(w->point[var]) : Rat(0);
      });
    };
    Rat f1 = at_point(restricted.at(w->v1));
    Rat f2 = at_point(restricted.at(w->v2));
    Record r;
    r.fields = {{"witness", "found"},
                {"etype", w->etype},
                {"sigma", format_sigma(w->sigma)},
                {"polynomial", polytext},
                {"point", format_point(w->point)},
                {"pair", w->v1 + " " + w->v2},
                {"value-" + w->v1, format_rat(f1)},
                {"value-" + w->v2, format_rat(f2)}};
    emit(format, {r});
    return 0;
  }

  if (*c_simulate) {
    Hypernetwork n = parse(read_file(s_file));
    (void)s_seed;
    AdmissibleSystem sys(n, build_responses(n, s_builtin, s_polys));
    Trace tr = s_rk4 ? integrate_rk4(sys, s_lambda, s_cfg) : integrate_euler(sys, s_lambda, s_cfg);
    write_output(s_out, trace_csv(n, tr));
    return 0;
  }

  if (*c_bifurcate) {
    Hypernetwork n = parse(read_file(b_file));
    (void)b_seed;
    AdmissibleSystem sys(n, build_responses(n, b_builtin, b_polys));
    auto rows = sweep(sys, b_cfg, b_jobs, b_rk4);
    write_output(b_out, diagram_csv(n, rows));
    return 0;
  }

  if (*c_slope) {
    std::istringstream in(read_file(sl_file));
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV");
    auto header = split(line, ',');
    if (header.size() < 4 || header.front() != "lambda" || header[header.size() - 2] != "residual")
      throw Error("expected a bifurcation diagram CSV (lambda,...,residual,converged)");
    std::size_t ncols = header.size();
    auto col_index = [&](const std::string& name, std::size_t fallback) -> std::size_t {
      if (name.empty()) return fallback;
      for (std::size_t i = 1; i + 2 < ncols; ++i)
        if (header[i] == name) return i;
      throw UsageError("no state column named " + name);
    };
    std::size_t ia = col_index(sl_col_a, ncols - 4);
    std::size_t ib = col_index(sl_col_b, ncols - 3);
    std::vector<double> lambdas, quantity;
    int lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto cells = split(line, ',');
      if (cells.size() != ncols)
        throw Error("CSV line " + std::to_string(lineno) + " has " +
                    std::to_string(cells.size()) + " columns, expected " + std::to_string(ncols));
      lambdas.push_back(std::stod(cells[0]));
      quantity.push_back(std::fabs(std::stod(cells[ia]) - std::stod(cells[ib])));
    }
    SlopeFit fit = loglog_slope(lambdas, quantity, sl_min, sl_max);
    Record r;
    r.fields = {{"slope", format_double(fit.slope), true},
                {"intercept", format_double(fit.intercept), true},
                {"r2", format_double(fit.r2), true},
                {"points", std::to_string(fit.npoints), true},
                {"quantity", "|" + header[ia] + " - " + header[ib] + "|"}};
    emit(format, {r});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
