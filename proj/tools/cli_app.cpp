#include "cli_app.hpp"

#include "sll/eep.hpp"
#include "sll/fixtures.hpp"
#include "sll/graph_model.hpp"
#include "sll/kron.hpp"
#include "sll/pinv_closure.hpp"
#include "sll/report.hpp"
#include "sll/resistance.hpp"
#include "sll/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace sll::cli {

namespace {

using json = Json;

struct Options {
  std::string input;
  std::string input_format = "auto";
  std::string format = "json";
  std::string output;
  double tol = Tolerances{}.zero;
  double normal_tol = Tolerances{}.normal;
  double gamma = 1.0;
  std::string boundary = "auto-negative";
  std::string t_grid;
  int k_max = 1000;
  int cycle_n = 0;
  std::string r_output;
  bool list = false;
};

// CLI-level failure with an exit code and message; nothing is printed on stdout.
struct Failure {
  int code;
  std::string message;
};

Tolerances tolerances(const Options& o) {
  Tolerances t;
  t.zero = o.tol;
  t.normal = o.normal_tol;
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInputError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

LaplacianMatrix load_laplacian(const Options& o) {
  if (o.input.empty()) throw Failure{kInputError, "an input file is required"};
  const std::string text = read_file(o.input);
  std::string fmt = o.input_format;
  if (fmt == "auto") {
    if (ends_with(o.input, ".json")) fmt = "json";
    else if (ends_with(o.input, ".mat") || ends_with(o.input, ".matrix")) fmt = "matrix";
    else fmt = "edges";
  }
  const Tolerances tol = tolerances(o);
  if (fmt == "json") return laplacian(parse_graph_json(text), tol);
  if (fmt == "edges") return laplacian(parse_graph(text), tol);
  const Matrix m = parse_matrix(text);
  require_square(m, "input");
  try {
    return LaplacianMatrix::from_matrix(m, tol);
  } catch (const Error& e) {
    // a matrix without zero row sums is malformed input, not a failed precondition
    if (e.kind() == ErrorKind::PreconditionViolated) throw Error(ErrorKind::MalformedLine, e.what());
    throw;
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size()) {
      throw Failure{kInputError, "bad --t-grid entry '" + item + "'"};
    }
    grid.push_back(v);
  }
  if (grid.empty()) throw Failure{kInputError, "--t-grid is empty"};
  return grid;
}

NodePartition parse_boundary(const Options& o, const Matrix& l) {
  if (o.boundary == "auto-negative") return negative_incident_boundary(l, o.tol);
  std::vector<int> alpha;
  std::stringstream ss(o.boundary);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size()) {
      throw Failure{kInputError, "bad --boundary entry '" + item + "'"};
    }
    alpha.push_back(v);
  }
  return NodePartition(static_cast<int>(l.rows()), std::move(alpha));
}

json document(std::string_view command) {
  return {{"schema", kSchemaVersion}, {"command", std::string(command)}};
}

json cmd_analyze(const Options& o) {
  const LaplacianMatrix lap = load_laplacian(o);
  const Matrix& l = lap;
  const Tolerances tol = tolerances(o);
  json doc = document("analyze");
  doc["n"] = lap.size();
  doc["flags"] = to_json(lap.flags());
  doc["flags"]["normal"] = is_normal(l, tol.normal);
  doc["flags"]["nonnegative"] = is_nonnegative_graph(l);
  doc["spectrum"] = to_json(spectrum(l, tol.zero));
  doc["sym_spectrum"] = to_json(Vector(symmetric_eigenvalues(symmetric_part(l))));
  doc["corank"] = corank(l, tol.zero);
  doc["marginally_stable"] = is_marginally_stable_neg(l, tol.zero);

  EEPOptions opts{.zero_rel = tol.zero, .witness = true};
  if (!o.t_grid.empty()) opts.t_grid = parse_grid(o.t_grid);
  const EEPCertificate cert = certify_eep(l, opts);
  doc["eep"] = to_json(cert);
  const Matrix b = cert.d_used * Matrix::Identity(l.rows(), l.cols()) - l;
  const auto k0 = eventual_positivity_witness(b, o.k_max);
  doc["power_witness"] = {{"k_max", o.k_max}, {"k0", k0 ? json(*k0) : json(nullptr)}};
  return doc;
}

json cmd_pinv(const Options& o) {
  const LaplacianMatrix lap = load_laplacian(o);
  const Matrix& l = lap;
  const Tolerances tol = tolerances(o);
  std::vector<std::string> clauses;
  if (!is_weight_balanced(l, tol.zero)) {
    const double col = l.colwise().sum().cwiseAbs().maxCoeff();
    clauses.push_back("not weight balanced (max |column sum| = " + std::to_string(col) + ")");
  }
  if (const int k = corank(l, tol.zero); k != 1) clauses.push_back("corank " + std::to_string(k) + ", need 1");
  if (!clauses.empty()) {
    std::string msg = "pinv precondition failed:";
    for (const auto& c : clauses) msg += "\n  - " + c;
    throw Failure{kPreconditionError, msg};
  }
  if (o.gamma == 0.0) throw Failure{kInputError, "--gamma must be nonzero"};

  ClosureReport closure = verify_closure(l, tol);
  const Matrix shifted = pinv_shifted(l, o.gamma, tol);
  const double xcheck = (shifted - closure.l_dagger).norm() / closure.l_dagger.norm();
  if (!(xcheck <= tol.xcheck)) {
    throw Error(ErrorKind::CrossCheckFailed, "gamma-shifted pseudoinverse disagrees with the SVD route");
  }
  json doc = document("pinv");
  doc["n"] = lap.size();
  doc["gamma"] = o.gamma;
  doc["gamma_cross_check"] = xcheck;
  closure.l_dagger = shifted;
  doc["closure"] = to_json(closure);
  return doc;
}

json cmd_kron(const Options& o) {
  const LaplacianMatrix lap = load_laplacian(o);
  const Matrix& l = lap;
  const Tolerances tol = tolerances(o);
  const NodePartition p = parse_boundary(o, l);
  const KronResult result = kron_reduce(l, p, tol);
  json doc = document("kron");
  doc["n"] = lap.size();
  doc["boundary_spec"] = o.boundary;
  doc["reduction"] = to_json(result);
  doc["theorem"] = to_json(verify_kron_theorem(l, p, tol));
  const double drop = scaled(tol.zero, result.l_reduced);
  json edges = json::array();
  for (const Edge& e : reduced_graph(result, drop).sorted_edges()) edges.push_back({e.src, e.dst, e.weight});
  doc["reduced_edges"] = std::move(edges);
  return doc;
}

json cmd_resistance(const Options& o) {
  const LaplacianMatrix lap = load_laplacian(o);
  const ResistanceReport report = effective_resistance(lap, tolerances(o));
  if (!o.r_output.empty()) {
    std::ofstream out(o.r_output, std::ios::binary);
    out << serialize_matrix(report.r_matrix);
    if (!out) throw Failure{kInputError, "cannot write " + o.r_output};
  }
  json doc = document("resistance");
  doc["n"] = lap.size();
  doc["resistance"] = to_json(report);
  return doc;
}

json cmd_cycle(const Options& o) {
  const int n = o.cycle_n;
  const Matrix l = laplacian(directed_cycle(n)).entries();
  const Tolerances tol = tolerances(o);
  const ResistanceReport report = effective_resistance(l, tol);
  const RtotKfGap gap = rtot_kf_gap(l, tol);
  json doc = document("cycle");
  doc["n"] = n;
  doc["spectrum"] = to_json(spectrum(l, tol.zero));
  doc["r_tot"] = report.r_tot;
  doc["k_f_lyapunov"] = report.k_f_lyapunov ? json(*report.k_f_lyapunov) : json(nullptr);
  doc["k_f_spectral"] = report.k_f_spectral ? json(*report.k_f_spectral) : json(nullptr);
  doc["gap"] = gap.gap;
  doc["closed_form"] = {{"r_tot", n * (n - 1) / 2.0}, {"k_f", n * (static_cast<double>(n) * n - 1) / 6.0}};
  return doc;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

bool is_number_row(const json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const json& x) {
           return x.is_number() || x.is_null();
         });
}

std::string scalar_text(const json& j) {
  if (j.is_null()) return "-";
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return format_number(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void render_text(const json& j, const std::string& indent, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    out << indent << it.key() << ':';
    if (v.is_object()) {
      out << '\n';
      render_text(v, indent + "  ", out);
    } else if (is_number_row(v)) {
      for (const json& x : v) out << ' ' << scalar_text(x);
      out << '\n';
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << '\n';
      for (const json& item : v) {
        out << indent << "  -";
        for (auto f = item.begin(); f != item.end(); ++f) out << ' ' << f.key() << '=' << scalar_text(f.value());
        out << '\n';
      }
    } else if (v.is_array()) {
      out << '\n';
      for (const json& row : v) {
        out << indent << "  ";
        if (row.is_array()) {
          for (std::size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << scalar_text(row[k]);
        } else {
          out << scalar_text(row);
        }
        out << '\n';
      }
    } else {
      out << ' ' << scalar_text(v) << '\n';
    }
  }
}

std::string render(const json& doc, const std::string& format) {
  if (format == "json") return doc.dump(2) + "\n";
  std::ostringstream os;
  render_text(doc, "", os);
  return os.str();
}

int verify_paper(const Options& o, std::string& text) {
  std::ostringstream os;
  const auto checks = reference_checks();
  if (o.list) {
    for (const auto& c : checks) os << c.name << '\n';
    text = os.str();
    return kOk;
  }
  const auto results = run_reference_checks(reference_fixtures());
  std::size_t failed = 0;
  if (o.format == "json") {
    json doc = document("verify-paper");
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      failed += !r.passed;
    }
    doc["checks"] = std::move(arr);
    doc["total"] = results.size();
    doc["failed"] = failed;
    os << doc.dump(2) << '\n';
  } else {
    for (const auto& r : results) {
      os << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
      failed += !r.passed;
    }
    os << results.size() - failed << '/' << results.size() << " checks passed\n";
  }
  text = os.str();
  return failed == 0 ? kOk : kRegressionFailed;
}

int exit_code_for(const Error& e) {
  switch (category(e.kind())) {
    case ErrorCategory::Input: return kInputError;
    case ErrorCategory::Numerical: return kNumericalError;
    case ErrorCategory::Precondition: return kPreconditionError;
  }
  return kNumericalError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signed-digraph Laplacian analysis", "sll"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub, bool needs_input) {
    if (needs_input) {
      sub->add_option("input", o.input, "Graph file")->required();
      sub->add_option("--input-format", o.input_format, "edges, matrix, json or auto (by extension)")
          ->check(CLI::IsMember({"auto", "edges", "matrix", "json"}));
    }
    sub->add_option("--tol", o.tol, "Relative zero tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--normal-tol", o.normal_tol, "Relative normality tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", o.output, "Write the report to this file");
  };

  auto* analyze = app.add_subcommand("analyze", "Structural flags, spectrum and EEP certificate");
  add_common(analyze, true);
  analyze->add_option("--t-grid", o.t_grid, "Comma-separated ascending times for the exp(-Lt) witness");
  analyze->add_option("--k-max", o.k_max, "Largest power for the eventual-positivity witness")
      ->check(CLI::Range(1, 100000));

  auto* pinv = app.add_subcommand("pinv", "Pseudoinverse and closure checks");
  add_common(pinv, true);
  pinv->add_option("--gamma", o.gamma, "Shift used in (L + gamma J)^-1 - J/gamma");

  auto* kron = app.add_subcommand("kron", "Kron reduction onto a boundary set");
  add_common(kron, true);
  kron->add_option("--boundary", o.boundary, "Comma-separated boundary nodes or auto-negative");

  auto* resistance = app.add_subcommand("resistance", "Effective resistance and Kirchhoff index");
  add_common(resistance, true);
  resistance->add_option("--r-output", o.r_output, "Write R as a matrix file");

  auto* cycle = app.add_subcommand("cycle", "Directed cycle closed forms");
  add_common(cycle, false);
  cycle->add_option("--n", o.cycle_n, "Cycle length")->required()->check(CLI::Range(3, 2000));

  auto* verify = app.add_subcommand("verify-paper", "Regression checks over the embedded reference matrices");
  verify->add_flag("--list", o.list, "List check names without running them");
  verify->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  o.format = "json";

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (verify->parsed() && !verify->count("--format")) o.format = "text";

  std::string text;
  int code = kOk;
  try {
    if (verify->parsed()) {
      code = verify_paper(o, text);
    } else {
      json doc;
      if (analyze->parsed()) doc = cmd_analyze(o);
      else if (pinv->parsed()) doc = cmd_pinv(o);
      else if (kron->parsed()) doc = cmd_kron(o);
      else if (resistance->parsed()) doc = cmd_resistance(o);
      else doc = cmd_cycle(o);
      text = render(doc, o.format);
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kNumericalError;
  }

  if (!o.output.empty()) {
    std::ofstream file(o.output, std::ios::binary);
    file << text;
    if (!file) {
      err << "error: cannot write " << o.output << '\n';
      return kInputError;
    }
  } else {
    out << text;
  }
  return code;
}

}  // namespace sll::cli
