#include "bohrkit/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "bohrkit/errors.hpp"
#include "bohrkit/extremal.hpp"
#include "bohrkit/parallel.hpp"
#include "bohrkit/radii.hpp"

namespace bohrkit::cli {

namespace {

using nlohmann::ordered_json;

// Raised when a verification finished but its mathematical assertion failed.
struct AssertionFailure {
  ordered_json report;
};

struct OutputFailure {
  std::string path;
};

ordered_json radius_json(const RadiusResult& r) {
  return {{"radius", r.value},
          {"residual", r.residual},
          {"series_error", r.series_error},
          {"bracket", {r.bracket_lo, r.bracket_hi}},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

void emit_json(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << '\n'; }

ordered_json with_header(const std::string& kind, ordered_json body) {
  ordered_json doc;
  doc["tool"] = "bohrkit";
  doc["version"] = kVersion;
  doc["command"] = kind;
  for (auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

// radius ----------------------------------------------------------------------

struct RadiusArgs {
  double gamma = 0.0;
  double beta = 1.0;
  int m = 0;
  double tol = kRadiusTolerance;
};

int radius_command(const std::string& equation, const RadiusArgs& a, std::ostream& out) {
  RadiusResult result;
  ordered_json params;
  if (equation == "cesaro") {
    params = {{"gamma", a.gamma}};
    result = cesaro_radius(DomainGamma(a.gamma), a.tol);
  } else if (equation == "bernardi") {
    params = {{"gamma", a.gamma}, {"beta", a.beta}};
    result = bernardi_radius(DomainGamma(a.gamma), a.beta, a.tol);
  } else {
    params = {{"beta", a.beta}, {"m", a.m}};
    result = bernardi_radius_classic(a.beta, a.m, a.tol);
  }
  params["tol"] = a.tol;
  ordered_json body = {{"equation", equation}, {"parameters", params}};
  const auto fields = radius_json(result);
  for (const auto& [k, v] : fields.items()) body[k] = v;
  emit_json(out, with_header("radius", body));
  return result.converged ? kOk : kNumerical;
}

// sweep -----------------------------------------------------------------------

struct SweepArgs {
  std::string op = "cesaro";
  std::string parameter = "gamma";
  std::string grid;
  double gamma = 0.0;
  double beta = 1.0;
  int m = 0;
  std::string format = "csv";
  std::string out_path;
  double tol = kRadiusTolerance;
};

RadiusResult sweep_point(const SweepArgs& a, double x) {
  const double gamma = a.parameter == "gamma" ? x : a.gamma;
  const double beta = a.parameter == "beta" ? x : a.beta;
  if (a.op == "cesaro") return cesaro_radius(DomainGamma(gamma), a.tol);
  if (a.op == "bernardi") return bernardi_radius(DomainGamma(gamma), beta, a.tol);
  return bernardi_radius_classic(beta, a.m, a.tol);
}

int sweep_command(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  const auto grid = parse_grid(a.grid);
  if (grid.empty()) {
    err << "error: sweep grid must not be empty\n";
    return kUsage;
  }
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    err << "error: sweep grid must be strictly increasing\n";
    return kUsage;
  }
  if (a.op == "cesaro" && a.parameter != "gamma") {
    err << "error: the cesaro radius depends on gamma only\n";
    return kUsage;
  }
  if (a.op == "bernardi-classic" && a.parameter != "beta") {
    err << "error: the bernardi-classic radius is swept over beta\n";
    return kUsage;
  }
  // Validate the whole grid before any work.
  for (const double x : grid) {
    if (a.parameter == "gamma") DomainGamma{x};
    if (a.parameter == "beta" && a.op == "bernardi" && !(x > 0.0))
      throw DomainError("beta must be positive");
  }

  const auto rows = parallel_map(grid.size(), [&](std::size_t i) { return sweep_point(a, grid[i]); });

  std::ostringstream table;
  if (a.format == "csv") {
    table << csv_field(a.parameter) << ",radius,residual,iterations\r\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      table << format_number(grid[i]) << ',' << format_number(rows[i].value) << ','
            << format_number(rows[i].residual) << ',' << rows[i].iterations << "\r\n";
    }
  } else {
    ordered_json doc = ordered_json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      doc.push_back({{a.parameter, grid[i]},
                     {"radius", rows[i].value},
                     {"residual", rows[i].residual},
                     {"iterations", rows[i].iterations}});
    }
    table << doc.dump(2) << '\n';
  }

  if (a.out_path.empty()) {
    out << table.str();
  } else {
    std::ofstream file(a.out_path, std::ios::binary);
    if (!file || !(file << table.str()) || !file.flush()) throw OutputFailure{a.out_path};
  }
  const bool all_converged =
      std::all_of(rows.begin(), rows.end(), [](const RadiusResult& r) { return r.converged; });
  return all_converged ? kOk : kNumerical;
}

// verify ----------------------------------------------------------------------

struct VerifyArgs {
  double gamma = 0.0;
  std::optional<double> beta;
  double r = 0.0;
  int samples = 1000;
  std::uint64_t seed = 0;
  int degree_max = 8;
  int order = 64;
  std::string op = "cesaro";
  std::string a_list;
};

std::vector<double> ladder_or(const std::string& text, std::vector<double> fallback) {
  return text.empty() ? fallback : parse_grid(text);
}

int verify_lemma1(const VerifyArgs& a, std::ostream& out) {
  const auto report = lemma1_check(DomainGamma(a.gamma), a.samples, a.degree_max, a.order, a.seed);
  constexpr double limit = 1.0 + 1e-9;
  const bool pass = report.max_ratio <= limit;
  ordered_json body = {
      {"check", "lemma1"},
      {"parameters",
       {{"gamma", a.gamma}, {"samples", a.samples}, {"seed", a.seed},
        {"degree_max", a.degree_max}, {"order", a.order}}},
      {"max_ratio", report.max_ratio},
      {"limit", limit},
      {"skipped", report.skipped},
      {"worst_index", report.worst_index},
      {"pass", pass}};
  if (report.worst_spec)
    body["worst_spec"] = {{"degree", report.worst_spec->degree}, {"seed", report.worst_spec->seed}};
  auto doc = with_header("verify", body);
  if (!pass) throw AssertionFailure{doc};
  emit_json(out, doc);
  return kOk;
}

int verify_sharpness(const VerifyArgs& a, std::ostream& out) {
  const auto kind = operator_kind_from_string(a.op);
  const auto ladder = ladder_or(a.a_list, default_sharpness_ladder());
  SharpnessReport report;
  if (kind == OperatorKind::Cesaro) {
    report = sharpness_scan_cesaro(DomainGamma(a.gamma), a.r, ladder);
  } else {
    if (!a.beta) throw PreconditionError("--beta is required for the bernardi operator");
    report = sharpness_scan_bernardi(DomainGamma(a.gamma), *a.beta, a.r, ladder);
  }
  ordered_json params = {{"op", a.op}, {"gamma", a.gamma}, {"r", a.r}};
  if (a.beta) params["beta"] = *a.beta;
  ordered_json body = {{"check", "sharpness"},
                       {"parameters", params},
                       {"radius", report.radius},
                       {"a_values", report.a_values},
                       {"margins", report.margins},
                       {"errors", report.errors},
                       {"witness_found", report.witness_found},
                       {"exploratory", report.exploratory}};
  if (report.witness_a) body["witness_a"] = *report.witness_a;
  auto doc = with_header("verify", body);
  if (!report.witness_found) throw AssertionFailure{doc};
  emit_json(out, doc);
  return kOk;
}

int verify_remainder(const VerifyArgs& a, std::ostream& out) {
  const auto kind = operator_kind_from_string(a.op);
  const auto ladder = ladder_or(a.a_list, default_remainder_ladder());
  const auto result = remainder_order_check(kind, DomainGamma(a.gamma), a.beta, a.r, ladder);
  const bool pass = result.slope >= 1.8 && result.slope <= 2.2;
  ordered_json params = {{"op", a.op}, {"gamma", a.gamma}, {"r", a.r}};
  if (a.beta) params["beta"] = *a.beta;
  ordered_json body = {{"check", "remainder-order"},
                       {"parameters", params},
                       {"slope", result.slope},
                       {"expected", {1.8, 2.2}},
                       {"one_minus_a", result.one_minus_a},
                       {"remainders", result.remainders},
                       {"noise", result.noise},
                       {"used", result.used},
                       {"pass", pass}};
  auto doc = with_header("verify", body);
  if (!pass) throw AssertionFailure{doc};
  emit_json(out, doc);
  return kOk;
}

int verify_identities(std::ostream& out) {
  const auto report = identity_suite();
  constexpr double limit = 1e-10;
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"identity", row.name},
                    {"r", row.r},
                    {"series", row.series},
                    {"closed_form", row.closed_form},
                    {"deviation", row.deviation}});
  }
  const bool pass = report.max_deviation <= limit;
  auto doc = with_header("verify", {{"check", "identities"},
                                    {"max_deviation", report.max_deviation},
                                    {"limit", limit},
                                    {"rows", rows},
                                    {"pass", pass}});
  if (!pass) throw AssertionFailure{doc};
  emit_json(out, doc);
  return kOk;
}

// table -----------------------------------------------------------------------

struct TableRow {
  std::string name;
  double computed;
  std::string paper;
};

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::vector<TableRow> table_rows(const std::string& name) {
  std::vector<TableRow> rows;
  auto gamma_label = [](double g) {
    std::ostringstream s;
    s << g;
    return s.str();
  };
  if (name == "paper-constants") {
    rows.push_back({"bohr gamma=0", bohr_radius_omega(DomainGamma(0.0)), "1/3"});
    rows.push_back({"cesaro gamma=0", cesaro_radius(DomainGamma(0.0)).value, "0.5335"});
    rows.push_back({"bernardi-classic beta=1 m=1", bernardi_radius_classic(1.0, 1).value, ""});
  } else if (name == "theorem1") {
    for (int k = 0; k <= 9; ++k) {
      const double g = 0.1 * k;
      rows.push_back({"cesaro gamma=" + gamma_label(g), cesaro_radius(DomainGamma(g)).value,
                      k == 0 ? "0.5335" : ""});
    }
  } else if (name == "theorem2") {
    for (const double g : {0.0, 0.25, 0.5, 0.75}) {
      for (const double b : {0.5, 1.0, 2.0, 5.0}) {
        rows.push_back({"bernardi gamma=" + gamma_label(g) + " beta=" + gamma_label(b),
                        bernardi_radius(DomainGamma(g), b).value, ""});
      }
    }
  } else {
    throw CLI::ValidationError("table", "unknown table '" + name +
                                            "' (expected theorem1, theorem2 or paper-constants)");
  }
  return rows;
}

int table_command(const std::string& name, const std::string& format, std::ostream& out) {
  const auto rows = table_rows(name);
  if (format == "csv") {
    out << "name,computed,paper\r\n";
    for (const auto& r : rows)
      out << csv_field(r.name) << ',' << format_number(r.computed) << ',' << csv_field(r.paper)
          << "\r\n";
  } else if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json row = {{"name", r.name}, {"computed", r.computed}};
      if (!r.paper.empty()) row["paper"] = r.paper;
      arr.push_back(row);
    }
    emit_json(out, with_header("table", {{"table", name}, {"rows", arr}}));
  } else {
    std::size_t width = 4;
    for (const auto& r : rows) width = std::max(width, r.name.size());
    out << std::left << std::setw(static_cast<int>(width) + 2) << "name" << std::setw(12)
        << "computed"
        << "paper\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(static_cast<int>(width) + 2) << r.name << std::setw(12)
          << fixed6(r.computed) << r.paper << '\n';
    }
  }
  return kOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("grid", "not a number: '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v))
      throw CLI::ValidationError("grid", "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bohr-type radii for the Cesaro and Bernardi operators on Omega_gamma", "bohrkit"};
  app.set_version_flag("--version", std::string("bohrkit ") + kVersion);
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  // radius
  RadiusArgs radius_args;
  std::string radius_equation;
  auto* radius = app.add_subcommand("radius", "Solve one radius equation");
  radius->require_subcommand(1);
  auto* r_cesaro = radius->add_subcommand("cesaro", "R_gamma for the Cesaro operator");
  r_cesaro->add_option("--gamma", radius_args.gamma, "Domain parameter in [0,1)")->required();
  r_cesaro->add_option("--tol", radius_args.tol, "Bracket width target");
  auto* r_bernardi = radius->add_subcommand("bernardi", "R_{gamma,beta} for the Bernardi operator");
  r_bernardi->add_option("--gamma", radius_args.gamma, "Domain parameter in [0,1)")->required();
  r_bernardi->add_option("--beta", radius_args.beta, "Bernardi parameter, > 0")->required();
  r_bernardi->add_option("--tol", radius_args.tol, "Bracket width target");
  auto* r_classic =
      radius->add_subcommand("bernardi-classic", "R(beta) on the unit disk, m-fold zero");
  r_classic->add_option("--beta", radius_args.beta, "Bernardi parameter, > -m")->required();
  r_classic->add_option("--m", radius_args.m, "Order of the zero at the origin")->required();
  r_classic->add_option("--tol", radius_args.tol, "Bracket width target");
  for (auto* sub : {r_cesaro, r_bernardi, r_classic})
    sub->callback([&radius_equation, sub] { radius_equation = sub->get_name(); });

  // sweep
  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Radii over a parameter grid");
  sweep->add_option("--op", sweep_args.op, "cesaro | bernardi | bernardi-classic")
      ->check(CLI::IsMember({"cesaro", "bernardi", "bernardi-classic"}));
  sweep->add_option("--param", sweep_args.parameter, "gamma | beta")
      ->check(CLI::IsMember({"gamma", "beta"}));
  sweep->add_option("--grid", sweep_args.grid, "Comma-separated increasing values")->required();
  sweep->add_option("--gamma", sweep_args.gamma, "Fixed gamma when sweeping beta");
  sweep->add_option("--beta", sweep_args.beta, "Fixed beta when sweeping gamma");
  sweep->add_option("--m", sweep_args.m, "Zero order for bernardi-classic");
  sweep->add_option("--format", sweep_args.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sweep_args.out_path, "Write the table to PATH instead of stdout");
  sweep->add_option("--tol", sweep_args.tol, "Bracket width target");

  // verify
  VerifyArgs verify_args;
  std::string verify_check;
  std::optional<double> beta_flag;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->require_subcommand(1);
  auto* v_lemma = verify->add_subcommand("lemma1", "Coefficient bound on Omega_gamma");
  v_lemma->add_option("--gamma", verify_args.gamma)->required();
  v_lemma->add_option("--samples", verify_args.samples)->required()->check(CLI::PositiveNumber);
  v_lemma->add_option("--seed", verify_args.seed)->required();
  v_lemma->add_option("--degree-max", verify_args.degree_max)->check(CLI::Range(0, 16));
  v_lemma->add_option("--order", verify_args.order)->check(CLI::Range(1, 20000));
  auto* v_sharp = verify->add_subcommand("sharpness", "Extremal witnesses above the radius");
  auto* v_rem = verify->add_subcommand("remainder-order", "Order of the decomposition remainder");
  for (auto* sub : {v_sharp, v_rem}) {
    sub->add_option("--op", verify_args.op)->required()->check(CLI::IsMember({"cesaro", "bernardi"}));
    sub->add_option("--gamma", verify_args.gamma)->required();
    sub->add_option("--beta", beta_flag);
    sub->add_option("--r", verify_args.r)->required();
    sub->add_option("--a", verify_args.a_list, "Comma-separated values of a");
  }
  auto* v_ident = verify->add_subcommand("identities", "Closed-form series identities");
  for (auto* sub : {v_lemma, v_sharp, v_rem, v_ident})
    sub->callback([&verify_check, sub] { verify_check = sub->get_name(); });

  // table
  std::string table_name;
  std::string table_format = "text";
  auto* table = app.add_subcommand("table", "Reproduction tables");
  table->add_option("name", table_name, "theorem1 | theorem2 | paper-constants")->required();
  table->add_option("--format", table_format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << "bohrkit " << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }
  verify_args.beta = beta_flag;

  try {
    if (radius->parsed()) return radius_command(radius_equation, radius_args, out);
    if (sweep->parsed()) return sweep_command(sweep_args, out, err);
    if (verify->parsed()) {
      if (verify_check == "lemma1") return verify_lemma1(verify_args, out);
      if (verify_check == "sharpness") return verify_sharpness(verify_args, out);
      if (verify_check == "remainder-order") return verify_remainder(verify_args, out);
      return verify_identities(out);
    }
    return table_command(table_name, table_format, out);
  } catch (const AssertionFailure& failure) {
    emit_json(out, failure.report);
    err << "assertion failed\n";
    return kAssertion;
  } catch (const OutputFailure& failure) {
    err << "error: cannot write " << failure.path << '\n';
    return kOutput;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace bohrkit::cli
