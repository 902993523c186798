// Subcommand dispatch, option parsing, and plain-text formatting for the
// command-line tool.
#include "projatlas/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "projatlas/atlas.hpp"
#include "projatlas/parse.hpp"

namespace projatlas {

namespace {

std::string num12(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Exact string when available, 12-significant-digit decimal otherwise.
std::string exact_or_num(const std::optional<Rat>& exact, double v) {
  return exact ? exact->str() : num12(v);
}

ChartId chart_of_vars(const std::pair<std::string, std::string>& vars) {
  for (int c = 0; c < 3; ++c)
    if (chart_vars(static_cast<ChartId>(c)) == vars)
      return static_cast<ChartId>(c);
  throw std::invalid_argument("unrecognized variable pair '" + vars.first +
                              "', '" + vars.second + "'");
}

struct Options {
  std::string system_text;
  std::string file_path;
  int chart = 0;
  int density = 8;
  double tol = 1e-10;
  bool tol_set = false;
  std::string out_path;
  std::string curve;
};

PlaneSystem load_system(const Options& o) {
  if (o.system_text.empty() == o.file_path.empty())
    throw std::invalid_argument(
        "provide the system through exactly one of -s/--system or -f/--file");
  std::string text = o.system_text;
  if (!o.file_path.empty()) {
    std::ifstream in(o.file_path);
    if (!in)
      throw std::invalid_argument("cannot read file '" + o.file_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const ParsedSystem p = parse_system_text(text);
  return make_system(p.X, p.Y, chart_of_vars(p.vars));
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Applies the key=value file named by PROJATLAS_CONFIG, if any, on top of
/// the built-in integrator defaults.
void apply_config_env(IntegratorConfig& cfg) {
  const char* path = std::getenv("PROJATLAS_CONFIG");
  if (!path || !*path) return;
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument(
        std::string("cannot read config file '") + path +
        "' named by PROJATLAS_CONFIG");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string val = trimmed(line.substr(eq + 1));
    try {
      if (key == "rel_tol") cfg.rel_tol = std::stod(val);
      else if (key == "abs_tol") cfg.abs_tol = std::stod(val);
      else if (key == "max_arc_length") cfg.max_arc_length = std::stod(val);
      else if (key == "switch_out") cfg.switch_out = std::stod(val);
      else if (key == "switch_in") cfg.switch_in = std::stod(val);
      else if (key == "max_steps") cfg.max_steps = std::stoi(val);
      else
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value '" + val + "' for key '" + key +
                                  "'");
    }
  }
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
  out << bytes;
  if (!out) throw std::invalid_argument("error while writing '" + path + "'");
}

std::string direction_text(const DirectionAtInfinity& d,
                           const std::optional<Rat>& exact,
                           const std::pair<std::string, std::string>& vars) {
  const std::string a = exact ? exact->str() : num12(d.a);
  return d.form == DirectionAtInfinity::Form::YEqualsAX
             ? vars.second + " = " + a + "*" + vars.first
             : vars.first + " = " + a + "*" + vars.second;
}

// --- subcommand bodies -----------------------------------------------------

void do_classify(const PlaneSystem& sys, std::ostream& out) {
  const ProjectiveTypeReport rep = classify_projective_type(sys);
  const auto& v = chart_vars(sys.chart);
  out << (rep.kind == ProjectiveKind::Singular ? "P-singular" : "P-nonsingular")
      << "; W_" << sys.degree() << " = "
      << poly_to_string(rep.w_n, v.first, v.second) << "\n";
}

void do_reduce(const PlaneSystem& sys, int chart, std::ostream& out) {
  const ReducedSystem r = reduce_system(
      sys, chart == 1 ? WhichReduction::First : WhichReduction::Second);
  out << r.system.to_string() << "; m = " << r.m << "\n";
}

void do_equilibria(const PlaneSystem& sys, double tol, std::ostream& out) {
  const auto& vars = chart_vars(sys.chart);
  const auto finite = finite_equilibria(sys, tol);
  out << "finite equilibria (" << finite.size() << "):\n";
  for (const auto& e : finite) {
    std::string u = e.exact ? e.exact->first.str() : num12(e.location.first);
    std::string v = e.exact ? e.exact->second.str() : num12(e.location.second);
    out << "  (" << u << ", " << v << ")  trace = "
        << exact_or_num(e.exact_trace, e.jacobian.trace()) << "  det = "
        << exact_or_num(e.exact_det, e.jacobian.det()) << "  "
        << equilibrium_kind_name(e.kind) << "  multiplicity = "
        << e.multiplicity << "\n";
  }
  const auto inf = infinite_equilibria(sys, tol);
  if (inf.equator_degenerate) {
    out << "infinite equilibria: " << inf.note << "\n";
    return;
  }
  out << "infinite equilibria (" << inf.points.size() << "):\n";
  for (const auto& ie : inf.points) {
    out << "  direction " << direction_text(ie.direction, ie.exact_slope, vars)
        << "  [chart " << chart_name(ie.chart) << " at ("
        << num12(ie.chart_point.first) << ", " << num12(ie.chart_point.second)
        << ")]  " << equilibrium_kind_name(ie.kind);
    if (ie.modulo_direction) out << " (modulo time direction)";
    out << "  multiplicity = " << ie.multiplicity << "\n";
  }
}

void do_contacts(const PlaneSystem& sys, double tol, std::ostream& out) {
  const auto& vars = chart_vars(sys.chart);
  const auto cs = axis_contact_points(sys, tol);
  auto print_axis = [&](AxisName axis, const std::string& line_var,
                        const std::string& side_var) {
    std::vector<const AxisContact*> sel;
    for (const auto& c : cs)
      if (c.axis == axis) sel.push_back(&c);
    out << "contacts with " << line_var << " = 0 (" << sel.size() << "):\n";
    for (const AxisContact* c : sel) {
      const std::string a = c->exact ? c->exact->str() : num12(c->offset);
      out << "  at "
          << (axis == AxisName::Horizontal ? "(" + a + ", 0)" : "(0, " + a + ")")
          << "  order = " << c->tangency_order << "  side: "
          << contact_side_name(c->side, side_var) << "\n";
    }
  };
  print_axis(AxisName::Horizontal, vars.second, vars.second);
  print_axis(AxisName::Vertical, vars.first, vars.first);

  const auto eq = equatorial_contact_points(sys, tol);
  if (!eq.possible) {
    out << "equatorial contacts: none possible (" << eq.note << ")\n";
    return;
  }
  out << "equatorial contacts (" << eq.points.size() << "):\n";
  for (const auto& c : eq.points) {
    const std::string side_var =
        c.side_variable == Var::First ? vars.first : vars.second;
    out << "  direction " << direction_text(c.direction, c.exact_slope, vars)
        << "  order = " << c.tangency_order << "  side: "
        << contact_side_name(c.side, side_var) << "\n";
  }
}

void do_symmetry(const PlaneSystem& sys, std::ostream& out) {
  const auto& v = chart_vars(sys.chart);
  const SymmetryReport s = symmetry_report(sys);
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  out << "origin (central): " << yn(s.origin) << "\n"
      << "axis " << v.second << " = 0: " << yn(s.axis_first) << "\n"
      << "axis " << v.first << " = 0: " << yn(s.axis_second) << "\n"
      << "diagonal " << v.second << " = " << v.first << ": " << yn(s.diagonal)
      << "\n"
      << "antidiagonal " << v.second << " = -" << v.first << ": "
      << yn(s.antidiagonal) << "\n";
}

void do_lines(const PlaneSystem& sys, double tol, std::ostream& out) {
  const auto& v = chart_vars(sys.chart);
  const InvariantLineReport rep = find_invariant_lines(sys, tol);
  out << "invariant lines (" << rep.lines.size() << "):\n";
  for (const auto& ln : rep.lines) {
    if (ln.exact && ln.line) {
      out << "  " << poly_to_string(*ln.line, v.first, v.second)
          << " = 0  cofactor = " << poly_to_string(ln.cofactor, v.first, v.second)
          << "\n";
    } else {
      out << "  " << num12(ln.a) << "*" << v.first << " + " << num12(ln.b)
          << "*" << v.second << " + " << num12(ln.c) << " = 0  (numeric)\n";
    }
  }
  if (rep.infinite_family) out << "infinite family: " << rep.note << "\n";
}

void do_verify_curve(const PlaneSystem& sys, const Poly2& f, std::ostream& out) {
  const auto& v = chart_vars(sys.chart);
  const auto cof = verify_invariant_curve(sys, f);
  if (!cof) {
    out << "invariant: no\n";
    return;
  }
  out << "invariant: yes; cofactor = " << poly_to_string(*cof, v.first, v.second)
      << "\n";
  const CycleReport cr = classify_cycle_candidate(sys, f);
  out << "class: " << cycle_class_name(cr.cls) << "; " << cr.reason << "\n";
}

std::string sibling_json_path(const std::string& svg_path) {
  const std::string suffix = ".svg";
  if (svg_path.size() > suffix.size() &&
      svg_path.compare(svg_path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return svg_path.substr(0, svg_path.size() - suffix.size()) + ".json";
  return svg_path + ".json";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Options opt;
  CLI::App app{"Projective analysis of planar polynomial differential systems: "
               "equilibria, contact points, invariant lines, and phase "
               "portraits on the three Poincare discs."};
  app.require_subcommand(1);

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("-s,--system", opt.system_text,
                    "system text, e.g. \"x' = -y; y' = x\" (variable pairs: "
                    "x,y | xi,theta | eta,zeta)");
    sub->add_option("-f,--file", opt.file_path, "read the system from a file");
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "numeric tolerance")
        ->default_val(1e-10);
  };

  CLI::App* c_classify = app.add_subcommand(
      "classify", "print the projective type (P-singular or P-nonsingular) "
                  "and the weight polynomial W_n");
  add_source(c_classify);

  CLI::App* c_reduce = app.add_subcommand(
      "reduce", "print a projectively reduced system and its time-change "
                "exponent m");
  add_source(c_reduce);
  c_reduce->add_option("--chart", opt.chart, "which reduction: 1 or 2")
      ->required()
      ->check(CLI::Range(1, 2));

  CLI::App* c_equilibria = app.add_subcommand(
      "equilibria", "locate and classify finite and infinite equilibria");
  add_source(c_equilibria);
  add_tol(c_equilibria);

  CLI::App* c_contacts = app.add_subcommand(
      "contacts", "contact points of trajectories with the axes and the "
                  "line at infinity");
  add_source(c_contacts);
  add_tol(c_contacts);

  CLI::App* c_symmetry = app.add_subcommand(
      "symmetry", "mirror and central symmetries of the trajectory family");
  add_source(c_symmetry);

  CLI::App* c_lines = app.add_subcommand(
      "lines", "invariant straight lines and their cofactors");
  add_source(c_lines);
  add_tol(c_lines);

  CLI::App* c_verify = app.add_subcommand(
      "verify-curve", "test a polynomial curve for invariance and classify "
                      "it as a cycle");
  add_source(c_verify);
  c_verify->add_option("--curve", opt.curve, "polynomial in the system's variables")
      ->required();

  CLI::App* c_atlas = app.add_subcommand(
      "atlas", "render the three-disc phase portrait as SVG plus a sibling "
               "JSON report");
  add_source(c_atlas);
  add_tol(c_atlas);
  c_atlas->add_option("--density", opt.density, "seed density per disc")
      ->default_val(8)
      ->check(CLI::PositiveNumber);
  c_atlas->add_option("-o,--out", opt.out_path, "output SVG path")->required();

  CLI::App* c_report = app.add_subcommand(
      "report", "full analysis as JSON (stdout, or -o file)");
  add_source(c_report);
  add_tol(c_report);
  c_report->add_option("-o,--out", opt.out_path, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }
  opt.tol_set = c_equilibria->count("--tol") || c_contacts->count("--tol") ||
                c_lines->count("--tol") || c_atlas->count("--tol") ||
                c_report->count("--tol");

  // Input phase: anything wrong with what the user handed us exits 1.
  PlaneSystem sys;
  Poly2 curve;
  IntegratorConfig cfg;
  try {
    sys = load_system(opt);
    if (c_verify->parsed()) {
      curve = parse_polynomial(opt.curve, chart_vars(sys.chart));
      if (curve.degree() < 1)
        throw std::invalid_argument(
            "--curve must be a nonconstant polynomial, got '" + opt.curve + "'");
    }
    if (c_atlas->parsed()) {
      apply_config_env(cfg);
      if (opt.tol_set) {
        cfg.rel_tol = opt.tol;
        cfg.abs_tol = opt.tol * 1e-3;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  // Analysis phase: failures here are exit 2.
  try {
    if (c_classify->parsed()) {
      do_classify(sys, out);
    } else if (c_reduce->parsed()) {
      do_reduce(sys, opt.chart, out);
    } else if (c_equilibria->parsed()) {
      do_equilibria(sys, opt.tol, out);
    } else if (c_contacts->parsed()) {
      do_contacts(sys, opt.tol, out);
    } else if (c_symmetry->parsed()) {
      do_symmetry(sys, out);
    } else if (c_lines->parsed()) {
      do_lines(sys, opt.tol, out);
    } else if (c_verify->parsed()) {
      do_verify_curve(sys, curve, out);
    } else if (c_atlas->parsed()) {
      const AtlasDocument doc = build_atlas(sys, cfg, opt.density);
      const std::string json_path = sibling_json_path(opt.out_path);
      write_file(opt.out_path, render_svg(doc));
      write_file(json_path, write_report_json(doc.report));
      for (const auto& w : doc.integration_errors)
        err << "warning: " << w << "\n";
      out << "wrote " << opt.out_path << " and " << json_path << "\n";
    } else if (c_report->parsed()) {
      const std::string js = write_report_json(run_analysis(sys));
      if (opt.out_path.empty()) {
        out << js;
      } else {
        write_file(opt.out_path, js);
        out << "wrote " << opt.out_path << "\n";
      }
    }
  } catch (const std::exception& e) {
    err << "analysis error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace projatlas
