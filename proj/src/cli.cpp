#include "kvol/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "kvol/content.hpp"
#include "kvol/exterior.hpp"
#include "kvol/geometry.hpp"
#include "kvol/io.hpp"
#include "kvol/verify.hpp"

namespace kvol {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

constexpr double kFloatContentTolerance = 1e-10;
constexpr double kDeGuaTolerance = 1e-12;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open input file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json json_scalar(const Rational& x) { return format_scalar(x); }
json json_scalar(double x) { return x; }

json json_subset(const SubsetIndex& s) { return json(s.elements()); }

struct Options {
  std::string input;
  std::optional<Mode> mode;
  bool as_json = false;
  int grade = 1;
  std::string suite;
  int trials = 100;
  std::uint64_t seed = 0;
  int resolution = 256;
  std::string shape;
  std::vector<std::string> degua_args;
};

std::optional<Mode> parse_mode_flag(const std::string& value) {
  if (value.empty()) return std::nullopt;
  if (value == "exact") return Mode::exact;
  if (value == "float") return Mode::floating;
  throw CLI::ValidationError("--mode must be 'exact' or 'float'");
}

template <ScalarType T>
bool residual_within_tolerance(const ContentReport<T>& report) {
  if constexpr (std::same_as<T, Rational>) {
    return report.residual == 0;
  } else {
    const double denom = std::max(std::fabs(report.gram_det),
                                  std::fabs(report.minor_sq_sum));
    if (denom == 0.0) return report.residual == 0.0;
    return std::fabs(report.residual) <= kFloatContentTolerance * denom;
  }
}

template <ScalarType T>
int emit_content(const Matrix<T>& a, const Options& opt, std::ostream& out) {
  const auto report = pythagorean_check(a);
  const bool verified = residual_within_tolerance(report);
  if (opt.as_json) {
    json minors = json::array();
    for (const auto& [subset, value] : report.minors) {
      minors.push_back({{"subset", json_subset(subset)},
                        {"value", json_scalar(value)}});
    }
    out << json{{"command", "content"},
                {"mode", mode_name(a.mode())},
                {"rows", a.rows()},
                {"cols", a.cols()},
                {"gram_det", json_scalar(report.gram_det)},
                {"minor_sq_sum", json_scalar(report.minor_sq_sum)},
                {"residual", json_scalar(report.residual)},
                {"content", report.content},
                {"minors", minors},
                {"verified", verified}}
               .dump(2)
        << "\n";
  } else {
    out << "mode: " << mode_name(a.mode()) << "\n";
    out << "rows: " << a.rows() << "\n";
    out << "cols: " << a.cols() << "\n";
    out << "gram_det: " << format_scalar(report.gram_det) << "\n";
    out << "minor_sq_sum: " << format_scalar(report.minor_sq_sum) << "\n";
    out << "residual: " << format_scalar(report.residual) << "\n";
    out << "content: " << format_double(report.content) << "\n";
    out << "minors:\n";
    for (const auto& [subset, value] : report.minors) {
      out << "  " << to_string(subset) << " " << format_scalar(value) << "\n";
    }
    out << "verified: " << (verified ? "true" : "false") << "\n";
  }
  return verified ? kExitOk : kExitVerifyFailed;
}

template <ScalarType T>
int emit_minors(const Matrix<T>& a, const Options& opt, std::ostream& out) {
  const auto entries = projection_contents(a);
  if (opt.as_json) {
    json minors = json::array();
    for (const auto& e : entries) {
      minors.push_back({{"subset", json_subset(e.subset)},
                        {"value", json_scalar(e.minor)},
                        {"abs", json_scalar(e.abs_content)}});
    }
    out << json{{"command", "minors"},
                {"mode", mode_name(a.mode())},
                {"rows", a.rows()},
                {"cols", a.cols()},
                {"minors", minors}}
               .dump(2)
        << "\n";
  } else {
    out << "mode: " << mode_name(a.mode()) << "\n";
    out << "minors:\n";
    for (const auto& e : entries) {
      out << "  " << to_string(e.subset) << " " << format_scalar(e.minor)
          << " " << format_scalar(e.abs_content) << "\n";
    }
  }
  return kExitOk;
}

template <ScalarType T>
int emit_gram(const Matrix<T>& a, const Options& opt, std::ostream& out) {
  const auto g = gram(a);
  if (opt.as_json) {
    json rows = json::array();
    for (int i = 0; i < g.size(); ++i) {
      json row = json::array();
      for (int j = 0; j < g.size(); ++j) {
        row.push_back(json_scalar(g.matrix()(i, j)));
      }
      rows.push_back(row);
    }
    out << json{{"command", "gram"},
                {"mode", mode_name(a.mode())},
                {"rows", a.rows()},
                {"cols", a.cols()},
                {"entries", rows}}
               .dump(2)
        << "\n";
  } else {
    out << "# gram n=" << a.rows() << " k=" << a.cols() << "\n";
    out << format_matrix(g.matrix());
  }
  return kExitOk;
}

template <ScalarType T>
int emit_compound(const Matrix<T>& a, const Options& opt, std::ostream& out) {
  const auto c = compound(a, opt.grade);
  if (opt.as_json) {
    json rows = json::array();
    for (int i = 0; i < c.entries.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < c.entries.cols(); ++j) {
        row.push_back(json_scalar(c.entries(i, j)));
      }
      rows.push_back(row);
    }
    out << json{{"command", "compound"},
                {"mode", mode_name(a.mode())},
                {"n", c.base_rows},
                {"k", c.base_cols},
                {"grade", c.grade},
                {"entries", rows}}
               .dump(2)
        << "\n";
  } else {
    out << format_compound(c);
  }
  return kExitOk;
}

template <ScalarType T>
int emit_simplex(const Matrix<T>& verts, const Options& opt,
                 std::ostream& out) {
  const Simplex<T> s(verts);
  const T sq = simplex_content_sq(s);
  const double c = simplex_content(s);
  if (opt.as_json) {
    out << json{{"command", "simplex"},
                {"mode", mode_name(verts.mode())},
                {"vertices", verts.rows()},
                {"dim", s.dim()},
                {"ambient", verts.cols()},
                {"content", c},
                {"content_sq", json_scalar(sq)}}
               .dump(2)
        << "\n";
  } else {
    out << "mode: " << mode_name(verts.mode()) << "\n";
    out << "vertices: " << verts.rows() << "\n";
    out << "dim: " << s.dim() << "\n";
    out << "content: " << format_double(c) << "\n";
    out << "content_sq: " << format_scalar(sq) << "\n";
  }
  return kExitOk;
}

template <ScalarType T>
int emit_degua(const T& a, const T& b, const T& c, const Options& opt,
               std::ostream& out) {
  const auto report = de_gua_check(a, b, c);
  const bool verified = report.relative_residual <= kDeGuaTolerance;
  if (opt.as_json) {
    out << json{{"command", "degua"},
                {"mode", mode_name(mode_of<T>())},
                {"leg_sq_sum", json_scalar(report.leg_sq_sum)},
                {"hyp_sq", json_scalar(report.hyp_sq)},
                {"residual", report.relative_residual},
                {"verified", verified}}
               .dump(2)
        << "\n";
  } else {
    out << "mode: " << mode_name(mode_of<T>()) << "\n";
    out << "leg_sq_sum: " << format_scalar(report.leg_sq_sum) << "\n";
    out << "hyp_sq: " << format_scalar(report.hyp_sq) << "\n";
    out << "identity: " << format_scalar(report.leg_sq_sum) << " = "
        << format_scalar(report.hyp_sq) << "\n";
    out << "residual: " << format_double(report.relative_residual) << "\n";
    out << "verified: " << (verified ? "true" : "false") << "\n";
  }
  return verified ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const auto result = run_suite(opt.suite, opt.trials, opt.seed);
  if (opt.as_json) {
    out << json{{"command", "verify"},
                {"suite", result.suite},
                {"trials", result.trials},
                {"seed", result.seed},
                {"failures", result.failures},
                {"first_failure", result.first_failure},
                {"verified", result.ok()}}
               .dump(2)
        << "\n";
  } else {
    out << "suite: " << result.suite << "\n";
    out << "seed: " << result.seed << "\n";
    out << "result: " << (result.trials - result.failures) << "/"
        << result.trials << " pass\n";
    if (!result.ok()) {
      out << "first failure: " << result.first_failure << "\n";
    }
  }
  return result.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_measure(const Options& opt, std::ostream& out) {
  Shape shape = make_shape(opt.shape);
  if (opt.resolution < 1) {
    throw std::invalid_argument("--resolution must be >= 1");
  }
  shape.spec.resolution.assign(
      static_cast<std::size_t>(shape.spec.param_dim), opt.resolution);
  const double value = immersion_content(shape.spec);
  std::optional<double> rel_error;
  if (shape.closed_form && *shape.closed_form != 0.0) {
    rel_error = std::fabs(value - *shape.closed_form) / *shape.closed_form;
  }
  if (opt.as_json) {
    json j{{"command", "measure"},
           {"mode", mode_name(Mode::floating)},
           {"shape", opt.shape},
           {"resolution", opt.resolution},
           {"content", value}};
    if (shape.closed_form) j["analytic"] = *shape.closed_form;
    if (rel_error) j["rel_error"] = *rel_error;
    out << j.dump(2) << "\n";
  } else {
    out << "shape: " << opt.shape << "\n";
    out << "mode: " << mode_name(Mode::floating) << "\n";
    out << "resolution: " << opt.resolution << "\n";
    out << "content: " << format_double(value) << "\n";
    if (shape.closed_form) {
      out << "analytic: " << format_double(*shape.closed_form) << "\n";
    }
    if (rel_error) {
      out << "rel_error: " << format_double(*rel_error) << "\n";
    }
  }
  return kExitOk;
}

int dispatch(const std::string& command, const Options& opt,
             std::ostream& out) {
  if (command == "verify") return cmd_verify(opt, out);
  if (command == "measure") return cmd_measure(opt, out);

  if (command == "degua") {
    Mode mode = Mode::exact;
    if (opt.mode) {
      mode = *opt.mode;
    } else {
      for (const auto& tok : opt.degua_args) {
        if (!exact_eligible_token(tok)) mode = Mode::floating;
      }
    }
    if (mode == Mode::exact) {
      return emit_degua(parse_rational(opt.degua_args[0]),
                        parse_rational(opt.degua_args[1]),
                        parse_rational(opt.degua_args[2]), opt, out);
    }
    return emit_degua(parse_double(opt.degua_args[0]),
                      parse_double(opt.degua_args[1]),
                      parse_double(opt.degua_args[2]), opt, out);
  }

  const AnyMatrix parsed = parse_matrix(read_input(opt.input), opt.mode);
  return std::visit(
      [&](const auto& m) {
        if (command == "content") return emit_content(m, opt, out);
        if (command == "minors") return emit_minors(m, opt, out);
        if (command == "gram") return emit_gram(m, opt, out);
        if (command == "compound") return emit_compound(m, opt, out);
        if (command == "simplex") return emit_simplex(m, opt, out);
        throw std::logic_error("unreachable command");
      },
      parsed);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "kvol: exact and floating-point k-dimensional content, compound "
      "matrices, and Gram-determinant identities"};
  app.require_subcommand(1);

  Options opt;
  std::string mode_flag;

  auto add_matrix_command = [&](const std::string& name,
                                const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("input", opt.input,
                    "matrix file (one row per line, '-' for stdin)")
        ->required();
    cmd->add_option("--mode", mode_flag, "arithmetic mode: exact or float");
    cmd->add_flag("--json", opt.as_json, "structured output");
    return cmd;
  };

  add_matrix_command("content",
                     "both sides of det(A^tA) = sum of squared minors");
  add_matrix_command("minors", "signed minor and projection content per "
                               "k-subset of rows");
  add_matrix_command("gram", "Gram matrix A^tA");
  CLI::App* compound_cmd =
      add_matrix_command("compound", "i-th compound matrix of all i x i "
                                     "minors");
  compound_cmd->add_option("--grade", opt.grade, "exterior power grade i")
      ->required();
  add_matrix_command("simplex", "content of the simplex whose vertices are "
                                "the rows");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run a randomized property suite");
  verify_cmd->add_option("--suite", opt.suite, "one of: pythagorean, "
                                               "functoriality, adjoint, "
                                               "multiplicativity, degua")
      ->required();
  verify_cmd->add_option("--trials", opt.trials, "number of random trials");
  verify_cmd->add_option("--seed", opt.seed, "RNG seed");
  verify_cmd->add_flag("--json", opt.as_json, "structured output");

  CLI::App* measure_cmd = app.add_subcommand(
      "measure", "quadrature of sqrt(det g) for a catalog shape");
  measure_cmd->add_option("shape", opt.shape,
                          "shape spec, e.g. 'sphere(r=1)' or "
                          "'helix(r=1,pitch=0.5,turns=3)'")
      ->required();
  measure_cmd->add_option("--resolution", opt.resolution,
                          "grid resolution per axis");
  measure_cmd->add_flag("--json", opt.as_json, "structured output");

  CLI::App* degua_cmd = app.add_subcommand(
      "degua", "de Gua identity for the right tetrahedron with legs a b c");
  degua_cmd->add_option("legs", opt.degua_args, "leg lengths a b c")
      ->expected(3);
  degua_cmd->add_option("--mode", mode_flag, "arithmetic mode");
  degua_cmd->add_flag("--json", opt.as_json, "structured output");

  std::vector<const char*> argv;
  argv.push_back("kvol");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    opt.mode = parse_mode_flag(mode_flag);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), opt, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace kvol
