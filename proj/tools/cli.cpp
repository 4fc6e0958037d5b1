#include "cli.hpp"

#include "moyal/errors.hpp"
#include "moyal/flows.hpp"
#include "moyal/json_io.hpp"
#include "moyal/kicked.hpp"
#include "moyal/parse.hpp"
#include "moyal/star.hpp"
#include "moyal/star_exp.hpp"
#include "moyal/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

namespace moyal::cli {

namespace {

using nlohmann::json;

struct Output {
  std::string format = "text";
  std::ostream* out = nullptr;

  bool is_json() const { return format == "json"; }
  bool is_csv() const { return format == "csv"; }
};

json poly_json(const PhasePoly& f) {
  return json::parse(poly_to_json_string(f));
}

void emit_poly(const Output& o, const PhasePoly& f) {
  if (o.is_json()) {
    *o.out << json{{"result", poly_json(f)}}.dump() << "\n";
  } else {
    *o.out << format_poly(f) << "\n";
  }
}

GaussianRational parse_scalar(const std::string& text) {
  PhasePoly f = parse_poly(text);
  for (const auto& [m, c] : f.terms()) {
    if (m.q_pow != 0 || m.p_pow != 0 || m.hbar_pow != 0) {
      throw Error("expected a constant, got " + format_poly(f));
    }
  }
  return f.coeff(Monomial{});
}

BracketKind parse_kind(const std::string& name) {
  if (name == "classical") return BracketKind::Classical;
  if (name == "moyal-raw") return BracketKind::MoyalRaw;
  return BracketKind::MoyalNormalized;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Trailing polynomial operand: inline expression or --input JSON file.
struct PolyOperand {
  std::string expr;
  std::string input_file;

  void attach(CLI::App* cmd, const std::string& name, const std::string& desc,
              bool* has_flag = nullptr) {
    auto* pos = cmd->add_option(name, expr, desc);
    auto* file = cmd->add_option("--input", input_file,
                                 "read the trailing operand from a PhasePoly JSON file");
    pos->excludes(file);
    if (has_flag == nullptr) {
      // presence is checked in resolve()
    }
  }

  bool given() const { return !expr.empty() || !input_file.empty(); }

  PhasePoly resolve() const {
    if (!input_file.empty()) {
      std::ifstream in(input_file);
      if (!in) throw Error("cannot open " + input_file);
      std::ostringstream text;
      text << in.rdbuf();
      return poly_from_json_string(text.str());
    }
    return parse_poly(expr);
  }
};

int run_verify(const std::string& suite, std::uint64_t seed, const Output& o) {
  VerifyReport report = run_suite(suite, seed);
  if (o.is_json()) {
    *o.out << report_to_json_string(report) << "\n";
  } else {
    *o.out << "suite: " << report.suite << " (seed " << report.seed << ")\n";
    std::size_t failed = 0;
    for (const VerifyCase& c : report.cases) {
      if (c.pass) {
        *o.out << "[ok]   " << c.name << "\n";
      } else {
        ++failed;
        *o.out << "[FAIL] " << c.name << ": " << c.counterexample << "\n";
      }
    }
    *o.out << report.cases.size() << " cases, " << report.cases.size() - failed
           << " passed, " << failed << " failed\n";
  }
  return report.all_pass() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"moyal: exact star products, brackets, generator flows and "
               "kicked-map dynamics on phase-space polynomials"};
  app.require_subcommand(1);

  Output output;
  output.out = &out;
  std::uint64_t seed = 0;
  unsigned max_iter = kDefaultFlowCap;
  app.add_option("--format", output.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "seed for verification suites")
      ->capture_default_str();
  app.add_option("--max-iter", max_iter,
                 "iteration cap for exact (nilpotent) flows")
      ->capture_default_str();

  std::function<int()> action;

  // star <f> <g>
  auto* star_cmd = app.add_subcommand("star", "star product of two polynomials");
  star_cmd->fallthrough();
  std::string star_f, star_method = "groenewold";
  PolyOperand star_g;
  star_cmd->add_option("f", star_f, "left factor")->required();
  star_g.attach(star_cmd, "g", "right factor");
  star_cmd->add_option("--method", star_method, "evaluation route")
      ->check(CLI::IsMember({"groenewold", "bopp"}))
      ->capture_default_str();
  star_cmd->callback([&]() {
    action = [&]() {
      if (!star_g.given()) throw Error("missing right factor <g>");
      PhasePoly f = parse_poly(star_f);
      PhasePoly g = star_g.resolve();
      emit_poly(output, star_method == "bopp" ? star_bopp(f, g) : star(f, g));
      return 0;
    };
  });

  // bracket --type poisson|moyal|cross <f> <g>
  auto* bracket_cmd = app.add_subcommand("bracket", "bracket of two polynomials");
  bracket_cmd->fallthrough();
  std::string bracket_type, bracket_f;
  PolyOperand bracket_g;
  bracket_cmd->add_option("--type", bracket_type, "bracket flavour")
      ->check(CLI::IsMember({"poisson", "moyal", "cross"}))
      ->required();
  bracket_cmd->add_option("f", bracket_f, "left argument")->required();
  bracket_g.attach(bracket_cmd, "g", "right argument");
  bracket_cmd->callback([&]() {
    action = [&]() {
      if (!bracket_g.given()) throw Error("missing right argument <g>");
      PhasePoly f = parse_poly(bracket_f);
      PhasePoly g = bracket_g.resolve();
      PhasePoly r = bracket_type == "poisson"  ? poisson(f, g)
                    : bracket_type == "moyal" ? moyal_bracket(f, g)
                                              : cross(f, g);
      emit_poly(output, r);
      return 0;
    };
  });

  // apply --kind K <G> <f>
  auto* apply_cmd =
      app.add_subcommand("apply", "apply a generator bracket once");
  apply_cmd->fallthrough();
  std::string apply_kind, apply_gen;
  PolyOperand apply_f;
  apply_cmd->add_option("--kind", apply_kind, "bracket kind")
      ->check(CLI::IsMember({"classical", "moyal-raw", "moyal-norm"}))
      ->required();
  apply_cmd->add_option("G", apply_gen, "generator")->required();
  apply_f.attach(apply_cmd, "f", "argument");
  apply_cmd->callback([&]() {
    action = [&]() {
      if (!apply_f.given()) throw Error("missing argument <f>");
      emit_poly(output, bracket_apply(parse_kind(apply_kind),
                                      parse_poly(apply_gen), apply_f.resolve()));
      return 0;
    };
  });

  // flow --kind K --gen G --param c (--order N | --exact) <f>
  auto* flow_cmd = app.add_subcommand("flow", "exponentiated generator flow");
  flow_cmd->fallthrough();
  std::string flow_kind, flow_gen, flow_param;
  int flow_order = 0;
  bool flow_exact = false;
  PolyOperand flow_f;
  flow_cmd->add_option("--kind", flow_kind, "bracket kind")
      ->check(CLI::IsMember({"classical", "moyal-raw", "moyal-norm"}))
      ->required();
  flow_cmd->add_option("--gen", flow_gen, "generator")->required();
  flow_cmd->add_option("--param", flow_param, "flow parameter (constant)")
      ->required();
  auto* flow_order_opt =
      flow_cmd->add_option("--order", flow_order, "truncation order");
  auto* flow_exact_opt = flow_cmd->add_flag(
      "--exact", flow_exact, "run the terminating series to completion");
  flow_order_opt->excludes(flow_exact_opt);
  flow_f.attach(flow_cmd, "f", "polynomial to transport");
  flow_cmd->callback([&]() {
    action = [&]() {
      if (!flow_f.given()) throw Error("missing operand <f>");
      if (!flow_exact && flow_order_opt->count() == 0) {
        throw Error("pass --order N or --exact");
      }
      std::optional<int> order;
      if (!flow_exact) order = flow_order;
      emit_poly(output,
                flow(parse_kind(flow_kind), parse_poly(flow_gen),
                     parse_scalar(flow_param), flow_f.resolve(), order,
                     static_cast<int>(max_iter)));
      return 0;
    };
  });

  // coords --kind K --gen G --param c (--order N | --exact)
  auto* coords_cmd =
      app.add_subcommand("coords", "transformed coordinate pair (Q, P)");
  coords_cmd->fallthrough();
  std::string coords_kind, coords_gen, coords_param;
  int coords_order = 0;
  bool coords_exact = false;
  coords_cmd->add_option("--kind", coords_kind, "bracket kind")
      ->check(CLI::IsMember({"classical", "moyal-raw", "moyal-norm"}))
      ->required();
  coords_cmd->add_option("--gen", coords_gen, "generator")->required();
  coords_cmd->add_option("--param", coords_param, "flow parameter (constant)")
      ->required();
  auto* coords_order_opt =
      coords_cmd->add_option("--order", coords_order, "truncation order");
  auto* coords_exact_opt = coords_cmd->add_flag(
      "--exact", coords_exact, "run the terminating series to completion");
  coords_order_opt->excludes(coords_exact_opt);
  coords_cmd->callback([&]() {
    action = [&]() {
      if (!coords_exact && coords_order_opt->count() == 0) {
        throw Error("pass --order N or --exact");
      }
      std::optional<int> order;
      if (!coords_exact) order = coords_order;
      auto [Q, P] = transform_coordinates(
          parse_kind(coords_kind), parse_poly(coords_gen),
          parse_scalar(coords_param), order, static_cast<int>(max_iter));
      if (output.is_json()) {
        out << json{{"Q", poly_json(Q)}, {"P", poly_json(P)}}.dump() << "\n";
      } else {
        out << "Q = " << format_poly(Q) << "\n";
        out << "P = " << format_poly(P) << "\n";
      }
      return 0;
    };
  });

  // operator <A>
  auto* op_cmd = app.add_subcommand(
      "operator", "generator as an explicit differential operator");
  op_cmd->fallthrough();
  std::string op_gen;
  op_cmd->add_option("A", op_gen, "generator symbol")->required();
  op_cmd->callback([&]() {
    action = [&]() {
      PolyDiffOperator op = generator_as_operator(parse_poly(op_gen));
      if (output.is_json()) {
        out << json{{"result", json::parse(operator_to_json_string(op))}}.dump()
            << "\n";
      } else {
        out << format_operator(op) << "\n";
      }
      return 0;
    };
  });

  // kick ...
  auto* kick_cmd = app.add_subcommand(
      "kick", "kicked-map evolution: symbolic observables or numeric trajectories");
  kick_cmd->fallthrough();
  std::string kick_potential, kick_lambda, kick_period, kick_gauge;
  PolyOperand kick_obs;
  double kick_q0 = 0, kick_p0 = 0, kick_hbar = 0;
  int kick_steps = -1;
  int symbolic_budget = 5;
  bool kick_defect = false;
  kick_cmd->add_option("--potential", kick_potential, "polynomial V(q)")
      ->required();
  kick_cmd->add_option("--lambda", kick_lambda, "kick strength (rational)")
      ->required();
  kick_cmd->add_option("--T", kick_period, "kick period (rational)")->required();
  kick_obs.attach(kick_cmd, "--observable", "observable to evolve symbolically");
  auto* q0_opt = kick_cmd->add_option("--q0", kick_q0, "initial q");
  auto* p0_opt = kick_cmd->add_option("--p0", kick_p0, "initial p");
  kick_cmd->add_option("--hbar", kick_hbar, "hbar context (float mode)");
  auto* steps_opt = kick_cmd->add_option("--steps", kick_steps, "step count");
  kick_cmd->add_flag("--defect", kick_defect,
                     "also print the quantum-classical defect");
  kick_cmd->add_option("--gauge", kick_gauge,
                       "gauge parameter a for the q + a*p^3 defect");
  kick_cmd->add_option("--symbolic-budget", symbolic_budget,
                       "warn when evolving symbolically past this many steps")
      ->capture_default_str();
  kick_cmd->callback([&]() {
    action = [&]() {
      KickedSystem sys(parse_poly(kick_potential),
                       rational_from_string(kick_lambda),
                       rational_from_string(kick_period));
      const bool trajectory_mode = q0_opt->count() > 0 || p0_opt->count() > 0;
      if (trajectory_mode && kick_obs.given()) {
        throw Error("--observable and --q0/--p0 are mutually exclusive");
      }
      if (trajectory_mode) {
        if (steps_opt->count() == 0 || kick_steps < 0) {
          throw Error("trajectory mode needs --steps n (n >= 0)");
        }
        auto points = trajectory(sys, PhasePoint{kick_q0, kick_p0, kick_hbar},
                                 kick_steps);
        if (output.is_json()) {
          json rows = json::array();
          for (std::size_t k = 0; k < points.size(); ++k) {
            rows.push_back(json{{"step", k}, {"q", points[k].q}, {"p", points[k].p}});
          }
          out << json{{"trajectory", std::move(rows)}}.dump() << "\n";
        } else if (output.is_csv()) {
          out << "step,q,p\n";
          for (std::size_t k = 0; k < points.size(); ++k) {
            out << k << "," << csv_num(points[k].q) << "," << csv_num(points[k].p)
                << "\n";
          }
        } else {
          for (std::size_t k = 0; k < points.size(); ++k) {
            out << k << ": q = " << csv_num(points[k].q)
                << ", p = " << csv_num(points[k].p) << "\n";
          }
        }
        return 0;
      }
      if (!kick_obs.given() && kick_gauge.empty()) {
        throw Error("pass --observable <f> (or --input) or --q0/--p0/--steps");
      }
      json result = json::object();
      if (kick_obs.given()) {
        int steps = steps_opt->count() > 0 ? kick_steps : 1;
        if (steps < 1) throw Error("--steps must be >= 1 for observables");
        if (steps > symbolic_budget) {
          err << "warning: " << steps
              << " symbolic steps exceed the budget of " << symbolic_budget
              << "; polynomial degree grows per step\n";
        }
        PhasePoly quantum = kick_obs.resolve();
        PhasePoly classical = quantum;
        for (int s = 0; s < steps; ++s) {
          quantum = quantum_step_observable(sys, quantum);
          classical = classical_step_observable(sys, classical);
        }
        if (output.is_json()) {
          result["quantum"] = poly_json(quantum);
          result["classical"] = poly_json(classical);
          if (kick_defect) result["defect"] = poly_json(quantum - classical);
        } else {
          out << "quantum   = " << format_poly(quantum) << "\n";
          out << "classical = " << format_poly(classical) << "\n";
          if (kick_defect) {
            out << "defect    = " << format_poly(quantum - classical) << "\n";
          }
        }
      }
      if (!kick_gauge.empty()) {
        PhasePoly gd = gauge_defect(sys, rational_from_string(kick_gauge));
        if (output.is_json()) {
          result["gauge_defect"] = poly_json(gd);
        } else {
          out << "gauge_defect = " << format_poly(gd) << "\n";
        }
      }
      if (output.is_json()) out << result.dump() << "\n";
      return 0;
    };
  });

  // starexp --gen A --param c --order N [--conjugate f] [--check-mlt]
  auto* sexp_cmd = app.add_subcommand(
      "starexp", "star-exponential series and conjugation");
  sexp_cmd->fallthrough();
  std::string sexp_gen, sexp_param;
  int sexp_order = 0;
  bool sexp_check = false;
  PolyOperand sexp_f;
  sexp_cmd->add_option("--gen", sexp_gen, "generator symbol")->required();
  sexp_cmd->add_option("--param", sexp_param, "series parameter (constant)")
      ->required();
  sexp_cmd->add_option("--order", sexp_order, "truncation order")->required();
  sexp_f.attach(sexp_cmd, "--conjugate", "conjugate this polynomial instead");
  sexp_cmd->add_flag("--check-mlt", sexp_check,
                     "print the defect between conjugation and the bracket flow");
  sexp_cmd->callback([&]() {
    action = [&]() {
      PhasePoly A = parse_poly(sexp_gen);
      GaussianRational c = parse_scalar(sexp_param);
      if (sexp_check) {
        if (!sexp_f.given()) throw Error("--check-mlt needs --conjugate <f>");
        emit_poly(output, mlt_equivalence_defect(A, c, sexp_f.resolve(), sexp_order));
      } else if (sexp_f.given()) {
        emit_poly(output, star_conjugate(A, c, sexp_f.resolve(), sexp_order));
      } else {
        emit_poly(output, star_exponential_series(A, c, sexp_order));
      }
      return 0;
    };
  });

  // verify <suite>
  auto* verify_cmd =
      app.add_subcommand("verify", "run a seeded invariant suite");
  verify_cmd->fallthrough();
  std::string verify_suite;
  verify_cmd->add_option("suite", verify_suite, "algebra|covariance|kick|starexp|all")
      ->required();
  verify_cmd->callback([&]() {
    action = [&]() { return run_verify(verify_suite, seed, output); };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (output.is_csv() && !app.got_subcommand(kick_cmd)) {
    err << "error: csv output is limited to trajectories\n";
    return 1;
  }

  try {
    return action ? action() : 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace moyal::cli
