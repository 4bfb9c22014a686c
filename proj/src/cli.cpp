#include "canodual/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "canodual/errors.hpp"
#include "canodual/solver.hpp"
#include "canodual/verify.hpp"

namespace canodual::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json point_json(const CriticalPoint& cp) {
  return {
      {"sigma", cp.sigma},
      {"sigma_plus_y", cp.offset},
      {"c", cp.c},
      {"p_value", cp.p_value},
      {"pd_value", cp.pd_value},
      {"p_second", cp.p_second},
      {"pd_second", cp.pd_second},
      {"center_curvature", cp.center_curvature},
      {"dual_kind", to_string(cp.dual_kind)},
      {"primal_kind", cp.primal_kind ? to_string(*cp.primal_kind) : "none"},
      {"region", to_string(cp.region)},
      {"pseudo", cp.pseudo},
  };
}

json report_json(const CaseReport& report) {
  json points = json::array();
  for (const CriticalPoint& cp : report.points) points.push_back(point_json(cp));
  json beta = {
      {"x_o", report.beta.x_threshold ? json(*report.beta.x_threshold) : json()},
      {"beta_crit", report.beta.beta_crit ? json(*report.beta.beta_crit) : json()},
      {"sigma_f_kind", to_string(report.beta.sigma_f_kind)},
      {"critf_satisfied", report.beta.critf_satisfied},
  };
  return {
      {"case_id", report.case_id},
      {"primal_count", report.primal_count},
      {"dual_count", report.dual_count},
      {"critical_points", points},
      {"beta", beta},
      {"recommended", report.recommended ? point_json(*report.recommended) : json()},
      {"advice", report.advice},
      {"oracle_agrees", report.oracle_agrees},
  };
}

void print_text_report(const CaseReport& report, std::ostream& out) {
  out << "case " << report.case_id << ": " << report.primal_count
      << " primal / " << report.dual_count << " dual critical points, sigma_f "
      << to_string(report.beta.sigma_f_kind) << "\n";
  if (report.beta.x_threshold) out << "x_o = " << fmt17(*report.beta.x_threshold) << "\n";
  if (report.beta.beta_crit) out << "beta_crit = " << fmt17(*report.beta.beta_crit) << "\n";
  out << "sigma            c                P                P^d              dual  primal  region\n";
  for (const CriticalPoint& cp : report.points) {
    char line[256];
    std::snprintf(line, sizeof line, "%-16.9g %-16.9g %-16.9g %-16.9g %-5s %-7s %s\n",
                  cp.sigma, cp.c, cp.p_value, cp.pd_value,
                  to_string(cp.dual_kind).c_str(),
                  cp.primal_kind ? to_string(*cp.primal_kind).c_str() : "none",
                  to_string(cp.region).c_str());
    out << line;
  }
  if (report.recommended) {
    out << "recommended center: c = " << fmt17(report.recommended->c)
        << " (sigma = " << fmt17(report.recommended->sigma) << ")\n";
  } else {
    out << "recommended center: none\n";
  }
  if (!report.advice.empty()) out << "advice: " << report.advice << "\n";
  out << "oracle_agrees: " << (report.oracle_agrees ? "true" : "false") << "\n";
}

bool write_atomic(const fs::path& target, const std::string& content) {
  fs::path tmp = target;
  tmp += ".tmp";
  bool written = false;
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (file) {
      file << content;
      written = file.good();
    }
  }
  std::error_code ec;
  if (written) {
    fs::rename(tmp, target, ec);
    if (!ec) return true;
  }
  fs::remove(tmp, ec);  // leave no partial files behind
  return false;
}

int write_curves(const ProblemParams& raw, int samples, std::optional<double> cmin,
                 std::optional<double> cmax, double sigma_margin,
                 const fs::path& outdir, std::ostream& err) {
  const ProblemParams p = raw.normalized();
  const GaussianKernel kernel(p.alpha);
  const DualLandscape landscape(p);

  const double lo = cmin ? *cmin : std::fmin(0.0, p.x) - 2.0;
  const double hi = cmax ? *cmax : std::fmax(0.0, p.x) + 3.0;

  std::ostringstream primal;
  primal << "c,P\n";
  for (int i = 0; i < samples; ++i) {
    const double c = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1);
    primal << fmt17(c) << ',' << fmt17(primal_value(p, kernel, c)) << '\n';
  }

  const double s_lo = -p.y + sigma_margin;
  const double s_hi = p.w - p.y - sigma_margin;
  std::ostringstream dual;
  dual << "sigma,Pd\n";
  bool last_was_break = true;
  double prev_sigma = s_lo;
  for (int i = 0; i < samples; ++i) {
    const double sigma = samples == 1 ? s_lo : s_lo + (s_hi - s_lo) * i / (samples - 1);
    bool crossed_pole = false;
    for (double root : landscape.partition().g_roots) {
      if (i > 0 && (prev_sigma < root) != (sigma < root)) crossed_pole = true;
    }
    if (crossed_pole && !last_was_break) {
      dual << '\n';
      last_was_break = true;
    }
    try {
      const double pd = landscape.value(sigma);
      dual << fmt17(sigma) << ',' << fmt17(pd) << '\n';
      last_was_break = false;
    } catch (const SingularityError&) {
      if (!last_was_break) {
        dual << '\n';
        last_was_break = true;
      }
    }
    prev_sigma = sigma;
  }

  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (!write_atomic(outdir / "primal.csv", primal.str()) ||
      !write_atomic(outdir / "dual.csv", dual.str())) {
    err << "error: cannot write curve files under " << outdir << "\n";
    return 1;
  }
  return 0;
}

struct CaseRow {
  std::string name;
  ProblemParams params;
  int want_case;
  int want_primal;
  int want_dual;
};

int cmd_cases(std::ostream& out, std::ostream& err) {
  const std::vector<CaseRow> rows = {
      {"case 1", instance_case1(), 1, 3, 4},
      {"case 2", instance_case2(), 2, 5, 6},
      {"case 3", instance_case3(), 3, 3, 4},
      {"case 4", instance_case4(), 4, 3, 4},
      {"boundary variant", instance_boundary_variant(), 2, 5, 6},
      {"constructed case 5", instance_case5(), 5, 1, 2},
  };

  std::vector<std::string> diffs;
  out << "instance             case  primal/dual  note\n";
  for (const CaseRow& row : rows) {
    const CaseReport report = analyze(row.params);
    std::string note;
    bool ok = report.case_id == row.want_case &&
              report.primal_count == row.want_primal &&
              report.dual_count == row.want_dual;

    if (row.name == "case 3") {
      bool all_plus = true;
      for (const CriticalPoint& cp : report.points) {
        if (!(cp.center_curvature > 0.0)) all_plus = false;
      }
      ok = ok && all_plus;
      note = all_plus ? "all dual criticals in S+" : "dual criticals outside S+";
    }
    if (row.name == "boundary variant") {
      // the near-boundary point carries the lowest P yet must not be selected
      const CriticalPoint* boundary = nullptr;
      double min_p = std::numeric_limits<double>::infinity();
      for (const CriticalPoint& cp : report.points) {
        if (cp.region == Region::Boundary) boundary = &cp;
        if (cp.primal_kind && *cp.primal_kind == ExtremumKind::Min)
          min_p = std::fmin(min_p, cp.p_value);
      }
      const bool boundary_is_global =
          boundary != nullptr && boundary->p_value <= min_p;
      const bool boundary_not_recommended =
          !report.recommended || report.recommended->region != Region::Boundary;
      ok = ok && boundary_is_global && boundary_not_recommended;
      note = boundary_is_global ? "near-boundary point is the global minimum, "
                                  "not recommended"
                                : "boundary point not the global minimum";
    }
    if (row.name == "constructed case 5") {
      ok = ok && report.oracle_points.size() == 1;
      note = "single primal critical confirmed by the oracle";
    }

    char line[256];
    std::snprintf(line, sizeof line, "%-20s %-5d %d/%-10d %s%s\n", row.name.c_str(),
                  report.case_id, report.primal_count, report.dual_count,
                  ok ? "" : "MISMATCH ", note.c_str());
    out << line;
    if (!ok) {
      std::ostringstream diff;
      diff << row.name << ": expected case " << row.want_case << " with "
           << row.want_primal << "/" << row.want_dual << ", observed case "
           << report.case_id << " with " << report.primal_count << "/"
           << report.dual_count;
      diffs.push_back(diff.str());
    }
  }

  if (!diffs.empty()) {
    err << "case table mismatches:\n";
    for (const std::string& d : diffs) err << "  " << d << "\n";
    return 4;
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, int sweep, const std::string& fault_name,
               std::ostream& out, std::ostream& err) {
  FaultInjection fault = FaultInjection::None;
  if (fault_name == "flip-load") fault = FaultInjection::FlipLoad;

  for (const CheckResult& check : run_core_checks(fault)) {
    out << (check.passed ? "[ ok ] " : "[FAIL] ") << check.name;
    if (!check.detail.empty()) out << ": " << check.detail;
    out << "\n";
    if (!check.passed) {
      err << "verification failed at " << check.name << "\n";
      return 5;
    }
  }

  if (sweep > 0) {
    const SweepOutcome sw = run_sweep(seed, sweep);
    out << "sweep: " << sw.instances << " instances, worst gap " << sw.worst_gap
        << ", worst second-derivative relation error " << sw.worst_relation << "\n";
    out << "sweep ordering: " << sw.ordering_failures << "/" << sw.ordering_checked
        << " instances violate the cross-region ordering (surveyed, not fatal; "
           "violations concentrate on near-boundary artifact minima)\n";
    for (const std::string& f : sw.first_failures) out << "  " << f << "\n";
    if (sw.gap_violations > 0) {
      err << "verification failed at sweep duality gap\n";
      return 5;
    }
    if (sw.relation_violations > 0) {
      err << "verification failed at sweep second-derivative relation\n";
      return 5;
    }
    if (sw.threshold_disagreements > 0) {
      err << "verification failed at sweep threshold agreement\n";
      return 5;
    }
    if (sw.structure_failures > 0) {
      err << "verification failed at sweep structure assertions\n";
      return 5;
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"canonical-dual training analysis for the Gaussian single-neuron problem"};
  app.require_subcommand(1);

  ProblemParams params;
  std::string format = "json";
  bool emit_curves = false;
  int curve_samples = 2001;
  std::string outdir = ".";

  const auto add_param_flags = [&params](CLI::App* cmd) {
    cmd->add_option("--x", params.x, "sample input")->required();
    cmd->add_option("--y", params.y, "sample target")->required();
    cmd->add_option("--w", params.w, "output weight")->required();
    cmd->add_option("--alpha", params.alpha, "Gaussian width (standard deviation)")
        ->required();
    cmd->add_option("--beta", params.beta, "center regularization")->required();
    cmd->add_option("--f", params.f, "linear term coefficient")->capture_default_str();
  };

  CLI::App* solve = app.add_subcommand("solve", "analyze one instance");
  add_param_flags(solve);
  solve->add_option("--format", format, "json or text")->capture_default_str()
      ->check(CLI::IsMember({"json", "text"}));
  solve->add_flag("--emit-curves", emit_curves, "also write curve CSV files");
  solve->add_option("--curve-samples", curve_samples, "samples per curve")->capture_default_str()
      ->check(CLI::Range(2, 100'000'000));
  solve->add_option("--outdir", outdir, "directory for curve files")->capture_default_str();

  CLI::App* cases = app.add_subcommand("cases", "reproduce the published case table");

  std::optional<double> cmin, cmax;
  double sigma_margin = 1e-6;
  CLI::App* curves = app.add_subcommand("curves", "sample the primal and dual curves");
  add_param_flags(curves);
  curves->add_option("--samples", curve_samples, "samples per curve")->capture_default_str()
      ->check(CLI::Range(2, 100'000'000));
  curves->add_option("--cmin", cmin, "lower end of the c range");
  curves->add_option("--cmax", cmax, "upper end of the c range");
  curves->add_option("--sigma-margin", sigma_margin, "offset from the sigma domain ends")->capture_default_str();
  curves->add_option("--outdir", outdir, "output directory")->capture_default_str();

  std::uint64_t seed = 42;
  int sweep = 0;
  std::string fault;
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--seed", seed, "sweep sampler seed")->capture_default_str();
  verify->add_option("--sweep", sweep, "number of sweep instances (0 = skip)")->capture_default_str();
  verify->add_option("--inject-fault", fault)->group("");  // test hook, hidden

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (solve->parsed()) {
      const CaseReport report = analyze(params);
      if (format == "json") {
        out << report_json(report).dump(2) << "\n";
      } else {
        print_text_report(report, out);
      }
      if (emit_curves) {
        const int rc = write_curves(params, curve_samples, cmin, cmax, sigma_margin,
                                    outdir, err);
        if (rc != 0) return rc;
      }
      return report.case_id == 0 ? 3 : 0;
    }
    if (cases->parsed()) return cmd_cases(out, err);
    if (curves->parsed()) {
      return write_curves(params, curve_samples, cmin, cmax, sigma_margin, outdir, err);
    }
    if (verify->parsed()) return cmd_verify(seed, sweep, fault, out, err);
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace canodual::cli
