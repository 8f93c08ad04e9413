// ncbound command-line front end. Talks to the library exclusively through
// the C API so the shared-library surface stays exercised end to end.
//
// Exit codes: 0 success, 1 verification failure, 2 argument or domain
// error, 3 output I/O failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncbound.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitIoError = 3;

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ncb_mdelta_mode parse_mode(const std::string& mode) {
  return mode == "true" ? NCB_MDELTA_TRUE : NCB_MDELTA_PAPER;
}

const char* mode_label(ncb_mdelta_mode mode) {
  return mode == NCB_MDELTA_TRUE ? "true" : "paper";
}

int report_error() {
  std::cerr << "error: " << ncb_last_error() << "\n";
  return kExitBadArgs;
}

// Output is assembled in memory and written in one piece: byte-identical
// reruns come for free and a failed open never leaves a half-written file.
int emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return std::cout.good() ? kExitOk : kExitIoError;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return kExitIoError;
  }
  f << content;
  f.flush();
  if (!f.good()) {
    std::cerr << "error: failed while writing '" << path << "'\n";
    return kExitIoError;
  }
  return kExitOk;
}

const char kCsvHeader[] =
    "nbar,eta,p,S,M_delta,M_delta_tilde,violates_S,violates_M_delta,"
    "violates_M_delta_tilde,m_delta_mode\n";

void csv_row(std::ostream& os, const ncb_bound_report& r) {
  os << g12(r.nbar) << ',' << g12(r.eta) << ',' << g12(r.p) << ','
     << g12(r.s_bound) << ',' << g12(r.m_delta) << ',' << g12(r.m_delta_tilde)
     << ',' << r.violates_s << ',' << r.violates_m_delta << ','
     << r.violates_m_delta_tilde << ',' << mode_label(r.m_delta_mode) << '\n';
}

struct ReportArgs {
  double nbar = 0.0;
  double eta = 0.0;
  std::string mode = "paper";
  std::string format = "table";
  std::string out;
  std::string config;
};

int run_report(const ReportArgs& args) {
  ncb_bound_report r;
  if (ncb_report(args.nbar, args.eta, parse_mode(args.mode), &r) != NCB_OK) {
    return report_error();
  }
  std::ostringstream os;
  if (args.format == "csv") {
    os << kCsvHeader;
    csv_row(os, r);
  } else if (args.format == "json-lines") {
    os << "{\"nbar\":" << g12(r.nbar) << ",\"eta\":" << g12(r.eta)
       << ",\"p\":" << g12(r.p) << ",\"S\":" << g12(r.s_bound)
       << ",\"M_delta\":" << g12(r.m_delta)
       << ",\"M_delta_tilde\":" << g12(r.m_delta_tilde)
       << ",\"violates_S\":" << (r.violates_s ? "true" : "false")
       << ",\"violates_M_delta\":" << (r.violates_m_delta ? "true" : "false")
       << ",\"violates_M_delta_tilde\":"
       << (r.violates_m_delta_tilde ? "true" : "false")
       << ",\"m_delta_mode\":\"" << mode_label(r.m_delta_mode) << "\"}\n";
  } else {
    const auto line = [&os](const char* name, const std::string& value) {
      os << name;
      for (std::size_t i = std::string(name).size(); i < 24; ++i) os << ' ';
      os << value << '\n';
    };
    line("nbar", g12(r.nbar));
    line("eta", g12(r.eta));
    line("p", g12(r.p));
    line("S", g12(r.s_bound));
    line("M_delta", g12(r.m_delta));
    line("M_delta_tilde", g12(r.m_delta_tilde));
    line("m_delta_mode", mode_label(r.m_delta_mode));
    line("violates_S", r.violates_s ? "yes" : "no");
    line("violates_M_delta", r.violates_m_delta ? "yes" : "no");
    line("violates_M_delta_tilde", r.violates_m_delta_tilde ? "yes" : "no");
  }
  return emit(args.out, os.str());
}

struct SweepArgs {
  std::string vary = "nbar";
  double from = 0.0;
  double to = 0.0;
  long steps = 201;
  double nbar = 0.2;
  double eta = 0.4;
  std::string mode = "paper";
  std::string out;
  std::string config;
  bool from_given = false;
  bool to_given = false;
  bool nbar_given = false;
  bool eta_given = false;
};

int run_sweep(SweepArgs args) {
  const bool vary_nbar = args.vary == "nbar";
  if (vary_nbar && args.nbar_given) {
    std::cerr << "error: --nbar is the swept axis here; give --eta as the "
                 "fixed value\n";
    return kExitBadArgs;
  }
  if (!vary_nbar && args.eta_given) {
    std::cerr << "error: --eta is the swept axis here; give --nbar as the "
                 "fixed value\n";
    return kExitBadArgs;
  }
  if (!args.from_given) args.from = vary_nbar ? 0.0 : 0.05;
  if (!args.to_given) args.to = vary_nbar ? 2.0 : 1.0;
  if (!(args.from < args.to)) {
    std::cerr << "error: sweep needs --from < --to\n";
    return kExitBadArgs;
  }
  if (args.steps < 2) {
    std::cerr << "error: sweep needs --steps >= 2\n";
    return kExitBadArgs;
  }
  if (!vary_nbar && !(args.from > 0.0 && args.to <= 1.0)) {
    std::cerr << "error: an eta sweep must stay inside (0, 1]\n";
    return kExitBadArgs;
  }
  const ncb_mdelta_mode mode = parse_mode(args.mode);
  std::ostringstream os;
  os << kCsvHeader;
  for (long i = 0; i < args.steps; ++i) {
    // Uniform spacing, endpoints exact.
    const double x =
        i == args.steps - 1
            ? args.to
            : args.from + (args.to - args.from) *
                              static_cast<double>(i) /
                              static_cast<double>(args.steps - 1);
    const double nbar = vary_nbar ? x : args.nbar;
    const double eta = vary_nbar ? args.eta : x;
    ncb_bound_report r;
    if (ncb_report(nbar, eta, mode, &r) != NCB_OK) return report_error();
    csv_row(os, r);
  }
  return emit(args.out, os.str());
}

struct RegionsArgs {
  double nbar_from = 0.0;
  double nbar_to = 2.0;
  double eta_from = 0.05;
  double eta_to = 1.0;
  long resolution = 41;
  std::string mode = "paper";
  std::string out;
  std::string config;
};

int run_regions(const RegionsArgs& args) {
  if (!(args.nbar_from >= 0.0 && args.nbar_from < args.nbar_to)) {
    std::cerr << "error: regions needs 0 <= --nbar-from < --nbar-to\n";
    return kExitBadArgs;
  }
  if (!(args.eta_from > 0.0 && args.eta_from < args.eta_to &&
        args.eta_to <= 1.0)) {
    std::cerr << "error: regions needs 0 < --eta-from < --eta-to <= 1\n";
    return kExitBadArgs;
  }
  if (args.resolution < 2) {
    std::cerr << "error: regions needs --resolution >= 2\n";
    return kExitBadArgs;
  }
  const ncb_mdelta_mode mode = parse_mode(args.mode);
  const long n = args.resolution;
  const auto coord = [n](double from, double to, long i) {
    return i == n - 1 ? to
                      : from + (to - from) * static_cast<double>(i) /
                                   static_cast<double>(n - 1);
  };
  std::ostringstream os;
  os << kCsvHeader;
  // Row-major over the grid: nbar ascending outside, eta ascending inside.
  // The three flag columns together are the 3-bit violation class.
  for (long i = 0; i < n; ++i) {
    const double nbar = coord(args.nbar_from, args.nbar_to, i);
    for (long j = 0; j < n; ++j) {
      const double eta = coord(args.eta_from, args.eta_to, j);
      ncb_bound_report r;
      if (ncb_report(nbar, eta, mode, &r) != NCB_OK) return report_error();
      csv_row(os, r);
    }
  }
  return emit(args.out, os.str());
}

struct VerifyArgs {
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::string out;
  std::string config;
};

int run_verify_cmd(const VerifyArgs& args) {
  ncb_verify* v = nullptr;
  if (ncb_verify_run(args.tol, 0.0, args.seed, &v) != NCB_OK) {
    return report_error();
  }
  std::size_t count = 0;
  ncb_verify_check_count(v, &count);
  std::ostringstream os;
  os << "seed: " << args.seed << "\n";
  os << "check                         max_abs_error      pass\n";
  for (std::size_t i = 0; i < count; ++i) {
    const char* name = nullptr;
    double err = 0.0;
    int passed = 0;
    ncb_verify_check_name(v, i, &name);
    ncb_verify_check_error(v, i, &err);
    ncb_verify_check_passed(v, i, &passed);
    std::string row(name);
    row.resize(30, ' ');
    std::string err_text = g12(err);
    err_text.resize(19, ' ');
    os << row << err_text << (passed ? "yes" : "NO") << "\n";
  }
  int overall = 0;
  ncb_verify_overall(v, &overall);
  os << "overall: " << (overall ? "pass" : "FAIL") << "\n";
  ncb_verify_free(v);
  const int emitted = emit(args.out, os.str());
  if (emitted != kExitOk) return emitted;
  return overall ? kExitOk : kExitVerifyFailed;
}

void add_config(CLI::App* cmd, std::string& target) {
  cmd->add_option("--config", target,
                  "Read option defaults from a key=value file; explicit "
                  "flags win");
  // Explicit flags beat config-injected values because injected tokens go
  // first and every option reduces take-last.
  for (CLI::Option* opt : cmd->get_options())
    if (opt != cmd->get_help_ptr())
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

std::string strip(const std::string& s) {
  const char* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Expands a --config file into option tokens injected right after the
// subcommand name, ahead of the user's explicit flags. Done by hand rather
// than through the library's config hook, which only fires on the root
// command while --config here belongs to the subcommands. Injection feeds
// the values through the normal parse, so conversion, validation and
// required-option checks all apply to them unchanged.
int inject_config(std::vector<std::string>& args, CLI::App& app) {
  if (args.empty()) return kExitOk;
  CLI::App* sub = app.get_subcommand_no_throw(args.front());
  if (sub == nullptr) return kExitOk;  // let the parser report it

  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (path.empty()) return kExitOk;

  std::ifstream f(path);
  if (!f) {
    std::cerr << "error: cannot read config file '" << path << "'\n";
    return kExitBadArgs;
  }
  std::vector<std::string> injected;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const std::string entry = strip(line);
    if (entry.empty() || entry[0] == '#') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: " << path << ':' << lineno
                << ": expected key=value\n";
      return kExitBadArgs;
    }
    const std::string key = strip(entry.substr(0, eq));
    const std::string value = strip(entry.substr(eq + 1));
    if (key.empty() || key == "config" ||
        sub->get_option_no_throw("--" + key) == nullptr) {
      std::cerr << "error: " << path << ':' << lineno
                << ": unknown config key '" << key << "'\n";
      return kExitBadArgs;
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Nonclassicality certification for photon-added thermal states "
      "measured with inefficient single-photon detectors"};
  app.require_subcommand(1);

  const std::vector<std::string> modes{"paper", "true"};

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand(
      "report", "Certify one (nbar, eta) point: p, the classical ceilings "
                "S, M_delta, M_delta_tilde, and violation flags");
  report->add_option("--nbar", report_args.nbar,
                     "Mean photon number of the thermal base state, >= 0")
      ->required();
  report->add_option("--eta", report_args.eta,
                     "Detector efficiency, in (0, 1]")
      ->required();
  report
      ->add_option("--m-delta-mode", report_args.mode,
                   "M_delta flavor: published stationary formula or true "
                   "maximum")
      ->transform(CLI::IsMember(modes))
      ->capture_default_str();
  report
      ->add_option("--format", report_args.format, "Output format")
      ->transform(CLI::IsMember({"table", "csv", "json-lines"}))
      ->capture_default_str();
  report->add_option("--out", report_args.out,
                     "Write to this path instead of standard output");
  add_config(report, report_args.config);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "CSV of all quantities along one axis with the other fixed "
               "(plot-ready curves)");
  CLI::Option* vary_opt =
      sweep->add_option("--vary", sweep_args.vary, "Axis to sweep")
          ->transform(CLI::IsMember({"nbar", "eta"}))
          ->capture_default_str();
  CLI::Option* from_opt = sweep->add_option(
      "--from", sweep_args.from,
      "Sweep start (default 0 for nbar, 0.05 for eta)");
  CLI::Option* to_opt = sweep->add_option(
      "--to", sweep_args.to, "Sweep end (default 2 for nbar, 1 for eta)");
  sweep->add_option("--steps", sweep_args.steps, "Number of points, >= 2")
      ->capture_default_str();
  CLI::Option* sweep_nbar_opt = sweep->add_option(
      "--nbar", sweep_args.nbar,
      "Fixed mean photon number for an eta sweep (default 0.2)");
  CLI::Option* sweep_eta_opt = sweep->add_option(
      "--eta", sweep_args.eta,
      "Fixed detector efficiency for an nbar sweep (default 0.4)");
  sweep
      ->add_option("--m-delta-mode", sweep_args.mode, "M_delta flavor")
      ->transform(CLI::IsMember(modes))
      ->capture_default_str();
  sweep->add_option("--out", sweep_args.out,
                    "Write to this path instead of standard output");
  add_config(sweep, sweep_args.config);
  (void)vary_opt;

  RegionsArgs regions_args;
  CLI::App* regions = app.add_subcommand(
      "regions", "CSV violation map over an (nbar, eta) rectangle; the flag "
                 "columns class each point");
  regions->add_option("--nbar-from", regions_args.nbar_from, "Grid start")
      ->capture_default_str();
  regions->add_option("--nbar-to", regions_args.nbar_to, "Grid end")
      ->capture_default_str();
  regions->add_option("--eta-from", regions_args.eta_from, "Grid start")
      ->capture_default_str();
  regions->add_option("--eta-to", regions_args.eta_to, "Grid end")
      ->capture_default_str();
  regions
      ->add_option("--resolution", regions_args.resolution,
                   "Points per axis, >= 2")
      ->capture_default_str();
  regions
      ->add_option("--m-delta-mode", regions_args.mode, "M_delta flavor")
      ->transform(CLI::IsMember(modes))
      ->capture_default_str();
  regions->add_option("--out", regions_args.out,
                      "Write to this path instead of standard output");
  add_config(regions, regions_args.config);

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand(
      "verify", "Cross-validate every closed form against brute-force "
                "numerics; exit 0 only if all checks pass");
  verify
      ->add_option("--tol", verify_args.tol,
                   "Match tolerance for closed-form vs numeric comparisons")
      ->capture_default_str();
  verify
      ->add_option("--seed", verify_args.seed,
                   "Seed for the random classical-mixture states")
      ->capture_default_str();
  verify->add_option("--out", verify_args.out,
                     "Write the check table to this path");
  add_config(verify, verify_args.config);

  std::vector<std::string> args(argv + 1, argv + argc);
  if (const int bad = inject_config(args, app)) return bad;
  std::reverse(args.begin(), args.end());  // the vector overload wants that
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  sweep_args.from_given = from_opt->count() > 0;
  sweep_args.to_given = to_opt->count() > 0;
  sweep_args.nbar_given = sweep_nbar_opt->count() > 0;
  sweep_args.eta_given = sweep_eta_opt->count() > 0;

  if (report->parsed()) return run_report(report_args);
  if (sweep->parsed()) return run_sweep(sweep_args);
  if (regions->parsed()) return run_regions(regions_args);
  if (verify->parsed()) return run_verify_cmd(verify_args);
  return kExitBadArgs;
}
