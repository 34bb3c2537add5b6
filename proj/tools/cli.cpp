#include "cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hetstab/cycle_io.hpp"
#include "hetstab/error.hpp"
#include "hetstab/findex.hpp"
#include "hetstab/oracle.hpp"
#include "hetstab/rsp.hpp"
#include "hetstab/stability.hpp"
#include "hetstab/version.hpp"

namespace hetstab::cli {

namespace {

using json = nlohmann::ordered_json;

json to_json_value(ExtendedReal x) {
  if (x.is_finite()) return x.value();
  return x.to_string();
}

std::string fmt(double x) { return format_double(x); }

double parse_number(const std::string& text, const std::string& what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw Error(ErrorKind::InvalidArgument, "cannot read " + what + " from \"" + text + "\"");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, char sep, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(parse_number(item, what));
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, what + " is empty");
  return out;
}

struct Range {
  double first = 0.0;
  double last = 0.0;
  std::size_t count = 0;
};

// "a:b:n"
Range parse_range(const std::string& text, const std::string& what) {
  const auto parts = parse_list(text, ':', what);
  if (parts.size() != 3 || parts[2] < 1 || parts[2] != static_cast<double>(static_cast<long>(parts[2]))) {
    throw Error(ErrorKind::InvalidArgument, what + " must look like first:last:count");
  }
  return {parts[0], parts[1], static_cast<std::size_t>(parts[2])};
}

std::vector<double> linear_ladder(const Range& r) {
  if (r.count == 1) return {r.first};
  std::vector<double> out(r.count);
  for (std::size_t i = 0; i < r.count; ++i) {
    out[i] = r.first + (r.last - r.first) * static_cast<double>(i) / static_cast<double>(r.count - 1);
  }
  return out;
}

std::string join(const std::vector<std::size_t>& v) {
  if (v.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

std::string vector_text(std::span<const double> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out + ")";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << text;
}

std::string header(const std::string& command) {
  return std::string("hetstab ") + kVersion + " " + command;
}

MatrixCycle load_matrix_cycle(const std::string& path) {
  return MatrixCycle::from_cycle(validate_cycle(load_cycle_spec(path)));
}

json report_json(const IndexReport& report) {
  json sigma = json::array();
  for (std::size_t j = 0; j < report.sigma.size(); ++j) {
    const auto& s = report.sigma[j];
    json row = {{"node", j}, {"sigma", to_json_value(s.value)}, {"rule", to_string(s.rule)}};
    if (s.minimizer) {
      row["minimizer"] = describe(s.minimizer->source, j);
      const auto a = s.minimizer->alpha.components();
      row["alpha"] = std::vector<double>(a.begin(), a.end());
    }
    if (s.violating_node) row["violating_node"] = *s.violating_node;
    sigma.push_back(row);
  }
  return {{"sigma", sigma},
          {"classification", to_string(report.classification)},
          {"verdict", verdict(report.classification)},
          {"negative_indices", report.negative_indices},
          {"checkpoints", report.checkpoints}};
}

void print_report(std::ostream& out, const IndexReport& report) {
  out << "negative-entry indices: " << join(report.negative_indices) << "\n";
  out << "checkpoints: " << join(report.checkpoints) << "\n\n";
  out << std::left << std::setw(4) << "j" << std::setw(24) << "sigma_j" << std::setw(26) << "rule"
      << "minimizer\n";
  for (std::size_t j = 0; j < report.sigma.size(); ++j) {
    const auto& s = report.sigma[j];
    out << std::setw(4) << j << std::setw(24) << s.value.to_string() << std::setw(26)
        << to_string(s.rule);
    if (s.minimizer) {
      out << describe(s.minimizer->source, j) << " " << vector_text(s.minimizer->alpha.components());
    } else if (s.violating_node) {
      out << "at M^(" << *s.violating_node << ")";
    }
    out << "\n";
  }
  out << "\nclassification: " << to_string(report.classification) << " ("
      << verdict(report.classification) << ")\n";
}

// --- subcommands ---------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  double tol = kDefaultTolerance;
  std::string json_out;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  if (!(a.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
  const auto cycle = load_matrix_cycle(a.input);
  const auto report = classify(cycle, a.tol);
  out << header("analyze") << "\n";
  out << "input: " << a.input << "\ntol: " << fmt(a.tol) << "\n";
  out << "nodes: " << cycle.node_count() << "  dimension: " << cycle.dimension() << "\n";
  print_report(out, report);
  if (!a.json_out.empty()) {
    json doc = {{"tool", "hetstab"},
                {"version", kVersion},
                {"command", "analyze"},
                {"config", {{"input", a.input}, {"tol", a.tol}}}};
    doc.update(report_json(report));
    write_file(a.json_out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

struct RspArgs {
  double eps_x = 0.0;
  double eps_y = 0.0;
  double tol = kDefaultTolerance;
  std::string json_out;
};

int cmd_rsp(const RspArgs& a, std::ostream& out) {
  const RspParams p{a.eps_x, a.eps_y};
  p.validate();
  const auto [m0, m1] = rsp_matrices(p);
  const auto cmp = rsp_compare(p, a.tol);
  out << header("rsp") << "\n";
  out << "eps_x: " << fmt(p.eps_x) << "  eps_y: " << fmt(p.eps_y) << "  tol: " << fmt(a.tol) << "\n";
  out << "\n" << to_csv(m0) << to_csv(m1) << "\n";
  print_report(out, cmp.report);
  if (cmp.closed_form) {
    for (std::size_t j = 0; j < 2; ++j) {
      out << "closed form sigma_" << j << ": " << (*cmp.closed_form)[j].to_string()
          << "  |difference|: " << fmt(cmp.abs_error[j]) << "\n";
    }
  } else {
    out << "closed form: not f.a.s. (eps_x + eps_y >= 0)\n";
  }
  out << "agreement: " << (cmp.agrees ? "yes" : "no") << "\n";
  if (!a.json_out.empty()) {
    json doc = {{"tool", "hetstab"},
                {"version", kVersion},
                {"command", "rsp"},
                {"config", {{"eps_x", p.eps_x}, {"eps_y", p.eps_y}, {"tol", a.tol}}}};
    doc.update(report_json(cmp.report));
    if (cmp.closed_form) {
      doc["closed_form"] = {to_json_value((*cmp.closed_form)[0]), to_json_value((*cmp.closed_form)[1])};
    }
    doc["agrees"] = cmp.agrees;
    write_file(a.json_out, doc.dump(2) + "\n");
  }
  return kExitOk;
}

struct SweepArgs {
  int grid = 5;
  double tol = kDefaultTolerance;
  std::string out_path;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  std::ostringstream csv;
  csv << "# " << header("rsp-sweep") << " grid=" << a.grid << " tol=" << fmt(a.tol) << "\n";
  csv << "eps_x,eps_y,sigma0,sigma1,classification\n";
  std::size_t disagreements = 0;
  for (const auto& p : rsp_grid(a.grid)) {
    const auto cmp = rsp_compare(p, a.tol);
    if (!cmp.agrees) ++disagreements;
    csv << fmt(p.eps_x) << "," << fmt(p.eps_y) << "," << cmp.report.sigma[0].value.to_string() << ","
        << cmp.report.sigma[1].value.to_string() << "," << to_string(cmp.report.classification)
        << "\n";
  }
  if (a.out_path.empty()) {
    out << csv.str();
  } else {
    write_file(a.out_path, csv.str());
    out << header("rsp-sweep") << "\n"
        << "grid: " << a.grid << "  points: " << a.grid * a.grid << "  tol: " << fmt(a.tol) << "\n"
        << "closed-form disagreements: " << disagreements << "\n"
        << "wrote " << a.out_path << "\n";
  }
  return kExitOk;
}

struct OracleSigmaArgs {
  std::string input;
  std::size_t node = 0;
  double delta = 1e-2;
  std::string eps = "1e-14:1e-26:5";
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  std::size_t turns = 200;
  unsigned threads = 0;
  std::string csv_out;
};

int cmd_oracle_sigma(const OracleSigmaArgs& a, std::ostream& out) {
  const auto cycle = load_matrix_cycle(a.input);
  const auto range = parse_range(a.eps, "--eps");
  EstimatorConfig cfg;
  cfg.delta = a.delta;
  cfg.epsilon_ladder = log_ladder(range.first, range.last, range.count);
  cfg.samples_per_level = a.samples;
  cfg.max_full_turns = a.turns;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.validate();

  const auto est = estimate_sigma_mc(cycle, a.node, cfg);
  std::ostringstream cfg_line;
  cfg_line << "node=" << a.node << " delta=" << fmt(cfg.delta) << " eps=" << a.eps
           << " samples=" << cfg.samples_per_level << " turns=" << cfg.max_full_turns
           << " seed=" << cfg.seed;

  out << header("oracle sigma") << "\n";
  out << "input: " << a.input << "\n" << cfg_line.str() << "\n\n";
  out << std::left << std::setw(7) << "level" << std::setw(14) << "epsilon" << std::setw(24)
      << "sigma_hat_frac" << "stderr\n";
  for (std::size_t i = 0; i < est.levels.size(); ++i) {
    const auto& l = est.levels[i];
    out << std::setw(7) << i << std::setw(14) << fmt(l.epsilon) << std::setw(24) << fmt(l.fraction)
        << fmt(l.std_error) << "\n";
  }
  out << "\nstatus: " << to_string(est.status) << "\n";
  if (est.fit_plus && est.fit_minus) {
    out << "sigma_plus: " << fmt(est.fit_plus->slope) << " (rms " << fmt(est.fit_plus->residual)
        << ")\n";
    out << "sigma_minus: " << fmt(est.fit_minus->slope) << " (rms " << fmt(est.fit_minus->residual)
        << ")\n";
  }
  out << "sigma_hat: " << (est.sigma_hat ? est.sigma_hat->to_string() : "unresolved") << "\n";
  try {
    out << "analytic sigma_" << a.node << ": " << sigma(cycle, a.node).value.to_string() << "\n";
  } catch (const IndeterminateError& e) {
    out << "analytic sigma_" << a.node << ": indeterminate (" << e.what() << ")\n";
  }

  if (!a.csv_out.empty()) {
    std::ostringstream csv;
    csv << "# " << header("oracle sigma") << " input=" << a.input << " " << cfg_line.str() << "\n";
    csv << "level,epsilon,sigma_hat_frac,stderr\n";
    for (std::size_t i = 0; i < est.levels.size(); ++i) {
      const auto& l = est.levels[i];
      csv << i << "," << fmt(l.epsilon) << "," << fmt(l.fraction) << "," << fmt(l.std_error) << "\n";
    }
    write_file(a.csv_out, csv.str());
  }
  return kExitOk;
}

struct OracleFplusArgs {
  std::string alpha;
  std::string levels = "-2:-10:9";
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

int cmd_oracle_fplus(const OracleFplusArgs& a, std::ostream& out) {
  const AlphaVector alpha(parse_list(a.alpha, ',', "--alpha"));
  const auto r = linear_ladder(parse_range(a.levels, "--levels"));
  const auto est = estimate_fplus_mc(alpha, r, a.samples, a.seed, a.threads);
  out << header("oracle fplus") << "\n";
  out << "alpha=" << vector_text(alpha.components()) << " levels=" << a.levels
      << " samples=" << a.samples << " seed=" << a.seed << "\n\n";
  out << std::left << std::setw(8) << "R" << std::setw(26) << "one_minus_sigma" << std::setw(26)
      << "stderr" << "raw_fraction\n";
  for (std::size_t i = 0; i < est.levels.size(); ++i) {
    const auto& l = est.levels[i];
    out << std::setw(8) << fmt(l.epsilon) << std::setw(26) << fmt(l.fraction) << std::setw(26)
        << fmt(l.std_error) << fmt(est.raw_fraction[i]) << "\n";
  }
  out << "\nstatus: " << to_string(est.status) << "\n";
  out << "F^+ estimate: " << (est.f_plus_hat ? est.f_plus_hat->to_string() : "unresolved") << "\n";
  out << "F^+ exact: " << f_plus(alpha).to_string() << "\n";
  return kExitOk;
}

int cmd_findex(const std::string& alpha_text, std::ostream& out) {
  const AlphaVector alpha(parse_list(alpha_text, ',', "--alpha"));
  const auto v = evaluate_findex(alpha);
  out << "alpha: " << vector_text(alpha.components()) << "\n";
  out << "F^+=" << v.plus.to_string() << "\n";
  out << "F^-=" << v.minus.to_string() << "\n";
  out << "F^index=" << v.index.to_string() << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability indices of quasi-simple heteroclinic cycles", "hetstab"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Local stability indices and classification");
  c_analyze->add_option("cycle", analyze.input, "Cycle description (JSON)")->required();
  c_analyze->add_option("--tol", analyze.tol, "Spectral tolerance")->capture_default_str();
  c_analyze->add_option("--json", analyze.json_out, "Write a JSON report here");

  RspArgs rsp;
  auto* c_rsp = app.add_subcommand("rsp", "Rock-Scissors-Paper cycle against its closed forms");
  c_rsp->add_option("--eps-x", rsp.eps_x, "eps_x in (-1, 1)")->required();
  c_rsp->add_option("--eps-y", rsp.eps_y, "eps_y in (-1, 1)")->required();
  c_rsp->add_option("--tol", rsp.tol, "Spectral tolerance")->capture_default_str();
  c_rsp->add_option("--json", rsp.json_out, "Write a JSON report here");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("rsp-sweep", "RSP indices over a G x G parameter grid");
  c_sweep->add_option("--grid", sweep.grid, "Grid size G")->capture_default_str();
  c_sweep->add_option("--tol", sweep.tol, "Spectral tolerance")->capture_default_str();
  c_sweep->add_option("--out", sweep.out_path, "CSV output (stdout if omitted)");

  auto* c_oracle = app.add_subcommand("oracle", "Monte-Carlo cross-checks");
  c_oracle->require_subcommand(1);

  OracleSigmaArgs osig;
  auto* c_osig = c_oracle->add_subcommand("sigma", "Estimate sigma_j by basin sampling");
  c_osig->add_option("cycle", osig.input, "Cycle description (JSON)")->required();
  c_osig->add_option("--node", osig.node, "Node j")->capture_default_str();
  c_osig->add_option("--delta", osig.delta, "Tube radius")->capture_default_str();
  c_osig->add_option("--eps", osig.eps, "first:last:count, log-spaced")->capture_default_str();
  c_osig->add_option("--samples", osig.samples, "Samples per level")->capture_default_str();
  c_osig->add_option("--seed", osig.seed, "RNG seed")->capture_default_str();
  c_osig->add_option("--turns", osig.turns, "Full returns per sample")->capture_default_str();
  c_osig->add_option("--threads", osig.threads, "Worker threads (0 = auto)")->capture_default_str();
  c_osig->add_option("--csv", osig.csv_out, "Write per-level CSV here");

  OracleFplusArgs ofp;
  auto* c_ofp = c_oracle->add_subcommand("fplus", "Estimate F^+(alpha) by sampling");
  c_ofp->add_option("--alpha", ofp.alpha, "Comma-separated components")->required();
  c_ofp->add_option("--levels", ofp.levels, "R values first:last:count")->capture_default_str();
  c_ofp->add_option("--samples", ofp.samples, "Samples per level")->capture_default_str();
  c_ofp->add_option("--seed", ofp.seed, "RNG seed")->capture_default_str();
  c_ofp->add_option("--threads", ofp.threads, "Worker threads (0 = auto)")->capture_default_str();

  std::string findex_alpha;
  auto* c_findex = app.add_subcommand("findex", "Evaluate F^+, F^- and F^index");
  c_findex->add_option("--alpha", findex_alpha, "Comma-separated components")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*c_analyze) return cmd_analyze(analyze, out);
    if (*c_rsp) return cmd_rsp(rsp, out);
    if (*c_sweep) return cmd_sweep(sweep, out);
    if (*c_osig) return cmd_oracle_sigma(osig, out);
    if (*c_ofp) return cmd_oracle_fplus(ofp, out);
    if (*c_findex) return cmd_findex(findex_alpha, out);
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) err << to_string(v.kind) << ": " << v.message << "\n";
    return kExitInvalid;
  } catch (const IndeterminateError& e) {
    err << e.what() << "\n";
    return kExitIndeterminate;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace hetstab::cli
