#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "gwregion/errors.hpp"
#include "gwregion/format.hpp"

namespace gwregion::cli {
namespace {

using nlohmann::json;

json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json matrix(const info::Joint2x2& m) { return json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}); }

// Axis names of the two grid coordinates for a quantity.
std::pair<const char*, const char*> axes(surface::Quantity which) {
  switch (which) {
    case surface::Quantity::rd: return {"d1", "d2"};
    case surface::Quantity::lossy: return {"r1", "r2"};
    default: return {"alpha", "beta"};
  }
}

const char* param_name(surface::SourceKind kind) {
  return kind == surface::SourceKind::dsbs ? "p" : "rho";
}

struct PointOptions {
  std::string source;
  std::optional<double> p, rho;
  double alpha = 0.0, beta = 0.0;
  std::string which = "increasing";
  double q = -1.0, r1 = 0.0, r2 = 0.0, d1 = 0.1, d2 = 0.1;
};

void add_point_options(CLI::App* cmd, PointOptions& o) {
  cmd->add_option("source", o.source, "dsbs or gaussian")
      ->required()
      ->check(CLI::IsMember({"dsbs", "gaussian"}));
  cmd->add_option("--p", o.p, "DSBS crossover probability, 0 < p < 1/2");
  cmd->add_option("--rho", o.rho, "Gaussian correlation, 0 < rho < 1");
  cmd->add_option("--which", o.which,
                  "increasing, lower, upper, rd, psi-lower, phi-upper, phi-q, conv-phi, lossy")
      ->capture_default_str();
  cmd->add_option("--q", o.q, "negative exponent for phi-q")->capture_default_str();
  cmd->add_option("--r1", o.r1, "private rate 1 (lossy)")->capture_default_str();
  cmd->add_option("--r2", o.r2, "private rate 2 (lossy)")->capture_default_str();
  cmd->add_option("--d1", o.d1, "distortion 1 (rd, lossy)")->capture_default_str();
  cmd->add_option("--d2", o.d2, "distortion 2 (rd, lossy)")->capture_default_str();
}

surface::Query to_query(const PointOptions& o) {
  surface::Query q;
  q.source = surface::parse_source(o.source);
  q.which = surface::parse_quantity(o.which);
  const auto& param = q.source == surface::SourceKind::dsbs ? o.p : o.rho;
  if (!param) {
    throw DomainError(std::string("missing --") + param_name(q.source) + " for the " + o.source +
                      " source");
  }
  q.param = *param;
  q.q = o.q;
  q.r1 = o.r1;
  q.r2 = o.r2;
  q.d1 = o.d1;
  q.d2 = o.d2;
  return q;
}

// Grid coordinates of a single evaluation.
std::pair<double, double> point_of(const surface::Query& q, const PointOptions& o) {
  switch (q.which) {
    case surface::Quantity::rd: return {o.d1, o.d2};
    case surface::Quantity::lossy: return {o.r1, o.r2};
    default: return {o.alpha, o.beta};
  }
}

}  // namespace

std::string eval_json(const surface::Query& query, const surface::EnvelopeSample& s) {
  json j;
  j["source"] = surface::to_string(query.source);
  j[param_name(query.source)] = query.param;
  j["which"] = surface::to_string(query.which);
  j["units"] = info::unit_name(surface::units(query.source));
  const auto [x_name, y_name] = axes(query.which);
  j[x_name] = s.alpha;
  if (query.which != surface::Quantity::phi_q) j[y_name] = s.beta;
  if (query.which == surface::Quantity::phi_q) j["q"] = query.q;
  if (query.which == surface::Quantity::lossy) {
    j["d1"] = query.d1;
    j["d2"] = query.d2;
  }
  j["value"] = s.value ? number(*s.value) : json(nullptr);
  if (!s.region.empty()) j["region"] = s.region;
  if (s.coupling) j["coupling"] = matrix(*s.coupling);
  if (s.mixture) {
    json comps = json::array();
    for (const auto& c : s.mixture->components) comps.push_back(matrix(c));
    j["mixture"] = {{"weights", s.mixture->weights}, {"components", comps}};
  }
  return j.dump();
}

std::string surface_csv(const surface::Query& query, int steps) {
  const auto rows = surface::sample_surface(query, steps);
  const auto [x_name, y_name] = axes(query.which);
  std::string out = "# units=" + std::string(info::unit_name(surface::units(query.source))) +
                    " source=" + std::string(surface::to_string(query.source)) + " " +
                    param_name(query.source) + "=" + format_number(query.param) +
                    " which=" + std::string(surface::to_string(query.which)) + " axes=" + x_name +
                    "," + y_name + "\n";
  out += "alpha,beta,value,region\n";
  for (const auto& r : rows) {
    out += format_number(r.alpha) + "," + format_number(r.beta) + "," +
           (r.value ? format_number(*r.value) : std::string()) + "," + r.region + "\n";
  }
  return out;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::vector<verify::CheckResult>* results) {
  verify::SuiteOptions opts;
  opts.quick = args.quick;
  opts.seed = args.seed;
  opts.threads = args.threads;
  opts.inject_fault = args.inject_fault;
  out << "gwregion verify seed=" << args.seed << " mode=" << (args.quick ? "quick" : "full")
      << "\n";
  std::vector<verify::CheckResult> all;
  for (int c = 1; c <= verify::kCriteria; ++c) {
    if (!args.only.empty() && std::find(args.only.begin(), args.only.end(), c) == args.only.end()) {
      continue;
    }
    for (auto& r : verify::run_criterion(c, opts)) {
      out << verify::format_line(r, args.timings) << "\n" << std::flush;
      all.push_back(std::move(r));
    }
  }
  std::size_t failed = 0;
  for (const auto& r : all) failed += r.passed ? 0 : 1;
  out << (all.size() - failed) << "/" << all.size() << " checks passed\n";
  if (results) *results = all;
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gray-Wyner region envelopes for binary and Gaussian sources", "gwregion"};
  app.require_subcommand(1);

  PointOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "evaluate one quantity at one point, printed as JSON");
  add_point_options(eval, eval_opts);
  eval->add_option("--alpha", eval_opts.alpha, "first coordinate")->capture_default_str();
  eval->add_option("--beta", eval_opts.beta, "second coordinate")->capture_default_str();

  PointOptions surf_opts;
  int steps = 101;
  std::string output;
  auto* surf = app.add_subcommand("surface", "sweep a quantity over a square grid, printed as CSV");
  add_point_options(surf, surf_opts);
  surf->add_option("--steps", steps, "grid points per axis")->capture_default_str();
  surf->add_option("--output,-o", output, "output file (default: stdout)");

  VerifyArgs vargs;
  auto* ver = app.add_subcommand("verify", "run the self-check suite");
  ver->add_flag("--quick", vargs.quick, "reduced grids and restarts");
  ver->add_option("--seed", vargs.seed, "random seed")->capture_default_str();
  ver->add_option("--threads", vargs.threads, "oracle worker threads")->capture_default_str();
  ver->add_flag("--timings", vargs.timings, "append wall time to each line");
  ver->add_option("--only", vargs.only, "criteria to run (1-8)");
  ver->add_flag("--inject-fault", vargs.inject_fault)->group("");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (*eval) {
      const auto q = to_query(eval_opts);
      const auto [x, y] = point_of(q, eval_opts);
      out << eval_json(q, surface::evaluate(q, x, y)) << "\n";
      return kExitOk;
    }
    if (*surf) {
      const std::string csv = surface_csv(to_query(surf_opts), steps);
      if (output.empty()) {
        out << csv;
        return kExitOk;
      }
      std::ofstream file(output, std::ios::binary);
      if (!file) {
        err << "error: cannot open output file '" << output << "'\n";
        return kExitIo;
      }
      file << csv;
      file.flush();
      if (!file) {
        err << "error: failed writing '" << output << "'\n";
        return kExitIo;
      }
      return kExitOk;
    }
    return cmd_verify(vargs, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace gwregion::cli
