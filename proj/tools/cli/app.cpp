#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "nodal/embedding.hpp"
#include "nodal/errors.hpp"
#include "nodal/harmonics.hpp"
#include "nodal/integralgeom.hpp"

#ifndef NODAL_VERSION
#define NODAL_VERSION "0.0.0"
#endif

namespace nodal::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised inside a subcommand when a checked identity fails.
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateRun : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kCommands = {"invariants", "count",     "average",       "conjecture",
                                         "zonal",      "embedding", "crofton-length"};

constexpr int kMaxTrials = 1'000'000;
constexpr int kMaxDepth = 9;

// Checked tolerances for the pointwise identities.
constexpr double kUnsoldTolerance = 1e-8;
constexpr double kGradientSumTolerance = 1e-6;
constexpr double kOrthonormalityTolerance = 1e-8;
constexpr double kLaplacianTolerance = 1e-4;
constexpr int kLaplacianMaxDegree = 10;
constexpr double kDilationTolerance = 1e-6;
constexpr double kImageVolumeTolerance = 5e-3;

std::vector<int> expanded_degrees(const RunConfig& c) {
  if (c.degrees.size() == 1) return std::vector<int>(static_cast<std::size_t>(c.sphere_dim), c.degrees.front());
  return c.degrees;
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& what) { throw InvalidArgument(what); };
  if (!kCommands.contains(c.command)) fail("unknown command '" + c.command + "'");
  if (c.sphere_dim != 1 && c.sphere_dim != 2) fail("--sphere must be 1 or 2");
  if (c.degrees.empty()) fail("at least one degree is required");
  if (c.degrees.size() != 1 && static_cast<int>(c.degrees.size()) != c.sphere_dim) {
    fail("give one degree or exactly --sphere degrees");
  }
  for (int m : c.degrees) {
    if (m < 1 || m > kMaxDegree) fail("degrees must lie in [1, " + std::to_string(kMaxDegree) + "]");
  }
  if (c.trials < 1 || c.trials > kMaxTrials) fail("--trials must lie in [1, 1000000]");
  if (c.solver.depth < 0 || c.solver.depth > kMaxDepth) fail("--depth must lie in [0, 9] (0 = automatic)");
  if (!(c.solver.newton_tolerance > 0.0)) fail("--newton-tol must be positive");
  if (c.solver.max_iterations < 1 || c.solver.max_iterations > 1000) fail("--max-iter must lie in [1, 1000]");
  if (!(c.solver.dedup_radius > 0.0 && c.solver.dedup_radius < 1.0)) fail("--dedup-radius must lie in (0, 1)");
  if (c.quadrature_depth < 0 || c.quadrature_depth > kMaxDepth) fail("--quad-depth must lie in [0, 9]");
  if (c.points < 1 || c.points > kMaxTrials) fail("--points must lie in [1, 1000000]");
  if (c.function != "zonal" && c.function != "random") fail("--function must be zonal or random");

  const auto degrees = expanded_degrees(c);
  const bool mixed = std::adjacent_find(degrees.begin(), degrees.end(), std::not_equal_to<>()) != degrees.end();
  if (c.command == "average" && mixed) fail("average needs a single degree; use conjecture for mixed degrees");
  if (c.command == "conjecture" && c.sphere_dim != 2) fail("conjecture runs on --sphere 2");
  if ((c.command == "zonal" || c.command == "crofton-length") && c.sphere_dim != 2) {
    fail(c.command + " runs on --sphere 2");
  }
  if (c.command == "zonal" && c.alpha >= 0.0 && !(c.alpha < zonal_alpha_max(degrees.front()))) {
    fail("--alpha must be below " + std::to_string(zonal_alpha_max(degrees.front())) + " for this degree");
  }
}

Json config_echo(const RunConfig& c) {
  Json j;
  j["sphere"] = c.sphere_dim;
  j["degrees"] = expanded_degrees(c);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["depth"] = c.solver.depth;
  j["newton_tol"] = c.solver.newton_tolerance;
  j["max_iter"] = c.solver.max_iterations;
  j["dedup_radius"] = c.solver.dedup_radius;
  j["quad_depth"] = c.quadrature_depth;
  j["alpha"] = c.alpha;
  j["function"] = c.function;
  j["points"] = c.points;
  j["format"] = c.format == Format::Json ? "json" : "csv";
  return j;
}

Json skeleton(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["version"] = NODAL_VERSION;
  j["config"] = config_echo(c);
  j["theory"] = {{"value", nullptr}, {"formula_id", nullptr}};
  j["estimate"] = {{"mean", nullptr}, {"stderr", nullptr}, {"trials", nullptr}};
  j["diagnostics"] = {{"degenerate_resamples", 0}, {"depth_escalations", 0}, {"max_residual", 0.0}};
  j["experimental"] = false;
  return j;
}

Json points_json(const std::vector<SpherePoint>& zeros) {
  Json arr = Json::array();
  for (const auto& p : zeros) {
    Json pt = Json::array();
    for (double v : p.coords()) pt.push_back(v);
    arr.push_back(std::move(pt));
  }
  return arr;
}

std::vector<HarmonicBasis> bases_for(const RunConfig& c) {
  std::vector<HarmonicBasis> out;
  for (int m : expanded_degrees(c)) out.push_back(build_basis(c.sphere_dim, m));
  return out;
}

void run_invariants(const RunConfig& c, Json& j) {
  const HarmonicBasis basis = build_basis(c.sphere_dim, c.degrees.front());
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss;
  const double r2 = basis.squared_radius();
  const double gsum = basis.gradient_sum();
  double unsold = 0.0, gradient = 0.0, laplacian = 0.0, mean_r2 = 0.0;
  for (int i = 0; i < c.points; ++i) {
    const SpherePoint x = random_point(c.sphere_dim, rng);
    const double s = eval_basis(basis, x).squaredNorm();
    mean_r2 += s / c.points;
    unsold = std::max(unsold, std::abs(s - r2) / r2);
    double g = 0.0;
    for (const auto& v : eval_gradient(basis, x)) g += v.squaredNorm();
    gradient = std::max(gradient, std::abs(g - gsum) / gsum);
    CoefficientVector coeffs(basis.dimension());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] = gauss(rng);
    coeffs.normalize();
    const double lu = basis.eigenvalue() * basis.value(coeffs, x.ambient());
    laplacian = std::max(laplacian, laplacian_residual(basis, coeffs, x) / (1.0 + std::abs(lu)));
  }
  const Eigen::MatrixXd gram = gram_matrix(basis);
  const double ortho =
      (gram - Eigen::MatrixXd::Identity(basis.dimension(), basis.dimension())).cwiseAbs().maxCoeff();

  j["theory"] = {{"value", r2}, {"formula_id", "THM_2_3"}};
  j["estimate"] = {{"mean", mean_r2}, {"stderr", 0.0}, {"trials", c.points}};
  j["diagnostics"]["max_residual"] = unsold;
  j["identities"] = {
      {"THM_2_3", {{"value", r2}, {"max_relative_residual", unsold}, {"tolerance", kUnsoldTolerance}}},
      {"THM_2_1", {{"value", gsum}, {"max_relative_residual", gradient}, {"tolerance", kGradientSumTolerance}}},
      {"orthonormality", {{"max_abs_residual", ortho}, {"tolerance", kOrthonormalityTolerance}}},
      {"laplacian", {{"max_scaled_residual", laplacian},
                     {"tolerance", kLaplacianTolerance},
                     {"enforced", basis.degree() <= kLaplacianMaxDegree}}},
  };
  if (!(unsold <= kUnsoldTolerance)) throw InvariantViolation("THM_2_3 (sum f_i^2 = N/vol M) residual exceeded");
  if (!(gradient <= kGradientSumTolerance)) {
    throw InvariantViolation("THM_2_1 (sum |grad f_i|^2 = lambda N/vol M) residual exceeded");
  }
  if (!(ortho <= kOrthonormalityTolerance)) throw InvariantViolation("orthonormality of the basis violated");
  if (basis.degree() <= kLaplacianMaxDegree && !(laplacian <= kLaplacianTolerance)) {
    throw InvariantViolation("eigenfunction equation (Delta u + lambda u = 0) residual exceeded");
  }
}

void run_count(const RunConfig& c, Json& j) {
  const auto bases = bases_for(c);
  auto rng = trial_stream(c.seed, 0);
  const SubspaceSample sample = sample_subspace(bases, rng);
  const ZeroFindingResult r = find_common_zeros(sample, c.solver);
  j["theory"] = {{"value", sample.bezout_bound()}, {"formula_id", "THM_4_1"}};
  j["status"] = std::string(to_string(r.status));
  if (r.status == ZeroStatus::Degenerate) throw DegenerateRun("the sampled system has a non-isolated zero set");
  j["estimate"] = {{"mean", static_cast<double>(r.zeros.size())}, {"stderr", 0.0}, {"trials", 1}};
  j["diagnostics"]["depth_escalations"] = r.status == ZeroStatus::DepthEscalated ? 1 : 0;
  j["diagnostics"]["max_residual"] = r.max_residual;
  j["diagnostics"]["counts_per_depth"] = r.counts_per_depth;
  j["coefficients"] = Json::array();
  for (int i = 0; i < sample.size(); ++i) {
    const auto& row = sample.row(i);
    j["coefficients"].push_back(std::vector<double>(row.data(), row.data() + row.size()));
  }
  j["zeros"] = points_json(r.zeros);
  if (!verify_bezout(r)) throw InvariantViolation("THM_4_1 (Bezout bound) exceeded");
}

void fill_average(const AverageReport& r, const char* formula, Json& j) {
  j["theory"] = {{"value", r.theory}, {"formula_id", formula}};
  j["estimate"] = {{"mean", r.mean}, {"stderr", r.standard_error}, {"trials", r.trials}};
  j["diagnostics"]["degenerate_resamples"] = r.degenerate_resamples;
  j["diagnostics"]["depth_escalations"] = r.depth_escalations;
  j["diagnostics"]["max_residual"] = r.max_residual;
  j["diagnostics"]["bezout_violations"] = r.bezout_violations;
  j["diagnostics"]["relative_deviation"] = r.relative_deviation;
  Json hist = Json::object();
  for (const auto& [count, n] : r.histogram) hist[std::to_string(count)] = n;
  j["histogram"] = hist;
  j["experimental"] = r.experimental;
  if (r.bezout_violations > 0) throw InvariantViolation("THM_4_1 (Bezout bound) exceeded in some trial");
}

void run_average(const RunConfig& c, Json& j) {
  const AverageReport r = average_zero_count(bases_for(c), c.trials, c.solver, c.seed);
  fill_average(r, "THM_1_1", j);
  if (c.sphere_dim == 1 && (r.standard_error != 0.0 || r.mean != r.theory)) {
    throw InvariantViolation("THM_1_1 on S^1 (exactly 2m zeros) violated");
  }
}

void run_conjecture(const RunConfig& c, Json& j) {
  const AverageReport r = conjecture_mixed_average(bases_for(c), c.trials, c.solver, c.seed);
  fill_average(r, "SEC5_CONJECTURE", j);
  j["agreement"] = {{"within_4_stderr", std::abs(r.mean - r.theory) <= 4.0 * r.standard_error}};
}

void run_zonal(const RunConfig& c, Json& j) {
  const int m = c.degrees.front();
  const double alpha = c.alpha >= 0.0 ? c.alpha : zonal_alpha_max(m) / 2.0;
  j["config"]["alpha"] = alpha;
  j["theory"] = {{"value", 2 * m}, {"formula_id", "SEC5_ZONAL"}};
  j["alpha_max"] = zonal_alpha_max(m);
  const ZeroFindingResult r = zonal_pair_demo(m, alpha, c.solver);
  j["status"] = std::string(to_string(r.status));
  if (r.status == ZeroStatus::Degenerate) throw DegenerateRun("coincident zonal nodal sets (alpha = 0)");
  j["estimate"] = {{"mean", static_cast<double>(r.zeros.size())}, {"stderr", 0.0}, {"trials", 1}};
  j["diagnostics"]["depth_escalations"] = r.status == ZeroStatus::DepthEscalated ? 1 : 0;
  j["diagnostics"]["max_residual"] = r.max_residual;
  j["zeros"] = points_json(r.zeros);
  if (static_cast<int>(r.zeros.size()) != 2 * m) {
    throw InvariantViolation("SEC5_ZONAL (exactly 2m zeros below alpha_max) violated");
  }
}

void run_embedding(const RunConfig& c, Json& j) {
  const HarmonicBasis basis = build_basis(c.sphere_dim, c.degrees.front());
  const EmbeddingReport r = image_volume(basis, c.quadrature_depth, c.seed);
  const double rel = std::abs(r.numeric_image_volume - r.predicted_image_volume) / r.predicted_image_volume;
  j["theory"] = {{"value", r.predicted_image_volume}, {"formula_id", "THM_2_4"}};
  j["estimate"] = {{"mean", r.numeric_image_volume}, {"stderr", 0.0}, {"trials", 1}};
  j["diagnostics"]["max_residual"] = r.max_gram_residual / r.dilation;
  j["embedding"] = {{"radius", r.radius},
                    {"dilation", r.dilation},
                    {"covering_degree", r.covering_degree},
                    {"antipodal_identified", r.antipodal_identified},
                    {"numeric_integral", r.numeric_integral},
                    {"numeric_image_volume", r.numeric_image_volume},
                    {"predicted_image_volume", r.predicted_image_volume},
                    {"relative_volume_error", rel},
                    {"max_gram_residual", r.max_gram_residual},
                    {"max_radius_residual", r.max_radius_residual}};
  if (!(r.max_radius_residual <= kUnsoldTolerance * basis.squared_radius())) {
    throw InvariantViolation("THM_2_3 (image lies on the sphere of radius R) violated");
  }
  if (!(r.max_gram_residual <= kDilationTolerance * r.dilation)) {
    throw InvariantViolation("THM_2_4 (pullback metric = C g) violated");
  }
  if (!(rel <= kImageVolumeTolerance)) throw InvariantViolation("THM_2_4 (image volume) violated");
}

void run_crofton(const RunConfig& c, Json& j) {
  const int m = c.degrees.front();
  const HarmonicBasis basis = build_basis(2, m);
  LengthReport r;
  if (c.function == "zonal") {
    const CoefficientVector v = zonal(basis, SpherePoint(Eigen::Vector3d(0.0, 0.0, 1.0)));
    r = crofton_length(basis, v, c.trials, c.seed);
    r.reference = zonal_nodal_length(m);
  } else {
    r = random_nodal_length(basis, c.trials, c.seed);
  }
  j["theory"] = {{"value", r.reference ? Json(*r.reference) : Json(nullptr)}, {"formula_id", "SEC3_CROFTON"}};
  j["estimate"] = {{"mean", r.length}, {"stderr", r.standard_error}, {"trials", r.trials}};
  j["diagnostics"]["degenerate_resamples"] = r.degenerate_resamples;
  j["intersections"] = {{"mean", r.mean_count}, {"stderr", r.count_standard_error}};
  if (!(r.length >= 0.0)) throw InvariantViolation("SEC3_CROFTON (length >= 0) violated");
}

std::string csv_field(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string serialize(const Json& j, Format format) {
  if (format == Format::Json) return j.dump(2) + "\n";
  // Fixed column order; see README.
  const std::vector<std::pair<std::string, Json>> cols = {
      {"command", j["command"]},
      {"version", j["version"]},
      {"sphere", j["config"]["sphere"]},
      {"degrees", j["config"]["degrees"]},
      {"seed", j["config"]["seed"]},
      {"formula_id", j["theory"]["formula_id"]},
      {"theory", j["theory"]["value"]},
      {"mean", j["estimate"]["mean"]},
      {"stderr", j["estimate"]["stderr"]},
      {"trials", j["estimate"]["trials"]},
      {"degenerate_resamples", j["diagnostics"]["degenerate_resamples"]},
      {"depth_escalations", j["diagnostics"]["depth_escalations"]},
      {"max_residual", j["diagnostics"]["max_residual"]},
      {"experimental", j["experimental"]},
  };
  std::ostringstream head, row;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const char* sep = i + 1 < cols.size() ? "," : "\n";
    head << cols[i].first << sep;
    std::string field = csv_field(cols[i].second);
    if (field.find(',') != std::string::npos) field = "\"" + field + "\"";
    row << field << sep;
  }
  return head.str() + row.str();
}

}  // namespace

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    validate(config);
  } catch (const InvalidArgument& e) {
    result.exit_code = kInvalidConfig;
    result.message = e.what();
    return result;
  }

  Json j = skeleton(config);
  try {
    if (config.command == "invariants") run_invariants(config, j);
    else if (config.command == "count") run_count(config, j);
    else if (config.command == "average") run_average(config, j);
    else if (config.command == "conjecture") run_conjecture(config, j);
    else if (config.command == "zonal") run_zonal(config, j);
    else if (config.command == "embedding") run_embedding(config, j);
    else run_crofton(config, j);
  } catch (const InvariantViolation& e) {
    result.exit_code = kInvariantViolation;
    result.message = std::string("invariant violation: ") + e.what();
  } catch (const UnexpectedFiber& e) {
    result.exit_code = kInvariantViolation;
    result.message = std::string("invariant violation: THM_2_4 covering: ") + e.what();
  } catch (const DegenerateRun& e) {
    result.exit_code = kDegenerate;
    result.message = std::string("degenerate: ") + e.what();
  } catch (const InvalidArgument& e) {
    result.exit_code = kInvalidConfig;
    result.message = e.what();
    return result;
  }
  if (result.exit_code != kOk) j["error"] = result.message;
  result.report = serialize(j, config.format);
  return result;
}

int main(int argc, char** argv) {
  CLI::App app{"Common zeros of Laplace eigenfunctions on S^1 and S^2"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"invariants", "Pointwise identities and orthonormality of the eigenbasis"},
      {"count", "Find the common zeros of one random sample"},
      {"average", "Monte Carlo average zero count against the closed form"},
      {"conjecture", "Mixed-degree average against the conjectured value (experimental)"},
      {"zonal", "Zeros of two tilted zonal harmonics"},
      {"embedding", "Radius, dilation, covering degree and image volume of the eigenmap"},
      {"crofton-length", "Nodal length from random great-circle intersections"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--sphere", config.sphere_dim, "Sphere dimension (1 or 2)")->capture_default_str();
    sub->add_option("--degree,--degrees", config.degrees, "Degree, or one degree per eigenfunction")
        ->delimiter(',')
        ->capture_default_str();
    sub->add_option("--trials", config.trials, "Monte Carlo trials / random circles")->capture_default_str();
    sub->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    sub->add_option("--depth", config.solver.depth, "Icosphere depth, 0 = automatic")->capture_default_str();
    sub->add_option("--newton-tol", config.solver.newton_tolerance, "Newton step tolerance")->capture_default_str();
    sub->add_option("--max-iter", config.solver.max_iterations, "Newton iteration limit")->capture_default_str();
    sub->add_option("--dedup-radius", config.solver.dedup_radius, "Geodesic dedup radius")->capture_default_str();
    sub->add_option("--quad-depth", config.quadrature_depth, "Quadrature depth for embedding")
        ->capture_default_str();
    sub->add_option("--alpha", config.alpha, "Zonal tilt angle (default alpha_max/2)");
    sub->add_option("--function", config.function, "crofton-length target: zonal | random")->capture_default_str();
    sub->add_option("--points", config.points, "Sample points for invariants")->capture_default_str();
    sub->add_option("--format", format, "Report format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", config.out, "Write the report here instead of stdout");
    sub->callback([&config, name = name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidConfig;
  }
  config.format = format == "csv" ? Format::Csv : Format::Json;

  const RunResult result = run(config);
  if (!result.message.empty()) std::cerr << "nodal: " << result.message << "\n";
  if (!result.report.empty()) {
    if (config.out.empty()) {
      std::cout << result.report;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) {
        std::cerr << "nodal: cannot open " << config.out << "\n";
        return kInvalidConfig;
      }
      file << result.report;
    }
  }
  return result.exit_code;
}

}  // namespace nodal::cli
