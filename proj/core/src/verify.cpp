#include "qfim/verify.hpp"

#include "qfim/errors.hpp"
#include "qfim/structured.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace qfim {

void PropertyReport::record(double violation, const std::string& instance) {
  ++instances_run;
  if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
  if (violation > worst_violation) {
    worst_violation = violation;
    if (violation > tolerance) worst_instance = instance;
  }
  pass = worst_violation <= tolerance;
}

void PropertyReport::merge(const PropertyReport& other) {
  instances_run += other.instances_run;
  if (other.worst_violation > worst_violation) {
    worst_violation = other.worst_violation;
    worst_instance = other.worst_instance;
  }
  pass = worst_violation <= tolerance;
}

double loewner_violation(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ValidationError("loewner_violation: shape mismatch");
  if (a.size() == 0) return 0.0;
  const RealMatrix diff = 0.5 * ((b - a) + (b - a).transpose());
  const double lo = Eigen::SelfAdjointEigenSolver<RealMatrix>(diff, Eigen::EigenvaluesOnly).eigenvalues()(0);
  const double scale = std::max({1.0, std::abs(a.trace()), std::abs(b.trace())});
  return std::max(0.0, -lo) / scale;
}

namespace {

PropertyReport make_report(std::string name, double tol, std::uint64_t seed = 0) {
  PropertyReport r;
  r.name = std::move(name);
  r.tolerance = tol;
  r.seed = seed;
  return r;
}

std::string describe_vector(const RealVector& v) {
  std::ostringstream out;
  out.precision(17);
  out << "[";
  for (Index i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v(i);
  out << "]";
  return out.str();
}

std::string describe(const StateFamily& family, const RealVector& theta, const std::string& extra) {
  std::ostringstream out;
  out << family.label() << " d=" << family.dim() << " L=" << family.param_dim() << " theta=" << describe_vector(theta)
      << " " << extra;
  return out.str();
}

// Records A <= B for each consecutive pair selected by `ordered`.
PropertyReport grid_ordering(std::string name, const StateFamily& family, const RealVector& theta,
                             std::vector<double> grid, double tol,
                             const std::function<ZetaKernel(double)>& make_kernel,
                             const std::function<int(double, double)>& direction) {
  std::sort(grid.begin(), grid.end());
  auto report = make_report(std::move(name), tol);
  std::vector<RealMatrix> mats;
  for (double g : grid) mats.push_back(info_spectral(family, theta, make_kernel(g)).values);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const int dir = direction(grid[k], grid[k + 1]);
    if (dir == 0) continue;
    const RealMatrix& lo = dir > 0 ? mats[k] : mats[k + 1];
    const RealMatrix& hi = dir > 0 ? mats[k + 1] : mats[k];
    std::ostringstream extra;
    extra << "pair=(" << grid[k] << "," << grid[k + 1] << ")";
    report.record(loewner_violation(lo, hi), describe(family, theta, extra.str()));
  }
  return report;
}

}  // namespace

PropertyReport check_loewner(const InfoMatrix& a, const InfoMatrix& b, double tol) {
  auto report = make_report("loewner", tol);
  report.record(loewner_violation(a.values, b.values), a.kernel_label + " <= " + b.kernel_label);
  return report;
}

PropertyReport check_petz_ordering(const StateFamily& family, const RealVector& theta, std::vector<double> alpha_grid,
                                   double tol) {
  return grid_ordering(
      "petz_ordering", family, theta, std::move(alpha_grid), tol, [](double a) { return ZetaKernel::petz(a); },
      [](double a1, double a2) {
        if (a2 <= 0.5) return -1;  // decreasing
        if (a1 >= 0.5) return 1;
        return 0;
      });
}

PropertyReport check_sandwiched_ordering(const StateFamily& family, const RealVector& theta,
                                         std::vector<double> alpha_grid, double tol) {
  return grid_ordering(
      "sandwiched_ordering", family, theta, std::move(alpha_grid), tol,
      [](double a) { return ZetaKernel::sandwiched(a); }, [](double, double) { return 1; });
}

PropertyReport check_z_monotonicity(const StateFamily& family, const RealVector& theta, double alpha,
                                    std::vector<double> z_grid, double tol) {
  const int dir = alpha < 1.0 ? 1 : -1;
  return grid_ordering(
      "z_monotonicity", family, theta, std::move(z_grid), tol,
      [alpha](double z) { return ZetaKernel::alpha_z(RenyiParams(alpha, z)); },
      [dir](double, double) { return dir; });
}

PropertyReport check_kernel_ordering(const StateFamily& family, const RealVector& theta, const ZetaKernel& smaller,
                                     const ZetaKernel& larger, double tol) {
  auto report = make_report("kernel_ordering", tol);
  const RealMatrix a = info_spectral(family, theta, smaller).values;
  const RealMatrix b = info_spectral(family, theta, larger).values;
  report.record(loewner_violation(a, b), describe(family, theta, smaller.name() + " <= " + larger.name()));
  return report;
}

PropertyReport check_dp_info(const FamilyPtr& family, const RealVector& theta, const QuantumChannel& channel,
                             const ZetaKernel& kernel, double tol) {
  auto report = make_report("data_processing", tol);
  const RealMatrix before = info_spectral(*family, theta, kernel).values;
  const FamilyPtr after_family = pushforward_family(family, channel);
  const RealMatrix after = info_spectral(*after_family, theta, kernel).values;
  std::ostringstream extra;
  extra << kernel.name() << " channel " << channel.input_dim() << "->" << channel.output_dim() << " kraus="
        << channel.kraus_ops().size();
  report.record(loewner_violation(after, before), describe(*family, theta, extra.str()));
  return report;
}

PropertyReport check_convexity(const std::vector<FamilyPtr>& branches, const RealVector& weights,
                               const RealVector& theta, const ZetaKernel& kernel, double tol) {
  if (branches.empty() || static_cast<Index>(branches.size()) != weights.size()) {
    throw ValidationError("check_convexity: need one weight per branch");
  }
  auto report = make_report("convexity", tol);
  const Index d = branches.front()->dim();
  const std::size_t n = branches.front()->param_dim();
  RealMatrix mixed_info = RealMatrix::Zero(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t x = 0; x < branches.size(); ++x) {
    mixed_info += weights(static_cast<Index>(x)) * info_spectral(*branches[x], theta, kernel).values;
  }
  auto average = [branches, weights](const RealVector& t) {
    HermitianOperator acc = HermitianOperator::zero(branches.front()->dim());
    for (std::size_t x = 0; x < branches.size(); ++x) acc += weights(static_cast<Index>(x)) * branches[x]->evaluate(t);
    return acc;
  };
  auto average_derivative = [branches, weights](const RealVector& t, std::size_t i) {
    HermitianOperator acc = HermitianOperator::zero(branches.front()->dim());
    for (std::size_t x = 0; x < branches.size(); ++x) {
      acc += weights(static_cast<Index>(x)) * branches[x]->derivative(t, i);
    }
    return acc;
  };
  const ExplicitFamily mixture("mixture", d, n, average, average_derivative);
  const RealMatrix averaged_info = info_spectral(mixture, theta, kernel).values;
  report.record(loewner_violation(averaged_info, mixed_info),
                describe(mixture, theta, kernel.name() + " weights=" + describe_vector(weights)));
  return report;
}

PropertyReport check_renyi_value_orderings(const HermitianOperator& rho, const HermitianOperator& sigma, double alpha,
                                           double tol) {
  auto report = make_report("renyi_value_orderings", tol);
  auto excess = [](double lhs, double rhs) { return std::max(0.0, lhs - rhs) / std::max(1.0, std::abs(rhs)); };
  const double sandwiched = sandwiched_renyi(rho, sigma, alpha);
  const double petz = petz_renyi(rho, sigma, alpha);
  std::ostringstream tag;
  tag << "alpha=" << alpha;
  report.record(excess(sandwiched, petz), "sandwiched <= petz " + tag.str());
  if (alpha < 1.0) report.record(excess(alpha * petz, sandwiched), "alpha*petz <= sandwiched " + tag.str());
  const std::vector<double> z_grid{0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  double previous = alpha_z_renyi(rho, sigma, RenyiParams(alpha, z_grid.front()));
  for (std::size_t k = 1; k < z_grid.size(); ++k) {
    const double current = alpha_z_renyi(rho, sigma, RenyiParams(alpha, z_grid[k]));
    std::ostringstream where;
    where << "z monotonicity " << tag.str() << " z=" << z_grid[k - 1] << "->" << z_grid[k];
    report.record(alpha < 1.0 ? excess(previous, current) : excess(current, previous), where.str());
    previous = current;
  }
  return report;
}

// ------------------------------------------------------------------ suites

namespace {

using Rng = std::mt19937_64;

struct RandomInstance {
  std::shared_ptr<const ThermalFamily> family;
  RealVector theta;
};

RandomInstance random_instance(Rng& rng, Index d, std::size_t params) {
  auto family = random_thermal_family(d, params, rng);
  RealVector theta = random_parameters(params, rng, 1.0);
  return {family, theta};
}

Index cycle_dim(std::size_t k) { return static_cast<Index>(2 + k % 3); }
std::size_t cycle_params(std::size_t k) { return 1 + (k / 3) % 3; }

ZetaKernel perturbed(const ZetaKernel& base, double factor) {
  if (factor == 1.0) return base;
  std::ostringstream name;
  name << base.name() << "*offdiag(" << factor << ")";
  return ZetaKernel::custom(
      name.str(), [base, factor](double x, double y) { return x == y ? base(x, y) : factor * base(x, y); },
      base.kappa());
}

PropertyReport suite_oracle_equivalence(const SuiteOptions& opt) {
  auto report = make_report("oracle_equivalence", 1e-3, opt.seed);
  Rng rng(opt.seed);
  const std::vector<std::pair<double, double>> pairs{{0.3, 0.6}, {0.5, 0.5}, {0.5, 1.0}, {0.9, 2.0},
                                                     {2.0, 1.0}, {2.0, 2.0}, {3.0, 2.5}};
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const auto inst = random_instance(rng, cycle_dim(k), cycle_params(k));
    for (const auto& [alpha, z] : pairs) {
      const RenyiParams p(alpha, z);
      const auto kernel = perturbed(ZetaKernel::alpha_z(p), opt.kernel_perturbation);
      const RealMatrix spectral = info_spectral(*inst.family, inst.theta, kernel).values;
      const RealMatrix oracle = info_hessian_oracle(*inst.family, inst.theta, DivergenceSpec::alpha_z(p)).values;
      report.record(relative_deviation(spectral, oracle), describe(*inst.family, inst.theta, kernel.name()));
    }
  }
  return report;
}

PropertyReport suite_kernel_ordering(const SuiteOptions& opt) {
  auto report = make_report("kernel_ordering", kOrderingTolerance, opt.seed);
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const auto inst = random_instance(rng, cycle_dim(k), cycle_params(k));
    report.merge(check_kernel_ordering(*inst.family, inst.theta, ZetaKernel::kubo_mori(), ZetaKernel::rld()));
    report.merge(check_kernel_ordering(*inst.family, inst.theta, ZetaKernel::sandwiched(0.5), ZetaKernel::kubo_mori()));
  }
  return report;
}

PropertyReport suite_petz_ordering(const SuiteOptions& opt) {
  auto report = make_report("petz_ordering", kOrderingTolerance, opt.seed);
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const auto inst = random_instance(rng, cycle_dim(k), cycle_params(k));
    report.merge(check_petz_ordering(*inst.family, inst.theta, {0.1, 0.25, 0.5}));
    report.merge(check_petz_ordering(*inst.family, inst.theta, {0.5, 1.5, 3.0}));
  }
  return report;
}

PropertyReport suite_sandwiched_ordering(const SuiteOptions& opt) {
  auto report = make_report("sandwiched_ordering", kOrderingTolerance, opt.seed);
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const auto inst = random_instance(rng, cycle_dim(k), cycle_params(k));
    report.merge(check_sandwiched_ordering(*inst.family, inst.theta, {0.2, 0.5, 1.5, 3.0}));
  }
  return report;
}

PropertyReport suite_z_monotonicity(const SuiteOptions& opt) {
  auto report = make_report("z_monotonicity", kOrderingTolerance, opt.seed);
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const auto inst = random_instance(rng, cycle_dim(k), cycle_params(k));
    report.merge(check_z_monotonicity(*inst.family, inst.theta, 0.3, {0.25, 0.5, 1.0, 2.0, 4.0}));
    report.merge(check_z_monotonicity(*inst.family, inst.theta, 2.0, {0.5, 1.0, 2.0, 4.0}));
  }
  return report;
}

PropertyReport suite_data_processing(const SuiteOptions& opt) {
  auto report = make_report("data_processing", kMatrixInequalityTolerance, opt.seed);
  Rng rng(opt.seed);
  std::uniform_int_distribution<int> kraus(2, 4);
  const std::vector<ZetaKernel> kernels{ZetaKernel::kubo_mori(), ZetaKernel::rld(),
                                        ZetaKernel::alpha_z(RenyiParams(0.5, 0.5)),
                                        ZetaKernel::alpha_z(RenyiParams(0.3, 1.0)),
                                        ZetaKernel::alpha_z(RenyiParams(2.0, 1.5))};
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const Index d = 2 + static_cast<Index>(k % 2);
    const auto inst = random_instance(rng, d, cycle_params(k));
    const QuantumChannel random = random_channel(d, 2, kraus(rng), rng);
    const QuantumChannel depol = depolarizing_channel(d, 0.3);
    for (const auto& kernel : kernels) {
      report.merge(check_dp_info(inst.family, inst.theta, random, kernel));
      report.merge(check_dp_info(inst.family, inst.theta, depol, kernel));
    }
  }
  return report;
}

PropertyReport suite_convexity(const SuiteOptions& opt) {
  auto report = make_report("convexity", kMatrixInequalityTolerance, opt.seed);
  Rng rng(opt.seed);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  const std::vector<ZetaKernel> kernels{ZetaKernel::kubo_mori(), ZetaKernel::rld(),
                                        ZetaKernel::alpha_z(RenyiParams(0.5, 1.0))};
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const Index d = cycle_dim(k);
    const std::size_t params = cycle_params(k);
    std::vector<FamilyPtr> branches{random_thermal_family(d, params, rng), random_thermal_family(d, params, rng)};
    RealVector w(2);
    w << uni(rng), uni(rng);
    w /= w.sum();
    const RealVector theta = random_parameters(params, rng, 1.0);
    for (const auto& kernel : kernels) report.merge(check_convexity(branches, w, theta, kernel));
  }
  return report;
}

PropertyReport suite_cq_decomposition(const SuiteOptions& opt) {
  auto report = make_report("cq_decomposition", 1e-8, opt.seed);
  Rng rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::vector<ZetaKernel> kernels{ZetaKernel::kubo_mori(), ZetaKernel::rld(),
                                        ZetaKernel::alpha_z(RenyiParams(0.5, 1.0)),
                                        ZetaKernel::alpha_z(RenyiParams(2.0, 2.0))};
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const Index d = 2 + static_cast<Index>(k % 2);
    const std::size_t params = cycle_params(k);
    const Index outcomes = 2 + static_cast<Index>(k % 2);
    RealMatrix weights(outcomes, static_cast<Index>(params));
    for (Index r = 0; r < weights.rows(); ++r) {
      for (Index c = 0; c < weights.cols(); ++c) weights(r, c) = normal(rng);
    }
    RealVector offset(outcomes);
    for (Index r = 0; r < outcomes; ++r) offset(r) = normal(rng);
    std::vector<FamilyPtr> branches;
    for (Index x = 0; x < outcomes; ++x) branches.push_back(random_thermal_family(d, params, rng));
    const ClassicalQuantumFamily cq(softmax_family(weights, offset), branches);
    const RealVector theta = random_parameters(params, rng, 1.0);
    const FamilyPtr joint = cq.embedded();
    for (const auto& kernel : kernels) {
      const RealMatrix direct = info_spectral(*joint, theta, kernel).values;
      const RealMatrix split = info_cq_decomposed(cq, theta, kernel).values;
      report.record(relative_deviation(split, direct), describe(*joint, theta, kernel.name()));
    }
  }
  return report;
}

PropertyReport suite_renyi_values(const SuiteOptions& opt) {
  auto report = make_report("renyi_value_orderings", 1e-12, opt.seed);
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const Index d = cycle_dim(k);
    const HermitianOperator rho = gibbs_state(2.0 * random_gue(d, rng));
    const HermitianOperator sigma = gibbs_state(2.0 * random_gue(d, rng));
    for (double alpha : {0.3, 0.7, 1.5, 2.5}) report.merge(check_renyi_value_orderings(rho, sigma, alpha));
  }
  return report;
}

PropertyReport suite_closed_forms(const SuiteOptions& opt) {
  auto report = make_report("closed_forms", 1e-8, opt.seed);
  Rng rng(opt.seed);
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const Index d = cycle_dim(k);
    const std::size_t params = cycle_params(k);
    const auto inst = random_instance(rng, d, params);
    std::vector<HermitianOperator> gens;
    for (std::size_t j = 0; j < params; ++j) gens.push_back(random_gue(d, rng));
    const TimeEvolvedFamily evolved(random_gue(d, rng), gens);
    const RealVector phi = random_parameters(params, rng, 1.0);
    for (double alpha : {0.25, 0.5, 0.75}) {
      for (double z : {0.5, 1.0, 2.0}) {
        const RenyiParams p(alpha, z);
        const auto kernel = ZetaKernel::alpha_z(p);
        report.record(relative_deviation(thermal_info_closed(*inst.family, inst.theta, p).values,
                                         info_spectral(*inst.family, inst.theta, kernel).values),
                      describe(*inst.family, inst.theta, "thermal " + kernel.name()));
        report.record(relative_deviation(time_evolved_info_closed(evolved, phi, p).values,
                                         info_spectral(evolved, phi, kernel).values),
                      describe(evolved, phi, "time_evolved " + kernel.name()));
      }
    }
  }
  return report;
}

PropertyReport suite_invariants(const SuiteOptions& opt) {
  auto report = make_report("invariants", 1e-8, opt.seed);
  Rng rng(opt.seed);
  const std::vector<ZetaKernel> kernels{ZetaKernel::kubo_mori(), ZetaKernel::rld(), ZetaKernel::petz(0.3),
                                        ZetaKernel::sandwiched(2.0), ZetaKernel::alpha_z(RenyiParams(3.0, 2.5))};
  for (std::size_t k = 0; k < opt.instances; ++k) {
    const auto inst = random_instance(rng, cycle_dim(k), cycle_params(k));
    for (const auto& kernel : kernels) {
      const InfoMatrix m = info_spectral(*inst.family, inst.theta, kernel);
      const double scale = std::max(1.0, std::abs(m.values.trace()));
      const double violation = std::max(m.asymmetry(), std::max(0.0, -m.min_eigenvalue()) / scale);
      report.record(violation, describe(*inst.family, inst.theta, kernel.name()));
    }
  }
  return report;
}

const std::map<std::string, std::function<PropertyReport(const SuiteOptions&)>>& registry() {
  static const std::map<std::string, std::function<PropertyReport(const SuiteOptions&)>> suites{
      {"oracle_equivalence", suite_oracle_equivalence},
      {"kernel_ordering", suite_kernel_ordering},
      {"petz_ordering", suite_petz_ordering},
      {"sandwiched_ordering", suite_sandwiched_ordering},
      {"z_monotonicity", suite_z_monotonicity},
      {"data_processing", suite_data_processing},
      {"convexity", suite_convexity},
      {"cq_decomposition", suite_cq_decomposition},
      {"renyi_value_orderings", suite_renyi_values},
      {"closed_forms", suite_closed_forms},
      {"invariants", suite_invariants},
  };
  return suites;
}

}  // namespace

ExplorationResult search_divergence_dp_violation(const DivergenceSpec& divergence, std::size_t trials,
                                                 std::uint64_t seed) {
  ExplorationResult out{"dp_search:" + divergence.label(), 0, 0.0, seed, ""};
  Rng rng(seed);
  std::uniform_real_distribution<double> spread(0.3, 3.0);
  std::uniform_int_distribution<int> kraus(1, 3);
  // Wide spectra make counterexamples likelier; states stay well inside the floor.
  const auto state = [&](Index d) {
    return gibbs_state(HermitianOperator(Matrix(spread(rng) * random_gue(d, rng).matrix())));
  };
  for (std::size_t k = 0; k < trials; ++k) {
    const Index d = 2 + static_cast<Index>(k % 2);
    const HermitianOperator rho = state(d);
    const HermitianOperator sigma = state(d);
    const QuantumChannel channel = random_channel(d, d, kraus(rng), rng);
    const double before = divergence(rho, sigma);
    const double after = divergence(apply_channel(channel, rho), apply_channel(channel, sigma));
    const double v = (after - before) / std::max(1.0, std::abs(before));
    ++out.trials;
    if (v > out.max_violation) {
      out.max_violation = v;
      std::ostringstream inst;
      inst << "trial=" << k << " d=" << d << " kraus=" << channel.kraus_ops().size() << " D=" << before
           << " D_out=" << after;
      out.worst_instance = inst.str();
    }
  }
  return out;
}

ExplorationResult scan_kernel_dp(const RenyiParams& params, std::size_t trials, std::uint64_t seed) {
  std::ostringstream name;
  name << "kernel_dp_scan:alpha=" << params.alpha() << ",z=" << params.z();
  ExplorationResult out{name.str(), 0, 0.0, seed, ""};
  Rng rng(seed);
  std::uniform_int_distribution<int> kraus(1, 3);
  const ZetaKernel kernel = ZetaKernel::alpha_z(params);
  for (std::size_t k = 0; k < trials; ++k) {
    const Index d = 2 + static_cast<Index>(k % 2);
    const auto inst = random_instance(rng, d, cycle_params(k));
    const QuantumChannel channel = random_channel(d, d, kraus(rng), rng);
    const auto r = check_dp_info(inst.family, inst.theta, channel, kernel, 0.0);
    ++out.trials;
    if (r.worst_violation > out.max_violation) {
      out.max_violation = r.worst_violation;
      out.worst_instance = "trial=" + std::to_string(k) + " " + r.worst_instance;
    }
  }
  return out;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

PropertyReport run_suite(const std::string& name, const SuiteOptions& options) {
  const auto& suites = registry();
  const auto it = suites.find(name);
  if (it == suites.end()) throw ValidationError("unknown suite '" + name + "'");
  return it->second(options);
}

}  // namespace qfim
