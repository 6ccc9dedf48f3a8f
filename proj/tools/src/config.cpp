#include "qfim_cli/config.hpp"

#include <qfim/errors.hpp>

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <random>
#include <set>
#include <sstream>

namespace qfim::cli {

namespace {

bool same_matrix(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_optional(const std::optional<Matrix>& a, const std::optional<Matrix>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || same_matrix(*a, *b);
}

bool same_list(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!same_matrix(a[k], b[k])) return false;
  }
  return true;
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

RealMatrix real_rows(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty array of rows");
  const auto rows = static_cast<Index>(j.size());
  const auto cols = static_cast<Index>(j.front().size());
  RealMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j.at(static_cast<std::size_t>(r));
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw ValidationError(where + ": ragged rows");
    for (Index c = 0; c < cols; ++c) m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

Matrix hermitian_matrix(const Json& j, const std::string& where) {
  Matrix m = matrix_from_json(j, where);
  if (m.rows() != m.cols()) throw ValidationError(where + ": matrix is not square");
  const double defect = hermitian_defect(m);
  if (defect > kHermitianTolerance * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    std::ostringstream msg;
    msg << where << ": matrix is not Hermitian (max |A - A^dagger| = " << defect << ")";
    throw ValidationError(msg.str());
  }
  return m;
}

std::vector<Matrix> hermitian_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(hermitian_matrix(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<double> doubles(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ValidationError(where + ": expected an array of numbers");
  return j.get<std::vector<double>>();
}

KernelConfig parse_kernel(const Json& j, const std::string& where) {
  reject_unknown_keys(j, {"label", "alpha", "z"}, where);
  KernelConfig k;
  k.label = j.value("label", k.label);
  k.alpha = j.value("alpha", k.alpha);
  k.z = j.value("z", k.z);
  static const std::set<std::string> labels{"kubo_mori", "rld", "alpha_z", "petz", "sandwiched"};
  if (!labels.count(k.label)) throw ValidationError(where + ": unknown kernel label '" + k.label + "'");
  return k;
}

Json kernel_to_json(const KernelConfig& k) { return Json{{"label", k.label}, {"alpha", k.alpha}, {"z", k.z}}; }

FamilyConfig parse_family(const Json& j) {
  reject_unknown_keys(
      j, {"kind", "dimension", "params", "generators", "bias", "base_generator", "base", "directions", "theta"},
      "family");
  FamilyConfig f;
  f.kind = j.value("kind", f.kind);
  f.dimension = j.value("dimension", f.dimension);
  f.params = j.value("params", f.params);
  if (j.contains("generators")) f.generators = hermitian_list(j["generators"], "family.generators");
  if (j.contains("bias")) f.bias = hermitian_matrix(j["bias"], "family.bias");
  if (j.contains("base_generator")) f.base_generator = hermitian_matrix(j["base_generator"], "family.base_generator");
  if (j.contains("base")) f.base = hermitian_matrix(j["base"], "family.base");
  if (j.contains("directions")) f.directions = hermitian_list(j["directions"], "family.directions");
  if (j.contains("theta")) f.theta = doubles(j["theta"], "family.theta");

  static const std::set<std::string> kinds{"thermal", "time_evolved", "affine", "random_thermal",
                                           "random_time_evolved"};
  if (!kinds.count(f.kind)) throw ValidationError("family: unknown kind '" + f.kind + "'");
  if (f.kind == "thermal" && f.generators.empty()) throw ValidationError("family: thermal needs generators");
  if (f.kind == "time_evolved" && (f.generators.empty() || !f.base_generator)) {
    throw ValidationError("family: time_evolved needs base_generator and generators");
  }
  if (f.kind == "affine" && !f.base) throw ValidationError("family: affine needs base");
  if (f.dimension < 1) throw ValidationError("family: dimension must be positive");
  return f;
}

Json family_to_json(const FamilyConfig& f) {
  Json j{{"kind", f.kind}, {"dimension", f.dimension}, {"params", f.params}};
  if (!f.generators.empty()) {
    Json list = Json::array();
    for (const auto& g : f.generators) list.push_back(matrix_to_json(g));
    j["generators"] = list;
  }
  if (f.bias) j["bias"] = matrix_to_json(*f.bias);
  if (f.base_generator) j["base_generator"] = matrix_to_json(*f.base_generator);
  if (f.base) j["base"] = matrix_to_json(*f.base);
  if (!f.directions.empty()) {
    Json list = Json::array();
    for (const auto& g : f.directions) list.push_back(matrix_to_json(g));
    j["directions"] = list;
  }
  if (!f.theta.empty()) j["theta"] = f.theta;
  return j;
}

NgdConfig parse_ngd(const Json& j) {
  reject_unknown_keys(j,
                      {"target", "target_theta", "initial_theta", "metric", "learning_rate", "iterations", "damping",
                       "stop_loss"},
                      "ngd");
  NgdConfig n;
  if (j.contains("target")) n.target = hermitian_matrix(j["target"], "ngd.target");
  if (j.contains("target_theta")) n.target_theta = doubles(j["target_theta"], "ngd.target_theta");
  if (j.contains("initial_theta")) n.initial_theta = doubles(j["initial_theta"], "ngd.initial_theta");
  if (j.contains("metric")) n.metric = parse_kernel(j["metric"], "ngd.metric");
  n.learning_rate = j.value("learning_rate", n.learning_rate);
  n.iterations = j.value("iterations", n.iterations);
  n.damping = j.value("damping", n.damping);
  n.stop_loss = j.value("stop_loss", n.stop_loss);
  if (n.learning_rate < 0.0) throw ValidationError("ngd: learning_rate must be nonnegative");
  if (n.damping < 0.0) throw ValidationError("ngd: damping must be nonnegative");
  if (n.iterations < 0) throw ValidationError("ngd: iterations must be nonnegative");
  return n;
}

Json ngd_to_json(const NgdConfig& n) {
  Json j = Json::object();
  if (n.target) j["target"] = matrix_to_json(*n.target);
  if (!n.target_theta.empty()) j["target_theta"] = n.target_theta;
  if (!n.initial_theta.empty()) j["initial_theta"] = n.initial_theta;
  j["metric"] = kernel_to_json(n.metric);
  j["learning_rate"] = n.learning_rate;
  j["iterations"] = n.iterations;
  j["damping"] = n.damping;
  j["stop_loss"] = n.stop_loss;
  return j;
}

DensitiesConfig parse_densities(const Json& j) {
  reject_unknown_keys(
      j, {"t_min", "t_max", "t_count", "omega_min", "omega_max", "omega_count", "include_convolution"}, "densities");
  DensitiesConfig d;
  d.t_min = j.value("t_min", d.t_min);
  d.t_max = j.value("t_max", d.t_max);
  d.t_count = j.value("t_count", d.t_count);
  d.omega_min = j.value("omega_min", d.omega_min);
  d.omega_max = j.value("omega_max", d.omega_max);
  d.omega_count = j.value("omega_count", d.omega_count);
  d.include_convolution = j.value("include_convolution", d.include_convolution);
  if (d.t_count < 1 || d.omega_count < 1) throw ValidationError("densities: grid counts must be positive");
  return d;
}

Json densities_to_json(const DensitiesConfig& d) {
  return Json{{"t_min", d.t_min},         {"t_max", d.t_max},         {"t_count", d.t_count},
              {"omega_min", d.omega_min}, {"omega_max", d.omega_max}, {"omega_count", d.omega_count},
              {"include_convolution", d.include_convolution}};
}

RealVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Index>(v.size()));
}

std::vector<HermitianOperator> hermitian_ops(const std::vector<Matrix>& ms) {
  std::vector<HermitianOperator> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

}  // namespace

bool FamilyConfig::operator==(const FamilyConfig& o) const {
  return kind == o.kind && dimension == o.dimension && params == o.params && same_list(generators, o.generators) &&
         same_optional(bias, o.bias) && same_optional(base_generator, o.base_generator) &&
         same_optional(base, o.base) && same_list(directions, o.directions) && theta == o.theta;
}

bool NgdConfig::operator==(const NgdConfig& o) const {
  return same_optional(target, o.target) && target_theta == o.target_theta && initial_theta == o.initial_theta &&
         metric == o.metric && learning_rate == o.learning_rate && iterations == o.iterations &&
         damping == o.damping && stop_loss == o.stop_loss;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("re")) throw ValidationError(where + ": expected {\"re\": [[...]], \"im\": [[...]]}");
  const RealMatrix re = real_rows(j["re"], where + ".re");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = real_rows(j["im"], where + ".im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw ValidationError(where + ": re/im shape mismatch");
  }
  Matrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json matrix_to_json(const Matrix& m) {
  return Json{{"re", real_matrix_to_json(m.real())}, {"im", real_matrix_to_json(m.imag())}};
}

Json vector_to_json(const RealVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RunConfig parse_config(const Json& j) {
  try {
    reject_unknown_keys(j,
                        {"family", "kernel", "method", "out_dir", "seed", "hessian_step", "suites", "instances",
                         "kernel_perturbation", "alpha_grid", "z_grid", "ngd", "densities"},
                        "config");
    RunConfig c;
    if (j.contains("family")) c.family = parse_family(j["family"]);
    if (j.contains("kernel")) c.kernel = parse_kernel(j["kernel"], "kernel");
    c.method = j.value("method", c.method);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.seed = j.value("seed", c.seed);
    c.hessian_step = j.value("hessian_step", c.hessian_step);
    if (j.contains("suites")) c.suites = j["suites"].get<std::vector<std::string>>();
    c.instances = j.value("instances", c.instances);
    c.kernel_perturbation = j.value("kernel_perturbation", c.kernel_perturbation);
    if (j.contains("alpha_grid")) c.alpha_grid = doubles(j["alpha_grid"], "alpha_grid");
    if (j.contains("z_grid")) c.z_grid = doubles(j["z_grid"], "z_grid");
    if (j.contains("ngd")) c.ngd = parse_ngd(j["ngd"]);
    if (j.contains("densities")) c.densities = parse_densities(j["densities"]);
    static const std::set<std::string> methods{"spectral", "hessian", "both", "closed"};
    if (!methods.count(c.method)) throw ValidationError("config: unknown method '" + c.method + "'");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

Json to_json(const RunConfig& c) {
  Json j;
  j["family"] = family_to_json(c.family);
  j["kernel"] = kernel_to_json(c.kernel);
  j["method"] = c.method;
  j["out_dir"] = c.out_dir;
  j["seed"] = c.seed;
  j["hessian_step"] = c.hessian_step;
  if (c.suites) j["suites"] = *c.suites;
  j["instances"] = c.instances;
  j["kernel_perturbation"] = c.kernel_perturbation;
  j["alpha_grid"] = c.alpha_grid;
  j["z_grid"] = c.z_grid;
  j["ngd"] = ngd_to_json(c.ngd);
  j["densities"] = densities_to_json(c.densities);
  return j;
}

std::string config_hash(const RunConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ZetaKernel make_kernel(const KernelConfig& k) {
  if (k.label == "kubo_mori") return ZetaKernel::kubo_mori();
  if (k.label == "rld") return ZetaKernel::rld();
  if (k.label == "alpha_z") return ZetaKernel::alpha_z(RenyiParams(k.alpha, k.z));
  if (k.label == "petz") return ZetaKernel::petz(k.alpha);
  if (k.label == "sandwiched") return ZetaKernel::sandwiched(k.alpha);
  throw ValidationError("unknown kernel label '" + k.label + "'");
}

DivergenceSpec make_divergence(const KernelConfig& k) {
  if (k.label == "kubo_mori") return DivergenceSpec::umegaki();
  if (k.label == "rld") return DivergenceSpec::belavkin_staszewski();
  if (k.label == "alpha_z") return DivergenceSpec::alpha_z(RenyiParams(k.alpha, k.z));
  if (k.label == "petz") return DivergenceSpec::petz(k.alpha);
  if (k.label == "sandwiched") return DivergenceSpec::sandwiched(k.alpha);
  throw ValidationError("unknown kernel label '" + k.label + "'");
}

BuiltFamily build_family(const FamilyConfig& f, std::uint64_t seed) {
  BuiltFamily out;
  std::mt19937_64 rng(seed);
  if (f.kind == "thermal") {
    std::optional<HermitianOperator> bias;
    if (f.bias) bias = HermitianOperator(*f.bias);
    out.thermal = std::make_shared<ThermalFamily>(hermitian_ops(f.generators), bias);
    out.family = out.thermal;
  } else if (f.kind == "time_evolved") {
    out.time_evolved =
        std::make_shared<TimeEvolvedFamily>(HermitianOperator(*f.base_generator), hermitian_ops(f.generators));
    out.family = out.time_evolved;
  } else if (f.kind == "affine") {
    out.family = affine_family(HermitianOperator(*f.base), hermitian_ops(f.directions));
  } else if (f.kind == "random_thermal") {
    out.thermal = random_thermal_family(f.dimension, f.params, rng);
    out.family = out.thermal;
  } else if (f.kind == "random_time_evolved") {
    HermitianOperator g = random_gue(f.dimension, rng);
    std::vector<HermitianOperator> gens;
    for (std::size_t j = 0; j < f.params; ++j) gens.push_back(random_gue(f.dimension, rng));
    out.time_evolved = std::make_shared<TimeEvolvedFamily>(std::move(g), std::move(gens));
    out.family = out.time_evolved;
  } else {
    throw ValidationError("unknown family kind '" + f.kind + "'");
  }
  const std::size_t n = out.family->param_dim();
  if (!f.theta.empty()) {
    if (f.theta.size() != n) throw ValidationError("family.theta: expected " + std::to_string(n) + " entries");
    out.theta = to_vector(f.theta);
  } else if (f.kind.rfind("random_", 0) == 0) {
    out.theta = random_parameters(n, rng, 1.0);
  } else {
    out.theta = RealVector::Zero(static_cast<Index>(n));
  }
  return out;
}

}  // namespace qfim::cli
