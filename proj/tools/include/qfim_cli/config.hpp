#pragma once

#include <qfim/divergences.hpp>
#include <qfim/families.hpp>
#include <qfim/kernels.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfim::cli {

using Json = nlohmann::ordered_json;

// {"re": [[...]], "im": [[...]]}, row-major; "im" may be omitted for real matrices.
[[nodiscard]] Matrix matrix_from_json(const Json& j, const std::string& where);
[[nodiscard]] Json matrix_to_json(const Matrix& m);
[[nodiscard]] Json real_matrix_to_json(const RealMatrix& m);
[[nodiscard]] Json vector_to_json(const RealVector& v);

// Family kinds: thermal, time_evolved, affine, random_thermal, random_time_evolved.
struct FamilyConfig {
  std::string kind = "random_thermal";
  Index dimension = 2;
  std::size_t params = 1;
  std::vector<Matrix> generators;
  std::optional<Matrix> bias;            // thermal
  std::optional<Matrix> base_generator;  // time_evolved
  std::optional<Matrix> base;            // affine
  std::vector<Matrix> directions;        // affine
  std::vector<double> theta;             // empty: zeros, or random for random_* kinds

  bool operator==(const FamilyConfig& other) const;
};

// Labels: kubo_mori, rld, alpha_z, petz, sandwiched.
struct KernelConfig {
  std::string label = "kubo_mori";
  double alpha = 0.5;
  double z = 1.0;

  bool operator==(const KernelConfig&) const = default;
};

struct NgdConfig {
  std::optional<Matrix> target;       // explicit target density matrix
  std::vector<double> target_theta;   // or rho(target_theta) of the configured family
  std::vector<double> initial_theta;  // empty: zeros
  KernelConfig metric;
  double learning_rate = 1.0;
  int iterations = 200;
  double damping = 0.0;
  double stop_loss = 1e-14;

  bool operator==(const NgdConfig& other) const;
};

struct DensitiesConfig {
  double t_min = -4.95;
  double t_max = 4.95;
  int t_count = 100;
  double omega_min = -8.0;
  double omega_max = 8.0;
  int omega_count = 81;
  bool include_convolution = true;

  bool operator==(const DensitiesConfig&) const = default;
};

struct RunConfig {
  FamilyConfig family;
  KernelConfig kernel;
  std::string method = "spectral";  // spectral | hessian | both | closed
  std::string out_dir = "out";
  std::uint64_t seed = 42;
  double hessian_step = 0.0;  // 0: default step
  std::optional<std::vector<std::string>> suites;  // unset: every suite
  std::size_t instances = 10;
  double kernel_perturbation = 1.0;
  std::vector<double> alpha_grid{0.3, 0.5, 0.7, 2.0};
  std::vector<double> z_grid{0.5, 1.0, 2.0};
  NgdConfig ngd;
  DensitiesConfig densities;

  bool operator==(const RunConfig&) const = default;
};

// Throws ValidationError on schema violations or non-Hermitian matrices.
[[nodiscard]] RunConfig parse_config(const Json& j);
[[nodiscard]] RunConfig load_config(const std::string& path);
[[nodiscard]] Json to_json(const RunConfig& config);

// FNV-1a 64 of the canonical serialization, as 16 hex digits.
[[nodiscard]] std::string config_hash(const RunConfig& config);

[[nodiscard]] ZetaKernel make_kernel(const KernelConfig& k);
[[nodiscard]] DivergenceSpec make_divergence(const KernelConfig& k);

struct BuiltFamily {
  FamilyPtr family;
  std::shared_ptr<const ThermalFamily> thermal;           // set for thermal kinds
  std::shared_ptr<const TimeEvolvedFamily> time_evolved;  // set for time-evolved kinds
  RealVector theta;
};

[[nodiscard]] BuiltFamily build_family(const FamilyConfig& f, std::uint64_t seed);

}  // namespace qfim::cli
