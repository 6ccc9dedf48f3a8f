#include "qfim_cli/commands.hpp"

#include "qfim_cli/ngd.hpp"

#include <qfim/densities.hpp>
#include <qfim/errors.hpp>
#include <qfim/infomat.hpp>
#include <qfim/structured.hpp>
#include <qfim/verify.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace qfim::cli {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

fs::path prepare_out(const RunConfig& config) {
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory '" + config.out_dir + "': " + ec.message());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << text;
}

void write_json(const fs::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

class Stopwatch {
 public:
  [[nodiscard]] double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Json result_json(const InfoMatrix& m, double ms) {
  return Json{{"method", to_string(m.method)},
              {"kernel", m.kernel_label},
              {"values", real_matrix_to_json(m.values)},
              {"timings_ms", ms}};
}

InfoMatrix closed_form(const BuiltFamily& built, const KernelConfig& k) {
  const bool closed_form_applies = k.label == "alpha_z" && k.alpha < 1.0;
  if (built.thermal) {
    if (closed_form_applies) return thermal_info_closed(*built.thermal, built.theta, RenyiParams(k.alpha, k.z));
    return thermal_info_general_kernel(*built.thermal, built.theta, make_kernel(k));
  }
  if (built.time_evolved) {
    if (closed_form_applies) {
      return time_evolved_info_closed(*built.time_evolved, built.theta, RenyiParams(k.alpha, k.z));
    }
    return time_evolved_info_general_kernel(*built.time_evolved, built.theta, make_kernel(k));
  }
  throw ValidationError("method 'closed' needs a thermal or time_evolved family");
}

Json report_json(const PropertyReport& r) {
  return Json{{"name", r.name},
              {"instances_run", r.instances_run},
              {"worst_violation", r.worst_violation},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"seed", r.seed},
              {"worst_instance", r.worst_instance}};
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  if (count == 1) return {lo};
  for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
  return out;
}

double or_inf(double t, const std::function<double(double)>& f) {
  return t == 0.0 ? std::numeric_limits<double>::infinity() : f(t);
}

}  // namespace

int cmd_compute(const RunConfig& config, std::ostream& log) {
  const BuiltFamily built = build_family(config.family, config.seed);
  const auto dir = prepare_out(config);
  const std::string hash = config_hash(config);

  Json results = Json::array();
  std::vector<InfoMatrix> mats;
  auto run = [&](auto&& compute) {
    const Stopwatch watch;
    InfoMatrix m = compute();
    results.push_back(result_json(m, watch.elapsed_ms()));
    mats.push_back(std::move(m));
  };
  const std::string& method = config.method;
  if (method == "spectral" || method == "both") {
    run([&] { return info_spectral(*built.family, built.theta, make_kernel(config.kernel)); });
  }
  if (method == "hessian" || method == "both") {
    run([&] {
      return info_hessian_oracle(*built.family, built.theta, make_divergence(config.kernel), config.hessian_step);
    });
  }
  if (method == "closed") run([&] { return closed_form(built, config.kernel); });

  Json out{{"config_hash", hash},
           {"family", built.family->label()},
           {"kernel", make_kernel(config.kernel).name()},
           {"theta", vector_to_json(built.theta)},
           {"results", results}};
  if (mats.size() == 2) out["max_deviation"] = relative_deviation(mats[1].values, mats[0].values);
  write_json(dir / "info_matrix.json", out);

  std::ostringstream csv;
  csv << "# config_hash=" << hash << "\nmethod,i,j,value\n";
  for (const auto& m : mats) {
    for (Index i = 0; i < m.size(); ++i) {
      for (Index j = 0; j < m.size(); ++j) csv << to_string(m.method) << "," << i << "," << j << "," << fmt(m.values(i, j)) << "\n";
    }
  }
  write_text(dir / "info_matrix.csv", csv.str());
  log << "wrote " << (dir / "info_matrix.json").string() << "\n";
  return kPass;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  const auto dir = prepare_out(config);
  const std::vector<std::string> names = config.suites.value_or(suite_names());
  SuiteOptions options{config.seed, config.instances, config.kernel_perturbation};
  Json reports = Json::array();
  bool all_pass = true;
  std::size_t total = 0;
  for (const auto& name : names) {
    const PropertyReport r = run_suite(name, options);
    reports.push_back(report_json(r));
    all_pass = all_pass && r.pass;
    total += r.instances_run;
    log << (r.pass ? "PASS " : "FAIL ") << r.name << " worst=" << fmt(r.worst_violation) << " tol=" << r.tolerance
        << " instances=" << r.instances_run << "\n";
  }
  write_json(dir / "verify_report.json", Json{{"config_hash", config_hash(config)},
                                              {"seed", config.seed},
                                              {"pass", all_pass},
                                              {"instances_run", total},
                                              {"reports", reports}});
  return all_pass ? kPass : kPropertyFailure;
}

int cmd_sweep(const RunConfig& config, std::ostream& log) {
  const BuiltFamily built = build_family(config.family, config.seed);
  const auto dir = prepare_out(config);
  const RealMatrix km = info_spectral(*built.family, built.theta, ZetaKernel::kubo_mori()).values;
  std::ostringstream csv;
  csv << "# config_hash=" << config_hash(config) << "\nalpha,z,i,j,value,method,km_value\n";
  auto emit = [&](double alpha, double z, const RealMatrix& m, const std::string& method) {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) {
        csv << fmt(alpha) << "," << fmt(z) << "," << i << "," << j << "," << fmt(m(i, j)) << "," << method << ","
            << fmt(km(i, j)) << "\n";
      }
    }
  };
  for (double alpha : config.alpha_grid) {
    for (double z : config.z_grid) {
      if (alpha == 1.0) {
        emit(alpha, z, km, "kubo_mori");
        continue;
      }
      emit(alpha, z, info_spectral(*built.family, built.theta, ZetaKernel::alpha_z(RenyiParams(alpha, z))).values,
           "alpha_z");
      if (z == 1.0) emit(alpha, z, info_spectral(*built.family, built.theta, ZetaKernel::petz(alpha)).values, "petz");
      if (z == alpha) {
        emit(alpha, z, info_spectral(*built.family, built.theta, ZetaKernel::sandwiched(alpha)).values, "sandwiched");
      }
    }
  }
  write_text(dir / "sweep.csv", csv.str());
  log << "wrote " << (dir / "sweep.csv").string() << "\n";
  return kPass;
}

int cmd_ngd(const RunConfig& config, std::ostream& log) {
  const BuiltFamily built = build_family(config.family, config.seed);
  const auto dir = prepare_out(config);
  const NgdConfig& n = config.ngd;
  HermitianOperator target = HermitianOperator::identity(built.family->dim());
  if (n.target) {
    target = HermitianOperator(*n.target);
  } else if (!n.target_theta.empty()) {
    target = built.family->state(Eigen::Map<const RealVector>(n.target_theta.data(),
                                                              static_cast<Index>(n.target_theta.size())));
  } else {
    throw ValidationError("ngd: give either target or target_theta");
  }
  RealVector theta0 = RealVector::Zero(static_cast<Index>(built.family->param_dim()));
  if (!n.initial_theta.empty()) {
    if (n.initial_theta.size() != built.family->param_dim()) throw ValidationError("ngd.initial_theta: wrong length");
    theta0 = Eigen::Map<const RealVector>(n.initial_theta.data(), theta0.size());
  }
  const NgdTrace trace = run_ngd(*built.family, target, make_kernel(n.metric),
                                 {n.learning_rate, n.iterations, n.damping, n.stop_loss}, theta0);

  const std::string hash = config_hash(config);
  std::ostringstream csv;
  csv << "# config_hash=" << hash << "\niter,loss,grad_norm,metric_min_eig";
  for (Index i = 0; i < theta0.size(); ++i) csv << ",theta_" << i;
  csv << "\n";
  for (const auto& s : trace.steps) {
    csv << s.iteration << "," << fmt(s.loss) << "," << fmt(s.grad_norm) << "," << fmt(s.metric_min_eig);
    for (Index i = 0; i < s.theta.size(); ++i) csv << "," << fmt(s.theta(i));
    csv << "\n";
  }
  write_text(dir / "ngd_log.csv", csv.str());
  write_json(dir / "ngd_summary.json", Json{{"config_hash", hash},
                                            {"metric", make_kernel(n.metric).name()},
                                            {"iterations_run", trace.steps.back().iteration},
                                            {"final_loss", trace.steps.back().loss},
                                            {"converged", trace.converged},
                                            {"theta", vector_to_json(trace.theta)}});
  log << "ngd: final loss " << fmt(trace.steps.back().loss) << " after " << trace.steps.back().iteration
      << " iterations\n";
  return kPass;
}

int cmd_densities(const RunConfig& config, std::ostream& log) {
  const auto dir = prepare_out(config);
  const RenyiParams p(config.kernel.alpha, config.kernel.z);
  const DensitiesConfig& d = config.densities;
  const std::string hash = config_hash(config);
  const auto tent = [](double t) { return high_peak_tent(t); };
  const auto az = [&p](double t) { return alpha_z_tent(t, p); };

  std::ostringstream t_csv;
  t_csv << "# config_hash=" << hash << "\nt,p,p_alpha_z,q_alpha_z\n";
  for (double t : linspace(d.t_min, d.t_max, d.t_count)) {
    t_csv << fmt(t) << "," << fmt(or_inf(t, tent)) << "," << fmt(or_inf(t, az)) << ","
          << (d.include_convolution ? fmt(convolved_tent(t, p)) : std::string("nan")) << "\n";
  }
  write_text(dir / "densities_t.csv", t_csv.str());

  const ZetaKernel kernel = ZetaKernel::alpha_z(p);
  std::ostringstream w_csv;
  w_csv << "# config_hash=" << hash << "\nomega,f_alpha_z,g_hat\n";
  for (double w : linspace(d.omega_min, d.omega_max, d.omega_count)) {
    w_csv << fmt(w) << "," << fmt(char_fn_alpha_z(w, p)) << "," << fmt(thermal_weight(w, kernel)) << "\n";
  }
  write_text(dir / "densities_omega.csv", w_csv.str());

  Json summary{{"config_hash", hash},
               {"alpha", p.alpha()},
               {"z", p.z()},
               {"integral_p", integrate_density(high_peak_tent_density())},
               {"integral_p_alpha_z", integrate_density(alpha_z_tent_density(p))}};
  if (d.include_convolution) {
    summary["integral_q_alpha_z"] = integrate_density(convolved_density(p), {1e-8, 1e-8, 4000});
  }
  write_json(dir / "densities_summary.json", summary);
  log << "wrote densities tables to " << dir.string() << "\n";
  return kPass;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qfim: quantum Fisher information matrices"};
  app.require_subcommand(1);

  struct Flags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> method;
    std::optional<double> alpha;
    std::optional<double> z;
    std::optional<std::string> suite;
  } flags;

  auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "JSON run configuration");
    sub->add_option("--seed", flags.seed, "RNG seed");
    sub->add_option("--out", flags.out_dir, "Output directory");
    sub->add_option("--method", flags.method, "spectral | hessian | both | closed")
        ->check(CLI::IsMember({"spectral", "hessian", "both", "closed"}));
    sub->add_option("--alpha", flags.alpha, "Renyi alpha (switches a KM/RLD kernel to alpha_z)");
    sub->add_option("--z", flags.z, "Renyi z");
    sub->add_option("--suite", flags.suite, "Comma-separated verification suites; empty runs none");
  };
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, std::ostream&);
  };
  const Command commands[] = {
      {"compute", "Compute an information matrix", cmd_compute},
      {"verify", "Run property suites", cmd_verify},
      {"sweep", "Sweep the (alpha, z) grid", cmd_sweep},
      {"ngd", "Natural gradient descent demo", cmd_ngd},
      {"densities", "Sample the tent densities and their transforms", cmd_densities},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    subs.push_back(app.add_subcommand(c.name, c.help));
    add_common(subs.back());
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    RunConfig config = flags.config_path.empty() ? RunConfig{} : load_config(flags.config_path);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.out_dir) config.out_dir = *flags.out_dir;
    if (flags.method) config.method = *flags.method;
    if (flags.alpha) {
      config.kernel.alpha = *flags.alpha;
      if (config.kernel.label == "kubo_mori" || config.kernel.label == "rld") config.kernel.label = "alpha_z";
    }
    if (flags.z) config.kernel.z = *flags.z;
    if (flags.suite) {
      std::vector<std::string> names;
      std::stringstream ss(*flags.suite);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) names.push_back(item);
      }
      config.suites = names;
    }
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (subs[k]->parsed()) return commands[k].fn(config, out);
    }
    return kConfigError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    err << "unexpected failure: " << e.what() << "\n";
    return kNumericError;
  }
}

}  // namespace qfim::cli
