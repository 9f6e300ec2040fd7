// Command-line front end: derivative evaluation, kernel comparison, memory
// analysis, transform verification, optimization runs, integral-equation
// solves, and the verification suite. CSV/JSON output only; exit codes:
// 0 success, 2 usage, 3 numerical failure, 4 internal check crash.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sigmafrac/sigmafrac.hpp"

namespace sf = sigmafrac;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCrash = 4;

struct NamedFunction {
  std::function<double(double)> f;
  std::function<double(double)> fprime;
};

std::optional<NamedFunction> lookup_function(const std::string& name) {
  if (name == "constant")
    return NamedFunction{[](double) { return 1.0; }, [](double) { return 0.0; }};
  if (name == "linear")
    return NamedFunction{[](double t) { return t; }, [](double) { return 1.0; }};
  if (name == "quadratic-shift")
    return NamedFunction{[](double t) { return (t - 2.0) * (t - 2.0); },
                         [](double t) { return 2.0 * (t - 2.0); }};
  if (name == "sin")
    return NamedFunction{[](double t) { return std::sin(t); },
                         [](double t) { return std::cos(t); }};
  if (name == "exp")
    return NamedFunction{[](double t) { return std::exp(t); },
                         [](double t) { return std::exp(t); }};
  if (name == "abs-smooth")
    return NamedFunction{[](double t) { return std::sqrt(t * t + 1e-6); },
                         [](double t) { return t / std::sqrt(t * t + 1e-6); }};
  return std::nullopt;
}

// key = value configuration file, '#' comments
struct FileConfig {
  std::optional<std::string> kernel_family, kernel_convention;
  std::optional<double> kernel_m_alpha, kernel_sigma;
  std::optional<double> l1_lambda, l1_a;
  std::optional<double> quad_abs_tol, quad_rel_tol;
  std::optional<int> quad_max_subdivisions;
};

bool load_config(const std::string& path, FileConfig& out, std::string& err) {
  std::ifstream in(path);
  if (!in) {
    err = "cannot open config file: " + path;
    return false;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      err = path + ":" + std::to_string(lineno) + ": expected key = value";
      return false;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "kernel.family") out.kernel_family = val;
      else if (key == "kernel.convention") out.kernel_convention = val;
      else if (key == "kernel.m_alpha") out.kernel_m_alpha = std::stod(val);
      else if (key == "kernel.sigma") out.kernel_sigma = std::stod(val);
      else if (key == "l1.lambda") out.l1_lambda = std::stod(val);
      else if (key == "l1.a") out.l1_a = std::stod(val);
      else if (key == "quad.abs_tol") out.quad_abs_tol = std::stod(val);
      else if (key == "quad.rel_tol") out.quad_rel_tol = std::stod(val);
      else if (key == "quad.max_subdivisions") out.quad_max_subdivisions = std::stoi(val);
      else {
        err = path + ":" + std::to_string(lineno) + ": unknown key " + key;
        return false;
      }
    } catch (const std::exception&) {
      err = path + ":" + std::to_string(lineno) + ": bad value for " + key;
      return false;
    }
  }
  return true;
}

bool parse_convention(const std::string& s, sf::Convention& out) {
  if (s == "full") {
    out = sf::Convention::FullMass;
    return true;
  }
  if (s == "paper") {
    out = sf::Convention::PaperHalfMass;
    return true;
  }
  return false;
}

// precedence: defaults < SIGMAFRAC_QUAD_TOL < config file < explicit flags
sf::QuadConfig resolve_quad(const FileConfig& fc, std::optional<double> flag_tol,
                            std::optional<int> flag_subdiv) {
  sf::QuadConfig q;
  if (const char* env = std::getenv("SIGMAFRAC_QUAD_TOL")) {
    const double v = std::atof(env);
    if (v >= 1e-14) {
      q.abs_tol = v;
      q.rel_tol = v;
    }
  }
  if (fc.quad_abs_tol) q.abs_tol = *fc.quad_abs_tol;
  if (fc.quad_rel_tol) q.rel_tol = *fc.quad_rel_tol;
  if (fc.quad_max_subdivisions) q.max_subdivisions = *fc.quad_max_subdivisions;
  if (flag_tol) {
    q.abs_tol = *flag_tol;
    q.rel_tol = *flag_tol;
  }
  if (flag_subdiv) q.max_subdivisions = *flag_subdiv;
  q.validate();
  return q;
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

int cmd_deriv(const std::string& kernel_name, double alpha, double a,
              std::optional<double> t, const std::string& fname,
              const std::string& conv_name, double m_alpha, double sigma,
              std::optional<std::size_t> index, const std::string& sample_out,
              std::size_t sample_n, const sf::QuadConfig& quad) {
  sf::Convention conv;
  if (!parse_convention(conv_name, conv)) {
    std::cerr << "error: unknown convention '" << conv_name << "'\n";
    return kExitUsage;
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::cerr << "error: alpha must lie in (0, 1]\n";
    return kExitUsage;
  }
  sf::FractionalOrder order(alpha, conv);

  // CSV grid input -> sampled-data path (sigmoidal only)
  std::ifstream grid_in(fname);
  if (grid_in.good()) {
    if (kernel_name != "sigmoidal") {
      std::cerr << "error: sampled-data input supports only the sigmoidal kernel\n";
      return kExitUsage;
    }
    sf::GridFunction g = sf::GridFunction::read_csv(grid_in);
    const std::size_t idx = index.value_or(g.n());
    if (idx < 1 || idx > g.n()) {
      std::cerr << "error: index out of range [1, " << g.n() << "]\n";
      return kExitUsage;
    }
    const sf::DerivResult r = sig_deriv_sampled(g, idx, order);
    std::printf("value=%.10g err_estimate=%.3g n_evals=%ld convention=%s%s\n", r.value,
                r.err_estimate, r.n_evals, sf::to_string(r.convention),
                r.grid_coarse ? " warning=grid-too-coarse" : "");
    return r.converged ? kExitOk : kExitNumerical;
  }

  const auto named = lookup_function(fname);
  if (!named) {
    std::cerr << "error: '" << fname
              << "' is neither a readable CSV grid nor a named test function\n";
    return kExitUsage;
  }
  if (!t) {
    std::cerr << "error: --t is required for named test functions\n";
    return kExitUsage;
  }
  if (!sample_out.empty()) {
    // write the named function as a grid, consumable by the sampled path
    if (!(*t > a) || sample_n < 2) {
      std::cerr << "error: --sample-out needs t > a and --sample-n >= 2\n";
      return kExitUsage;
    }
    std::ofstream gf(sample_out);
    if (!gf) {
      std::cerr << "error: cannot open " << sample_out << "\n";
      return kExitUsage;
    }
    sf::GridFunction::sample(named->f, a, *t, sample_n).write_csv(gf);
  }

  sf::DerivResult r;
  if (alpha == 1.0) {
    r = sf::classical_branch(named->fprime, *t, conv);
  } else if (kernel_name == "sigmoidal") {
    r = sf::sig_deriv(named->fprime, a, *t, order, quad);
  } else if (kernel_name == "caputo") {
    r = sf::caputo_deriv(named->fprime, a, *t, alpha, quad);
  } else if (kernel_name == "caputo-fabrizio") {
    r = sf::caputo_fabrizio_deriv(named->fprime, a, *t, alpha, m_alpha, quad);
  } else if (kernel_name == "gaussian") {
    sf::KernelSpec spec(sf::KernelFamily::Gaussian, order, sigma, m_alpha);
    r = sf::kernel_deriv(spec, named->fprime, a, *t, quad);
  } else {
    std::cerr << "error: unknown kernel '" << kernel_name << "'\n";
    return kExitUsage;
  }
  std::printf("value=%.10g err_estimate=%.3g n_evals=%ld kernel=%s convention=%s\n",
              r.value, r.err_estimate, r.n_evals, kernel_name.c_str(),
              sf::to_string(r.convention));
  return r.converged ? kExitOk : kExitNumerical;
}

ordered_json check_to_json(const sf::TheoremCheck& c) {
  ordered_json metrics = ordered_json::object();
  for (const auto& [k, v] : c.metrics) metrics[k] = v;
  return ordered_json{{"theorem", c.id},
                      {"name", c.name},
                      {"convention", c.convention},
                      {"status", c.status},
                      {"metrics", metrics},
                      {"notes", c.notes}};
}

int cmd_theorem_suite(const std::string& only_csv, const std::string& conv_name,
                      const std::string& report_path, std::uint64_t seed,
                      const sf::QuadConfig& quad) {
  sf::Convention conv;
  if (!parse_convention(conv_name, conv)) {
    std::cerr << "error: unknown convention '" << conv_name << "'\n";
    return kExitUsage;
  }
  std::vector<std::string> only;
  if (!only_csv.empty()) {
    std::stringstream ss(only_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) only.push_back(item);
  }
  sf::SuiteConfig cfg;
  cfg.convention = conv;
  cfg.seed = seed;
  cfg.quad = quad;

  std::vector<sf::TheoremCheck> checks;
  try {
    checks = sf::run_theorem_suite(cfg, only);
  } catch (const std::exception& e) {
    std::cerr << "internal error while running checks: " << e.what() << "\n";
    return kExitCrash;
  }
  if (checks.empty()) {
    std::cerr << "error: --only selected no known check\n";
    return kExitUsage;
  }

  ordered_json results = ordered_json::array();
  ordered_json findings = ordered_json::array();
  for (const auto& c : checks) {
    results.push_back(check_to_json(c));
    if (c.status != "confirmed") {
      std::string f = c.id + ": " + c.status;
      for (const auto& n : c.notes) f += " - " + n;
      findings.push_back(f);
    }
  }
  ordered_json report{
      {"schema_version", "1"},
      {"command", "theorem-suite"},
      {"config",
       {{"convention", sf::to_string(conv)},
        {"seed", seed},
        {"quad_abs_tol", quad.abs_tol},
        {"quad_rel_tol", quad.rel_tol},
        {"quad_max_subdivisions", quad.max_subdivisions},
        {"only", only}}},
      {"results", results},
      {"findings", findings}};

  std::ofstream file;
  std::ostream& os = open_sink(report_path, file);
  os << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_optimize(const std::string& objective, double mu, double alpha, double t0,
                 std::optional<double> t_prev, double lambda, double l1_a,
                 int max_iter, double step_tol, double grad_tol,
                 const std::string& trace_path, const std::string& summary_path,
                 const std::string& conv_name, const sf::QuadConfig& quad) {
  sf::Convention conv;
  if (!parse_convention(conv_name, conv)) {
    std::cerr << "error: unknown convention '" << conv_name << "'\n";
    return kExitUsage;
  }
  if (!(mu > 0.0 && mu < 1.0)) {
    std::cerr << "error: learning rate mu must lie in the open interval (0, 1)\n";
    return kExitUsage;
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    std::cerr << "error: alpha must lie in (0, 1]\n";
    return kExitUsage;
  }

  sf::DescentConfig cfg(mu, sf::FractionalOrder(alpha, conv));
  cfg.max_iter = max_iter;
  cfg.step_tol = step_tol;
  cfg.grad_tol = grad_tol;
  cfg.t_init = t0;
  if (t_prev) cfg.t_prev_init = *t_prev;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  sf::DescentTrace trace;
  bool used_l1 = false;
  if (objective == "quadratic" || objective == "rosenbrock-1d") {
    std::function<double(double)> f, fp;
    if (objective == "quadratic") {
      f = [](double t) { return (t - 2.0) * (t - 2.0); };
      fp = [](double t) { return 2.0 * (t - 2.0); };
    } else {
      f = [](double t) { return (1.0 - t) * (1.0 - t) + 100.0 * (t - t * t) * (t - t * t); };
      fp = [](double t) {
        return -2.0 * (1.0 - t) + 200.0 * (t - t * t) * (1.0 - 2.0 * t);
      };
    }
    trace = (alpha == 1.0) ? sf::gd_run(f, fp, cfg) : sf::fgd_run(f, fp, cfg, quad);
  } else if (objective == "lasso-toy") {
    if (alpha == 1.0) {
      std::cerr << "error: lasso-toy requires alpha < 1 (smoothed penalty)\n";
      return kExitUsage;
    }
    used_l1 = true;
    sf::L1Config l1(lambda, l1_a, sf::FractionalOrder(alpha, conv));
    auto base = [](std::span<const double> x) {
      return 0.5 * (x[0] - 3.0) * (x[0] - 3.0);
    };
    auto grad = [](const std::vector<double>& x, std::size_t) { return x[0] - 3.0; };
    sf::VectorDescentTrace vt =
        sf::fgd_run_vector(base, grad, {t0}, cfg, l1, quad);
    trace = vt.coordinates[0];
  } else {
    std::cerr << "error: unknown objective '" << objective << "'\n";
    return kExitUsage;
  }

  if (!trace_path.empty()) {
    std::ofstream tf(trace_path);
    if (!tf) {
      std::cerr << "error: cannot open trace file " << trace_path << "\n";
      return kExitUsage;
    }
    sf::write_trace_csv(tf, trace);
  }

  ordered_json summary{
      {"schema_version", "1"},
      {"command", "optimize"},
      {"config",
       {{"objective", objective},
        {"mu", mu},
        {"alpha", alpha},
        {"t0", t0},
        {"convention", sf::to_string(conv)},
        {"lambda", used_l1 ? lambda : 0.0},
        {"max_iter", max_iter}}},
      {"termination", sf::to_string(trace.termination)},
      {"iterations", trace.steps.size()},
      {"final_iterate", trace.final_iterate()},
      {"final_objective", trace.objective.back()}};
  std::ofstream file;
  std::ostream& os = open_sink(summary_path, file);
  os << summary.dump(2) << "\n";
  return trace.termination == sf::Termination::Diverged ? kExitNumerical : kExitOk;
}

int cmd_transform_verify(std::vector<double> s_points, std::vector<double> w_points,
                         const std::string& out_path, const sf::QuadConfig& quad) {
  if (s_points.empty()) s_points = {0.5, 1.0, 2.0, 4.0, 8.0};
  if (w_points.empty()) w_points = {0.25, 0.5, 1.0, 2.0};
  std::ofstream file;
  std::ostream& os = open_sink(out_path, file);
  os << "quantity,point,paper_form,corrected_form,oracle,abs_diff\n";
  char buf[200];
  bool ok = true;
  for (double s : s_points) {
    if (!(s > 0.0)) {
      std::cerr << "error: Laplace points require s > 0\n";
      return kExitUsage;
    }
    const sf::LaplacePoint p(s);
    const auto oracle = sf::laplace_numeric(sf::sech2, p, quad);
    ok = ok && oracle.converged;
    const double corrected = sf::t1_multiplier(p).real();
    const double paper = sf::t1_multiplier_paper(p).real();
    std::snprintf(buf, sizeof buf, "laplace_sech2,%.17g,%.17g,%.17g,%.17g,%.17g\n", s,
                  paper, corrected, oracle.value.real(),
                  std::fabs(corrected - oracle.value.real()));
    os << buf;
  }
  for (double w : w_points) {
    if (w == 0.0) {
      std::cerr << "error: Fourier points require omega != 0\n";
      return kExitUsage;
    }
    const sf::FourierPoint p(w);
    const auto oracle = sf::fourier_numeric(sf::sech2, p, quad);
    ok = ok && oracle.converged;
    const double corrected = w * sf::t2_multiplier(p);
    const double paper = w * w * sf::t2_multiplier(p);  // printed form carries an extra w
    std::snprintf(buf, sizeof buf, "fourier_sech2,%.17g,%.17g,%.17g,%.17g,%.17g\n", w,
                  paper, corrected, oracle.value.real(),
                  std::fabs(corrected - oracle.value.real()));
    os << buf;
  }
  return ok ? kExitOk : kExitNumerical;
}

int cmd_memory(double eps, double c0, double alpha, double m,
               const std::string& conv_name, const std::string& out_path) {
  sf::Convention conv;
  if (!parse_convention(conv_name, conv)) {
    std::cerr << "error: unknown convention '" << conv_name << "'\n";
    return kExitUsage;
  }
  if (!(eps > 0.0) || !(c0 > 0.0) || !(m > 0.0) || !(alpha > 0.0 && alpha < 1.0)) {
    std::cerr << "error: memory requires eps, c0, m > 0 and alpha in (0, 1)\n";
    return kExitUsage;
  }
  const sf::FractionalOrder order(alpha, conv);
  const double sig_len = sf::sig_memory_length(eps, c0, order);
  const auto cap_len = sf::caputo_memory_length(eps, m, alpha);
  std::ofstream file;
  std::ostream& os = open_sink(out_path, file);
  os << "eps,c0,alpha,convention,sigmoidal_L,caputo_L,caputo_degenerate\n";
  char buf[200];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%s,%.17g,%.17g,%d\n", eps, c0, alpha,
                sf::to_string(conv), sig_len, cap_len.value, cap_len.degenerate ? 1 : 0);
  os << buf;
  return kExitOk;
}

int cmd_fde(const std::string& thm, const std::string& g_name, const std::string& rhs_name,
            double f0, double a, double b, std::size_t n, double alpha, double c0,
            int max_sweeps, double tol, const std::string& conv_name,
            const std::string& out_path, const sf::QuadConfig& quad) {
  sf::Convention conv;
  if (!parse_convention(conv_name, conv)) {
    std::cerr << "error: unknown convention '" << conv_name << "'\n";
    return kExitUsage;
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::cerr << "error: fde requires alpha in (0, 1)\n";
    return kExitUsage;
  }
  const sf::FractionalOrder order(alpha, conv);

  if (thm == "2.9") {
    const auto named = lookup_function(g_name);
    if (!named) {
      std::cerr << "error: unknown forcing function '" << g_name << "'\n";
      return kExitUsage;
    }
    const auto r = sf::thm29_residual(named->f, f0, a, b, n, order, quad);
    if (!out_path.empty()) {
      std::ofstream file;
      std::ostream& os = open_sink(out_path, file);
      // columns: node, claimed-solution operator image, forcing integral
      std::vector<double> fhat(r.nodes.size());
      const double c1 = sf::c1_constant(order);
      for (std::size_t i = 0; i < r.nodes.size(); ++i)
        fhat[i] = named->f(r.nodes[i]) / c1 + f0;
      sf::write_solution_csv(os, r.nodes, fhat, r.operator_values);
    }
    std::printf("max_residual=%.10g\n", r.max_residual);
    return kExitOk;
  }
  if (thm == "2.10") {
    std::function<double(double, double, double)> rhs;
    if (rhs_name == "zero") {
      rhs = [](double, double, double) { return 0.0; };
    } else if (rhs_name == "linear-f") {
      rhs = [c0](double, double f, double) { return c0 * f; };
    } else if (rhs_name == "manufactured") {
      const double w = order.width();
      const double c1 = sf::c1_constant(order);
      rhs = [w, c1, a](double t, double, double) {
        return c1 * (2.0 * a * w * std::tanh((t - a) / w) +
                     2.0 * w * w * sf::log_cosh((t - a) / w));
      };
    } else {
      std::cerr << "error: unknown rhs '" << rhs_name << "'\n";
      return kExitUsage;
    }
    sf::PicardResult pr;
    try {
      pr = sf::picard_solve(rhs, a, b, n, f0, order, c0, max_sweeps, tol);
    } catch (const sf::contraction_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitNumerical;
    }
    if (!out_path.empty()) {
      std::ofstream file;
      std::ostream& os = open_sink(out_path, file);
      sf::write_solution_csv(os, pr.nodes, pr.f, pr.u);
    }
    std::printf("converged=%s sweeps=%d contraction=%.6g condition_estimate=%.6g\n",
                pr.converged ? "true" : "false", pr.sweeps, pr.contraction_value,
                pr.condition_estimate);
    return pr.converged ? kExitOk : kExitNumerical;
  }
  std::cerr << "error: --thm must be 2.9 or 2.10\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sigmoidal fractional derivative toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  std::optional<double> flag_quad_tol;
  std::optional<int> flag_max_subdiv;
  app.add_option("--quad-tol", flag_quad_tol, "quadrature abs/rel tolerance override");
  app.add_option("--max-subdiv", flag_max_subdiv, "quadrature subdivision budget");

  // deriv
  auto* deriv = app.add_subcommand("deriv", "evaluate a fractional derivative");
  std::string d_kernel = "sigmoidal", d_f, d_conv = "full";
  double d_alpha = 0.0, d_a = 0.0, d_m = 1.0, d_sigma = 0.0;
  std::optional<double> d_t;
  std::optional<std::size_t> d_index;
  deriv->add_option("--kernel", d_kernel, "sigmoidal|caputo|caputo-fabrizio|gaussian");
  deriv->add_option("--alpha", d_alpha, "order in (0, 1]")->required();
  deriv->add_option("--a", d_a, "lower limit");
  deriv->add_option("--t", d_t, "evaluation point (named functions)");
  deriv->add_option("--f", d_f, "named test function or CSV grid path")->required();
  deriv->add_option("--convention", d_conv, "full|paper");
  deriv->add_option("--m-alpha", d_m, "Caputo-Fabrizio normalization M(alpha)");
  deriv->add_option("--sigma", d_sigma, "Gaussian kernel width");
  deriv->add_option("--index", d_index, "grid node for sampled input (default n)");
  std::string d_sample_out;
  std::size_t d_sample_n = 256;
  deriv->add_option("--sample-out", d_sample_out,
                    "also write the named function as a CSV grid on [a, t]");
  deriv->add_option("--sample-n", d_sample_n, "panels for --sample-out");

  // theorem-suite
  auto* suite = app.add_subcommand("theorem-suite", "run the verification suite");
  std::string s_only, s_conv = "full", s_report;
  std::uint64_t s_seed = 42;
  suite->add_option("--only", s_only, "comma-separated check ids (e.g. 2.3,2.9)");
  suite->add_option("--convention", s_conv, "full|paper");
  suite->add_option("--report", s_report, "JSON report path (default stdout)");
  suite->add_option("--seed", s_seed, "seed for randomized sweeps");

  // optimize
  auto* opt = app.add_subcommand("optimize", "gradient descent runs");
  std::string o_obj = "quadratic", o_trace, o_summary, o_conv = "full";
  double o_mu = 0.1, o_alpha = 0.9, o_t0 = 0.0, o_lambda = 0.0, o_l1a = 1e-3;
  std::optional<double> o_tprev;
  int o_max_iter = 10000;
  double o_step_tol = 1e-12, o_grad_tol = 1e-12;
  opt->add_option("--objective", o_obj, "quadratic|lasso-toy|rosenbrock-1d");
  opt->add_option("--mu", o_mu, "learning rate in (0, 1)")->required();
  opt->add_option("--alpha", o_alpha, "order in (0, 1]; 1 = classical baseline")->required();
  opt->add_option("--t0", o_t0, "initial iterate");
  opt->add_option("--t-prev", o_tprev, "history point t_{-1}");
  opt->add_option("--lambda", o_lambda, "l1 weight (lasso-toy)");
  opt->add_option("--l1-a", o_l1a, "l1 smoothing lower limit (lasso-toy)");
  opt->add_option("--max-iter", o_max_iter, "iteration cap");
  opt->add_option("--step-tol", o_step_tol, "step tolerance");
  opt->add_option("--grad-tol", o_grad_tol, "gradient tolerance");
  opt->add_option("--trace", o_trace, "trace CSV path");
  opt->add_option("--summary", o_summary, "JSON summary path (default stdout)");
  opt->add_option("--convention", o_conv, "full|paper");

  // transform-verify
  auto* tv = app.add_subcommand("transform-verify", "verification table for the multipliers");
  std::vector<double> t_s, t_w;
  std::string t_out;
  tv->add_option("--s", t_s, "Laplace points (default 0.5 1 2 4 8)");
  tv->add_option("--omega", t_w, "Fourier points (default 0.25 0.5 1 2)");
  tv->add_option("--out", t_out, "CSV path (default stdout)");

  // memory
  auto* mem = app.add_subcommand("memory", "memory-length analysis");
  double m_eps = 0.0, m_c0 = 0.0, m_alpha = 0.0, m_m = 1.0;
  std::string m_conv = "full", m_out;
  mem->add_option("--eps", m_eps, "accuracy target")->required();
  mem->add_option("--c0", m_c0, "derivative bound C0")->required();
  mem->add_option("--alpha", m_alpha, "order in (0, 1)")->required();
  mem->add_option("--m", m_m, "Caputo derivative bound M");
  mem->add_option("--convention", m_conv, "full|paper");
  mem->add_option("--out", m_out, "CSV path (default stdout)");

  // fde
  auto* fde = app.add_subcommand("fde", "integral-equation checks and solves");
  std::string f_thm, f_g = "linear", f_rhs = "zero", f_conv = "full", f_out;
  double f_f0 = 0.0, f_a = 0.0, f_b = 1.0, f_alpha = 0.5, f_c0 = 0.1, f_tol = 1e-10;
  std::size_t f_n = 2000;
  int f_sweeps = 50;
  fde->add_option("--thm", f_thm, "2.9|2.10")->required();
  fde->add_option("--g", f_g, "forcing function for 2.9");
  fde->add_option("--rhs", f_rhs, "zero|linear-f|manufactured (2.10)");
  fde->add_option("--f0", f_f0, "initial value f(a)");
  fde->add_option("--a", f_a, "left endpoint");
  fde->add_option("--b", f_b, "right endpoint");
  fde->add_option("--n", f_n, "grid panels");
  fde->add_option("--alpha", f_alpha, "order in (0, 1)");
  fde->add_option("--c0", f_c0, "Lipschitz constant of the right-hand side");
  fde->add_option("--max-sweeps", f_sweeps, "Picard sweep cap");
  fde->add_option("--tol", f_tol, "sweep convergence tolerance");
  fde->add_option("--convention", f_conv, "full|paper");
  fde->add_option("--out", f_out, "solution CSV path");

  // global options (--config, --quad-tol, --max-subdiv) may appear after the
  // subcommand name as well
  for (auto* sub : {deriv, suite, opt, tv, mem, fde}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  FileConfig fc;
  if (!config_path.empty()) {
    std::string err;
    if (!load_config(config_path, fc, err)) {
      std::cerr << "error: " << err << "\n";
      return kExitUsage;
    }
  }

  try {
    const sf::QuadConfig quad = resolve_quad(fc, flag_quad_tol, flag_max_subdiv);
    if (deriv->parsed()) {
      if (deriv->count("--kernel") == 0 && fc.kernel_family) d_kernel = *fc.kernel_family;
      if (deriv->count("--convention") == 0 && fc.kernel_convention)
        d_conv = *fc.kernel_convention;
      if (deriv->count("--m-alpha") == 0 && fc.kernel_m_alpha) d_m = *fc.kernel_m_alpha;
      if (deriv->count("--sigma") == 0 && fc.kernel_sigma) d_sigma = *fc.kernel_sigma;
      return cmd_deriv(d_kernel, d_alpha, d_a, d_t, d_f, d_conv, d_m, d_sigma, d_index,
                       d_sample_out, d_sample_n, quad);
    }
    if (suite->parsed())
      return cmd_theorem_suite(s_only, s_conv, s_report, s_seed, quad);
    if (opt->parsed()) {
      if (opt->count("--lambda") == 0 && fc.l1_lambda) o_lambda = *fc.l1_lambda;
      if (opt->count("--l1-a") == 0 && fc.l1_a) o_l1a = *fc.l1_a;
      if (opt->count("--convention") == 0 && fc.kernel_convention)
        o_conv = *fc.kernel_convention;
      return cmd_optimize(o_obj, o_mu, o_alpha, o_t0, o_tprev, o_lambda, o_l1a,
                          o_max_iter, o_step_tol, o_grad_tol, o_trace, o_summary,
                          o_conv, quad);
    }
    if (tv->parsed()) return cmd_transform_verify(t_s, t_w, t_out, quad);
    if (mem->parsed()) return cmd_memory(m_eps, m_c0, m_alpha, m_m, m_conv, m_out);
    if (fde->parsed())
      return cmd_fde(f_thm, f_g, f_rhs, f_f0, f_a, f_b, f_n, f_alpha, f_c0, f_sweeps,
                     f_tol, f_conv, f_out, quad);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
