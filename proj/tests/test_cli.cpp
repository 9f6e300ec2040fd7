#include <catch2/catch.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

const char* cli_bin() { return std::getenv("SIGMAFRAC_CLI_BIN"); }

RunResult run(const std::string& args, const std::string& env_prefix = {}) {
  const std::string cmd = env_prefix + std::string(cli_bin()) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return RunResult{WEXITSTATUS(status), out};
}

double first_value(const std::string& out, const std::string& key) {
  const auto pos = out.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(out.substr(pos + key.size() + 1));
}

}  // namespace

TEST_CASE("cli derivative evaluation", "[cli]") {
  if (!cli_bin()) {
    WARN("SIGMAFRAC_CLI_BIN not set; skipping CLI tests");
    return;
  }
  SECTION("sigmoidal closed form") {
    const RunResult r =
        run("deriv --kernel sigmoidal --alpha 0.5 --a 0 --t 1 --f linear --convention full");
    CHECK(r.exit_code == 0);
    CHECK(first_value(r.out, "value") == Approx(0.9640276).margin(1e-6));
  }
  SECTION("classical branch at alpha = 1") {
    const RunResult r = run("deriv --alpha 1.0 --f sin --t 0");
    CHECK(r.exit_code == 0);
    CHECK(first_value(r.out, "value") == Approx(1.0).margin(1e-12));
  }
  SECTION("caputo power rule") {
    const RunResult r = run("deriv --kernel caputo --alpha 0.5 --f linear --a 0 --t 1");
    CHECK(r.exit_code == 0);
    CHECK(first_value(r.out, "value") == Approx(1.1283792).margin(1e-6));
  }
  SECTION("unknown kernel is a usage error") {
    CHECK(run("deriv --kernel westerngrebe --alpha 0.5 --t 1 --f linear").exit_code == 2);
  }
  SECTION("alpha outside (0,1] is a usage error") {
    CHECK(run("deriv --alpha 1.5 --t 1 --f linear").exit_code == 2);
  }
  SECTION("starved quadrature budget exits 3") {
    const RunResult r =
        run("deriv --alpha 0.999 --a 0 --t 1 --f sin --max-subdiv 2 --quad-tol 1e-13");
    CHECK(r.exit_code == 3);
  }
}

TEST_CASE("cli sampled-data path", "[cli]") {
  if (!cli_bin()) return;
  const std::string path = "/tmp/sigmafrac_test_grid.csv";
  {
    std::ofstream f(path);
    f << "t,f\n";
    const int n = 1000;
    for (int i = 0; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      f << t << "," << t << "\n";
    }
  }
  const RunResult r = run("deriv --alpha 0.5 --f " + path);
  CHECK(r.exit_code == 0);
  CHECK(first_value(r.out, "value") == Approx(0.9640276).margin(1e-4));
  std::remove(path.c_str());

  SECTION("grids written by the CLI round-trip through the sampled path") {
    const std::string grid = "/tmp/sigmafrac_written_grid.csv";
    const RunResult w = run("deriv --alpha 0.5 --a 0 --t 1 --f linear --sample-out " +
                            grid + " --sample-n 1000");
    CHECK(w.exit_code == 0);
    const RunResult rr = run("deriv --alpha 0.5 --f " + grid);
    CHECK(rr.exit_code == 0);
    CHECK(first_value(rr.out, "value") == Approx(0.9640276).margin(1e-4));
    std::remove(grid.c_str());
  }
}

TEST_CASE("cli optimize", "[cli]") {
  if (!cli_bin()) return;
  SECTION("mu = 0 rejected (open interval)") {
    CHECK(run("optimize --objective quadratic --mu 0 --alpha 0.9 --t0 0").exit_code == 2);
  }
  SECTION("quadratic run summary") {
    const RunResult r =
        run("optimize --objective quadratic --mu 0.1 --alpha 0.9 --t0 0 --trace "
            "/tmp/sigmafrac_trace.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"termination\": \"StepTol\"") != std::string::npos);
    CHECK(r.out.find("\"schema_version\": \"1\"") != std::string::npos);
    std::ifstream trace("/tmp/sigmafrac_trace.csv");
    std::string header;
    std::getline(trace, header);
    CHECK(header == "k,t_k,step,f_t,grad_proxy,flags");
    std::remove("/tmp/sigmafrac_trace.csv");
  }
  SECTION("lasso toy writes l1 flags") {
    const RunResult r =
        run("optimize --objective lasso-toy --mu 0.1 --alpha 0.99 --t0 0 --lambda 0.5 "
            "--max-iter 200 --trace /tmp/sigmafrac_lasso.csv");
    CHECK(r.exit_code == 0);
    std::ifstream trace("/tmp/sigmafrac_lasso.csv");
    std::stringstream ss;
    ss << trace.rdbuf();
    CHECK(ss.str().find("l1") != std::string::npos);
    std::remove("/tmp/sigmafrac_lasso.csv");
  }
}

TEST_CASE("cli memory analysis", "[cli]") {
  if (!cli_bin()) return;
  const RunResult r = run("memory --eps 0.01 --c0 1 --alpha 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sigmoidal_L") != std::string::npos);
  // both lengths side by side on the data row
  const auto header_end = r.out.find('\n');
  const std::string row = r.out.substr(header_end + 1);
  CHECK(row.find("7.07106") != std::string::npos);
  CHECK(row.find("7.85398") != std::string::npos);
}

TEST_CASE("cli transform verification table", "[cli]") {
  if (!cli_bin()) return;
  const RunResult r = run("transform-verify --s 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("quantity,point,paper_form,corrected_form,oracle,abs_diff\n", 0) == 0);
  CHECK(r.out.find("laplace_sech2,2,") != std::string::npos);
  CHECK(r.out.find("2.3862943611") != std::string::npos);  // printed form
  CHECK(r.out.find("0.3862943611") != std::string::npos);  // corrected + oracle
}

TEST_CASE("cli fde subcommand", "[cli]") {
  if (!cli_bin()) return;
  SECTION("contraction run converges") {
    const RunResult r = run("fde --thm 2.10 --rhs linear-f --c0 0.1 --n 256");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("converged=true") != std::string::npos);
  }
  SECTION("closed-form residual finding") {
    const RunResult r = run("fde --thm 2.9 --g linear --alpha 0.5 --n 512");
    CHECK(r.exit_code == 0);
    const double res = first_value(r.out, "max_residual");
    CHECK(res >= 0.01);
  }
  SECTION("contraction violation exits 3") {
    CHECK(run("fde --thm 2.10 --rhs linear-f --c0 2.0 --n 64").exit_code == 3);
  }
}

TEST_CASE("cli theorem suite report", "[cli]") {
  if (!cli_bin()) return;
  const RunResult r = run("theorem-suite --only 2.9 --report -");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"schema_version\": \"1\"") != std::string::npos);
  CHECK(r.out.find("\"status\": \"refuted-as-printed\"") != std::string::npos);
  CHECK(r.out.find("\"findings\"") != std::string::npos);
  // statuses are data: the half-mass run still exits 0
  const RunResult rp = run("theorem-suite --only 2.1 --convention paper --report -");
  CHECK(rp.exit_code == 0);
  CHECK(rp.out.find("\"convention\": \"paper\"") != std::string::npos);
  // unknown check id is a usage error
  CHECK(run("theorem-suite --only 9.99").exit_code == 2);
}

TEST_CASE("cli quadrature tolerance from the environment", "[cli]") {
  if (!cli_bin()) return;
  const RunResult loose =
      run("deriv --alpha 0.5 --a 0 --t 1 --f linear",
          "SIGMAFRAC_QUAD_TOL=1e-6 ");
  CHECK(loose.exit_code == 0);
  const RunResult tight = run("deriv --alpha 0.5 --a 0 --t 1 --f linear");
  // looser tolerance must not cost more evaluations
  CHECK(first_value(loose.out, "n_evals") <= first_value(tight.out, "n_evals"));
}

TEST_CASE("cli config file feeds defaults", "[cli]") {
  if (!cli_bin()) return;
  const std::string cfg = "/tmp/sigmafrac_cfg.txt";
  {
    std::ofstream f(cfg);
    f << "# comment\nkernel.convention = paper\nquad.abs_tol = 1e-11\n";
  }
  const RunResult r =
      run("--config " + cfg + " deriv --alpha 0.5 --a 0 --t 1 --f linear");
  CHECK(r.exit_code == 0);
  // half-mass convention halves tanh(2)
  CHECK(first_value(r.out, "value") == Approx(0.4820138).margin(1e-6));
  {
    std::ofstream f(cfg);
    f << "l1.lambda = 0.25\nl1.a = 0.002\n";
  }
  const RunResult o = run("--config " + cfg +
                          " optimize --objective lasso-toy --mu 0.1 --alpha 0.99 --t0 0 "
                          "--max-iter 50");
  CHECK(o.exit_code == 0);
  CHECK(o.out.find("\"lambda\": 0.25") != std::string::npos);
  {
    std::ofstream f(cfg);
    f << "kernel.unknown_key = 1\n";
  }
  CHECK(run("--config " + cfg + " deriv --alpha 0.5 --t 1 --f linear").exit_code == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("cli fde solution file", "[cli]") {
  if (!cli_bin()) return;
  const std::string out = "/tmp/sigmafrac_solution.csv";
  const RunResult r =
      run("fde --thm 2.10 --rhs manufactured --c0 0.5 --n 128 --out " + out);
  CHECK(r.exit_code == 0);
  std::ifstream f(out);
  std::string header;
  std::getline(f, header);
  CHECK(header == "t,f,u");
  std::size_t rows = 0;
  for (std::string line; std::getline(f, line);) ++rows;
  CHECK(rows == 129);
  std::remove(out.c_str());
}
