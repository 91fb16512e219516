#include <sys/wait.h>

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("visco_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

Result run(const std::string& args, const std::string& env = {}) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" VISCO_CLI_PATH "' " + args + " >'" +
                          out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (const char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("simulate writes a trajectory") {
  const fs::path params = write("kv.json", R"({"m": 1, "k": 1, "b": 0.6, "v0": 1})");
  const fs::path csv = scratch() / "kv.csv";
  const Result r = run("simulate kv --params " + params.string() + " --out " + csv.string());
  CHECK(r.code == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("t,x,xdot,xddot,F\n", 0) == 0);
  CHECK(lines(text) == 1001);
  CHECK(r.err.find("e_star = 0.450975") != std::string::npos);

  const Result mx = run("simulate maxwell --params " + params.string() + " --samples 11");
  CHECK(mx.code == 0);
  CHECK(lines(mx.out) == 12);
}

TEST_CASE("exit codes") {
  CHECK(run("simulate kv --params /nonexistent.json").code == 1);
  const fs::path over = write("over.json", R"({"m": 1, "k": 1, "b": 3, "v0": 1})");
  CHECK(run("simulate kv --params " + over.string()).code == 2);
  const fs::path heavy = write("heavy.json", R"({"m": 1, "k": 1, "b": 0.6, "v0": 1, "g": 100})");
  CHECK(run("simulate kv --gravity --params " + heavy.string()).code == 3);
  const fs::path typo = write("typo.json", R"({"m": 1, "k": 1, "bb": 0.6, "v0": 1})");
  const Result t = run("simulate kv --params " + typo.string());
  CHECK(t.code == 1);
  CHECK(t.err.find("bb") != std::string::npos);
  CHECK(run("sweep --model kv --sweep eta:0.1").code == 2);
  CHECK(run("frobnicate").code == 1);
}

TEST_CASE("drop weight through the CLI") {
  const fs::path params = write("drop.json", R"({"m": 1, "k": 1, "b": 1.6666666666666667, "v0": 1, "g": 0.02})");
  const Result r = run("simulate maxwell --gravity --params " + params.string());
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 1001);
}

TEST_CASE("standard solid falls back to the oracle") {
  // Lambda = 0.05, rho = 0.01: D < 0
  const double k2 = 0.01 / 0.99;
  std::ostringstream p;
  p.precision(17);
  p << R"({"m": 1, "k1": 1, "k2": )" << k2 << R"(, "b": )" << std::sqrt(0.05) * (1 + k2)
    << R"(, "v0": 1})";
  const fs::path params = write("sls.json", p.str());
  const Result r = run("simulate sls --params " + params.string());
  CHECK(r.code == 0);
  CHECK(r.err.find("oracle") != std::string::npos);
  const fs::path good = write("sls2.json", R"({"m": 1, "kappa1": 1, "kappa2": 1, "beta": 1, "v0": 1})");
  const Result c = run("simulate sls --params " + good.string());
  CHECK(c.code == 0);
  CHECK(c.err.find("oracle") == std::string::npos);
}

TEST_CASE("oracle with a kernel file") {
  const fs::path kernel = write("kernel.json", R"({"type": "maxwell", "k": 1, "b": 1.6666666666666667})");
  const Result r = run("simulate oracle --kernel " + kernel.string() + " --mass 1 --v0 1");
  CHECK(r.code == 0);
  CHECK(r.err.find("e_star = 0.3723261") != std::string::npos);
  CHECK(run("simulate oracle --kernel " + kernel.string() + " --mass 1 --v0 1 --dt -1").code == 2);
  CHECK(run("simulate oracle --kernel " + kernel.string() + " --mass 1 --v0 1 --horizon 0.1").code ==
        3);
}

TEST_CASE("sweep output does not depend on the thread count") {
  const std::string args = "sweep --model sls --sweep rho:0.01:0.9:40 --fixed eta=0.3 --out ";
  const fs::path one = scratch() / "one.csv";
  const fs::path many = scratch() / "many.csv";
  CHECK(run(args + one.string(), "VISCO_IMPACT_THREADS=1").code == 0);
  CHECK(run(args + many.string(), "VISCO_IMPACT_THREADS=4").code == 0);
  CHECK(slurp(one) == slurp(many));
  CHECK(lines(slurp(one)) == 41);
  const fs::path serial = scratch() / "serial.csv";
  CHECK(run(args + serial.string() + " --serial").code == 0);
  CHECK(slurp(serial) == slurp(one));
}

TEST_CASE("sweep with failing points") {
  const Result r = run("sweep --model kv --sweep eta:0.5:1.5:3");
  CHECK(r.code == 2);
  CHECK(r.out.find("nan") != std::string::npos);
  CHECK(r.err.find("skipped") != std::string::npos);
}

TEST_CASE("verify") {
  const fs::path report = scratch() / "verify.json";
  const Result r = run("verify --out " + report.string());
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["passed"] == true);
  CHECK(j["suites"].size() >= 9);
  CHECK(run("verify --inject-fault").code == 4);
}

TEST_CASE("biphasic") {
  const fs::path layer =
      write("layer.json", R"({"mu_s": 1e5, "lambda_s": 3e5, "kappa": 2e-15, "h": 1e-3, "a": 1e-2})");
  const Result r = run("biphasic --layer " + layer.string() + " --mass 0.1 --v0 1");
  CHECK(r.code == 0);
  const auto at = r.err.find("tau_D  = ");
  REQUIRE(at != std::string::npos);
  CHECK(std::abs(std::stod(r.err.substr(at + 9)) - 1000.0) < 1e-9);
  CHECK(r.err.find("h/a") == std::string::npos);
  const fs::path thick =
      write("thick.json", R"({"mu_s": 1e5, "lambda_s": 3e5, "kappa": 2e-15, "h": 5e-3, "a": 1e-2})");
  CHECK(run("biphasic --layer " + thick.string() + " --mass 0.1 --v0 1").err.find("h/a") !=
        std::string::npos);
}

TEST_CASE("analyze") {
  const Result r = run("analyze");
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 5);
  CHECK(r.err.find("FAIL e_* independent of v0") != std::string::npos);
  CHECK(r.err.find("increases with v0") != std::string::npos);
  const fs::path bad = write("bad.csv", "h0_mm,v0_ms\n25,0.7\n");
  const Result b = run("analyze --data " + bad.string());
  CHECK(b.code == 1);
  CHECK(b.err.find("Emax_MPa") != std::string::npos);
}
