#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("msm_test_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(MSM_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path kLog = fs::temp_directory_path() / "msm_test_cli.log";

}  // namespace

TEST_CASE("annealed-curve succeeds and lists its outputs") {
  const fs::path out = scratch("curve");
  CHECK(run("annealed-curve --alpha 0.3,0.7 --points 7 --a-min 0.01 --a-max 50 --out " + out.string(), kLog) == 0);
  CHECK(fs::exists(out / "curve_alpha0.3.csv"));
  CHECK(fs::exists(out / "curve_alpha0.7.csv"));
  const std::string printed = slurp(kLog);
  CHECK(printed.find("curve_alpha0.3.csv") != std::string::npos);
  CHECK(printed.find("manifest.json") != std::string::npos);
}

TEST_CASE("clustering-function writes one directory per grid cell") {
  const fs::path out = scratch("cf");
  CHECK(run("clustering-function --alpha 0.3,0.5 --n 100 --reps 2 --seed 5 --out " + out.string(), kLog) == 0);
  for (const char* cell : {"alpha0.3_n100", "alpha0.5_n100"}) {
    CAPTURE(cell);
    CHECK(fs::exists(out / cell / "manifest.json"));
  }
  CHECK(fs::exists(out / "alpha0.5_n100" / "profile_n100_alpha0.5_r1.csv"));
  CHECK(fs::exists(out / "alpha0.5_n100" / "curve_n100_alpha0.5.csv"));
  const auto j = nlohmann::json::parse(slurp(out / "alpha0.3_n100" / "manifest.json"));
  CHECK(j["seed"] == 5);
  CHECK(j["realizations"] == 2);
}

TEST_CASE("single-cell clustering-function writes in place") {
  const fs::path out = scratch("cf1");
  CHECK(run("clustering-function --alpha 0.3 --n 100 --reps 1 --out " + out.string(), kLog) == 0);
  CHECK(fs::exists(out / "profile_n100_alpha0.3_r0.csv"));
}

TEST_CASE("avg-clustering and degree-fractions") {
  const fs::path out = scratch("sweep");
  CHECK(run("avg-clustering --alpha 0.5 --n 100,200 --reps 2 --mode fixed --out " + out.string(), kLog) == 0);
  CHECK(fs::exists(out / "realizations.csv"));
  CHECK(fs::exists(out / "summary.csv"));
  CHECK(slurp(out / "realizations.csv").find(",fixed,") != std::string::npos);

  const fs::path df = scratch("df");
  CHECK(run("degree-fractions --alpha 0.5 --n 100 --reps 2 --out " + df.string(), kLog) == 0);
  CHECK(fs::exists(df / "fractions_pareto.csv"));
  CHECK(fs::exists(df / "fractions_stable.csv"));

  const fs::path one = scratch("df_one");
  CHECK(run("degree-fractions --alpha 0.5 --n 100 --reps 2 --source stable --out " + one.string(), kLog) == 0);
  CHECK_FALSE(fs::exists(one / "fractions_pareto.csv"));
  CHECK(fs::exists(one / "fractions_stable.csv"));
}

TEST_CASE("tail-compare") {
  const fs::path out = scratch("tail");
  CHECK(run("tail-compare --alpha 0.5 --samples 100000 --out " + out.string(), kLog) == 0);
  CHECK(fs::exists(out / "tail_ccdf.csv"));
  CHECK(fs::exists(out / "tail_summary.csv"));
  CHECK(run("tail-compare --alpha 0.5 --samples 1000 --out " + scratch("tail_small").string(), kLog) == 2);
}

TEST_CASE("validation errors exit with 2") {
  const std::string out = " --out " + scratch("bad").string();
  CHECK(run("annealed-curve --alpha 1.5" + out, kLog) == 2);
  CHECK(run("annealed-curve --alpha 0.5 --tol 1e-12" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.5 --n 1000,100" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.5 --n 1,100" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.3,0.5 --n 100" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.5 --n 100 --reps 0" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.5" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.5 --n 100 --mode both" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.5 --n 100 --source gauss" + out, kLog) == 2);
  CHECK(run("avg-clustering --alpha 0.5 --n 100 --bogus" + out, kLog) == 2);
  CHECK(run("no-such-command", kLog) == 2);
  CHECK(run("", kLog) == 2);
}

TEST_CASE("an unwritable output directory exits with 1") {
  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "not a directory";
  CHECK(run("annealed-curve --alpha 0.5 --points 3 --out " + blocker.string(), kLog) == 1);
}

TEST_CASE("version and help") {
  CHECK(run("--version", kLog) == 0);
  CHECK_FALSE(slurp(kLog).empty());
  CHECK(run("--help", kLog) == 0);
  CHECK(slurp(kLog).find("annealed-curve") != std::string::npos);
}
