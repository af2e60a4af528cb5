// One PASS/FAIL line per acceptance criterion. Takes the CLI path as argv[1]
// for the determinism check.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>

#include "dsmzi/figures.hpp"
#include "dsmzi/validate.hpp"

namespace fs = std::filesystem;
using namespace dsmzi;

namespace {

int failures = 0;

void line(int id, const char* what, bool ok, const std::string& detail) {
  std::printf("[%s] AC%d %s: %s\n", ok ? "PASS" : "FAIL", id, what, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

// Every preset through the CLI twice, outputs compared byte for byte.
void determinism(const std::string& cli, int threads) {
  const fs::path dir = fs::temp_directory_path() / ("dsmzi_ac10_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  bool ok = true;
  std::string detail;
  for (const auto& name : figures::preset_names()) {
    std::string bodies[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / (name + "_" + std::to_string(run) + ".csv");
      const std::string cmd = "\"" + cli + "\" --threads " + std::to_string(threads) +
                              " --out \"" + out.string() + "\" sweep --preset " + name;
      const int rc = std::system(cmd.c_str());
      if (rc != 0) {
        ok = false;
        detail += name + " exited " + std::to_string(rc) + "; ";
      }
      bodies[run] = slurp(out);
    }
    const bool same = !bodies[0].empty() && bodies[0] == bodies[1];
    ok &= same;
    detail += name + (same ? " identical" : " DIFFERS") + " (" +
              std::to_string(bodies[0].size()) + " bytes); ";
  }
  fs::remove_all(dir);
  line(10, "determinism", ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = std::max(1u, std::thread::hardware_concurrency());
  const auto rep = validate::run({validate::Level::kFull, {}, threads});
  std::map<std::string, const validate::Check*> by;
  for (const auto& c : rep.checks) by[c.name] = &c;
  auto get = [&](const char* n) -> const validate::Check& { return *by.at(n); };

  {
    const auto& c = get("three-path moment agreement");
    line(1, "three-path moment agreement", c.passed && c.seconds < 120,
         c.detail + ", " + seconds(c.seconds) + " (limit 120s)");
  }
  {
    const auto& c = get("caves divergence and balanced saturability");
    line(2, "Caves divergence", c.passed, c.detail);
  }
  {
    const auto& c = get("saturability at alpha=4");
    line(3, "saturability claims", c.passed, c.detail);
  }
  {
    const auto& c = get("lossy detection identity");
    line(4, "lossy-detection identity", c.passed, c.detail);
  }
  {
    const auto& c = get("detection-noise robustness");
    line(5, "robustness trend", c.passed, c.detail);
  }
  {
    const auto& c = get("output squeezing offsets");
    line(6, "offset fits", c.passed && c.seconds < 600,
         c.detail + seconds(c.seconds) + " (limit 600s)");
  }
  {
    const auto& c = get("asymptotic phase and plateau");
    line(7, "asymptotic and plateau formulas", c.passed, c.detail);
  }
  {
    const auto& c = get("qfi convention");
    line(8, "QFI convention", c.passed, c.detail);
  }
  {
    const auto& c = get("intensity identities");
    line(9, "Wigner/intensity consistency", c.passed, c.detail);
  }
  if (argc > 1) {
    determinism(argv[1], threads);
  } else {
    line(10, "determinism", false, "no CLI path given");
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
