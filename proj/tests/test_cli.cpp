#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(COCOTOOL_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const char* kScene = R"({
  "cone": {"generators": [[1, 0], [0, 1]]},
  "bodies": {
    "notch": {"constraints": [{"u": [-0.7071067811865476, -0.7071067811865476], "f": 1.0}]},
    "oblique": {"constraints": [
      {"u": [-0.8944271909999159, -0.4472135954999579], "f": 1.0},
      {"u": [-0.4472135954999579, -0.8944271909999159], "f": 1.0}]}
  },
  "measures": {
    "phi": {"atoms": [{"u": [-0.7071067811865476, -0.7071067811865476], "mass": 2.0}]},
    "phi2": {"atoms": [
      {"u": [-0.8944271909999159, -0.4472135954999579], "mass": 1.0},
      {"u": [-0.4472135954999579, -0.8944271909999159], "mass": 2.0}]}
  }
})";

std::string scene_path() {
  static std::string path = [] {
    std::string p = "cli_scene.json";
    std::ofstream out(p);
    out << kScene;
    return p;
  }();
  return path;
}

}  // namespace

TEST_CASE("volume subcommand") {
  RunResult r = run("--scene " + scene_path() + " volume notch");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("volume = 1") != std::string::npos);
}

TEST_CASE("measures subcommand with csv") {
  RunResult r = run("--scene " + scene_path() + " measures oblique --csv cli_measures.csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("surface area measure") != std::string::npos);
  std::ifstream csv("cli_measures.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "direction_0,direction_1,mass");
}

TEST_CASE("cosum and mixedvol subcommands") {
  CHECK(run("--scene " + scene_path() + " cosum notch oblique").exit_code == 0);
  CHECK(run("--scene " + scene_path() + " mixedvol notch,oblique").exit_code == 0);
}

TEST_CASE("inequality checks exit zero when they hold") {
  CHECK(run("--scene " + scene_path() + " check bm notch oblique --lambda 0.4").exit_code == 0);
  CHECK(run("--scene " + scene_path() + " check mink1 notch oblique").exit_code == 0);
}

TEST_CASE("solvers run to convergence") {
  RunResult r = run("--scene " + scene_path() + " solve surface --measure phi");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("converged = yes") != std::string::npos);
  CHECK(run("--scene " + scene_path() + " solve conevolume --measure phi").exit_code == 0);
}

TEST_CASE("oracle mc is seed-deterministic") {
  RunResult a = run("--scene " + scene_path() + " oracle mc notch --samples 20000 --seed 3");
  RunResult b = run("--scene " + scene_path() + " oracle mc notch --samples 20000 --seed 3");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("normalize output is stable") {
  RunResult once = run("--scene " + scene_path() + " normalize");
  CHECK(once.exit_code == 0);
  std::ofstream out("cli_scene_norm.json");
  out << once.output;
  out.close();
  RunResult twice = run("--scene cli_scene_norm.json normalize");
  CHECK(twice.exit_code == 0);
  CHECK(once.output == twice.output);
}

TEST_CASE("exit code 2 on malformed scenes") {
  std::ofstream bad("cli_bad.json");
  bad << "{ not json";
  bad.close();
  CHECK(run("--scene cli_bad.json volume notch").exit_code == 2);
  CHECK(run("volume notch").exit_code == 2);  // missing required --scene
}

TEST_CASE("exit code 3 on domain errors") {
  CHECK(run("--scene " + scene_path() + " volume missing").exit_code == 3);
  std::ofstream bad("cli_badcone.json");
  bad << R"({"cone": {"generators": [[1, 0], [-1, 0]]}})";
  bad.close();
  CHECK(run("--scene cli_badcone.json normalize").exit_code == 3);
}

TEST_CASE("exit code 4 on non-convergence") {
  CHECK(run("--scene " + scene_path() + " solve surface --measure phi2 --max-iters 1 --tol 1e-15")
            .exit_code == 4);
}

TEST_CASE("off export") {
  std::ofstream f("cli_scene3d.json");
  f << R"({
    "cone": {"generators": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
    "bodies": {"b": {"constraints": [
      {"u": [-0.5773502691896258, -0.5773502691896258, -0.5773502691896258], "f": 1.0}]}}
  })";
  f.close();
  RunResult r = run("--scene cli_scene3d.json export off b --t 3 -o cli_mesh.off");
  CHECK(r.exit_code == 0);
  std::ifstream mesh("cli_mesh.off");
  std::string magic;
  mesh >> magic;
  CHECK(magic == "OFF");
}
