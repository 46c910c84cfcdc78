#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "abel/serialization.hpp"

namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path dir;
  Workdir() {
    dir = fs::temp_directory_path() / ("abel_cli_" + std::to_string(std::rand()) + "_" +
                                       std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  fs::path operator/(const std::string& s) const { return dir / s; }
};

int run(const Workdir& w, const std::string& args) {
  const std::string cmd = "cd '" + w.dir.string() + "' && '" ABEL_LAB_PATH "' " + args + " > out.txt 2> err.txt";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("geometry subcommand writes all outputs") {
  Workdir w;
  CHECK(run(w, "--seed 3 --out geo geometry --a 0.5 --samples 500") == 0);
  CHECK(fs::exists(w / "geo.json"));
  CHECK(run(w, "geometry --a 0") == 0);
  const abel::Json meta = abel::load_json_file((w / "geo.meta.json").string());
  CHECK(meta.contains("argv"));
  CHECK(meta.contains("seconds"));
}

TEST_CASE("configuration errors exit with 1") {
  Workdir w;
  CHECK(run(w, "build membership --stages -2") == 1);
  CHECK(run(w, "no-such-command") == 1);
  CHECK(run(w, "geometry --a 1.5") == 1);
  CHECK(run(w, "probe --series missing.json") == 1);
  CHECK(run(w, "probe --series missing.json --scan") == 1);
}

TEST_CASE("membership build and probe round trip") {
  Workdir w;
  abel::write_text_file((w / "targets.json").string(), "[[[1,0]]]\n");
  abel::write_text_file((w / "arcs.json").string(), "[[0,0.5]]\n");
  abel::write_text_file((w / "cfg.json").string(), abel::dump(abel::config_to_json([] {
                                                       abel::BuildConfig c;
                                                       c.rho.r = {0.0, 0.4, 0.6};
                                                       c.eps = abel::EpsilonSchedule::defaults(3);
                                                       return c;
                                                     }())));
  REQUIRE(run(w, "--out s build membership --config cfg.json --targets targets.json --arcs arcs.json --stages 2 "
                 "--arc-density 96 --disc-density 256") == 0);
  const abel::Json series = abel::load_json_file((w / "s.json").string());
  CHECK(series.at("kind") == "membership");
  CHECK(slurp(w / "s.csv").rfind("n,case,degree,sup_error,eps_n", 0) == 0);
  CHECK(run(w, "--out p probe --series s.json --scan --density 64") == 0);
  CHECK(slurp(w / "p.csv").rfind("target_id,arc_id,n,r_n,sup_error", 0) == 0);
  CHECK(run(w, "--out e probe --series s.json --scan --exp --density 64") == 0);
}

TEST_CASE("zero-stage build is an empty series") {
  Workdir w;
  CHECK(run(w, "--out z build membership --stages 0") == 0);
  CHECK(abel::load_json_file((w / "z.json").string()).at("stages").size() == 1);
}

TEST_CASE("lift exit codes") {
  Workdir w;
  CHECK(run(w, "--out ok lift --g square --path 1,0:4,0 --start 1,0") == 0);
  const abel::Json j = abel::load_json_file((w / "ok.json").string());
  CHECK(j.dump().find("Complete") != std::string::npos);
  CHECK(run(w, "--out bad lift --g square --path 1,0:-1,0 --start 1,0") == 2);
  CHECK(run(w, "--out lt lift --g exp --arc 0,1.5 --target '[[2,0]]' --eps 0.05") == 0);
}

TEST_CASE("counterexample preconditions") {
  Workdir w;
  CHECK(run(w, "build counterexample --a 0 --stages 1") == 1);
  CHECK(run(w, "build counterexample --a 0.5 --zeta1 1.5707963267948966 --zeta2 4.71238898038469 --stages 1") == 2);
}
