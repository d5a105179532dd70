#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "rydqr_test_cli";

struct Outcome {
  int code = -1;
  std::string output;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs the CLI with stdout and stderr captured.
Outcome run(const std::string& args) {
  fs::create_directories(kRoot);
  const fs::path log = kRoot / "last.log";
  const std::string cmd = std::string("\"") + RYDQR_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.output = slurp(log);
  return o;
}

std::string out_dir(const std::string& name) {
  const fs::path p = kRoot / name;
  fs::remove_all(p);
  return "--out \"" + p.string() + "\"";
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::vector<std::string> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("version and usage errors") {
  const Outcome v = run("--version");
  CHECK(v.code == 0);
  CHECK(v.output.find('.') != std::string::npos);
  CHECK(run("").code != 0);
  CHECK(run("no-such-command").code != 0);
  CHECK(run("potential --threads 0").code != 0);
}

TEST_CASE("potential") {
  const Outcome o = run("potential " + out_dir("potential"));
  REQUIRE_MESSAGE(o.code == 0, o.output);
  const auto lines = lines_of(kRoot / "potential" / "potential.csv");
  REQUIRE(lines.size() == 4097);
  CHECK(lines[0] == "xi,re_V,im_V");
  const std::string meta = slurp(kRoot / "potential" / "potential_metadata.txt");
  CHECK(meta.find("physical.Na = ") != std::string::npos);
  CHECK(meta.find("# command") != std::string::npos);
}

TEST_CASE("a defect without atoms gives a zero potential") {
  const Outcome o = run("potential --override physical.kappaDefect=0 " + out_dir("zero"));
  REQUIRE_MESSAGE(o.code == 0, o.output);
  const auto lines = lines_of(kRoot / "zero" / "potential.csv");
  REQUIRE(lines.size() > 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string tail = lines[i].substr(lines[i].find(','));
    CHECK(tail == ",0,0");
  }
}

TEST_CASE("configuration errors exit 2 and name the field") {
  const Outcome o = run("potential --override physical.Na=-1 " + out_dir("bad"));
  CHECK(o.code == 2);
  CHECK(o.output.find("physical.Na") != std::string::npos);
  const Outcome unknown = run("potential --override grid.nn=4 " + out_dir("bad"));
  CHECK(unknown.code == 2);
  CHECK(unknown.output.find("grid.nn") != std::string::npos);
  const Outcome missing = run("potential --config \"" + (kRoot / "absent.cfg").string() + "\" " + out_dir("bad"));
  CHECK(missing.code != 0);
}

TEST_CASE("boundary contact exits 3") {
  const Outcome o = run("evolve --override scattering.autoWiden=false --override scattering.Lm=20 " +
                        out_dir("boundary"));
  CHECK(o.code == 3);
  CHECK(o.output.find("boundary") != std::string::npos);
}

TEST_CASE("evolve writes the initial and final snapshots") {
  const Outcome o = run("evolve --override packet.v0=14 " + out_dir("evolve"));
  REQUIRE_MESSAGE(o.code == 0, o.output);
  const auto summary = lines_of(kRoot / "evolve" / "evolve_summary.csv");
  REQUIRE(summary.size() == 3);
  CHECK(summary[0] == "tau,norm,mean_xi,width_xi,boundary_density");
  CHECK(summary[1].rfind("0,", 0) == 0);
  const auto snaps = lines_of(kRoot / "evolve" / "evolve_snapshots.csv");
  CHECK(snaps.size() % 2 == 1);
}

TEST_CASE("sweep metadata reproduces the run") {
  const std::string args = "sweep --threads 1 --override \"scattering.v0List=6, 14\" ";
  const Outcome first = run(args + out_dir("sweep_a"));
  REQUIRE_MESSAGE(first.code == 0, first.output);
  const auto rows = lines_of(kRoot / "sweep_a" / "sweep.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "v0,g0,R,T,L,budget,xi_l,xi_r,L_m,error");
  const fs::path sidecar = kRoot / "sweep_a" / "sweep_metadata.txt";
  const Outcome second = run("sweep --threads 1 --config \"" + sidecar.string() + "\" " + out_dir("sweep_b"));
  REQUIRE_MESSAGE(second.code == 0, second.output);
  CHECK(slurp(kRoot / "sweep_a" / "sweep.csv") == slurp(kRoot / "sweep_b" / "sweep.csv"));
  SUBCASE("thread count does not change the numbers") {
    const Outcome threaded = run("sweep --threads 2 --override \"scattering.v0List=6, 14\" " + out_dir("sweep_c"));
    REQUIRE_MESSAGE(threaded.code == 0, threaded.output);
    CHECK(slurp(kRoot / "sweep_a" / "sweep.csv") == slurp(kRoot / "sweep_c" / "sweep.csv"));
  }
}

TEST_CASE("phase diagram") {
  const Outcome o = run("phase-diagram --override \"scattering.v0List=10, 14\" --override \"scattering.g0List=0, 10\" " +
                        out_dir("pd"));
  REQUIRE_MESSAGE(o.code == 0, o.output);
  const auto rows = lines_of(kRoot / "pd" / "phase_diagram.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == "g0,v0,R,T,L");
}

TEST_CASE("beam splitter") {
  const Outcome o = run("beamsplitter --override packet.v0=14 " + out_dir("bs"));
  REQUIRE_MESSAGE(o.code == 0, o.output);
  const std::string report = slurp(kRoot / "bs" / "beamsplitter.txt");
  CHECK(report.find("unitarity_defect") != std::string::npos);
  const Outcome trapped = run("beamsplitter --override packet.v0=14 --override scattering.maxTrapping=1e-12 " +
                              out_dir("bs_trap"));
  CHECK(trapped.code == 1);
  CHECK(trapped.output.find("trapping") != std::string::npos);
}

TEST_CASE("verify") {
  const Outcome o = run("verify " + out_dir("verify"));
  CHECK_MESSAGE(o.code == 0, o.output);
  const std::string report = slurp(kRoot / "verify" / "verify_report.txt");
  CHECK(report.find("all checks passed") != std::string::npos);
  const auto oracle = lines_of(kRoot / "verify" / "oracle_report.csv");
  REQUIRE(oracle.size() == 4);
  CHECK(oracle[0] == "k_or_v0,R_dyn,T_dyn,R_tm,T_tm,abs_err_R,abs_err_T");
}
