// Drives the installed-shape binary through std::system.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& tmp_dir() {
  static const fs::path dir = [] {
    fs::path d(DQW_TEST_TMP);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  // ctest runs these cases in parallel: one capture file per test.
  const fs::path out =
      tmp_dir() / (std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) +
                   ".stdout");
  const std::string cmd =
      std::string("\"") + DQW_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::ostringstream text;
  text << in.rdbuf();
  r.out = text.str();
  return r;
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = tmp_dir() / name;
  std::ofstream(p) << text;
  return p;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string burst_series(double peak, bool drop) {
  std::ostringstream out;
  out << "time_s,f_dq,t2_star_s\n";
  for (int i = 0; i < 8; ++i) {
    out << i << ',' << (i == 4 ? peak : 0.01) << ',' << (drop && i == 5 ? 0.015 : 0.03) << '\n';
  }
  return out.str();
}

}  // namespace

TEST(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("witness --help").code, 0);
  const auto v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find('.'), std::string::npos);
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("bounds --temperature-k warm").code, 1);
  EXPECT_EQ(run("witness").code, 1);
  EXPECT_EQ(run("figure --kind fig9").code, 1);
  EXPECT_EQ(run("witness --input /nonexistent.csv").code, 1);
}

TEST(Cli, BoundsPrintsRoundedValues) {
  const auto r = run("bounds");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1.548e-09"), std::string::npos);
  EXPECT_NE(r.out.find("0.02467"), std::string::npos);
}

TEST(Cli, FlagsOverrideConfig) {
  const auto cfg = write("params.toml", "temperature_k = 31\nomega_d_static_hz = 0\n");
  const auto file_only = run("bounds --config \"" + cfg.string() + "\"");
  EXPECT_NE(file_only.out.find("1.548e-08"), std::string::npos) << file_only.out;
  const auto flagged = run("bounds --config \"" + cfg.string() + "\" --temperature-k 3100");
  EXPECT_NE(flagged.out.find("1.548e-10"), std::string::npos) << flagged.out;
  EXPECT_EQ(run("bounds --config \"" + write("bad.toml", "speed = 3\n").string() + "\"").code, 1);
}

TEST(Cli, WitnessExitCodes) {
  const auto burst = write("burst.csv", burst_series(0.15, false));
  const auto quiet = write("quiet.csv", burst_series(0.001, false));
  const auto drop = write("drop.csv", burst_series(0.15, true));
  EXPECT_EQ(run("witness --input \"" + burst.string() + "\"").code, 2);
  EXPECT_EQ(run("witness --input \"" + quiet.string() + "\"").code, 0);
  EXPECT_EQ(run("witness --input \"" + drop.string() + "\"").code, 3);
  EXPECT_EQ(run("witness --input \"" + drop.string() + "\" --dev-threshold 0.6 --cv-threshold 0.5").code, 2);
}

TEST(Cli, WitnessReportToFileIsDeterministic) {
  const auto burst = write("burst2.csv", burst_series(0.15, false));
  const auto a = tmp_dir() / "a.json";
  const auto b = tmp_dir() / "b.json";
  EXPECT_EQ(run("witness --input \"" + burst.string() + "\" --output \"" + a.string() + "\"").code, 2);
  EXPECT_EQ(run("witness --input \"" + burst.string() + "\" --output \"" + b.string() + "\"").code, 2);
  EXPECT_EQ(read(a), read(b));
  EXPECT_NE(read(a).find("\"verdict\": \"classically_inexplicable\""), std::string::npos);
}

TEST(Cli, ShuffledSeriesIsAnError) {
  const auto bad = write("shuffled.csv", "time_s,f_dq,t2_star_s\n1,0.1,0.03\n0,0.1,0.03\n2,0.1,0.03\n");
  EXPECT_EQ(run("witness --input \"" + bad.string() + "\"").code, 1);
}

TEST(Cli, FigureFilesByteIdentical) {
  for (const char* kind : {"bpp_curve", "zq_signal", "dq_signal", "open_trajectory"}) {
    const auto a = tmp_dir() / (std::string(kind) + "_a.csv");
    const auto b = tmp_dir() / (std::string(kind) + "_b.csv");
    ASSERT_EQ(run(std::string("figure --kind ") + kind + " --output \"" + a.string() + "\"").code, 0);
    ASSERT_EQ(run(std::string("figure --kind ") + kind + " --output \"" + b.string() + "\"").code, 0);
    EXPECT_EQ(read(a), read(b)) << kind;
    EXPECT_FALSE(read(a).empty()) << kind;
  }
}

TEST(Cli, SimulateKinds) {
  for (const char* kind : {"zq", "dq", "open", "ceiling --initial mixed"}) {
    const auto r = run(std::string("simulate --kind ") + kind);
    EXPECT_EQ(r.code, 0) << kind;
    EXPECT_EQ(r.out.front(), '{') << kind;
  }
  EXPECT_EQ(run("simulate --kind ceiling --initial up_up").code, 1);
  const auto csv = tmp_dir() / "zq.csv";
  EXPECT_EQ(run("simulate --kind zq --output \"" + csv.string() + "\"").code, 0);
  EXPECT_EQ(read(csv).substr(0, 13), "time_s,S0,Sy\n");
}
