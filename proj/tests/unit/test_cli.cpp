#include "necksim/cli.hpp"
#include "necksim/errors.hpp"
#include "necksim/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace necksim;
using namespace necksim::cli;

namespace {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("necksim-cli-" + std::to_string(counter_++) + "-" +
                                                    std::to_string(::testing::UnitTest::GetInstance()->random_seed()))) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(path_ / name) << text;
        return path_ / name;
    }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome runConfig(const fs::path& config, std::vector<std::string> overrides = {}) {
    std::ostringstream out, err;
    const int code = run(config.string(), overrides, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(ParseConfig, MinimalOracleFillsDefaults) {
    const RunConfig c = parseConfig("command=oracle\nshape=cylinder\nn=3\nr=1\n");
    EXPECT_EQ(c.command, Command::Oracle);
    EXPECT_EQ(c.shape, ShapeKind::Cylinder);
    EXPECT_EQ(c.n, 3);
    EXPECT_EQ(c.r, 1.0);
    EXPECT_EQ(c.flow.dtSafety, 0.2);
    EXPECT_EQ(c.level.sigma, 0.05);
    EXPECT_EQ(c.level.p, 10.0);
    EXPECT_FALSE(c.seed);
}

TEST(ParseConfig, CommentsWhitespaceAndOverrides) {
    const std::vector<std::string> overrides{"N = 512", "kappa=0.05"};
    const RunConfig c = parseConfig("# header\n  command = simulate   # trailing\n\ntEnd=0.5\nN=128\n", overrides);
    EXPECT_EQ(c.command, Command::Simulate);
    EXPECT_EQ(c.flow.tEnd, 0.5);
    EXPECT_EQ(c.N, 512u);
    EXPECT_EQ(c.flow.kappa, 0.05);
}

TEST(ParseConfig, Errors) {
    EXPECT_THROW(parseConfig("command=oracle\nkappa=-0.1\n"), ConfigError);
    EXPECT_THROW(parseConfig("shape=cylinder\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=simulate\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\nfoo=1\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\nn=three\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\nr=1.0x\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\njust words\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\nn=3\nn=4\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=launch\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\nshape=torus\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=simulate\ntEnd=1\nperturb=0.1\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=stampacchia\nalpha=2\ngamma=2\nC=1\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\nshape=cosine-neck\na=0.3\nb=0.5\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=simulate\ntEnd=1\ndtSafety=0.9\n"), ConfigError);
    EXPECT_THROW(parseConfig("command=oracle\nmonitors=maybe\n"), ConfigError);
    const std::vector<std::string> bad{"nokey"};
    EXPECT_THROW(parseConfig("command=oracle\n", bad), ConfigError);
}

TEST(Cli, OracleTable) {
    TempDir dir;
    const Outcome o = runConfig(dir.write("o.cfg", "command=oracle\nshape=cylinder\nn=3\nr=1\n"));
    EXPECT_EQ(o.code, kExitOk);
    EXPECT_NE(o.out.find("quantity,value\n"), std::string::npos);
    EXPECT_NE(o.out.find("\nG,0.4\n"), std::string::npos);
    EXPECT_NE(o.out.find("\nH/G,5\n"), std::string::npos);
    EXPECT_NE(o.out.find("\nmu/G,2.5\n"), std::string::npos);
}

TEST(Cli, Stampacchia) {
    TempDir dir;
    const Outcome o = runConfig(dir.write("s.cfg", "command=stampacchia\nalpha=2\ngamma=2\nC=1\nphi0=1\n"));
    EXPECT_EQ(o.code, kExitOk);
    EXPECT_EQ(o.out, "4\n");
    const Outcome diverge = runConfig(dir.write("d.cfg", "command=stampacchia\nalpha=2\ngamma=1\nC=1\nphi0=1\n"));
    EXPECT_EQ(diverge.code, kExitNumerical);
}

TEST(Cli, ExitCodes) {
    TempDir dir;
    EXPECT_EQ(runConfig(dir.path() / "missing.cfg").code, kExitConfig);
    EXPECT_EQ(runConfig(dir.write("k.cfg", "command=oracle\nkappa=-0.1\n")).code, kExitConfig);
    // A cylinder of radius 1 is not κ-two-convex for κ = 0.6.
    const Outcome numerical = runConfig(dir.write("n.cfg", "command=oracle\nshape=cylinder\nkappa=0.6\n"));
    EXPECT_EQ(numerical.code, kExitNumerical);
    EXPECT_FALSE(numerical.err.empty());
}

TEST(Cli, SimulateWritesArtifactsDeterministically) {
    TempDir dir;
    const auto config = dir.write("sim.cfg", "command=simulate\nshape=cosine-neck\nN=128\ntEnd=0.02\n"
                                             "snapshotEvery=0.01\nperturb=0.02\nseed=9\n");
    const auto first = dir.path() / "a";
    const auto second = dir.path() / "b";
    ASSERT_EQ(runConfig(config, {"output=" + first.string()}).code, kExitOk);
    ASSERT_EQ(runConfig(config, {"output=" + second.string()}).code, kExitOk);

    for (const char* name : {"snapshot_00000.csv", "snapshot_00001.csv", "snapshot_00002.csv", "series.csv",
                             "levels.csv"}) {
        ASSERT_TRUE(fs::exists(first / name)) << name;
        EXPECT_EQ(slurp(first / name), slurp(second / name)) << name;
    }
    EXPECT_EQ(slurp(first / "series.csv").substr(0, std::string(kSeriesHeader).size()), kSeriesHeader);
    EXPECT_EQ(slurp(first / "levels.csv").substr(0, 18), "k,A_k,lp_integral\n");

    const auto other = dir.path() / "c";
    ASSERT_EQ(runConfig(config, {"output=" + other.string(), "seed=10"}).code, kExitOk);
    EXPECT_NE(slurp(first / "snapshot_00000.csv"), slurp(other / "snapshot_00000.csv"));
}

TEST(Cli, MuFromSnapshot) {
    TempDir dir;
    const auto sim = dir.write("sim.cfg", "command=simulate\nshape=sphere\nN=64\ntEnd=0.01\nsnapshotEvery=0.01\n");
    ASSERT_EQ(runConfig(sim, {"output=" + (dir.path() / "run").string()}).code, kExitOk);
    const auto mu = dir.write("mu.cfg", "command=mu\ninput=" + (dir.path() / "run" / "snapshot_00001.csv").string() +
                                            "\noutput=" + (dir.path() / "mu").string() + "\n");
    ASSERT_EQ(runConfig(mu).code, kExitOk);
    const std::string csv = slurp(dir.path() / "mu" / "mu.csv");
    EXPECT_EQ(csv.substr(0, 32), "node,mu,witness,branch,two_point");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
}
