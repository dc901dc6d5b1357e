#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

using namespace fvdsr;
using namespace fvdsr::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("fvdsr_cli_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::vector<double> column(const std::string& csv, int index) {
    std::vector<double> out;
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string cell;
        for (int i = 0; i <= index; ++i) std::getline(ls, cell, ',');
        out.push_back(std::stod(cell));
    }
    return out;
}

}  // namespace

TEST(ParseConfig, BarrierDefaults) {
    const RunConfig c = parse_config({"scatter-barrier", "--lp", "0.06", "--model", "dsr"});
    EXPECT_EQ(c.command, Command::ScatterBarrier);
    const auto& b = std::get<BarrierConfig>(c.geometry);
    EXPECT_EQ(b.height, 2.0);
    EXPECT_EQ(b.width, 4.0);
    EXPECT_EQ(b.mass, 1.0);
    ASSERT_EQ(c.models.size(), 1u);
    EXPECT_EQ(c.models[0].kind, ModelKind::DSR_Rational);
    EXPECT_EQ(c.models[0].l_p, 0.06);
    EXPECT_EQ(c.e_min, 0.0);
    EXPECT_EQ(c.e_max, 10.0);
}

TEST(ParseConfig, WellFigureConfig) {
    const RunConfig c = parse_config({"spectrum-well", "--model", "gdsr", "--chi", "1", "--lp", "0.2", "--nmax", "50"});
    EXPECT_EQ(std::get<WellConfig>(c.geometry).n_max, 50);
    ASSERT_EQ(c.models.size(), 1u);
    EXPECT_EQ(c.models[0].chi, 1.0);
    EXPECT_EQ(c.models[0].l_p, 0.2);
}

TEST(ParseConfig, Errors) {
    EXPECT_THROW(parse_config({}), UsageError);
    EXPECT_THROW(parse_config({"frobnicate"}), UsageError);
    EXPECT_THROW(parse_config({"spectrum-well", "--bogus", "1"}), UsageError);
    EXPECT_THROW(parse_config({"spectrum-well", "--lp", "abc"}), UsageError);
    EXPECT_THROW(parse_config({"spectrum-well", "--model", "xyz"}), UsageError);
    EXPECT_THROW(parse_config({"spectrum-well", "--format", "xml"}), UsageError);
    EXPECT_THROW(parse_config({"scatter-step", "--barrier-width", "3"}), ConflictError);
    EXPECT_THROW(parse_config({"spectrum-well", "--omega", "2"}), ConflictError);
    EXPECT_THROW(parse_config({"spectrum-well", "--model", "dsr", "--chi", "2"}), ConflictError);
    EXPECT_THROW(parse_config({"scatter-barrier", "--model", "ac", "--alpha2", "1"}), ConflictError);
    EXPECT_THROW(parse_config({"check", "--model", "sr"}), ConflictError);
}

TEST(ParseConfig, FileValuesAreOverriddenByFlags) {
    const std::string file = "# barrier\n[geometry]\nv0 = 3\nbarrier_width = 6\nlp = 0.02\nmodel = dsr\n";
    const RunConfig c = parse_config({"scatter-barrier", "--v0", "2.5"}, file);
    const auto& b = std::get<BarrierConfig>(c.geometry);
    EXPECT_EQ(b.height, 2.5);
    EXPECT_EQ(b.width, 6.0);
    EXPECT_EQ(c.models.at(0).l_p, 0.02);
    EXPECT_THROW(parse_config({"scatter-barrier"}, std::string("nonsense = 1\n")), UsageError);
    EXPECT_THROW(parse_config({"scatter-barrier"}, std::string("no equals sign\n")), UsageError);
}

TEST(Run, ThresholdPrintsDsrValue) {
    std::ostringstream out, err;
    EXPECT_EQ(main_entry({"threshold", "--model", "dsr", "--lp", "0.02"}, out, err), 0);
    EXPECT_NE(out.str().find("0.97959183673469"), std::string::npos);
}

TEST(Run, SpectrumWellDefaultsFigureOrdering) {
    const auto dir = fresh_dir("well");
    std::ostringstream out, err;
    ASSERT_EQ(main_entry({"spectrum-well", "--output", dir.string()}, out, err), 0) << err.str();
    for (const char* m : {"sr", "dsr", "gdsr"}) EXPECT_TRUE(std::filesystem::exists(dir / ("spectrum-well_" + std::string(m) + ".csv")));
    for (const char* m : {"dsr", "gdsr"}) {
        const auto e = column(slurp(dir / ("spectrum-well_" + std::string(m) + ".csv")), 6);
        ASSERT_EQ(e.size(), 150u);
        for (std::size_t n = 0; n < 50; ++n) {
            EXPECT_GT(e[n], e[50 + n]);
            EXPECT_GT(e[50 + n], e[100 + n]);
        }
    }
}

TEST(Run, DeterministicOutput) {
    const auto a = fresh_dir("det_a"), b = fresh_dir("det_b");
    std::ostringstream out, err;
    ASSERT_EQ(main_entry({"scatter-barrier", "--output", a.string()}, out, err), 0);
    ASSERT_EQ(main_entry({"scatter-barrier", "--output", b.string()}, out, err), 0);
    for (const char* m : {"sr", "dsr", "gdsr"}) {
        const std::string name = "scatter-barrier_" + std::string(m) + ".csv";
        EXPECT_EQ(slurp(a / name), slurp(b / name));
        EXPECT_FALSE(slurp(a / name).empty());
    }
}

TEST(Run, JsonToStdout) {
    std::ostringstream out, err;
    ASSERT_EQ(main_entry({"spectrum-oscillator", "--model", "ms", "--lp", "0.02", "--nmax", "2", "--format", "json",
                          "--output", "-"},
                         out, err),
              0);
    EXPECT_NE(out.str().find("\"model\": \"ms\""), std::string::npos);
}

TEST(Run, ExitCodes) {
    std::ostringstream out, err;
    EXPECT_EQ(main_entry({}, out, err), 1);
    EXPECT_NE(err.str().find("\"code\":\"UsageError\""), std::string::npos);
    err.str("");
    EXPECT_EQ(main_entry({"resonances", "--model", "dsr", "--lp", "0.2", "--count", "50"}, out, err), 2);
    EXPECT_NE(err.str().find("\"code\":\"NoBracket\""), std::string::npos);
    err.str("");
    EXPECT_EQ(main_entry({"threshold", "--model", "gdsr", "--lp", "0.5"}, out, err), 2);
    EXPECT_NE(err.str().find("NoRealBranch"), std::string::npos);
}
