// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/data.hpp"
#include "dagdb/graphs.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

namespace dagdb {
namespace {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("dagdb_data_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] std::string file(const std::string& name, const std::string& contents) const {
        const auto p = path_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    [[nodiscard]] std::string path(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

double column_variance(const Matrix& x, int c) {
    const double mean = x.col(c).mean();
    return (x.col(c).array() - mean).square().sum() / (x.rows() - 1);
}

TEST(MakeLanm, WeightSupport) {
    Rng rng = make_rng(1);
    double sum = 0;
    long count = 0;
    while (count < 100'000) {
        const auto dag = random_er_dag(30, 2.0, static_cast<std::uint64_t>(count));
        const Lanm l = make_lanm(dag, 1.0, rng);
        for (int i = 0; i < 30; ++i)
            for (int j = 0; j < 30; ++j) {
                if (!dag(i, j)) {
                    ASSERT_EQ(l.weights(i, j), 0.0);
                    continue;
                }
                const double a = std::abs(l.weights(i, j));
                ASSERT_GE(a, 0.5);
                ASSERT_LE(a, 2.0);
                sum += l.weights(i, j);
                ++count;
            }
    }
    EXPECT_NEAR(sum / count, 0.0, 0.02);
}

TEST(MakeLanm, EdgeCasesAndErrors) {
    Rng rng = make_rng(2);
    EXPECT_TRUE(make_lanm(BinaryAdjacency(4), 1.0, rng).weights.isZero(0.0));
    EXPECT_THROW((void)make_lanm(BinaryAdjacency::from_edges(2, {{0, 1}, {1, 0}}), 1.0, rng), NotADag);
    EXPECT_THROW((void)make_lanm(BinaryAdjacency(2), 0.0, rng), InvalidArgument);
}

TEST(Simulate, RootColumnsAreNoise) {
    Rng rng = make_rng(3);
    const Lanm l = make_lanm(BinaryAdjacency(3), 1.0, rng);
    const Dataset ds = simulate(l, 10'000, rng);
    ASSERT_EQ(ds.n(), 10'000);
    ASSERT_EQ(ds.d(), 3);
    for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(column_variance(ds.x, c), 1.0, 0.05);
        EXPECT_NEAR(ds.x.col(c).mean(), 0.0, 0.05);
    }
}

TEST(Simulate, SingleEdgeVariance) {
    Rng rng = make_rng(4);
    Lanm l{BinaryAdjacency::from_edges(2, {{0, 1}}), Matrix::Zero(2, 2), 1.0};
    l.weights(0, 1) = 2.0;
    const Dataset ds = simulate(l, 10'000, rng);
    EXPECT_NEAR(column_variance(ds.x, 1), 5.0, 0.2);
    // Sample regression slope recovers the weight.
    const double slope = ds.x.col(0).dot(ds.x.col(1)) / ds.x.col(0).squaredNorm();
    EXPECT_NEAR(slope, 2.0, 0.05);
}

TEST(Simulate, ChildOrderIndependentOfLabels) {
    // Parent with a larger index than the child exercises topological order.
    Rng rng = make_rng(5);
    Lanm l{BinaryAdjacency::from_edges(2, {{1, 0}}), Matrix::Zero(2, 2), 0.5};
    l.weights(1, 0) = -1.5;
    const Dataset ds = simulate(l, 10'000, rng);
    EXPECT_NEAR(column_variance(ds.x, 0), 1.5 * 1.5 * 0.5 + 0.5, 0.05);
    EXPECT_NEAR(column_variance(ds.x, 1), 0.5, 0.02);
}

TEST(Simulate, Deterministic) {
    const auto dag = random_er_dag(8, 2.0, 9);
    auto run = [&] {
        Rng rng = make_rng(77);
        const Lanm l = make_lanm(dag, 1.0, rng);
        return simulate(l, 50, rng).x;
    };
    EXPECT_EQ(run(), run());
    Rng rng = make_rng(1);
    EXPECT_THROW((void)simulate(make_lanm(dag, 1.0, rng), 0, rng), InvalidArgument);
}

TEST(StandardNormal, Moments) {
    Rng rng = make_rng(6);
    double s = 0, sq = 0;
    const int n = 200'000;
    for (int k = 0; k < n; ++k) {
        const double v = standard_normal(rng);
        s += v;
        sq += v * v;
    }
    EXPECT_NEAR(s / n, 0.0, 0.01);
    EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Csv, RoundTripCommaAndHeader) {
    TempDir tmp;
    Matrix x(3, 2);
    x << 1.5, -2, 0.1, 1e-17, 3, 4;
    const auto p = tmp.path("a.csv");
    save_csv(p, x, {"a", "b"});
    const Dataset ds = load_csv(p, true, false);
    EXPECT_EQ(ds.x, x);
    EXPECT_EQ(ds.columns, (std::vector<std::string>{"a", "b"}));
    save_csv(p, x);
    EXPECT_EQ(load_csv(p, false, false).x, x);
}

TEST(Csv, TabDelimitedAndCentering) {
    TempDir tmp;
    const auto p = tmp.file("t.tsv", "raf\tmek\n1\t10\n2\t20\n6\t30\n");
    const Dataset ds = load_csv(p, true, true);
    ASSERT_EQ(ds.n(), 3);
    ASSERT_EQ(ds.d(), 2);
    EXPECT_LT(ds.x.colwise().mean().cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_DOUBLE_EQ(ds.x(2, 0), 3.0);
    EXPECT_EQ(ds.columns[1], "mek");
}

TEST(Csv, CenterColumns) {
    Matrix x(2, 2);
    x << 1, 5, 3, 9;
    center_columns(x);
    EXPECT_EQ(x(0, 0), -1.0);
    EXPECT_EQ(x(1, 1), 2.0);
}

TEST(Csv, ErrorsNameTheLocation) {
    TempDir tmp;
    EXPECT_THROW((void)load_csv(tmp.file("empty.csv", ""), false, false), InvalidArgument);
    EXPECT_THROW((void)load_csv(tmp.file("hdr.csv", "a,b\n"), true, false), InvalidArgument);
    EXPECT_THROW((void)load_csv(tmp.path("missing.csv"), false, false), InvalidArgument);
    try {
        (void)load_csv(tmp.file("ragged.csv", "1,2\n3\n"), false, false);
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
    }
    try {
        (void)load_csv(tmp.file("text.csv", "1,2\n3,abc\n"), false, false);
        FAIL();
    } catch (const InvalidArgument& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("row 2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
    }
}

}  // namespace
}  // namespace dagdb
