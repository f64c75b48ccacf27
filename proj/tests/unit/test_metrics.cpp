// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dagdb Authors

#include "dagdb/graphs.hpp"
#include "dagdb/metrics.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace dagdb {
namespace {

BinaryAdjacency edges(int d, std::vector<std::pair<int, int>> e) { return BinaryAdjacency::from_edges(d, e); }

TEST(ShdCpdag, Examples) {
    const auto chain = edges(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(shd_cpdag(chain, chain), 0);
    EXPECT_EQ(shd_cpdag(chain, edges(3, {{2, 1}, {1, 0}})), 0);
    EXPECT_EQ(shd_cpdag(edges(3, {{0, 2}, {1, 2}}), BinaryAdjacency(3)), 2);
    EXPECT_THROW((void)shd_cpdag(chain, BinaryAdjacency(4)), InvalidArgument);
}

TEST(ShdCpdag, ColliderVersusChainDiffersInOrientation) {
    // Same skeleton, different class: collider keeps both arrows, chain has none.
    EXPECT_EQ(shd_cpdag(edges(3, {{0, 2}, {1, 2}}), edges(3, {{0, 2}, {2, 1}})), 2);
}

TEST(PrecisionRecall, Examples) {
    const auto chain = edges(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(precision_cpdag(chain, chain), 1.0);
    EXPECT_EQ(recall_cpdag(chain, chain), 1.0);
    EXPECT_EQ(precision_cpdag(chain, BinaryAdjacency(3)), 0.0);
    EXPECT_EQ(recall_cpdag(chain, BinaryAdjacency(3)), 0.0);
    const auto single = edges(3, {{0, 1}});
    EXPECT_EQ(precision_cpdag(chain, single), 1.0);
    EXPECT_EQ(recall_cpdag(chain, single), 0.5);
    // Both empty: max(1, .) denominators.
    EXPECT_EQ(precision_cpdag(BinaryAdjacency(3), BinaryAdjacency(3)), 0.0);
}

TEST(PrecisionRecall, DirectionMatters) {
    const auto collider = edges(3, {{0, 2}, {1, 2}});
    const auto other = edges(3, {{2, 0}, {2, 1}});  // CPDAG 0 - 2 - 1
    EXPECT_EQ(precision_cpdag(collider, other), 0.0);
    EXPECT_EQ(shd_cpdag(collider, other), 2);
}

TEST(Report, EmptyPredictionAndIdentity) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto truth = random_er_dag(20, 2.0, seed);
        const auto r = report(truth, BinaryAdjacency(20));
        EXPECT_EQ(r.shd_c, truth.edge_count());
        EXPECT_DOUBLE_EQ(r.nshd_c, truth.edge_count() / 20.0);
        EXPECT_EQ(r.pred_size, 0);
        const auto same = report(truth, truth);
        EXPECT_EQ(same.shd_c, 0);
        EXPECT_EQ(same.nshd_c, 0.0);
        EXPECT_EQ(same.precision_c, 1.0);
        EXPECT_EQ(same.recall_c, truth.edge_count() ? 1.0 : 0.0);
        EXPECT_EQ(same.pred_size, truth.edge_count());
    }
}

TEST(ShdCpdag, MetricPropertiesExhaustiveThreeNodes) {
    const auto dags = oracle::all_dags(3);
    for (const auto& a : dags)
        for (const auto& b : dags) {
            const int ab = shd_cpdag(a, b);
            ASSERT_EQ(ab, shd_cpdag(b, a));
            const bool both_empty = a.edge_count() == 0 && b.edge_count() == 0;
            if (!both_empty)
                ASSERT_EQ(ab == 0, precision_cpdag(a, b) == 1.0 && recall_cpdag(a, b) == 1.0);
            for (const auto& c : dags) ASSERT_LE(ab, shd_cpdag(a, c) + shd_cpdag(c, b));
        }
    for (const auto& a : dags) EXPECT_EQ(shd_cpdag(a, a), 0);
}

TEST(ShdCpdag, PrecisionRecallOneIffZeroAtTwoNodes) {
    for (const auto& a : oracle::all_dags(2))
        for (const auto& b : oracle::all_dags(2)) {
            if (a.edge_count() == 0 && b.edge_count() == 0) continue;
            EXPECT_EQ(shd_cpdag(a, b) == 0, precision_cpdag(a, b) == 1.0 && recall_cpdag(a, b) == 1.0);
        }
}

TEST(ShdCpdag, AgreesWithMecOracleCpdags) {
    const auto dags = oracle::all_dags(4);
    for (std::size_t ia = 0; ia < dags.size(); ia += 7)
        for (std::size_t ib = 0; ib < dags.size(); ib += 11)
            ASSERT_EQ(shd_cpdag(dags[ia], dags[ib]),
                      shd_pdag(oracle::mec_consensus(dags[ia], dags), oracle::mec_consensus(dags[ib], dags)));
}

TEST(ShdRaw, CountsDagPairs) {
    const auto chain = edges(3, {{0, 1}, {1, 2}});
    EXPECT_EQ(shd_raw(chain, edges(3, {{2, 1}, {1, 0}})), 2);
    EXPECT_EQ(shd_raw(chain, chain), 0);
}

}  // namespace
}  // namespace dagdb
