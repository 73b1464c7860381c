#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctrlplace/distance_matrix.hpp"
#include "ctrlplace/errors.hpp"
#include "ctrlplace/generator.hpp"
#include "ctrlplace/metrics.hpp"
#include "reference.hpp"
#include "test_support.hpp"

#include <algorithm>

using namespace ctrlplace;

TEST_CASE("distances: single edge") {
    const Topology t({"A", "B"}, {{0, 1, 5.0}});
    const DistanceMatrix d = all_pairs_distances(t);
    CHECK(d(0, 1) == 5.0);
    CHECK(d(1, 0) == 5.0);
    CHECK(d(0, 0) == 0.0);
}

TEST_CASE("distances: triangle shortcut via middle node") {
    const DistanceMatrix d = all_pairs_distances(testing::triangle(1.0, 1.0, 5.0));
    CHECK(d(0, 2) == 2.0); // A-B-C beats the direct A-C link
}

TEST_CASE("distances: disconnected graphs are rejected") {
    CHECK_THROWS_AS(all_pairs_distances(Topology({"a", "b"}, {})), InfeasibleError);
}

TEST_CASE("distances: matches the serial relaxation oracle exactly") {
    const auto bundle = generate_clustered(example_network_spec());
    const DistanceMatrix d = all_pairs_distances(bundle.topology);
    const auto oracle = ref::apsp_relaxation(bundle.topology);
    for (int i = 0; i < d.size(); ++i)
        for (int j = 0; j < d.size(); ++j)
            CHECK(d(i, j) == oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
}

TEST_CASE("distances: metric properties on random graphs") {
    Rng rng(9100);
    for (int trial = 0; trial < 5; ++trial) {
        const Topology t = testing::random_connected_graph(rng, 4 + static_cast<int>(rng.below(20)));
        const DistanceMatrix d = all_pairs_distances(t);
        const int n = d.size();
        for (int i = 0; i < n; ++i) {
            CHECK(d(i, i) == 0.0);
            for (int j = 0; j < n; ++j) {
                CHECK(d(i, j) == d(j, i));
                for (int via = 0; via < n; ++via)
                    CHECK(d(i, j) <= d(i, via) + d(via, j) + 1e-12);
            }
        }
    }
}

TEST_CASE("placement validation") {
    CHECK_THROWS_AS(Placement({}), ValidationError);
    CHECK_THROWS_AS(Placement({1, 1}), ValidationError);
    const Placement p({3, 1, 2});
    CHECK(p.ids() == std::vector<NodeId>{1, 2, 3}); // sorted on construction
    CHECK(p.k() == 3);

    const DistanceMatrix d = all_pairs_distances(testing::path_graph_abc());
    CHECK_THROWS_AS(assign_nearest(d, Placement({5})), ValidationError);
    CHECK_THROWS_AS(avg_latency(d, Placement({0, 3})), ValidationError);
}

TEST_CASE("assign_nearest: singleton placement") {
    const DistanceMatrix d = all_pairs_distances(testing::path_graph_abc());
    const Assignment a = assign_nearest(d, Placement({1}));
    for (NodeId v = 0; v < 3; ++v) {
        CHECK(a.controller[static_cast<std::size_t>(v)] == 1);
        CHECK(a.delay[static_cast<std::size_t>(v)] == d(v, 1));
    }
    CHECK(a.delay[1] == 0.0); // controller maps to itself
}

TEST_CASE("assign_nearest: equal delays resolve to the lowest controller id") {
    const DistanceMatrix d = all_pairs_distances(testing::path_graph_abc());
    const Assignment a = assign_nearest(d, Placement({0, 2}));
    CHECK(a.controller[1] == 0); // B ties between A and C at delay 1
    CHECK(a.delay[1] == 1.0);
}

TEST_CASE("avg and worst latency: hand-checked path graph") {
    const DistanceMatrix d = all_pairs_distances(testing::path_graph_abc());
    CHECK(avg_latency(d, Placement({1})) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(worst_latency(d, Placement({0})) == 2.0);
    CHECK(avg_latency(d, Placement({0, 1, 2})) == 0.0);
    CHECK(worst_latency(d, Placement({0, 1, 2})) == 0.0);
}

TEST_CASE("avg/worst latency match the naive recomputation on 20 random graphs") {
    Rng rng(9200);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng.below(25));
        const Topology t = testing::random_connected_graph(rng, n);
        const DistanceMatrix d = all_pairs_distances(t);
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const auto sites = rng.sample_distinct(k, n);
        const Placement p(sites);
        CHECK(avg_latency(d, p) == doctest::Approx(ref::naive_avg_latency(d, sites)).epsilon(1e-12));
        CHECK(worst_latency(d, p) == ref::naive_worst_latency(d, sites));
    }
}

TEST_CASE("coverage_within_bound") {
    const DistanceMatrix d = all_pairs_distances(testing::path_graph_abc());
    CHECK(coverage_within_bound(d, Placement({0, 2}), 0.0) == std::vector<NodeId>{0, 2});
    CHECK(coverage_within_bound(d, Placement({0}), 2.0) == std::vector<NodeId>{0, 1, 2});
    CHECK(coverage_within_bound(d, Placement({0}), 1.0) == std::vector<NodeId>{0, 1});
    CHECK_THROWS_AS(coverage_within_bound(d, Placement({0}), -1.0), ValidationError);
}

TEST_CASE("coverage equals the union of per-site coverage sets") {
    Rng rng(9300);
    const Topology t = testing::random_connected_graph(rng, 12);
    const DistanceMatrix d = all_pairs_distances(t);
    const double bound = 8.0;
    const CoverageSets sets = coverage_sets(d, bound);
    for (NodeId s = 0; s < d.size(); ++s) {
        // Every candidate site covers itself.
        CHECK(std::binary_search(sets.members[static_cast<std::size_t>(s)].begin(),
                                 sets.members[static_cast<std::size_t>(s)].end(), s));
    }
    const std::vector<NodeId> sites{1, 5, 9};
    std::vector<char> in_union(static_cast<std::size_t>(d.size()), 0);
    for (const NodeId s : sites)
        for (const NodeId v : sets.members[static_cast<std::size_t>(s)])
            in_union[static_cast<std::size_t>(v)] = 1;
    const auto covered = coverage_within_bound(d, Placement(sites), bound);
    for (NodeId v = 0; v < d.size(); ++v)
        CHECK(static_cast<bool>(in_union[static_cast<std::size_t>(v)]) ==
              std::binary_search(covered.begin(), covered.end(), v));
}

TEST_CASE("properties: mean never exceeds max; adding controllers never hurts") {
    Rng rng(9400);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 5 + static_cast<int>(rng.below(15));
        const Topology t = testing::random_connected_graph(rng, n);
        const DistanceMatrix d = all_pairs_distances(t);
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        const Placement p(rng.sample_distinct(k, n));
        CHECK(avg_latency(d, p) <= worst_latency(d, p) + 1e-12);

        // Extend by one extra controller.
        std::vector<NodeId> extended = p.ids();
        for (NodeId v = 0; v < n; ++v) {
            if (!p.contains(v)) {
                extended.push_back(v);
                break;
            }
        }
        const Placement bigger(extended);
        const Assignment before = assign_nearest(d, p);
        const Assignment after = assign_nearest(d, bigger);
        for (NodeId v = 0; v < n; ++v)
            CHECK(after.delay[static_cast<std::size_t>(v)] <=
                  before.delay[static_cast<std::size_t>(v)]);
        CHECK(avg_latency(d, bigger) <= avg_latency(d, p) + 1e-12);
        CHECK(worst_latency(d, bigger) <= worst_latency(d, p));
        CHECK(coverage_within_bound(d, bigger, 5.0).size() >=
              coverage_within_bound(d, p, 5.0).size());

        // Coverage is monotone in the bound.
        std::size_t previous = 0;
        for (const double bound : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 1e9}) {
            const auto covered = coverage_within_bound(d, p, bound);
            CHECK(covered.size() >= previous);
            previous = covered.size();
        }
    }
}

TEST_CASE("avg latency equals the mean of assignment delays") {
    Rng rng(9500);
    const Topology t = testing::random_connected_graph(rng, 14);
    const DistanceMatrix d = all_pairs_distances(t);
    const Placement p(rng.sample_distinct(3, 14));
    const Assignment a = assign_nearest(d, p);
    double sum = 0.0;
    for (const double delay : a.delay) sum += delay;
    CHECK(avg_latency(d, p) == doctest::Approx(sum / 14.0).epsilon(1e-15));
}

TEST_CASE("distance matrix constructor rejects malformed data") {
    CHECK_THROWS_AS(DistanceMatrix(2, {0.0, 1.0, 2.0, 0.0}), ValidationError); // asymmetric
    CHECK_THROWS_AS(DistanceMatrix(2, {1.0, 1.0, 1.0, 0.0}), ValidationError); // nonzero diagonal
    CHECK_THROWS_AS(DistanceMatrix(2, {0.0, -1.0, -1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(DistanceMatrix(2, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(DistanceMatrix(0, {}), ValidationError);
}
