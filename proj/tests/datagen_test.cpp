#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "degree_tail.hpp"
#include "gom/datagen.hpp"
#include "gom/errors.hpp"

using namespace gom;
using namespace gom::testing;

namespace {

BAParams params(std::size_t v, std::size_t lo, std::size_t hi, std::uint64_t seed) {
    BAParams p;
    p.vertex_count = v;
    p.outdegree_min = lo;
    p.outdegree_max = hi;
    p.seed = seed;
    return p;
}

void expect_simple(const Graph& g) {
    std::size_t half_edges = 0;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
        const auto nb = g.neighbors(u);
        half_edges += nb.size();
        EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
        EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end());
        for (auto v : nb) {
            EXPECT_NE(v, u);
            const auto back = g.neighbors(v);
            EXPECT_TRUE(std::binary_search(back.begin(), back.end(), u));
        }
    }
    EXPECT_EQ(half_edges, 2 * g.edge_count());
}

bool connected(const Graph& g) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<VertexId> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == g.vertex_count();
}

}  // namespace

TEST(GenerateBA, UnitOutdegreeGivesTree) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = generate_ba(params(10, 1, 1, seed));
        EXPECT_EQ(g.vertex_count(), 10u);
        EXPECT_EQ(g.edge_count(), 9u);
        EXPECT_TRUE(connected(g));
    }
}

TEST(GenerateBA, EdgeCountMatchesAttachmentSum) {
    for (std::size_t m : {1u, 2u, 5u, 17u}) {
        const std::size_t v = 60;
        std::size_t expected = 0;
        for (std::size_t t = 1; t < v; ++t) expected += std::min(m, t);
        EXPECT_EQ(generate_ba(params(v, m, m, 3)).edge_count(), expected) << "m = " << m;
    }
    // mixed outdegrees fall between the all-min and all-max sums
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t v = 200;
        std::size_t lo = 0, hi = 0;
        for (std::size_t t = 1; t < v; ++t) {
            lo += std::min<std::size_t>(2, t);
            hi += std::min<std::size_t>(9, t);
        }
        const auto e = generate_ba(params(v, 2, 9, seed)).edge_count();
        EXPECT_GE(e, lo);
        EXPECT_LE(e, hi);
    }
}

TEST(GenerateBA, SimpleAndConnected) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = generate_ba(params(300, 1, 32, seed));
        expect_simple(g);
        EXPECT_TRUE(connected(g));
        EXPECT_EQ(g.dropped_self_loops(), 0u);
        EXPECT_EQ(g.dropped_duplicates(), 0u);
    }
}

TEST(GenerateBA, DeterministicPerSeed) {
    const auto a = generate_ba(params(400, 1, 32, 5), "x");
    EXPECT_EQ(a, generate_ba(params(400, 1, 32, 5), "x"));
    EXPECT_NE(to_edge_list(a), to_edge_list(generate_ba(params(400, 1, 32, 6), "x")));
}

TEST(GenerateBA, PaperScaleEdgeCountRange) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto e = generate_ba(params(4000, 1, 32, seed)).edge_count();
        EXPECT_GE(e, 3999u);
        EXPECT_LE(e, 127472u);
    }
}

TEST(GenerateBA, TailExponentNearThree) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto g = generate_ba(params(500, 1, 32, seed));
        const double gamma = tail_exponent({&g});
        EXPECT_GE(gamma, -3.7) << "seed " << seed;
        EXPECT_LE(gamma, -2.3) << "seed " << seed;
    }
    const auto sparse = generate_ba(params(2000, 1, 3, 1));
    const double gamma = tail_exponent({&sparse});
    EXPECT_GE(gamma, -3.7);
    EXPECT_LE(gamma, -2.3);
}

TEST(GenerateBA, RejectsInvalidParams) {
    EXPECT_THROW(generate_ba(params(10, 0, 3, 1)), ConfigError);
    EXPECT_THROW(generate_ba(params(10, 4, 3, 1)), ConfigError);
    EXPECT_THROW(generate_ba(params(10, 1, 10, 1)), ConfigError);
    EXPECT_THROW(generate_ba(params(1, 1, 1, 1)), ConfigError);
}

TEST(GenerateDataset, NamesSeedsAndWorkers) {
    const auto p = params(120, 1, 8, 999);
    const auto d = generate_dataset(12, p, 4);
    EXPECT_EQ(d.size(), 12u);
    EXPECT_EQ(d.name, "ba");
    EXPECT_EQ(d[0].id(), "ba_00000");
    EXPECT_EQ(d[11].id(), "ba_00011");
    std::set<std::string> texts;
    for (const auto& g : d.graphs) texts.insert(to_edge_list(g));
    EXPECT_EQ(texts.size(), 12u);

    const auto parallel = generate_dataset(12, p, 4, 3);
    for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d[i], parallel[i]);

    auto other = p;
    other.seed = 1;  // ignored in favor of the dataset seed
    EXPECT_EQ(generate_dataset(12, other, 4)[3], d[3]);

    const auto single = generate_dataset(1, p, 4, 1, "one");
    EXPECT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].id(), "one_00000");
    EXPECT_THROW(generate_dataset(0, p, 4), ConfigError);
}

TEST(GenerateDataset, DeskScaleTailIsPowerLaw) {
    const auto d = generate_dataset(200, params(500, 1, 32, 0), 1);
    for (const auto& g : d.graphs) {
        const double gamma = tail_exponent({&g});
        EXPECT_GE(gamma, -3.7) << g.id();
        EXPECT_LE(gamma, -2.3) << g.id();
    }
}
