#include <random>

#include "doctest.h"

#include "dik/complex.hpp"
#include "dik/gf2.hpp"
#include "dik/metric.hpp"
#include "../oracles/oracles.hpp"

using namespace dik;

namespace {

MetricTable<double> line(const std::vector<int>& xs) {
    std::vector<std::string> names;
    Eigen::MatrixXd c(static_cast<Eigen::Index>(xs.size()), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        names.push_back(std::to_string(xs[i]));
        c(static_cast<Eigen::Index>(i), 0) = xs[i];
    }
    return MetricTable<double>::from_coordinates(GroundSet(names), c);
}

MetricTable<double> table(std::vector<std::string> names, const std::vector<std::vector<double>>& d) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d[i][j];
    return MetricTable<double>(GroundSet(std::move(names)), m);
}

std::vector<std::uint64_t> bits(const ClusterPartition& p) {
    std::vector<std::uint64_t> out;
    for (const auto& c : p.clusters) out.push_back(c.bits());
    return out;
}

}  // namespace

TEST_CASE("verify_metric") {
    CHECK(verify_metric(line({0, 1, 2, 10, 11})).valid);

    auto zero = verify_metric(table({"a", "b"}, {{0, 0}, {0, 0}}));
    CHECK_FALSE(zero.valid);
    CHECK(zero.violations.front().clause == 2);

    auto tri = verify_metric(table({"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
    CHECK_FALSE(tri.valid);
    bool witness = false;
    for (const auto& v : tri.violations)
        if (v.clause == 4 && v.witness == std::vector<std::size_t>{0, 1, 2}) witness = true;
    CHECK(witness);

    CHECK_THROWS_AS(table({"a", "b"}, {{0}}), MalformedInput);
}

TEST_CASE("similarity and clusters on the line") {
    auto m = line({0, 1, 2, 10, 11});
    auto g = similarity_graph(m, 1.5);
    std::vector<std::pair<std::size_t, std::size_t>> want{{0, 1}, {1, 2}, {3, 4}};
    CHECK(g.edges == want);
    CHECK(similarity_graph(m, 0.0).edges.empty());
    CHECK(similarity_graph(m, m.diameter()).edges.size() == 10);
    CHECK_THROWS_AS(similarity_graph(m, -1.0), ParameterError);

    CHECK(bits(clusters(m, 1.5)) == std::vector<std::uint64_t>{0b00111, 0b11000});
    CHECK(clusters(m, 0.0).clusters.size() == 5);
    CHECK(clusters(m, m.diameter()).clusters.size() == 1);
    // inclusive threshold
    CHECK(clusters(m, 1.0).clusters.size() == 2);
}

TEST_CASE("rips complex") {
    auto tri = table({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
    auto full = rips_complex(tri, 1.0, 2);
    CHECK(full.size() == 7);
    CHECK(full.contains({0, 1, 2}));
    auto graph = rips_complex(tri, 1.0, 1);
    CHECK(graph.size() == 6);
    CHECK_FALSE(graph.contains({0, 1, 2}));

    auto m = line({0, 1, 2, 10, 11});
    auto c = rips_complex(m, 1.5, 2);
    CHECK(c.simplices(0).size() == 5);
    std::vector<Simplex> edges(c.simplices(1).begin(), c.simplices(1).end());
    CHECK(edges == std::vector<Simplex>{{0, 1}, {1, 2}, {3, 4}});
    CHECK(c.dimension() == 1);
    CHECK(betti_numbers(c, 0) == std::vector<std::size_t>{2});
}

TEST_CASE("gf2 rank") {
    BitMatrix m(3, 3);
    m.set(0, 0);
    m.set(0, 1);
    m.set(1, 1);
    m.set(1, 2);
    m.set(2, 0);
    m.set(2, 2);  // row 2 = row 0 + row 1
    CHECK(m.rank() == 2);
    BitMatrix wide(2, 130);
    wide.set(0, 129);
    wide.set(1, 64);
    CHECK(wide.rank() == 2);
}

TEST_CASE("betti numbers by hand") {
    // hollow triangle: rank ∂1 = 2, so β0 = 3 - 2, β1 = (3 - 2) - 0
    std::vector<Simplex> hollow{{0, 1}, {1, 2}, {0, 2}};
    CHECK(betti_numbers(SimplicialComplex::closure_of(3, hollow), 1) == std::vector<std::size_t>{1, 1});
    // filled: rank ∂2 = 1 kills the cycle
    std::vector<Simplex> filled{{0, 1, 2}};
    CHECK(betti_numbers(SimplicialComplex::closure_of(3, filled), 1) == std::vector<std::size_t>{1, 0});
    std::vector<Simplex> two{{0, 1}, {2, 3}};
    CHECK(betti_numbers(SimplicialComplex::closure_of(4, two), 1) == std::vector<std::size_t>{2, 0});
    // hollow tetrahedron: a 2-sphere
    std::vector<Simplex> sphere{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    CHECK(betti_numbers(SimplicialComplex::closure_of(4, sphere), 2) == std::vector<std::size_t>{1, 0, 1});
}

TEST_CASE("closure_of is downward closed") {
    std::vector<Simplex> s{{0, 2, 3}};
    auto c = SimplicialComplex::closure_of(5, s);
    CHECK(c.simplices(0).size() == 5);
    CHECK(c.contains({0, 2}));
    CHECK(c.contains({2, 3}));
    CHECK(c.contains({0, 3}));
    CHECK(c.size() == 5 + 3 + 1);
}

TEST_CASE("clusters agree with reachability and b0; epsilon monotonicity") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Eigen::MatrixXd pts(n, 2);
        for (int i = 0; i < n; ++i) pts.row(i) << coord(rng), coord(rng);
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
        auto m = MetricTable<double>::from_coordinates(GroundSet(names), pts);
        std::vector<std::vector<double>> d(n, std::vector<double>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

        std::vector<double> eps{0.0, 1.0, 2.5, 4.0, 8.0};
        ClusterPartition prev;
        SimplicialComplex prev_c;
        for (std::size_t k = 0; k < eps.size(); ++k) {
            auto p = clusters(m, eps[k]);
            CHECK(bits(p) == oracle::reach_components(d, eps[k]));
            auto c = rips_complex(m, eps[k], 2);
            CHECK(betti_numbers(c, 0).front() == p.clusters.size());
            if (k > 0) {
                for (const auto& small : prev.clusters)
                    CHECK(std::any_of(p.clusters.begin(), p.clusters.end(),
                                      [&](const SubsetMask& big) { return small.subset_of(big); }));
                for (int dim = 0; dim <= prev_c.dimension(); ++dim)
                    for (const auto& s : prev_c.simplices(dim)) CHECK(c.contains(s));
            }
            prev = p;
            prev_c = c;
        }
    }
}

TEST_CASE("metric topology of a finite metric is discrete") {
    auto m = line({0, 1, 2, 10, 11});
    auto t = metric_topology(m);
    CHECK(is_discrete(t));
}
