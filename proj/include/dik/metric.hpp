#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "dik/ground_set.hpp"
#include "dik/topology.hpp"

namespace dik {

// Pairwise distance table over a ground set. Construction only checks the
// shape; the metric axioms are checked by verify_metric.
template <typename Scalar>
class MetricTable {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    MetricTable(GroundSet ground, Matrix dist) : ground_(std::move(ground)), dist_(std::move(dist)) {
        const auto n = static_cast<Eigen::Index>(ground_.size());
        if (dist_.rows() != n || dist_.cols() != n)
            throw MalformedInput("distance table is " + std::to_string(dist_.rows()) + "x" + std::to_string(dist_.cols()) +
                                 " but the ground set has " + std::to_string(n) + " elements");
    }

    // Euclidean distances between the rows of `coords`.
    template <typename Derived>
    static MetricTable from_coordinates(GroundSet ground, const Eigen::MatrixBase<Derived>& coords) {
        const auto n = static_cast<Eigen::Index>(ground.size());
        if (coords.rows() != n) throw MalformedInput("coordinate rows do not match the ground set");
        Matrix d = Matrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (coords.row(i) - coords.row(j)).norm();
        return MetricTable(std::move(ground), std::move(d));
    }

    const GroundSet& ground() const noexcept { return ground_; }
    const Matrix& dist() const noexcept { return dist_; }
    std::size_t size() const noexcept { return ground_.size(); }
    Scalar operator()(std::size_t i, std::size_t j) const {
        return dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    Scalar diameter() const { return size() ? dist_.maxCoeff() : Scalar(0); }

private:
    GroundSet ground_;
    Matrix dist_;
};

struct MetricViolation {
    int clause = 0;  // 1 nonnegative, 2 identity of indiscernibles, 3 symmetry, 4 triangle
    std::string description;
    std::vector<std::size_t> witness;
};

struct MetricReport {
    bool valid = true;
    std::vector<MetricViolation> violations;
};

inline constexpr double kTriangleTolerance = 1e-9;

template <typename Scalar>
MetricReport verify_metric(const MetricTable<Scalar>& m, Scalar tolerance = Scalar(kTriangleTolerance)) {
    MetricReport report;
    const auto& g = m.ground();
    auto fail = [&](int clause, std::string what, std::vector<std::size_t> w) {
        report.valid = false;
        report.violations.push_back({clause, std::move(what), std::move(w)});
    };
    const auto n = m.size();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            const Scalar d = m(x, y);
            if (!(d >= Scalar(0))) fail(1, "d(" + g.element(x) + "," + g.element(y) + ") is negative or NaN", {x, y});
            if (x == y && d != Scalar(0)) fail(2, "d(" + g.element(x) + "," + g.element(x) + ") is not zero", {x});
            if (x < y && d == Scalar(0))
                fail(2, "d(" + g.element(x) + "," + g.element(y) + ") is zero for distinct points", {x, y});
            if (x < y && d != m(y, x)) fail(3, "d(" + g.element(x) + "," + g.element(y) + ") is not symmetric", {x, y});
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (m(x, z) > m(x, y) + m(y, z) + tolerance)
                    fail(4, "d(" + g.element(x) + "," + g.element(z) + ") > d(" + g.element(x) + "," + g.element(y) +
                                ") + d(" + g.element(y) + "," + g.element(z) + ")",
                         {x, y, z});
    return report;
}

template <typename Scalar>
void check_epsilon(Scalar epsilon) {
    if (!(epsilon >= Scalar(0))) throw ParameterError("epsilon must be a nonnegative number");
}

struct SimilarityGraph {
    GroundSet ground;
    double epsilon = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, lexicographic
};

// x ∼ε y iff d(x, y) <= ε, compared exactly on the stored values.
template <typename Scalar>
SimilarityGraph similarity_graph(const MetricTable<Scalar>& m, Scalar epsilon) {
    check_epsilon(epsilon);
    SimilarityGraph g{m.ground(), static_cast<double>(epsilon), {}};
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (m(i, j) <= epsilon) g.edges.emplace_back(i, j);
    return g;
}

struct ClusterPartition {
    std::vector<SubsetMask> clusters;  // ordered by smallest member
};

// Disjoint-set forest with path halving and union by index.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

// Connected components of the ε-similarity graph.
template <typename Scalar>
ClusterPartition clusters(const MetricTable<Scalar>& m, Scalar epsilon) {
    const auto graph = similarity_graph(m, epsilon);
    const auto n = m.size();
    UnionFind uf(n);
    for (auto [i, j] : graph.edges) uf.unite(i, j);

    std::vector<SubsetMask> out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto root = uf.find(i);
        if (slot[root] == n) {
            slot[root] = out.size();
            out.push_back(m.ground().empty_set());
        }
        out[slot[root]] = out[slot[root]].with(i);
    }
    return {std::move(out)};
}

// Topology generated by the open balls {y : d(x, y) < r}.
template <typename Scalar>
FiniteTopology metric_topology(const MetricTable<Scalar>& m) {
    std::vector<SubsetMask> balls;
    for (std::size_t x = 0; x < m.size(); ++x) {
        std::vector<Scalar> radii;
        for (std::size_t y = 0; y < m.size(); ++y)
            if (m(x, y) > Scalar(0)) radii.push_back(m(x, y));
        radii.push_back(std::numeric_limits<Scalar>::infinity());
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        for (Scalar r : radii) {
            SubsetMask ball = m.ground().empty_set();
            for (std::size_t y = 0; y < m.size(); ++y)
                if (m(x, y) < r) ball = ball.with(y);
            balls.push_back(ball);
        }
    }
    return generate_topology(m.ground(), balls);
}

}  // namespace dik
