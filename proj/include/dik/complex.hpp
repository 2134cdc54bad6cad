#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dik/metric.hpp"

namespace dik {

using Simplex = std::vector<std::uint32_t>;  // sorted vertex indices

// Abstract simplicial complex graded by dimension; each grade is sorted
// lexicographically. Always downward closed and contains every vertex.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    // Downward closure of the given simplices plus all `vertex_count` vertices.
    static SimplicialComplex closure_of(std::size_t vertex_count, std::span<const Simplex> simplices);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    int dimension() const noexcept { return static_cast<int>(grades_.size()) - 1; }
    std::span<const Simplex> simplices(int dim) const;
    std::size_t size() const;
    bool contains(const Simplex& s) const;

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
    friend class ComplexBuilder;
    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Simplex>> grades_;
};

// Assembles a complex grade by grade; callers must add faces before cofaces.
class ComplexBuilder {
public:
    explicit ComplexBuilder(std::size_t vertex_count);
    void add_grade(std::vector<Simplex> simplices);
    SimplicialComplex build() &&;

private:
    SimplicialComplex complex_;
};

// Vietoris–Rips complex: a simplex of dimension <= max_dim for every vertex
// set whose pairwise distances are all <= ε.
template <typename Scalar>
SimplicialComplex rips_complex(const MetricTable<Scalar>& m, Scalar epsilon, int max_dim = 2) {
    check_epsilon(epsilon);
    if (max_dim < 0) throw ParameterError("max_dim must be nonnegative");
    const auto n = m.size();
    std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
    for (auto [i, j] : similarity_graph(m, epsilon).edges) adjacent[i][j] = adjacent[j][i] = true;

    ComplexBuilder builder(n);
    std::vector<Simplex> grade;
    for (std::uint32_t v = 0; v < n; ++v) grade.push_back({v});
    for (int dim = 1; dim <= max_dim && !grade.empty(); ++dim) {
        std::vector<Simplex> next;
        for (const auto& s : grade) {
            for (std::uint32_t v = s.back() + 1; v < n; ++v) {
                bool all = std::all_of(s.begin(), s.end(), [&](std::uint32_t u) { return adjacent[u][v]; });
                if (!all) continue;
                Simplex t = s;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        }
        builder.add_grade(std::move(grade));
        grade = std::move(next);
    }
    builder.add_grade(std::move(grade));
    return std::move(builder).build();
}

// Ranks of the simplicial homology groups over GF(2) for k = 0..up_to_dim.
std::vector<std::size_t> betti_numbers(const SimplicialComplex& c, int up_to_dim);

}  // namespace dik
