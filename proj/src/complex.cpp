#include "dik/complex.hpp"

#include <algorithm>
#include <set>

#include "dik/gf2.hpp"

namespace dik {

SimplicialComplex SimplicialComplex::closure_of(std::size_t vertex_count, std::span<const Simplex> simplices) {
    std::vector<std::set<Simplex>> grades(1);
    for (std::uint32_t v = 0; v < vertex_count; ++v) grades[0].insert({v});

    std::vector<Simplex> stack(simplices.begin(), simplices.end());
    while (!stack.empty()) {
        Simplex s = std::move(stack.back());
        stack.pop_back();
        if (s.empty()) continue;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw MalformedInput("simplex repeats a vertex");
        if (s.back() >= vertex_count) throw MalformedInput("simplex vertex out of range");
        const auto dim = s.size() - 1;
        if (grades.size() <= dim) grades.resize(dim + 1);
        if (!grades[dim].insert(s).second) continue;
        for (std::size_t drop = 0; s.size() > 1 && drop < s.size(); ++drop) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            stack.push_back(std::move(face));
        }
    }
    SimplicialComplex c;
    c.vertex_count_ = vertex_count;
    for (auto& g : grades) c.grades_.emplace_back(g.begin(), g.end());
    while (c.grades_.size() > 1 && c.grades_.back().empty()) c.grades_.pop_back();
    return c;
}

std::span<const Simplex> SimplicialComplex::simplices(int dim) const {
    if (dim < 0 || dim > dimension()) return {};
    return grades_[static_cast<std::size_t>(dim)];
}

std::size_t SimplicialComplex::size() const {
    std::size_t total = 0;
    for (const auto& g : grades_) total += g.size();
    return total;
}

bool SimplicialComplex::contains(const Simplex& s) const {
    if (s.empty() || s.size() > grades_.size()) return false;
    const auto& g = grades_[s.size() - 1];
    return std::binary_search(g.begin(), g.end(), s);
}

ComplexBuilder::ComplexBuilder(std::size_t vertex_count) { complex_.vertex_count_ = vertex_count; }

void ComplexBuilder::add_grade(std::vector<Simplex> simplices) {
    if (simplices.empty()) return;
    std::sort(simplices.begin(), simplices.end());
    complex_.grades_.push_back(std::move(simplices));
}

SimplicialComplex ComplexBuilder::build() && {
    if (complex_.grades_.empty()) complex_.grades_.emplace_back();
    return std::move(complex_);
}

namespace {

// Rank of the boundary map from dim-simplices to (dim-1)-simplices. Each
// dim-simplex becomes one row holding its faces.
std::size_t boundary_rank(const SimplicialComplex& c, int dim) {
    if (dim <= 0) return 0;
    auto cells = c.simplices(dim);
    auto faces = c.simplices(dim - 1);
    if (cells.empty()) return 0;
    BitMatrix boundary(cells.size(), faces.size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
        const auto& s = cells[r];
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
            auto it = std::lower_bound(faces.begin(), faces.end(), face);
            if (it == faces.end() || *it != face) throw ConstraintError("complex is not downward closed");
            boundary.set(r, static_cast<std::size_t>(it - faces.begin()));
        }
    }
    return boundary.rank();
}

}  // namespace

std::vector<std::size_t> betti_numbers(const SimplicialComplex& c, int up_to_dim) {
    std::vector<std::size_t> betti;
    std::size_t rank_in = boundary_rank(c, 0);
    for (int k = 0; k <= up_to_dim; ++k) {
        const std::size_t rank_out = boundary_rank(c, k + 1);
        const std::size_t cycles = c.simplices(k).size() - rank_in;
        betti.push_back(cycles - rank_out);
        rank_in = rank_out;
    }
    return betti;
}

}  // namespace dik
