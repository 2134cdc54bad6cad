#include "dik/gf2.hpp"

#include <algorithm>

namespace dik {

std::size_t BitMatrix::rank() const {
    std::vector<std::uint64_t> m = data_;
    auto row = [&](std::size_t r) { return m.begin() + static_cast<std::ptrdiff_t>(r * words_); };

    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        const std::size_t w = c / 64;
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        std::size_t pivot = rank;
        while (pivot < rows_ && !(m[pivot * words_ + w] & bit)) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != rank) std::swap_ranges(row(pivot), row(pivot) + static_cast<std::ptrdiff_t>(words_), row(rank));
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r != rank && (m[r * words_ + w] & bit)) {
                for (std::size_t k = w; k < words_; ++k) m[r * words_ + k] ^= m[rank * words_ + k];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace dik
