#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "dik/error.hpp"

namespace dik {

inline constexpr std::size_t kMaxGroundSize = 62;

// A subset of a ground set of at most 62 elements, one bit per element.
class SubsetMask {
public:
    SubsetMask() = default;
    SubsetMask(std::size_t width, std::uint64_t bits) : bits_(bits), width_(width) {
        if (width > kMaxGroundSize) throw MalformedInput("subset width exceeds 62");
        if (bits & ~full_bits(width)) throw MalformedInput("subset has bits beyond its width");
    }

    static SubsetMask empty(std::size_t width) { return {width, 0}; }
    static SubsetMask full(std::size_t width) { return {width, full_bits(width)}; }
    static SubsetMask singleton(std::size_t width, std::size_t i) { return {width, std::uint64_t{1} << i}; }

    std::size_t width() const noexcept { return width_; }
    std::uint64_t bits() const noexcept { return bits_; }
    std::size_t count() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
    bool contains(std::size_t i) const noexcept { return i < width_ && ((bits_ >> i) & 1u); }
    bool is_empty() const noexcept { return bits_ == 0; }
    bool is_full() const noexcept { return bits_ == full_bits(width_); }

    SubsetMask with(std::size_t i) const { return {width_, bits_ | (std::uint64_t{1} << i)}; }
    SubsetMask without(std::size_t i) const { return {width_, bits_ & ~(std::uint64_t{1} << i)}; }
    SubsetMask complement() const { return {width_, ~bits_ & full_bits(width_)}; }
    bool subset_of(const SubsetMask& o) const { check(o); return (bits_ & ~o.bits_) == 0; }
    bool disjoint(const SubsetMask& o) const { check(o); return (bits_ & o.bits_) == 0; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        return out;
    }

    friend SubsetMask operator&(const SubsetMask& a, const SubsetMask& b) { a.check(b); return {a.width_, a.bits_ & b.bits_}; }
    friend SubsetMask operator|(const SubsetMask& a, const SubsetMask& b) { a.check(b); return {a.width_, a.bits_ | b.bits_}; }
    friend SubsetMask operator-(const SubsetMask& a, const SubsetMask& b) { a.check(b); return {a.width_, a.bits_ & ~b.bits_}; }
    friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

    // Canonical order: by cardinality, then by numeric value of the bit vector.
    friend bool operator<(const SubsetMask& a, const SubsetMask& b) {
        if (a.width_ != b.width_) return a.width_ < b.width_;
        const auto ca = a.count(), cb = b.count();
        return ca != cb ? ca < cb : a.bits_ < b.bits_;
    }

    static constexpr std::uint64_t full_bits(std::size_t width) noexcept {
        return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }

private:
    void check(const SubsetMask& o) const {
        if (o.width_ != width_) throw MalformedInput("subset width mismatch");
    }

    std::uint64_t bits_ = 0;
    std::size_t width_ = 0;
};

struct SubsetMaskHash {
    std::size_t operator()(const SubsetMask& m) const noexcept {
        return std::hash<std::uint64_t>{}(m.bits() * 0x9E3779B97F4A7C15ull ^ m.width());
    }
};

}  // namespace dik
