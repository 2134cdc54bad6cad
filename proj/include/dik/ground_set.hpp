#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dik/subset_mask.hpp"

namespace dik {

// Ordered, duplicate-free list of opaque element identifiers.
class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(std::vector<std::string> elements);

    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<std::string>& elements() const noexcept { return elements_; }
    const std::string& element(std::size_t i) const { return elements_.at(i); }

    std::optional<std::size_t> find(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;  // throws MalformedInput

    SubsetMask empty_set() const { return SubsetMask::empty(size()); }
    SubsetMask full_set() const { return SubsetMask::full(size()); }
    SubsetMask singleton(std::size_t i) const { return SubsetMask::singleton(size(), i); }
    SubsetMask mask_of(std::span<const std::string> ids) const;
    std::vector<std::string> names_of(const SubsetMask& mask) const;

    friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.elements_ == b.elements_; }

private:
    std::vector<std::string> elements_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Renders a subset as "{a,b,c}" in ground order.
std::string format_subset(const GroundSet& ground, const SubsetMask& mask);

}  // namespace dik
