#pragma once

#include <map>
#include <string>
#include <string_view>

namespace dik {

// Line of every value in a JSON text, keyed by JSON pointer ("" is the
// root, "/a/0" the first element of member a). Used to put line numbers on
// errors found after parsing.
class JsonLocator {
public:
    explicit JsonLocator(std::string_view text);

    // 1-based line of the value at `pointer`, or of its nearest located ancestor; 0 if unknown.
    std::size_t line(const std::string& pointer) const;

    // 1-based line containing byte offset `offset`.
    static std::size_t line_of_offset(std::string_view text, std::size_t offset);

private:
    std::map<std::string, std::size_t> lines_;
};

std::string pointer_escape(std::string_view key);

}  // namespace dik
