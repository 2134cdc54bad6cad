#include "dik/json_locator.hpp"

#include <cctype>

namespace dik {

std::string pointer_escape(std::string_view key) {
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

namespace {

// Recursive scan over text already accepted by the JSON parser; on
// anything unexpected it just stops recording.
class Scanner {
public:
    Scanner(std::string_view text, std::map<std::string, std::size_t>& lines) : text_(text), lines_(lines) {}

    void run() { value(""); }

private:
    std::string_view text_;
    std::map<std::string, std::size_t>& lines_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    bool broken_ = false;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    static void append_utf8(std::string& out, unsigned cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    unsigned hex4() {
        unsigned v = 0;
        for (int i = 0; i < 4 && !at_end(); ++i) {
            char c = text_[pos_++];
            v = v * 16 + static_cast<unsigned>(std::isdigit(static_cast<unsigned char>(c)) ? c - '0'
                                                                                          : (std::tolower(c) - 'a' + 10));
        }
        return v;
    }

    std::string string() {
        std::string out;
        ++pos_;  // opening quote
        while (!at_end() && text_[pos_] != '"') {
            char c = text_[pos_++];
            if (c != '\\') {
                out += c;
                continue;
            }
            char e = text_[pos_++];
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case 'r': out += '\r'; break;
                case 'b': out += '\b'; break;
                case 'f': out += '\f'; break;
                case 'u': {
                    unsigned cp = hex4();
                    if (cp >= 0xD800 && cp < 0xDC00 && text_.substr(pos_, 2) == "\\u") {
                        pos_ += 2;
                        cp = 0x10000 + ((cp - 0xD800) << 10) + (hex4() - 0xDC00);
                    }
                    append_utf8(out, cp);
                    break;
                }
                default: out += e;
            }
        }
        ++pos_;  // closing quote
        return out;
    }

    void value(const std::string& ptr) {
        skip_ws();
        if (at_end() || broken_) return;
        lines_.emplace(ptr, line_);
        char c = peek();
        if (c == '{') {
            ++pos_;
            skip_ws();
            if (peek() == '}') {
                ++pos_;
                return;
            }
            while (!broken_) {
                skip_ws();
                if (peek() != '"') {
                    broken_ = true;
                    return;
                }
                auto key = string();
                skip_ws();
                if (peek() != ':') {
                    broken_ = true;
                    return;
                }
                ++pos_;
                value(ptr + "/" + pointer_escape(key));
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                } else {
                    ++pos_;  // '}'
                    return;
                }
            }
        } else if (c == '[') {
            ++pos_;
            skip_ws();
            if (peek() == ']') {
                ++pos_;
                return;
            }
            for (std::size_t i = 0; !broken_; ++i) {
                value(ptr + "/" + std::to_string(i));
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                } else {
                    ++pos_;  // ']'
                    return;
                }
            }
        } else if (c == '"') {
            string();
        } else {
            while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' && peek() != ']' &&
                   peek() != '}')
                ++pos_;
        }
    }
};

}  // namespace

JsonLocator::JsonLocator(std::string_view text) { Scanner(text, lines_).run(); }

std::size_t JsonLocator::line(const std::string& pointer) const {
    std::string p = pointer;
    while (true) {
        if (auto it = lines_.find(p); it != lines_.end()) return it->second;
        if (p.empty()) return 0;
        p.erase(p.rfind('/'));
    }
}

std::size_t JsonLocator::line_of_offset(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

}  // namespace dik
