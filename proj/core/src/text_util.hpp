#pragma once

#include "cpe/error.hpp"

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <string>
#include <string_view>

namespace cpe::detail {

/// Shortest %g rendering that parses back to exactly v.
inline std::string format_real(double v) {
    char buf[32];
    for (int precision = 1; precision < 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline double parse_real(const std::string& token, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
        throw FormatError(std::string(what) + ": expected a number, got '" + token + "'");
    }
    return v;
}

/// Whitespace-separated token stream with format-error reporting.
class TokenReader {
public:
    TokenReader(std::istream& is, const char* what) : is_(is), what_(what) {}

    std::string word() {
        std::string tok;
        if (!(is_ >> tok)) throw FormatError(std::string(what_) + ": unexpected end of input");
        return tok;
    }

    void expect(std::string_view keyword) {
        const std::string tok = word();
        if (tok != keyword) {
            throw FormatError(std::string(what_) + ": expected '" + std::string(keyword) +
                              "', got '" + tok + "'");
        }
    }

    double real() { return parse_real(word(), what_); }

    std::size_t size() {
        const std::string tok = word();
        char* end = nullptr;
        const unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
        if (tok.empty() || tok[0] == '-' || end != tok.c_str() + tok.size()) {
            throw FormatError(std::string(what_) + ": expected a count, got '" + tok + "'");
        }
        return static_cast<std::size_t>(v);
    }

private:
    std::istream& is_;
    const char* what_;
};

}  // namespace cpe::detail
