#include "cpe/critical_point.hpp"

namespace cpe {

std::string_view to_string(MorseType type) {
    switch (type) {
        case MorseType::minimum: return "minimum";
        case MorseType::saddle: return "saddle";
        case MorseType::maximum: return "maximum";
    }
    return "unknown";
}

std::optional<MorseType> parse_morse_type(std::string_view text) {
    if (text == "minimum") return MorseType::minimum;
    if (text == "saddle") return MorseType::saddle;
    if (text == "maximum") return MorseType::maximum;
    return std::nullopt;
}

MorseType morse_type(int index, std::size_t dim) {
    if (index == 0) return MorseType::minimum;
    if (index == static_cast<int>(dim)) return MorseType::maximum;
    return MorseType::saddle;
}

}  // namespace cpe
