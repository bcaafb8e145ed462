#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace cpe {

/// Morse type; saddles carry their index separately.
enum class MorseType { minimum, saddle, maximum };

std::string_view to_string(MorseType type);
std::optional<MorseType> parse_morse_type(std::string_view text);

/// Type from Morse index: 0 is a minimum, d a maximum, anything between a saddle.
MorseType morse_type(int index, std::size_t dim);

struct CriticalPoint {
    std::vector<double> location;  // parameter space [0,1]^d
    std::vector<double> physical;
    double value = 0.0;
    double gradient_norm = 0.0;
    double hessian_det = 0.0;
    int index = 0;  // number of negative Hessian eigenvalues
    MorseType type = MorseType::minimum;
    std::size_t iterations = 0;
};

}  // namespace cpe
