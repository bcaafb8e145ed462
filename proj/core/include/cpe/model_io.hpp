#pragma once

#include "cpe/tensor_spline.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace cpe {

/// Text model format, version 1:
///
///     mfa-model 1
///     dim <d>
///     degree <p_1> ... <p_d>
///     extent <min> <max>            (one line per axis)
///     samples <m_1> ... <m_d>       (optional: source raster sample counts)
///     knots <axis> <count> <t_0> ... (one line per axis)
///     controls <count>
///     <value>                       (one per line, row-major, last axis fastest)
///
/// Reals are written with the fewest digits that round-trip exactly, so a write/read/write cycle
/// is byte-identical.
void write_model(std::ostream& os, const TensorSplineModel& model);
TensorSplineModel read_model(std::istream& is);

void save_model(const std::filesystem::path& path, const TensorSplineModel& model);
TensorSplineModel load_model(const std::filesystem::path& path);

std::string model_to_string(const TensorSplineModel& model);

/// FNV-1a 64-bit digest of the serialized model, used to tie result files to their model.
std::uint64_t model_hash(const TensorSplineModel& model);

}  // namespace cpe
