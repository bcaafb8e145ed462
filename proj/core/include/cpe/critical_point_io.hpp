#pragma once

#include "cpe/alignment.hpp"
#include "cpe/critical_point.hpp"
#include "cpe/pl_critical.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace cpe {

struct CriticalPointRecord {
    std::vector<double> physical;
    std::vector<double> param;
    double value = 0.0;
    double gradient_norm = 0.0;  // NaN for PL points
    double hessian_det = 0.0;    // NaN for PL points
    int index = 0;
    MorseType type = MorseType::minimum;
};

/// Critical-point file, version 1:
///
///     # mfa-critical-points 1
///     # method=<cpe|pl>
///     # model_hash=<16 hex digits>
///     # dim=<d>
///     # cell=<c_1> ... <c_d>            (optional: physical source-raster cell sizes)
///     # config <key>=<value> ...
///     # count=<n>
///     # columns x0 .. x{d-1} u0 .. u{d-1} value grad_norm det_hessian index type
///     <one record per line, reals in shortest round-trip form>
struct CriticalPointFile {
    std::string method;
    std::uint64_t model_hash = 0;
    std::size_t dim = 0;
    std::vector<double> cell;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<CriticalPointRecord> records;

    std::vector<AlignablePoint> alignable() const;
};

CriticalPointRecord to_record(const CriticalPoint& cp);
CriticalPointRecord to_record(const PLCriticalPoint& cp);

void write_critical_points(std::ostream& os, const CriticalPointFile& file);
CriticalPointFile read_critical_points(std::istream& is);

void save_critical_points(const std::filesystem::path& path, const CriticalPointFile& file);
CriticalPointFile load_critical_points(const std::filesystem::path& path);

}  // namespace cpe
