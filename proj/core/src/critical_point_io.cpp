#include "cpe/critical_point_io.hpp"

#include "cpe/error.hpp"
#include "text_util.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cpe {

std::vector<AlignablePoint> CriticalPointFile::alignable() const {
    std::vector<AlignablePoint> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back({r.physical, r.index, r.type});
    return out;
}

CriticalPointRecord to_record(const CriticalPoint& cp) {
    return {cp.physical, cp.location, cp.value, cp.gradient_norm, cp.hessian_det, cp.index, cp.type};
}

CriticalPointRecord to_record(const PLCriticalPoint& cp) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return {cp.physical, cp.location, cp.value, nan, nan, cp.index, cp.type};
}

void write_critical_points(std::ostream& os, const CriticalPointFile& file) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(file.model_hash));
    os << "# mfa-critical-points 1\n";
    os << "# method=" << file.method << '\n';
    os << "# model_hash=" << hash << '\n';
    os << "# dim=" << file.dim << '\n';
    if (!file.cell.empty()) {
        os << "# cell=";
        for (std::size_t l = 0; l < file.cell.size(); ++l) {
            os << (l ? " " : "") << detail::format_real(file.cell[l]);
        }
        os << '\n';
    }
    os << "# config";
    for (const auto& [k, v] : file.config) os << ' ' << k << '=' << v;
    os << '\n';
    os << "# count=" << file.records.size() << '\n';
    os << "# columns";
    for (std::size_t l = 0; l < file.dim; ++l) os << " x" << l;
    for (std::size_t l = 0; l < file.dim; ++l) os << " u" << l;
    os << " value grad_norm det_hessian index type\n";
    for (const auto& r : file.records) {
        for (double x : r.physical) os << detail::format_real(x) << ' ';
        for (double u : r.param) os << detail::format_real(u) << ' ';
        os << detail::format_real(r.value) << ' ' << detail::format_real(r.gradient_norm) << ' '
           << detail::format_real(r.hessian_det) << ' ' << r.index << ' ' << to_string(r.type) << '\n';
    }
}

namespace {

std::string header_value(const std::string& line, const std::string& key) {
    const std::string prefix = "# " + key + "=";
    if (line.rfind(prefix, 0) != 0) throw FormatError("critical points: expected '" + prefix + "'");
    return line.substr(prefix.size());
}

CriticalPointFile read_impl(std::istream& is) {
    CriticalPointFile file;
    std::string line;
    const auto next_line = [&]() -> std::string& {
        if (!std::getline(is, line)) throw FormatError("critical points: truncated header");
        return line;
    };
    if (next_line() != "# mfa-critical-points 1") throw FormatError("critical points: bad magic line");
    file.method = header_value(next_line(), "method");
    file.model_hash = std::stoull(header_value(next_line(), "model_hash"), nullptr, 16);
    file.dim = std::stoul(header_value(next_line(), "dim"));

    next_line();
    if (line.rfind("# cell=", 0) == 0) {
        std::istringstream ss(header_value(line, "cell"));
        std::string tok;
        while (ss >> tok) file.cell.push_back(detail::parse_real(tok, "critical points"));
        next_line();
    }
    if (line.rfind("# config", 0) != 0) throw FormatError("critical points: expected '# config'");
    {
        std::istringstream ss(line.substr(8));
        std::string kv;
        while (ss >> kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw FormatError("critical points: bad config entry '" + kv + "'");
            file.config.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
    }
    const std::size_t count = std::stoul(header_value(next_line(), "count"));
    if (next_line().rfind("# columns", 0) != 0) throw FormatError("critical points: expected '# columns'");

    file.records.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream ss(next_line());
        detail::TokenReader in(ss, "critical points");
        CriticalPointRecord r;
        r.physical.resize(file.dim);
        r.param.resize(file.dim);
        for (auto& x : r.physical) x = in.real();
        for (auto& u : r.param) u = in.real();
        r.value = in.real();
        r.gradient_norm = in.real();
        r.hessian_det = in.real();
        r.index = std::stoi(in.word());
        const auto type = parse_morse_type(in.word());
        if (!type) throw FormatError("critical points: unknown type");
        r.type = *type;
        file.records.push_back(std::move(r));
    }
    return file;
}

}  // namespace

CriticalPointFile read_critical_points(std::istream& is) {
    try {
        return read_impl(is);
    } catch (const std::logic_error& e) {  // stoul/stoi failures
        throw FormatError(std::string("critical points: ") + e.what());
    }
}

void save_critical_points(const std::filesystem::path& path, const CriticalPointFile& file) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    write_critical_points(os, file);
    if (!os) throw std::ios_base::failure("write failed: " + path.string());
}

CriticalPointFile load_critical_points(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::ios_base::failure("cannot open " + path.string());
    return read_critical_points(is);
}

}  // namespace cpe
