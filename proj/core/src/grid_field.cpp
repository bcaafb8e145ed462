#include "cpe/grid_field.hpp"

#include "cpe/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cpe {

GridScalarField::GridScalarField(std::vector<std::size_t> counts, std::vector<AxisExtent> extents,
                                 std::vector<double> values)
    : counts_(std::move(counts)), extents_(std::move(extents)), values_(std::move(values)) {
    if (counts_.empty()) throw std::invalid_argument("grid: dimension must be positive");
    if (extents_.size() != counts_.size()) throw std::invalid_argument("grid: one extent per axis");
    std::size_t total = 1;
    for (std::size_t l = 0; l < counts_.size(); ++l) {
        if (counts_[l] < 2) throw std::invalid_argument("grid: need at least 2 samples per axis");
        if (!(extents_[l].max > extents_[l].min)) {
            throw std::invalid_argument("grid: extent max must exceed min");
        }
        total *= counts_[l];
    }
    if (values_.size() != total) {
        throw std::invalid_argument("grid: expected " + std::to_string(total) + " values, got " +
                                    std::to_string(values_.size()));
    }
}

double GridScalarField::param(std::size_t axis, std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(counts_[axis] - 1);
}

double GridScalarField::coordinate(std::size_t axis, std::size_t i) const {
    return extents_[axis].to_physical(param(axis, i));
}

double GridScalarField::cell_size(std::size_t axis) const {
    return extents_[axis].width() / static_cast<double>(counts_[axis] - 1);
}

double GridScalarField::at(std::span<const std::size_t> index) const {
    std::size_t flat = 0;
    for (std::size_t l = 0; l < dim(); ++l) flat = flat * counts_[l] + index[l];
    return values_[flat];
}

std::vector<std::size_t> GridScalarField::unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(dim());
    for (std::size_t l = dim(); l-- > 0;) {
        idx[l] = flat % counts_[l];
        flat /= counts_[l];
    }
    return idx;
}

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xff);
        return r;
    }
    return v;
}

}  // namespace

void write_grid(std::ostream& os, const GridScalarField& field) {
    os << "MFAGRID\nversion 1\ndim " << field.dim() << "\ncounts";
    for (auto m : field.counts()) os << ' ' << m;
    os << '\n';
    for (const auto& e : field.extents()) {
        os << "range " << detail::format_real(e.min) << ' ' << detail::format_real(e.max) << '\n';
    }
    os << "encoding f64le\ndata\n";
    for (double v : field.values()) {
        const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(v));
        char buf[8];
        std::memcpy(buf, &bits, 8);
        os.write(buf, 8);
    }
}

GridScalarField read_grid_binary(std::istream& is) {
    detail::TokenReader in(is, "grid");
    in.expect("MFAGRID");
    in.expect("version");
    if (const auto v = in.size(); v != 1) {
        throw FormatError("grid: unsupported version " + std::to_string(v));
    }
    in.expect("dim");
    const std::size_t d = in.size();
    if (d == 0) throw FormatError("grid: dim must be positive");
    in.expect("counts");
    std::vector<std::size_t> counts(d);
    std::size_t total = 1;
    for (auto& m : counts) {
        m = in.size();
        total *= m;
    }
    std::vector<AxisExtent> extents(d);
    for (auto& e : extents) {
        in.expect("range");
        e.min = in.real();
        e.max = in.real();
    }
    in.expect("encoding");
    if (const auto enc = in.word(); enc != "f64le") {
        throw FormatError("grid: unsupported value encoding '" + enc + "'");
    }
    in.expect("data");
    if (is.get() != '\n') throw FormatError("grid: expected newline after 'data'");

    std::vector<double> values(total);
    for (auto& v : values) {
        char buf[8];
        if (!is.read(buf, 8)) throw FormatError("grid: truncated raster");
        std::uint64_t bits = 0;
        std::memcpy(&bits, buf, 8);
        v = std::bit_cast<double>(to_little_endian(bits));
    }
    try {
        return GridScalarField(std::move(counts), std::move(extents), std::move(values));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    return cells;
}

}  // namespace

GridScalarField read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw FormatError("csv: empty input");
    const auto header = split_csv(line);
    std::size_t d = 0;
    if (header == std::vector<std::string>{"x", "value"}) {
        d = 1;
    } else if (header == std::vector<std::string>{"x", "y", "value"}) {
        d = 2;
    } else {
        throw FormatError("csv: header must be 'x,value' or 'x,y,value'");
    }

    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv(line);
        if (cells.size() != d + 1) {
            throw FormatError("csv: line " + std::to_string(line_no) + " has " +
                              std::to_string(cells.size()) + " columns");
        }
        std::vector<double> row(d + 1);
        for (std::size_t i = 0; i <= d; ++i) row[i] = detail::parse_real(cells[i], "csv");
        rows.push_back(std::move(row));
    }

    std::vector<std::vector<double>> coords(d);
    for (std::size_t l = 0; l < d; ++l) {
        for (const auto& r : rows) coords[l].push_back(r[l]);
        std::sort(coords[l].begin(), coords[l].end());
        coords[l].erase(std::unique(coords[l].begin(), coords[l].end()), coords[l].end());
        if (coords[l].size() < 2) throw FormatError("csv: need at least 2 distinct coordinates per axis");
    }
    std::size_t total = 1;
    for (const auto& c : coords) total *= c.size();
    if (rows.size() != total) throw FormatError("csv: rows do not form a full raster");

    std::vector<AxisExtent> extents(d);
    std::vector<std::size_t> counts(d);
    for (std::size_t l = 0; l < d; ++l) {
        extents[l] = {coords[l].front(), coords[l].back()};
        counts[l] = coords[l].size();
        const double h = extents[l].width() / static_cast<double>(counts[l] - 1);
        for (std::size_t i = 0; i < counts[l]; ++i) {
            if (std::abs(coords[l][i] - (extents[l].min + h * static_cast<double>(i))) > 1e-9 * extents[l].width()) {
                throw FormatError("csv: coordinates on axis " + std::to_string(l) + " are not uniform");
            }
        }
    }

    std::vector<double> values(total);
    std::vector<char> seen(total, 0);
    for (const auto& r : rows) {
        std::size_t flat = 0;
        for (std::size_t l = 0; l < d; ++l) {
            const auto it = std::lower_bound(coords[l].begin(), coords[l].end(), r[l]);
            flat = flat * counts[l] + static_cast<std::size_t>(it - coords[l].begin());
        }
        if (seen[flat]) throw FormatError("csv: duplicate sample");
        seen[flat] = 1;
        values[flat] = r[d];
    }
    return GridScalarField(std::move(counts), std::move(extents), std::move(values));
}

void write_grid_csv(std::ostream& os, const GridScalarField& field) {
    if (field.dim() > 2) throw UnsupportedDimension("csv output supports d <= 2");
    os << (field.dim() == 1 ? "x,value\n" : "x,y,value\n");
    for (std::size_t flat = 0; flat < field.size(); ++flat) {
        const auto idx = field.unflatten(flat);
        for (std::size_t l = 0; l < field.dim(); ++l) {
            os << detail::format_real(field.coordinate(l, idx[l])) << ',';
        }
        os << detail::format_real(field.values()[flat]) << '\n';
    }
}

GridScalarField load_grid(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::ios_base::failure("cannot open " + path.string());
    std::string magic(7, '\0');
    is.read(magic.data(), 7);
    is.clear();
    is.seekg(0);
    if (magic == "MFAGRID") return read_grid_binary(is);
    return read_grid_csv(is);
}

void save_grid(const std::filesystem::path& path, const GridScalarField& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    write_grid(os, field);
    if (!os) throw std::ios_base::failure("write failed: " + path.string());
}

}  // namespace cpe
