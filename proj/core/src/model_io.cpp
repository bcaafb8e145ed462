#include "cpe/model_io.hpp"

#include "cpe/error.hpp"
#include "text_util.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace cpe {

void write_model(std::ostream& os, const TensorSplineModel& model) {
    const std::size_t d = model.dim();
    os << "mfa-model 1\n";
    os << "dim " << d << '\n';
    os << "degree";
    for (const auto& kv : model.axes()) os << ' ' << kv.degree();
    os << '\n';
    for (const auto& e : model.extents()) {
        os << "extent " << detail::format_real(e.min) << ' ' << detail::format_real(e.max) << '\n';
    }
    if (!model.source_samples().empty()) {
        os << "samples";
        for (auto m : model.source_samples()) os << ' ' << m;
        os << '\n';
    }
    for (std::size_t l = 0; l < d; ++l) {
        const auto t = model.axis(l).knots();
        os << "knots " << l << ' ' << t.size();
        for (double v : t) os << ' ' << detail::format_real(v);
        os << '\n';
    }
    os << "controls " << model.controls().size() << '\n';
    for (double c : model.controls()) os << detail::format_real(c) << '\n';
}

TensorSplineModel read_model(std::istream& is) {
    detail::TokenReader in(is, "model");
    in.expect("mfa-model");
    if (const auto version = in.size(); version != 1) {
        throw FormatError("model: unsupported version " + std::to_string(version));
    }
    in.expect("dim");
    const std::size_t d = in.size();
    if (d == 0) throw FormatError("model: dim must be positive");

    in.expect("degree");
    std::vector<int> degrees(d);
    for (auto& p : degrees) p = static_cast<int>(in.size());

    std::vector<AxisExtent> extents(d);
    for (auto& e : extents) {
        in.expect("extent");
        e.min = in.real();
        e.max = in.real();
        if (!(e.max > e.min)) throw FormatError("model: extent max must exceed min");
    }

    std::vector<std::size_t> samples;
    std::string tag = in.word();
    if (tag == "samples") {
        samples.resize(d);
        for (auto& m : samples) m = in.size();
        tag = in.word();
    }

    std::vector<KnotVector> axes;
    for (std::size_t l = 0; l < d; ++l) {
        if (l > 0) tag = in.word();
        if (tag != "knots") throw FormatError("model: expected 'knots', got '" + tag + "'");
        if (in.size() != l) throw FormatError("model: knot axes out of order");
        std::vector<double> knots(in.size());
        for (auto& t : knots) t = in.real();
        try {
            axes.emplace_back(degrees[l], std::move(knots));
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("model: ") + e.what());
        }
    }

    in.expect("controls");
    std::vector<double> controls(in.size());
    for (auto& c : controls) c = in.real();

    try {
        TensorSplineModel model(std::move(axes), std::move(controls), std::move(extents));
        model.set_source_samples(std::move(samples));
        return model;
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("model: ") + e.what());
    }
}

void save_model(const std::filesystem::path& path, const TensorSplineModel& model) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    write_model(os, model);
    if (!os) throw std::ios_base::failure("write failed: " + path.string());
}

TensorSplineModel load_model(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::ios_base::failure("cannot open " + path.string());
    return read_model(is);
}

std::string model_to_string(const TensorSplineModel& model) {
    std::ostringstream os;
    write_model(os, model);
    return os.str();
}

std::uint64_t model_hash(const TensorSplineModel& model) {
    return detail::fnv1a(model_to_string(model));
}

}  // namespace cpe
