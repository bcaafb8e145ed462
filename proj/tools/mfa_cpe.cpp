// mfa-cpe: fit tensor-product B-spline models to rasters and extract their critical points.

#include "cpe/critical_point_io.hpp"
#include "cpe/error.hpp"
#include "cpe/fit.hpp"
#include "cpe/grid_field.hpp"
#include "cpe/model_io.hpp"
#include "cpe/newton_extract.hpp"
#include "cpe/parallel.hpp"
#include "cpe/pl_critical.hpp"
#include "cpe/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kNumerical = 3 };

std::string real(double v) {
    char buf[32];
    for (int precision = 1; precision < 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Effective configuration of a run, echoed before any work is done.
struct ConfigEcho {
    std::vector<std::pair<std::string, std::string>> entries;

    template <class T>
    void add(const std::string& key, const T& value) {
        std::ostringstream os;
        if constexpr (std::is_floating_point_v<T>) {
            os << real(value);
        } else {
            os << value;
        }
        entries.emplace_back(key, os.str());
    }

    void add_list(const std::string& key, const std::vector<std::size_t>& values) {
        std::string s;
        for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
        entries.emplace_back(key, s);
    }

    json to_json() const {
        json j = json::object();
        for (const auto& [k, v] : entries) j[k] = v;
        return j;
    }

    void print(std::ostream& os) const {
        os << "config";
        for (const auto& [k, v] : entries) os << ' ' << k << '=' << v;
        os << '\n';
    }
};

std::vector<double> source_cells(const cpe::TensorSplineModel& model) {
    std::vector<double> cells;
    const auto& samples = model.source_samples();
    for (std::size_t l = 0; l < samples.size(); ++l) {
        cells.push_back(model.extents()[l].width() / static_cast<double>(samples[l] - 1));
    }
    return cells;
}

// ---------------------------------------------------------------------------------------------

struct GenSchwefelArgs {
    int k = 15;
    std::vector<double> domain;
    std::size_t samples = 200;
    std::size_t dim = 2;
    std::string output;
};

int run_gen_schwefel(const GenSchwefelArgs& args) {
    cpe::SchwefelSpec spec;
    spec.dim = args.dim;
    spec.k = args.k;
    spec.samples = args.samples;
    if (!args.domain.empty()) spec.domain = std::pair{args.domain[0], args.domain[1]};
    const auto [lo, hi] = spec.bounds();

    ConfigEcho echo;
    echo.add("subcommand", "gen-schwefel");
    echo.add("dim", spec.dim);
    echo.add("k", spec.k);
    echo.add("domain_min", lo);
    echo.add("domain_max", hi);
    echo.add("samples", spec.samples);
    echo.add("output", args.output);
    echo.print(std::cout);

    cpe::save_grid(args.output, cpe::generate_field(spec));
    return kOk;
}

struct GenArgs {
    std::string kind;
    std::size_t dim = 2;
    std::size_t samples = 64;
    std::vector<double> domain{-1.0, 1.0};
    std::string output;
};

int run_gen(const GenArgs& args) {
    const auto kind = cpe::parse_field_kind(args.kind);
    if (!kind) throw CLI::ValidationError("--kind", "unknown field kind '" + args.kind + "'");
    ConfigEcho echo;
    echo.add("subcommand", "gen");
    echo.add("kind", args.kind);
    echo.add("dim", args.dim);
    echo.add("samples", args.samples);
    echo.add("domain_min", args.domain[0]);
    echo.add("domain_max", args.domain[1]);
    echo.add("output", args.output);
    echo.print(std::cout);
    cpe::save_grid(args.output, cpe::generate_field(*kind, args.dim, args.samples, args.domain[0], args.domain[1]));
    return kOk;
}

// ---------------------------------------------------------------------------------------------

struct FitArgs {
    std::string field;
    int degree = 3;
    std::vector<std::size_t> controls;
    bool adaptive = false;
    double tol = 1e-3;
    std::size_t max_rounds = 10;
    std::string output = "model.mfa";
    bool json = false;
};

int run_fit(const FitArgs& args) {
    const auto field = cpe::load_grid(args.field);
    std::vector<std::size_t> controls = args.controls;
    if (controls.size() == 1 && field.dim() > 1) controls.assign(field.dim(), controls.front());
    if (!controls.empty() && controls.size() != field.dim()) {
        throw CLI::ValidationError("--controls", "expected " + std::to_string(field.dim()) + " counts");
    }
    if (!args.adaptive && controls.empty()) {
        throw CLI::ValidationError("--controls", "required unless --adaptive is given");
    }

    ConfigEcho echo;
    echo.add("subcommand", "fit");
    echo.add("field", args.field);
    echo.add("degree", args.degree);
    echo.add_list("samples", {field.counts().begin(), field.counts().end()});
    echo.add("mode", args.adaptive ? "adaptive" : "fixed");
    if (!controls.empty()) echo.add_list("controls", controls);
    if (args.adaptive) {
        echo.add("tol", args.tol);
        echo.add("max_rounds", args.max_rounds);
    }
    echo.add("output", args.output);
    if (!args.json) echo.print(std::cout);

    cpe::FitResult fit;
    if (args.adaptive) {
        cpe::AdaptiveOptions opts;
        opts.tolerance = args.tol;
        opts.max_rounds = args.max_rounds;
        opts.initial_controls = controls;
        fit = cpe::fit_adaptive(field, args.degree, opts);
    } else {
        fit = cpe::fit_fixed(field, args.degree, controls);
    }
    cpe::save_model(args.output, fit.model);

    const auto& r = fit.report;
    if (args.json) {
        json j;
        j["config"] = echo.to_json();
        j["rms"] = r.rms;
        j["max_error"] = r.max_error;
        j["rounds"] = r.rounds;
        j["control_counts"] = r.control_counts;
        j["rms_history"] = r.rms_history;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "rms=" << real(r.rms) << "\nmax_error=" << real(r.max_error) << "\nrounds=" << r.rounds
                  << "\ncontrol_counts=";
        for (std::size_t l = 0; l < r.control_counts.size(); ++l) std::cout << (l ? "," : "") << r.control_counts[l];
        std::cout << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------------------------------------

struct ExtractArgs {
    std::string model;
    std::string output = "critical_points.cpts";
    cpe::NewtonConfig cfg;
    bool stats = false;
    bool report_filtration = false;
    bool json = false;
};

std::string filtration_line(const cpe::FiltrationResult& f) {
    char buf[256];
    const double total = static_cast<double>(f.total);
    std::snprintf(buf, sizeof buf, "filtration total=%zu evaluated=%zu (%.2f%%) skipped=%zu (%.2f%%)", f.total,
                  f.retained.size(), f.total ? 100.0 * static_cast<double>(f.retained.size()) / total : 0.0,
                  f.skipped, f.total ? 100.0 * static_cast<double>(f.skipped) / total : 0.0);
    return buf;
}

json stats_json(const cpe::ExtractionStats& s) {
    json j;
    j["spans_total"] = s.spans_total;
    j["spans_processed"] = s.spans_processed;
    j["starts"] = s.starts;
    j["total_iterations"] = s.total_iterations;
    j["exhausted_starts"] = s.exhausted_starts;
    j["candidates"] = s.candidates;
    j["accepted"] = s.accepted;
    j["average_iterations"] = s.average_iterations;
    j["average_gradient"] = s.average_gradient;
    j["tau"] = s.tau;
    j["seconds_derivatives"] = s.seconds.derivatives;
    j["seconds_filtration"] = s.seconds.filtration;
    j["seconds_newton"] = s.seconds.newton;
    j["seconds_dedup"] = s.seconds.dedup;
    j["seconds_total"] = s.seconds.total;
    j["newton_fraction"] = s.newton_fraction();
    return j;
}

int run_extract(ExtractArgs args) {
    const auto model = cpe::load_model(args.model);
    if (args.cfg.threads == 0) args.cfg.threads = cpe::default_thread_count();
    const double tau = args.cfg.tau > 0.0 ? args.cfg.tau : cpe::default_tau(model);
    const std::size_t init = args.cfg.init_per_axis;

    ConfigEcho file_config;
    file_config.add("eps", args.cfg.eps);
    file_config.add("max_iter", args.cfg.max_iter);
    file_config.add("delta", args.cfg.delta);
    file_config.add("xi_factor", args.cfg.xi_factor);
    file_config.add("tau", tau);
    file_config.add("init_per_axis", init == 0 ? std::string("degree+1") : std::to_string(init));

    ConfigEcho echo;
    echo.add("subcommand", "extract");
    echo.add("model", args.model);
    echo.add("output", args.output);
    for (const auto& e : file_config.entries) echo.entries.push_back(e);
    echo.add("threads", args.cfg.threads);
    if (!args.json) echo.print(std::cout);

    args.cfg.tau = tau;
    const auto result = cpe::extract_all(model, args.cfg);

    cpe::CriticalPointFile file;
    file.method = "cpe";
    file.model_hash = cpe::model_hash(model);
    file.dim = model.dim();
    file.cell = source_cells(model);
    file.config = file_config.entries;
    for (const auto& p : result.points) file.records.push_back(cpe::to_record(p));
    cpe::save_critical_points(args.output, file);

    std::size_t counts[3] = {0, 0, 0};
    for (const auto& p : result.points) ++counts[static_cast<int>(p.type)];

    if (args.json) {
        json j;
        j["config"] = echo.to_json();
        j["critical_points"] = result.points.size();
        j["minima"] = counts[0];
        j["saddles"] = counts[1];
        j["maxima"] = counts[2];
        if (args.report_filtration) {
            j["filtration"] = {{"total", result.filtration.total},
                               {"evaluated", result.filtration.retained.size()},
                               {"skipped", result.filtration.skipped},
                               {"eliminated_by_axis", result.filtration.eliminated_by_axis}};
        }
        if (args.stats) j["stats"] = stats_json(result.stats);
        std::cout << j.dump(2) << '\n';
        return kOk;
    }

    std::cout << "critical_points=" << result.points.size() << " minima=" << counts[0] << " saddles=" << counts[1]
              << " maxima=" << counts[2] << '\n';
    if (args.report_filtration) std::cout << filtration_line(result.filtration) << '\n';
    if (args.stats) {
        const json stats = stats_json(result.stats);
        for (auto it = stats.begin(); it != stats.end(); ++it) std::cout << it.key() << '=' << it.value().dump() << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------------------------------------

struct PlExtractArgs {
    std::string model;
    std::size_t ratio = 1;
    std::vector<std::size_t> resolution;
    bool include_boundary = false;
    std::size_t threads = 0;
    std::string output = "pl_critical_points.cpts";
    bool json = false;
};

int run_pl_extract(const PlExtractArgs& args) {
    const auto model = cpe::load_model(args.model);
    std::vector<std::size_t> base = args.resolution;
    if (base.empty()) base = model.source_samples();
    if (base.empty()) {
        throw CLI::ValidationError("--resolution", "model records no source raster; pass --resolution");
    }
    if (base.size() == 1 && model.dim() > 1) base.assign(model.dim(), base.front());
    const auto resolution = cpe::upsampled_resolution(base, args.ratio);
    const std::size_t threads = args.threads == 0 ? cpe::default_thread_count() : args.threads;

    ConfigEcho file_config;
    file_config.add("ratio", args.ratio);
    file_config.add_list("resolution", resolution);
    file_config.add("include_boundary", args.include_boundary ? "true" : "false");
    file_config.add("triangulation", "freudenthal");

    ConfigEcho echo;
    echo.add("subcommand", "pl-extract");
    echo.add("model", args.model);
    echo.add("output", args.output);
    for (const auto& e : file_config.entries) echo.entries.push_back(e);
    echo.add("threads", threads);
    if (!args.json) echo.print(std::cout);

    const auto grid = cpe::sample_grid(model, resolution, threads);
    const auto points = cpe::pl_critical_points(grid, {args.include_boundary, threads});

    cpe::CriticalPointFile file;
    file.method = "pl";
    file.model_hash = cpe::model_hash(model);
    file.dim = model.dim();
    file.cell = source_cells(model);
    file.config = file_config.entries;
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& p : points) {
        file.records.push_back(cpe::to_record(p));
        ++counts[static_cast<int>(p.type)];
    }
    cpe::save_critical_points(args.output, file);

    if (args.json) {
        json j;
        j["config"] = echo.to_json();
        j["critical_points"] = points.size();
        j["minima"] = counts[0];
        j["saddles"] = counts[1];
        j["maxima"] = counts[2];
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "critical_points=" << points.size() << " minima=" << counts[0] << " saddles=" << counts[1]
                  << " maxima=" << counts[2] << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------------------------------------

struct CompareArgs {
    std::string a;
    std::string b;
    double threshold_cells = 1.0;
    double threshold = 0.0;
    bool json = false;
};

int run_compare(const CompareArgs& args) {
    const auto a = cpe::load_critical_points(args.a);
    const auto b = cpe::load_critical_points(args.b);
    if (a.dim != b.dim) throw CLI::ValidationError("compare", "files have different dimensions");

    std::vector<double> scale;
    double threshold = args.threshold;
    if (threshold <= 0.0) {
        scale = !a.cell.empty() ? a.cell : b.cell;
        if (scale.empty()) {
            throw CLI::ValidationError("--threshold-cells", "neither file records a cell size; pass --threshold");
        }
        threshold = args.threshold_cells;
    }

    ConfigEcho echo;
    echo.add("subcommand", "compare");
    echo.add("a", args.a);
    echo.add("b", args.b);
    echo.add("threshold", threshold);
    echo.add("units", scale.empty() ? "physical" : "cells");
    if (a.model_hash != b.model_hash) echo.add("warning", "model_hash_mismatch");
    if (!args.json) echo.print(std::cout);

    const auto pa = a.alignable();
    const auto pb = b.alignable();
    const auto report = cpe::align(pa, pb, threshold, scale);

    if (args.json) {
        json j;
        j["config"] = echo.to_json();
        j["size_a"] = report.size_a;
        j["size_b"] = report.size_b;
        j["aligned"] = report.aligned;
        j["aligned_same_type"] = report.aligned_same_type;
        j["jaccard"] = report.jaccard;
        std::cout << j.dump(2) << '\n';
    } else {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.4f", report.jaccard);
        std::cout << "|A|=" << report.size_a << " |B|=" << report.size_b << " aligned=" << report.aligned
                  << " aligned_same_type=" << report.aligned_same_type << " jaccard=" << buf << '\n';
    }
    return kOk;
}

// ---------------------------------------------------------------------------------------------

struct DumpGridArgs {
    std::string input;
    std::vector<std::size_t> resolution;
    std::string output = "grid.csv";
};

int run_dump_grid(const DumpGridArgs& args) {
    std::ifstream probe(args.input, std::ios::binary);
    if (!probe) throw std::ios_base::failure("cannot open " + args.input);
    std::string head(9, '\0');
    probe.read(head.data(), 9);
    probe.close();

    cpe::GridScalarField field;
    if (head.rfind("mfa-model", 0) == 0) {
        const auto model = cpe::load_model(args.input);
        std::vector<std::size_t> res = args.resolution;
        if (res.empty()) res = model.source_samples();
        if (res.empty()) throw CLI::ValidationError("--resolution", "required for models without a source raster");
        if (res.size() == 1 && model.dim() > 1) res.assign(model.dim(), res.front());
        auto grid = cpe::sample_grid(model, res);
        field = cpe::GridScalarField(grid.counts, grid.extents, std::move(grid.values));
    } else {
        field = cpe::load_grid(args.input);
    }

    ConfigEcho echo;
    echo.add("subcommand", "dump-grid");
    echo.add("input", args.input);
    echo.add_list("resolution", {field.counts().begin(), field.counts().end()});
    echo.add("output", args.output);
    echo.print(std::cout);

    std::ofstream os(args.output);
    if (!os) throw std::ios_base::failure("cannot open " + args.output + " for writing");
    cpe::write_grid_csv(os, field);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical point extraction from tensor-product B-spline (MFA) models"};
    app.require_subcommand(1);

    GenSchwefelArgs schwefel_args;
    auto* gen_schwefel = app.add_subcommand("gen-schwefel", "Sample the scaled Schwefel function on a raster");
    gen_schwefel->add_option("--k", schwefel_args.k, "Domain parameter: +-((k+1/2) pi)^2")->capture_default_str();
    gen_schwefel->add_option("--domain", schwefel_args.domain, "Explicit domain MIN MAX")->expected(2);
    gen_schwefel->add_option("--samples", schwefel_args.samples, "Samples per axis")->capture_default_str();
    gen_schwefel->add_option("--dim", schwefel_args.dim, "Dimension")->capture_default_str();
    gen_schwefel->add_option("-o,--output", schwefel_args.output, "Output grid file")->required();

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Sample a closed-form test field on a raster");
    gen->add_option("--kind", gen_args.kind, "bump | bowl | saddle | ramp | const")->required();
    gen->add_option("--dim", gen_args.dim, "Dimension")->capture_default_str();
    gen->add_option("--samples", gen_args.samples, "Samples per axis")->capture_default_str();
    gen->add_option("--domain", gen_args.domain, "Domain MIN MAX")->expected(2);
    gen->add_option("-o,--output", gen_args.output, "Output grid file")->required();

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "Least-squares B-spline fit of a raster");
    fit->add_option("field", fit_args.field, "Input grid (.grid binary or CSV)")->required();
    fit->add_option("--degree", fit_args.degree, "Polynomial degree")->capture_default_str();
    fit->add_option("--controls", fit_args.controls, "Control points per axis (one value applies to all)");
    fit->add_flag("--adaptive", fit_args.adaptive, "Refine knots until --tol is met");
    fit->add_option("--tol", fit_args.tol, "Adaptive max pointwise error target")->capture_default_str();
    fit->add_option("--max-rounds", fit_args.max_rounds, "Adaptive knot-insertion rounds")->capture_default_str();
    fit->add_option("-o,--output", fit_args.output, "Output model file")->capture_default_str();
    fit->add_flag("--json", fit_args.json, "Print the fit report as JSON");

    ExtractArgs extract_args;
    auto* extract = app.add_subcommand("extract", "Extract critical points from a model");
    extract->add_option("model", extract_args.model, "Model file")->required();
    extract->add_option("-o,--output", extract_args.output, "Output critical-point file")->capture_default_str();
    extract->add_option("--eps", extract_args.cfg.eps, "Gradient-norm threshold")->capture_default_str();
    extract->add_option("--max-iter", extract_args.cfg.max_iter, "Newton iteration cap")->capture_default_str();
    extract->add_option("--delta", extract_args.cfg.delta, "Hessian determinant floor")->capture_default_str();
    extract->add_option("--xi-factor", extract_args.cfg.xi_factor, "Escape radius in span diagonals")
        ->capture_default_str();
    extract->add_option("--tau", extract_args.cfg.tau, "Duplicate radius (parameter space; default from raster)");
    extract->add_option("--init-per-axis", extract_args.cfg.init_per_axis, "Newton starts per axis (default p+1)");
    extract->add_option("--threads", extract_args.cfg.threads, "Worker threads (default: cores or CPE_NUM_THREADS)");
    extract->add_flag("--stats", extract_args.stats, "Print extraction statistics");
    extract->add_flag("--report-filtration", extract_args.report_filtration, "Print span filtration summary");
    extract->add_flag("--json", extract_args.json, "Print reports as JSON");

    PlExtractArgs pl_args;
    auto* pl = app.add_subcommand("pl-extract", "Piecewise-linear critical points of a sampled model");
    pl->add_option("model", pl_args.model, "Model file")->required();
    pl->add_option("--ratio", pl_args.ratio, "Volume upsampling ratio (e.g. 100 = 10x per axis in 2-D)")
        ->capture_default_str();
    pl->add_option("--resolution", pl_args.resolution, "Base vertices per axis (default: source raster)");
    pl->add_flag("--include-boundary", pl_args.include_boundary, "Classify boundary vertices on partial links");
    pl->add_option("--threads", pl_args.threads, "Worker threads");
    pl->add_option("-o,--output", pl_args.output, "Output critical-point file")->capture_default_str();
    pl->add_flag("--json", pl_args.json, "Print the summary as JSON");

    CompareArgs compare_args;
    auto* compare = app.add_subcommand("compare", "Align two critical-point files");
    compare->add_option("a", compare_args.a, "First critical-point file")->required();
    compare->add_option("b", compare_args.b, "Second critical-point file")->required();
    compare->add_option("--threshold-cells", compare_args.threshold_cells, "Match radius in source grid cells")
        ->capture_default_str();
    compare->add_option("--threshold", compare_args.threshold, "Match radius in physical units (overrides cells)");
    compare->add_flag("--json", compare_args.json, "Print the report as JSON");

    DumpGridArgs dump_args;
    auto* dump = app.add_subcommand("dump-grid", "Write raster or sampled-model values as CSV for plotting");
    dump->add_option("input", dump_args.input, "Grid or model file")->required();
    dump->add_option("--resolution", dump_args.resolution, "Vertices per axis when sampling a model");
    dump->add_option("-o,--output", dump_args.output, "Output CSV")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*gen_schwefel) return run_gen_schwefel(schwefel_args);
        if (*gen) return run_gen(gen_args);
        if (*fit) return run_fit(fit_args);
        if (*extract) return run_extract(extract_args);
        if (*pl) return run_pl_extract(pl_args);
        if (*compare) return run_compare(compare_args);
        if (*dump) return run_dump_grid(dump_args);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const cpe::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const cpe::FitError& e) {
        std::cerr << "fit error: " << e.what() << '\n';
        return kNumerical;
    } catch (const cpe::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const cpe::ClassificationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kUsage;
}
