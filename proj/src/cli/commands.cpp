#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fracfuse/cli.hpp"
#include "fracfuse/codec.hpp"

namespace fracfuse::cli {

namespace fs = std::filesystem;

namespace {

// Pipeline flags shared by enhance and bench; values are kept raw and run
// through apply_setting so flags and config keys parse identically.
struct PipelineFlags {
    std::string config_path;
    std::map<std::string, std::string> raw;
    std::vector<std::pair<std::string, CLI::Option*>> options;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "flat key=value config file");
        add(app, "--mode", "mode", "hpfc or hbfc");
        add(app, "--orders", "orders", "comma-separated fractional orders in [0,2]");
        add(app, "--k", "k", "Grünwald–Letnikov truncation K");
        add(app, "--boost", "boost", "high-boost factor A >= 1");
        add(app, "--levels", "levels", "decomposition levels");
        add(app, "--sigma0", "sigma0", "finest blur scale in pixels");
        add(app, "--lambda", "lambda", "detail enhancement gain");
        add(app, "--approx-gain", "approx_gain", "approximation gain (default 0.85 hpfc, 1.0 hbfc)");
        add(app, "--strategy", "strategy", "weighted or argmax");
        add(app, "--stretch", "stretch", "on or off");
        add(app, "--threads", "threads", "worker threads");
    }

    void add(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help) {
        options.emplace_back(key, app.add_option(flag, raw[key], help));
    }

    Settings flag_settings() const {
        Settings s;
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) s[key] = raw.at(key);
        }
        return s;
    }

    PipelineConfig resolve() const {
        Settings file;
        if (!config_path.empty()) {
            const auto bytes = read_file(config_path);
            file = parse_config_text(std::string(bytes.begin(), bytes.end()));
        }
        return resolve_config(file, flag_settings());
    }
};

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw UsageError("report must be csv or json, got '" + s + "'");
}

bool parse_on_off(const std::string& flag, const std::string& s) {
    if (s == "on") return true;
    if (s == "off") return false;
    throw UsageError(flag + " must be on or off, got '" + s + "'");
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
    } else {
        write_file(out_path, std::vector<std::uint8_t>(text.begin(), text.end()));
    }
}

bool is_image_path(const fs::path& p) {
    return format_from_extension(p) != ImageFormat::Unknown;
}

// Maps the library's exception families onto the exit-code contract.
template <typename Body>
int guarded(std::ostream& err, Body body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

struct EnhanceArgs {
    std::string in;
    std::string out;
    PipelineFlags flags;
};

int cmd_enhance(const EnhanceArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PipelineConfig cfg = a.flags.resolve();
        if (format_from_extension(a.out) != ImageFormat::Ppm && format_from_extension(a.out) != ImageFormat::Png) {
            throw UsageError("--out must end in .ppm or .png");
        }
        const RgbImage src = read_image(a.in);
        const auto t0 = std::chrono::steady_clock::now();
        const RgbImage result = enhance_image(src, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        write_image(a.out, result);
        out << "runtime_ms " << format_number(std::chrono::duration<double, std::milli>(t1 - t0).count()) << "\n";
        return static_cast<int>(kExitOk);
    });
}

struct MetricsArgs {
    std::string in;
    std::string reference;
    std::string report = "csv";
    std::string out;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ReportFormat fmt = parse_report_format(a.report);
        const RgbImage img = read_image(a.in);
        std::optional<RgbImage> ref;
        if (!a.reference.empty()) ref = read_image(a.reference);
        const MetricReport m = evaluate(img, ref ? &*ref : nullptr);
        if (ref && !m.cef) {
            err << "warning: reference has zero colourfulness; CEF is undefined and left empty\n";
        }
        emit(metrics_record(fs::path(a.in).filename().string(), m, ref.has_value(), fmt), a.out, out);
        return static_cast<int>(kExitOk);
    });
}

struct BenchArgs {
    std::string in;
    std::string out;
    std::string report = "csv";
    std::string timing = "on";
    std::string save_dir;
    int repeat = 1;
    PipelineFlags flags;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PipelineConfig cfg = a.flags.resolve();
        const ReportFormat fmt = parse_report_format(a.report);
        const bool timing = parse_on_off("--timing", a.timing);
        if (a.repeat < 1) throw UsageError("--repeat must be >= 1");

        std::error_code ec;
        if (!fs::is_directory(a.in, ec)) throw IoError("not a directory: " + a.in);
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(a.in)) {
            if (entry.is_regular_file() && is_image_path(entry.path())) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end(),
                  [](const fs::path& x, const fs::path& y) { return x.filename().string() < y.filename().string(); });
        if (files.empty()) throw IoError("no .ppm/.png/.jpg images in " + a.in);

        std::vector<BatchInput> inputs;
        for (const auto& f : files) inputs.push_back({f.filename().string(), [f] { return read_image(f); }});

        BatchOptions opts;
        opts.repeats = a.repeat;
        opts.keep_outputs = !a.save_dir.empty();
        const BenchReport report = run_batch(inputs, cfg, opts);

        if (!a.save_dir.empty()) {
            fs::create_directories(a.save_dir, ec);
            for (const auto& row : report.rows) {
                if (!row.ok) continue;
                write_image(fs::path(a.save_dir) / (fs::path(row.image_id).stem().string() + ".ppm"), row.output);
            }
        }
        emit(bench_report(report, fmt, timing), a.out, out);
        for (const auto& row : report.rows) {
            if (!row.ok) err << "error: " << row.image_id << ": " << row.error << "\n";
        }
        if (timing && report.failures() < report.rows.size()) {
            err << "mean runtime_ms " << format_number(report.mean_runtime_ms()) << " over "
                << report.rows.size() - report.failures() << " image(s)\n";
        }
        return static_cast<int>(report.failures() ? kExitPartialFailure : kExitOk);
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional multiscale fusion de-hazing and image quality metrics", "fracfuse"};
    app.require_subcommand(1);

    EnhanceArgs enhance_args;
    auto* enhance = app.add_subcommand("enhance", "enhance one image");
    enhance->add_option("--in", enhance_args.in, "input image (.ppm, .png, .jpg)")->required();
    enhance->add_option("--out", enhance_args.out, "output image (.ppm or .png)")->required();
    enhance_args.flags.attach(*enhance);

    MetricsArgs metrics_args;
    auto* metrics = app.add_subcommand("metrics", "no-reference quality metrics for one image");
    metrics->add_option("--in", metrics_args.in, "input image")->required();
    metrics->add_option("--reference", metrics_args.reference, "original image for CEF");
    metrics->add_option("--report", metrics_args.report, "csv or json");
    metrics->add_option("--out", metrics_args.out, "write the record here instead of stdout");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "enhance and score every image in a directory");
    bench->add_option("--in", bench_args.in, "directory of images")->required();
    bench->add_option("--out", bench_args.out, "report path (default stdout)");
    bench->add_option("--report", bench_args.report, "csv or json");
    bench->add_option("--timing", bench_args.timing, "on or off; off leaves runtime fields empty");
    bench->add_option("--repeat", bench_args.repeat, "timed runs per image (runtime is their mean)");
    bench->add_option("--save-dir", bench_args.save_dir, "also write enhanced images here as PPM");
    bench_args.flags.attach(*bench);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (enhance->parsed()) return cmd_enhance(enhance_args, out, err);
    if (metrics->parsed()) return cmd_metrics(metrics_args, out, err);
    return cmd_bench(bench_args, out, err);
}

}  // namespace fracfuse::cli
