#include <charconv>

#include <json.hpp>

#include "fracfuse/cli.hpp"

namespace fracfuse::cli {

namespace {

using nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// JSON numbers carry the same six significant digits as the CSV.
ordered_json json_number(double v) {
    const std::string s = format_number(v);
    double rounded = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), rounded);
    return rounded;
}

const char* const kMetricColumns = "entropy,gcf,colourfulness,avg_gradient,uiqm,uciqe";

std::string metric_cells(const MetricReport& m) {
    return format_number(m.entropy) + ',' + format_number(m.gcf) + ',' + format_number(m.colourfulness) + ',' +
           format_number(m.avg_gradient) + ',' + format_number(m.uiqm) + ',' + format_number(m.uciqe);
}

ordered_json metric_object(const MetricReport& m, bool with_cef) {
    ordered_json j;
    j["entropy"] = json_number(m.entropy);
    j["gcf"] = json_number(m.gcf);
    j["colourfulness"] = json_number(m.colourfulness);
    j["avg_gradient"] = json_number(m.avg_gradient);
    j["uiqm"] = json_number(m.uiqm);
    j["uciqe"] = json_number(m.uciqe);
    if (with_cef) j["cef"] = m.cef ? json_number(*m.cef) : ordered_json(nullptr);
    return j;
}

}  // namespace

std::string metrics_record(const std::string& image_id, const MetricReport& m, bool with_cef, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        ordered_json j;
        j["image"] = image_id;
        const ordered_json metrics = metric_object(m, with_cef);
        for (const auto& [k, v] : metrics.items()) j[k] = v;
        return j.dump(2) + "\n";
    }
    std::string out = std::string("image,") + kMetricColumns + (with_cef ? ",cef" : "") + "\n";
    out += csv_field(image_id) + ',' + metric_cells(m);
    if (with_cef) out += ',' + (m.cef ? format_number(*m.cef) : std::string());
    out += '\n';
    return out;
}

std::string bench_report(const BenchReport& report, ReportFormat fmt, bool timing) {
    const std::size_t processed = report.rows.size() - report.failures();
    const std::string tally = std::to_string(processed) + "/" + std::to_string(report.rows.size());

    if (fmt == ReportFormat::Json) {
        ordered_json j;
        j["config"] = report.config_summary;
        j["rows"] = ordered_json::array();
        for (const auto& row : report.rows) {
            ordered_json r;
            r["image"] = row.image_id;
            r["status"] = row.ok ? "ok" : "error";
            if (row.ok) {
                r["metrics"] = row.metrics ? metric_object(*row.metrics, true) : ordered_json(nullptr);
                r["runtime_ms"] = timing ? json_number(row.runtime_ms) : ordered_json(nullptr);
            } else {
                r["error"] = row.error;
            }
            j["rows"].push_back(std::move(r));
        }
        ordered_json summary;
        summary["processed"] = processed;
        summary["failed"] = report.failures();
        summary["mean_runtime_ms"] = timing && processed ? json_number(report.mean_runtime_ms()) : ordered_json(nullptr);
        j["summary"] = std::move(summary);
        return j.dump(2) + "\n";
    }

    std::string out = std::string("image,status,config,") + kMetricColumns + ",cef,runtime_ms,message\n";
    const std::string config = csv_field(report.config_summary);
    for (const auto& row : report.rows) {
        out += csv_field(row.image_id) + ',' + (row.ok ? "ok" : "error") + ',' + config + ',';
        if (row.ok && row.metrics) {
            out += metric_cells(*row.metrics) + ',';
            out += row.metrics->cef ? format_number(*row.metrics->cef) : std::string();
        } else {
            out += ",,,,,,";
        }
        out += ',';
        if (row.ok && timing) out += format_number(row.runtime_ms);
        out += ',';
        if (!row.ok) out += csv_field(row.error);
        out += '\n';
    }
    out += "mean,summary," + config + ",,,,,,,,";
    if (timing && processed) out += format_number(report.mean_runtime_ms());
    out += ",processed " + tally + "\n";
    return out;
}

}  // namespace fracfuse::cli
