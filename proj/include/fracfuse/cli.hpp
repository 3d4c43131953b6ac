#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracfuse/iqa.hpp"
#include "fracfuse/pipeline.hpp"

namespace fracfuse::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitPartialFailure = 1,
    kExitIo = 2,
    kExitUsage = 64,
};

/// Raised for invalid flags, config keys or values (exit 64).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Setting name -> raw value, e.g. {"orders", "0.25,0.5"}. Keys match the
/// config-file keys; command-line flags map onto the same names.
using Settings = std::map<std::string, std::string>;

/// Parses flat `key = value` text with `#` comments. Throws UsageError on
/// malformed lines or unknown keys.
Settings parse_config_text(std::string_view text);

/// Applies one setting to `cfg`; throws UsageError for bad keys or values.
void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value);

/// defaults < config file < flags.
PipelineConfig resolve_config(const Settings& file_settings, const Settings& flag_settings);

/// Six significant digits, '.' decimal separator, locale independent.
std::string format_number(double v);

enum class ReportFormat { Csv, Json };

std::string metrics_record(const std::string& image_id, const MetricReport& m, bool with_cef, ReportFormat fmt);

/// One row per image plus a trailing summary row. With `timing` off the
/// runtime fields are left empty so the report is byte-reproducible.
std::string bench_report(const BenchReport& report, ReportFormat fmt, bool timing);

/// Entry point behind the `fracfuse` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracfuse::cli
