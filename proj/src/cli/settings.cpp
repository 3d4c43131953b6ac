#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fracfuse/cli.hpp"

namespace fracfuse::cli {

namespace {

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "mode", "orders", "k", "boost", "levels", "sigma0", "lambda", "approx_gain", "strategy", "stretch", "threads",
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
        throw UsageError("invalid number for " + key + ": '" + text + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw UsageError("invalid integer for " + key + ": '" + text + "'");
    }
    return v;
}

bool parse_switch(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t == "on" || t == "true" || t == "1") return true;
    if (t == "off" || t == "false" || t == "0") return false;
    throw UsageError(key + " must be on or off, got '" + text + "'");
}

}  // namespace

Settings parse_config_text(std::string_view text) {
    Settings settings;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
            throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        settings[key] = trim(std::string_view(body).substr(eq + 1));
    }
    return settings;
}

void apply_setting(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "mode") {
        if (v == "hpfc") {
            cfg.mode = FilterMode::HighPass;
        } else if (v == "hbfc") {
            cfg.mode = FilterMode::HighBoost;
        } else {
            throw UsageError("mode must be hpfc or hbfc, got '" + value + "'");
        }
    } else if (key == "orders") {
        std::vector<double> orders;
        std::string item;
        std::istringstream items(v);
        while (std::getline(items, item, ',')) orders.push_back(parse_real(key, item));
        if (orders.empty()) throw UsageError("orders must list at least one value");
        cfg.orders = std::move(orders);
    } else if (key == "k") {
        cfg.truncation = parse_int(key, v);
    } else if (key == "boost") {
        cfg.boost = parse_real(key, v);
    } else if (key == "levels") {
        cfg.levels = parse_int(key, v);
    } else if (key == "sigma0") {
        cfg.sigma0 = parse_real(key, v);
    } else if (key == "lambda") {
        cfg.lambda = parse_real(key, v);
    } else if (key == "approx_gain") {
        cfg.approx_gain = parse_real(key, v);
    } else if (key == "strategy") {
        if (v == "weighted") {
            cfg.strategy = BlendStrategy::Weighted;
        } else if (v == "argmax") {
            cfg.strategy = BlendStrategy::Argmax;
        } else {
            throw UsageError("strategy must be weighted or argmax, got '" + value + "'");
        }
    } else if (key == "stretch") {
        cfg.stretch = parse_switch(key, v);
    } else if (key == "threads") {
        cfg.threads = parse_int(key, v);
    } else {
        throw UsageError("unknown setting '" + key + "'");
    }
}

PipelineConfig resolve_config(const Settings& file_settings, const Settings& flag_settings) {
    PipelineConfig cfg;
    for (const auto& [k, v] : file_settings) apply_setting(cfg, k, v);
    for (const auto& [k, v] : flag_settings) apply_setting(cfg, k, v);
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of -0
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

}  // namespace fracfuse::cli
