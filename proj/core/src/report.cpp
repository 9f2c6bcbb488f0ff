#include "peridyn/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "peridyn/errors.hpp"

namespace peridyn {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 1099511628211ull;
    }
    return hash;
}

FitResult fit_loglog(const std::string& name, const std::vector<double>& x,
                     const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw DomainError("fit_loglog: need at least two matching samples");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw DomainError("fit_loglog: samples must be positive");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("fit_loglog: degenerate abscissae");
    FitResult fit;
    fit.name = name;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = ly[i] - (fit.slope * lx[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

namespace {

nlohmann::json fit_to_json(const FitResult& fit) {
    return nlohmann::json{{"name", fit.name},
                          {"slope", fit.slope},
                          {"intercept", fit.intercept},
                          {"residual_rms", fit.residual_rms}};
}

nlohmann::json verdict_to_json(const Verdict& verdict) {
    return nlohmann::json{{"name", verdict.name},     {"pass", verdict.pass},
                          {"skipped", verdict.skipped}, {"measured", verdict.measured},
                          {"tolerance", verdict.tolerance}, {"note", verdict.note}};
}

} // namespace

bool ExperimentReport::all_pass() const {
    for (const Verdict& v : verdicts_) {
        if (!v.skipped && !v.pass) return false;
    }
    return true;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json doc;
    doc["experiment"] = name_;
    doc["config_echo"] = config_echo_;
    doc["records"] = records_;
    doc["fits"] = nlohmann::json::array();
    for (const FitResult& fit : fits_) doc["fits"].push_back(fit_to_json(fit));
    doc["verdicts"] = nlohmann::json::array();
    for (const Verdict& v : verdicts_) doc["verdicts"].push_back(verdict_to_json(v));
    return doc;
}

std::uint64_t ExperimentReport::determinism_hash() const {
    std::string bytes;
    for (const auto& [filename, content] : csv_files_) {
        bytes += filename;
        bytes += '\n';
        bytes += content;
    }
    bytes += to_json().dump();
    return fnv1a64(bytes);
}

void ExperimentReport::write(const std::string& out_dir) const {
    std::filesystem::create_directories(out_dir);
    for (const auto& [filename, content] : csv_files_) {
        std::ofstream out(std::filesystem::path(out_dir) / filename, std::ios::binary);
        if (!out) throw ConfigError("report: cannot write " + filename + " in " + out_dir);
        out << content;
    }
    nlohmann::json doc = to_json();
    char hash_hex[32];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(determinism_hash()));
    const auto now = std::chrono::system_clock::now();
    const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
    char time_buf[64];
    std::strftime(time_buf, sizeof(time_buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&stamp));
    doc["provenance"] = nlohmann::json{{"tool", "peridyn 1.0.0"},
                                       {"generated_at", time_buf},
                                       {"determinism_hash", hash_hex}};
    std::ofstream out(std::filesystem::path(out_dir) / "report.json", std::ios::binary);
    if (!out) throw ConfigError("report: cannot write report.json in " + out_dir);
    out << doc.dump(2) << '\n';
}

} // namespace peridyn
