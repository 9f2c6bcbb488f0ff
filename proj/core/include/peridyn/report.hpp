#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace peridyn {

std::uint64_t fnv1a64(std::string_view bytes);

struct FitResult {
    std::string name;
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

/// Least squares on (log x, log y) pairs. All entries must be positive.
FitResult fit_loglog(const std::string& name, const std::vector<double>& x,
                     const std::vector<double>& y);

/// Pass/fail entry; every verdict cites the tolerance it was judged by.
struct Verdict {
    std::string name;
    bool pass = false;
    bool skipped = false;
    double measured = 0.0;
    std::string tolerance; // human-readable criterion, e.g. "|slope - 2.0| <= 0.2"
    std::string note;
};

/// Machine-readable experiment output: row records, fitted slopes, verdicts,
/// attached CSV tables, and a provenance block. The determinism hash covers
/// everything except the provenance block, so identical config + seed gives
/// identical hashes run to run.
class ExperimentReport {
public:
    explicit ExperimentReport(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }

    void set_config_echo(nlohmann::json echo) { config_echo_ = std::move(echo); }
    void add_record(nlohmann::json record) { records_.push_back(std::move(record)); }
    void add_fit(FitResult fit) { fits_.push_back(std::move(fit)); }
    void add_verdict(Verdict verdict) { verdicts_.push_back(std::move(verdict)); }
    void attach_csv(const std::string& filename, std::string content) {
        csv_files_[filename] = std::move(content);
    }

    const std::vector<Verdict>& verdicts() const { return verdicts_; }
    const std::vector<FitResult>& fits() const { return fits_; }
    const std::vector<nlohmann::json>& records() const { return records_; }
    const std::map<std::string, std::string>& csv_files() const { return csv_files_; }

    /// True when every non-skipped verdict passed.
    bool all_pass() const;

    /// FNV-1a over the CSV bytes and the canonical JSON of config echo,
    /// records, fits, and verdicts. Excludes provenance.
    std::uint64_t determinism_hash() const;

    /// Deterministic part of the report (no provenance block).
    nlohmann::json to_json() const;

    /// Writes the CSV tables and report.json (with provenance) into out_dir.
    void write(const std::string& out_dir) const;

private:
    std::string name_;
    nlohmann::json config_echo_;
    std::vector<nlohmann::json> records_;
    std::vector<FitResult> fits_;
    std::vector<Verdict> verdicts_;
    std::map<std::string, std::string> csv_files_;
};

} // namespace peridyn
