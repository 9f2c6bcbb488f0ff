#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "peridyn/model_params.hpp"

namespace peridyn {

/// Flat TOML-style config text: [section] headers, key = value lines,
/// # comments, arrays as [a, b, c]. Keys before any section header land in
/// the unnamed section "" (used by standalone model files).
class ConfigFile {
public:
    static ConfigFile parse_string(const std::string& text);
    static ConfigFile parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_int(const std::string& section, const std::string& key) const;
    long get_int(const std::string& section, const std::string& key, long fallback) const;
    std::uint64_t get_uint64(const std::string& section, const std::string& key,
                             std::uint64_t fallback) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key,
                                        const std::vector<double>& fallback) const;
    std::vector<long> get_int_list(const std::string& section, const std::string& key,
                                   const std::vector<long>& fallback) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

private:
    std::string raw(const std::string& section, const std::string& key) const;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

/// Reads d, delta, alpha, kappa, cutoff from [model], falling back to the
/// unnamed section so standalone model files work too.
ModelParams parse_model(const ConfigFile& config);

/// Flat key-value text for a model, parseable by parse_model.
std::string format_model(const ModelParams& params);

} // namespace peridyn
