#include "peridyn/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "peridyn/errors.hpp"

namespace peridyn {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double parse_double_token(const std::string& token, const std::string& where) {
    try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse number '" + token + "' for " + where);
    }
}

std::vector<std::string> split_list(const std::string& value, const std::string& where) {
    const std::string t = trim(value);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
        throw ConfigError("config: expected an array [..] for " + where);
    }
    std::vector<std::string> items;
    std::string current;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        if (t[i] == ',') {
            items.push_back(trim(current));
            current.clear();
        } else {
            current += t[i];
        }
    }
    if (!trim(current).empty()) items.push_back(trim(current));
    return items;
}

} // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(line_number));
            }
            section = trim(body.substr(1, body.size() - 2));
            config.sections_[section];
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected key = value at line " + std::to_string(line_number));
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config: empty key at line " + std::to_string(line_number));
        }
        config.sections_[section][key] = value;
    }
    return config;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto sit = sections_.find(section);
    return sit != sections_.end() && sit->second.count(key) > 0;
}

std::string ConfigFile::raw(const std::string& section, const std::string& key) const {
    auto sit = sections_.find(section);
    if (sit == sections_.end() || sit->second.count(key) == 0) {
        throw ConfigError("config: missing key '" + section + "." + key + "'");
    }
    return sit->second.at(key);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    return unquote(raw(section, key));
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
    return parse_double_token(raw(section, key), section + "." + key);
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long ConfigFile::get_int(const std::string& section, const std::string& key) const {
    const double v = get_double(section, key);
    const long n = static_cast<long>(v);
    if (static_cast<double>(n) != v) {
        throw ConfigError("config: expected an integer for " + section + "." + key);
    }
    return n;
}

long ConfigFile::get_int(const std::string& section, const std::string& key, long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::uint64_t ConfigFile::get_uint64(const std::string& section, const std::string& key,
                                     std::uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string token = raw(section, key);
    try {
        return std::stoull(token);
    } catch (const std::exception&) {
        throw ConfigError("config: cannot parse unsigned integer for " + section + "." + key);
    }
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
    const std::string where = section + "." + key;
    std::vector<double> values;
    for (const std::string& item : split_list(raw(section, key), where)) {
        values.push_back(parse_double_token(item, where));
    }
    return values;
}

std::vector<double> ConfigFile::get_double_list(const std::string& section, const std::string& key,
                                                const std::vector<double>& fallback) const {
    return has(section, key) ? get_double_list(section, key) : fallback;
}

std::vector<long> ConfigFile::get_int_list(const std::string& section, const std::string& key,
                                           const std::vector<long>& fallback) const {
    if (!has(section, key)) return fallback;
    std::vector<long> values;
    for (double v : get_double_list(section, key)) {
        values.push_back(static_cast<long>(v));
    }
    return values;
}

ModelParams parse_model(const ConfigFile& config) {
    const std::string section = config.has("model", "delta") || config.has("model", "d")
                                    ? std::string("model")
                                    : std::string("");
    ModelParams params;
    params.dim = static_cast<int>(config.get_int(section, "d", params.dim));
    params.delta = config.get_double(section, "delta", params.delta);
    params.alpha = config.get_double(section, "alpha", params.alpha);
    params.kappa = config.get_double(section, "kappa", params.kappa);
    params.cutoff.kind = cutoff_from_name(config.get_string(section, "cutoff", "indicator"));
    params.validate();
    return params;
}

std::string format_model(const ModelParams& params) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer),
                  "d = %d\ndelta = %.17g\nalpha = %.17g\nkappa = %.17g\ncutoff = \"%s\"\n",
                  params.dim, params.delta, params.alpha, params.kappa,
                  cutoff_name(params.cutoff.kind).c_str());
    return std::string(buffer);
}

} // namespace peridyn
