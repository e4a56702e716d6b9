#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace votecode {

// Flat key = value configuration text with '#' comments. All run
// configuration goes through this so manifests can echo it back verbatim.
class KvConfig {
public:
    static KvConfig parse(const std::string& text);
    static KvConfig load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_str(const std::string& key, const std::string& fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;

    std::string require_str(const std::string& key) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

// Shortest round-trip decimal text for a double; locale-independent.
std::string format_double(double v);

}  // namespace votecode
