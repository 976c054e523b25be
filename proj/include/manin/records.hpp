#pragma once

// Run records and the JSON-lines result cache.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

namespace manin {

using json = nlohmann::json;

/// Version tag written into every record; cached records with another tag are ignored.
const std::string& code_version();

struct RunRecord {
    int schema_version = 1;
    std::string command;
    json parameters = json::object();  // a, B, method, prime_cut, samples, seed, tolerance as used
    json result = json::object();
    std::string timestamp;             // UTC, ISO 8601
    std::string code_version = manin::code_version();

    json to_json() const;
    static RunRecord from_json(const json& j);
    bool operator==(const RunRecord&) const = default;
};

std::string utc_timestamp();

/// Cache key: the command, the parameters serialized with sorted keys, and the code version.
std::string cache_key(const std::string& command, const json& parameters, const std::string& version);

/// One record per line in <dir>/runs.jsonl. Later records win over earlier ones.
class RunCache {
public:
    explicit RunCache(std::filesystem::path dir);

    /// $MANIN_CACHE_DIR if set, otherwise ./.manin-cache.
    static std::filesystem::path default_dir();

    std::optional<RunRecord> lookup(const std::string& command, const json& parameters) const;
    void store(const RunRecord& record) const;
    const std::filesystem::path& file() const { return file_; }

private:
    std::filesystem::path file_;
};

}  // namespace manin
