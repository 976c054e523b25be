#include "manin/records.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <stdexcept>

#ifndef MANIN_CODE_VERSION
#define MANIN_CODE_VERSION "dev"
#endif

namespace manin {

const std::string& code_version() {
    static const std::string v = MANIN_CODE_VERSION;
    return v;
}

json RunRecord::to_json() const {
    return {{"schema_version", schema_version}, {"command", command}, {"parameters", parameters},
            {"result", result}, {"timestamp", timestamp}, {"code_version", code_version}};
}

RunRecord RunRecord::from_json(const json& j) {
    RunRecord r;
    r.schema_version = j.at("schema_version").get<int>();
    r.command = j.at("command").get<std::string>();
    r.parameters = j.at("parameters");
    r.result = j.at("result");
    r.timestamp = j.at("timestamp").get<std::string>();
    r.code_version = j.at("code_version").get<std::string>();
    return r;
}

std::string utc_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string cache_key(const std::string& command, const json& parameters, const std::string& version) {
    // json objects keep their keys sorted, so dump() is canonical
    return command + '\n' + parameters.dump() + '\n' + version;
}

RunCache::RunCache(std::filesystem::path dir) : file_(std::move(dir) / "runs.jsonl") {}

std::filesystem::path RunCache::default_dir() {
    if (const char* env = std::getenv("MANIN_CACHE_DIR"); env && *env) return env;
    return ".manin-cache";
}

std::optional<RunRecord> RunCache::lookup(const std::string& command, const json& parameters) const {
    std::ifstream in(file_);
    if (!in) return std::nullopt;
    const std::string want = cache_key(command, parameters, code_version());
    std::optional<RunRecord> hit;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) continue;  // a partially written line
        try {
            RunRecord r = RunRecord::from_json(j);
            if (cache_key(r.command, r.parameters, r.code_version) == want) hit = std::move(r);
        } catch (const json::exception&) {
        }
    }
    return hit;
}

void RunCache::store(const RunRecord& record) const {
    std::filesystem::create_directories(file_.parent_path());
    std::ofstream out(file_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open cache file " + file_.string());
    out << record.to_json().dump() << '\n';
}

}  // namespace manin
