#include "relgraph/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "relgraph/embedding.hpp"
#include "relgraph/graph_io.hpp"
#include "relgraph/mlp.hpp"
#include "relgraph/rng.hpp"
#include "relgraph/types.hpp"

namespace relgraph {

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot checksum missing file: " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0)
        hash = fnv1a64(buffer, static_cast<std::size_t>(in.gcount()), hash);
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(hash));
    return hex;
}

std::string iso8601_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_manifest(RunManifest manifest, const std::string& path) {
    if (manifest.started_at.empty()) manifest.started_at = iso8601_now();
    if (manifest.finished_at.empty()) manifest.finished_at = iso8601_now();

    nlohmann::ordered_json doc;
    doc["command"] = manifest.command;
    auto& params = doc["params"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : manifest.params) params[key] = value;
    doc["format_versions"] = {
        {"graph_cache", kGraphCacheVersion},
        {"embedding_binary", kEmbeddingBinaryVersion},
        {"classifier", kMlpBinaryVersion},
    };
    auto file_entry = [](const std::string& file) {
        return nlohmann::ordered_json{{"path", file},
                                      {"fnv1a64", file_checksum(file)}};
    };
    auto& inputs = doc["inputs"] = nlohmann::ordered_json::array();
    for (const auto& file : manifest.inputs) inputs.push_back(file_entry(file));
    auto& outputs = doc["outputs"] = nlohmann::ordered_json::array();
    for (const auto& file : manifest.outputs)
        outputs.push_back(file_entry(file));
    doc["started_at"] = manifest.started_at;
    doc["finished_at"] = manifest.finished_at;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write manifest: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw Error("write failed: " + path);
}

}  // namespace relgraph
