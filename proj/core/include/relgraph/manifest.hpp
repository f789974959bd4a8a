#pragma once

#include <string>
#include <utility>
#include <vector>

namespace relgraph {

// Snapshot of one tool invocation: configuration, input/output checksums and
// format versions. Re-running a deterministic command with the same manifest
// parameters reproduces checksum-identical artifacts.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::string started_at;   // filled by write_manifest if empty
    std::string finished_at;
};

// FNV-1a over the file contents, as 16 hex digits.
std::string file_checksum(const std::string& path);

std::string iso8601_now();

void write_manifest(RunManifest manifest, const std::string& path);

}  // namespace relgraph
