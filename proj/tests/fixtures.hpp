#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>

#include "ssdlab/cli.hpp"

namespace ssdlab::test_data {

/// Fixture directory: $SSDLAB_FIXTURES if set, else the repo's fixtures/.
inline std::filesystem::path fixtures_dir() {
    if (const char* env = std::getenv("SSDLAB_FIXTURES"); env && *env) return env;
    return SSDLAB_FIXTURES_DIR;
}

inline std::optional<std::filesystem::path> fixture(const char* name) {
    auto path = fixtures_dir() / name;
    if (std::filesystem::exists(path)) return path;
    return std::nullopt;
}

/// The named fixture as a Dataset, or nullopt when the file is absent.
inline std::optional<Dataset> load_fixture(const char* name) {
    const auto path = fixture(name);
    if (!path) return std::nullopt;
    return cli::ingest(*path);
}

inline constexpr const char* kBankFixture = "bank_waiting_times.txt";
inline constexpr const char* kMechanicalFixture = "mechanical_failures.txt";

}  // namespace ssdlab::test_data
