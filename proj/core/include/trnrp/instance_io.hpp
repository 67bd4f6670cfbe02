#pragma once

#include <filesystem>
#include <string>

#include "trnrp/instance.hpp"

namespace trnrp {

/// Instance document: n, shape, dims, seed, s, p, points (depot first), parent
/// array and depth. Distances are not stored; they are recomputed on load.
std::string instance_to_json(const Instance& instance);

/// Throws std::runtime_error on malformed documents and std::invalid_argument
/// when the contents violate an Instance invariant (including a depth field
/// that disagrees with the parent array).
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& instance, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// Reads a whole file; throws std::runtime_error when unreadable.
std::string read_text_file(const std::filesystem::path& path);
/// Writes atomically enough for our purposes; throws std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace trnrp
