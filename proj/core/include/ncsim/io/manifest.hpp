#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ncsim/io/scenario.hpp"

namespace ncsim::io {

// Batch description for `ncsim sweep`:
//
//   scenarios: [a.yml, b.yml]
//   matrix:
//     interference: [none, csma_bianchi]
//     scheduler: [heft, cpop]
//     routing: [widest_path]
//     seed: [1, 2]
//   workers: 2
//
// Every scenario runs once per combination of the listed matrix values.
struct SweepManifest {
  std::vector<std::filesystem::path> scenarios;  // resolved against base_dir
  std::vector<std::string> interference;
  std::vector<std::string> scheduler;
  std::vector<std::string> routing;
  std::vector<std::uint64_t> seed;
  std::size_t workers = 1;
  std::filesystem::path base_dir;
};

// Throws ParseError or SchemaError.
SweepManifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir = {});
// Also throws IoError.
SweepManifest load_manifest(const std::filesystem::path& path);

struct SweepJob {
  std::filesystem::path scenario;
  Overrides overrides;
};

// Scenario-major, then interference, scheduler, routing, seed.
std::vector<SweepJob> expand_manifest(const SweepManifest& manifest);

}  // namespace ncsim::io
