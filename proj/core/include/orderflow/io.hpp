#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace orderflow {

// Fixed decimal formatting keeps golden files stable; "nan" for undefined.
std::string fixed2(double v);
std::string fixed4(double v);
std::string fixed6(double v);

// FNV-1a 64-bit over file bytes, rendered as 16 hex digits.
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::string hash_file(const std::string& path);

// Manifest: one "<hash>  <relative path>" line per artifact, sorted by path.
struct Manifest {
    std::map<std::string, std::string> entries;  // path -> hash

    void add(const std::string& root, const std::string& relative_path);
};

void write_manifest(const std::string& path, const Manifest& m);
Manifest read_manifest(const std::string& path);

void ensure_dir(const std::string& path);

} // namespace orderflow
