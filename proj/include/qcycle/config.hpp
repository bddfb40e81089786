#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "qcycle/params.hpp"
#include "qcycle/scan.hpp"

namespace qcycle {

struct ParsedConfig {
    ModelParams params;
    ScanSpec scan;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse the key = value configuration format. '#' starts a comment, keys
/// map one-to-one onto parameter and scan fields, scan.grid takes a comma
/// separated list. Unknown keys, duplicates, malformed numbers and
/// out-of-domain values raise ConfigError naming the key and line number.
/// A scan without an explicit grid gets the default grid of its variable.
ParsedConfig parse_config(std::string_view text);

/// Read and parse a configuration file.
ParsedConfig load_config_file(const std::string& path);

/// Serialize every key in a fixed order. Values are printed with enough
/// digits that parse_config(emit_config(p, s)) reproduces both structs
/// bit-exactly.
std::string emit_config(const ModelParams& params, const ScanSpec& scan);

} // namespace qcycle
