#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hetstab/cycle_model.hpp"

namespace hetstab {

/// Reads the JSON cycle-spec document:
///   {"nodes": [{"contracting", "expanding", "transverse", "radial"?}],
///    "connections": [{"permutation", "scalings"?, "v0"?}]}
/// Throws Error(ParseError) on malformed JSON or wrong field types. The result
/// is not validated; pass it through validate_cycle.
CycleSpec parse_cycle_spec(std::string_view json_text);
CycleSpec load_cycle_spec(const std::filesystem::path& path);

/// Inverse of parse_cycle_spec. Optional fields are omitted when defaulted.
std::string to_json(const CycleSpec& spec, int indent = 2);

}  // namespace hetstab
