#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gribov/block_assembly.hpp"

namespace gribov::io {

/// JSON Schema (draft 2020-12) of a block specification document:
///   {"n": int, "diag_couplings": [real],
///    "off_entries": [{"i", "j", "lambda1", "lambda", "mu", "beta"}]}
/// Unknown fields are rejected; "beta" is restricted to the open interval (0,3).
nlohmann::json spec_schema();

/// Structural checks of a parsed document against the schema, plus the
/// BlockSpec invariants. Empty iff the document is accepted.
std::vector<Diagnostic> check_document(const nlohmann::json& doc);

/// Throws invalid-input listing every diagnostic.
BlockSpec parse_spec(const nlohmann::json& doc);

/// Reads and parses a spec file. Missing files and malformed JSON raise
/// invalid-input; the message names the path, and the line and column for
/// syntax errors.
BlockSpec load_spec(const std::filesystem::path& path);

/// Text variant of load_spec; `origin` is used in messages.
BlockSpec parse_spec_text(const std::string& text, const std::string& origin);

/// Echo of a spec in document form; off_entries lists the pairs present in
/// the map, in index order.
nlohmann::json spec_to_json(const BlockSpec& spec);

}  // namespace gribov::io
