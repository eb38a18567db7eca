#include "gribov/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gribov/errors.hpp"

namespace gribov::io {
namespace {

using nlohmann::json;

const std::set<std::string> kTopLevelKeys = {"n", "diag_couplings", "off_entries"};
const std::set<std::string> kEntryKeys = {"i", "j", "lambda1", "lambda", "mu", "beta"};

bool is_integer(const json& v) { return v.is_number_integer() || v.is_number_unsigned(); }

std::string describe(const std::vector<Diagnostic>& diags) {
  std::ostringstream os;
  for (std::size_t k = 0; k < diags.size(); ++k) {
    if (k) os << "; ";
    os << diags[k].field << ": " << diags[k].reason;
  }
  return os.str();
}

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

BlockSpec build_unchecked(const json& doc) {
  BlockSpec spec;
  spec.n = doc.at("n").get<std::size_t>();
  spec.diag_couplings = doc.at("diag_couplings").get<std::vector<double>>();
  if (doc.contains("off_entries")) {
    for (const json& e : doc.at("off_entries")) {
      EntryParams p;
      p.lambda1 = e.value("lambda1", 0.0);
      p.lambda = e.value("lambda", 0.0);
      p.mu = e.value("mu", 0.0);
      p.beta = e.value("beta", 1.0);
      spec.off_entries[{e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>()}] = p;
    }
  }
  return spec;
}

}  // namespace

json spec_schema() {
  const json number = {{"type", "number"}};
  json entry = {
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"i", "j"}},
      {"properties",
       {{"i", {{"type", "integer"}, {"minimum", 1}}},
        {"j", {{"type", "integer"}, {"minimum", 1}}},
        {"lambda1", number},
        {"lambda", number},
        {"mu", number},
        {"beta", {{"type", "number"}, {"exclusiveMinimum", 0}, {"exclusiveMaximum", 3}}}}},
  };
  return json{
      {"$schema", "https://json-schema.org/draft/2020-12/schema"},
      {"title", "Gribov block operator matrix specification"},
      {"type", "object"},
      {"additionalProperties", false},
      {"required", {"n", "diag_couplings"}},
      {"properties",
       {{"n", {{"type", "integer"}, {"minimum", 2}}},
        {"diag_couplings",
         {{"type", "array"},
          {"items", {{"type", "number"}, {"not", {{"const", 0}}}}},
          {"minItems", 2}}},
        {"off_entries", {{"type", "array"}, {"items", entry}}}}},
  };
}

std::vector<Diagnostic> check_document(const json& doc) {
  std::vector<Diagnostic> out;
  if (!doc.is_object()) {
    out.push_back({"$", "document must be an object"});
    return out;
  }
  for (const auto& [key, value] : doc.items()) {
    if (!kTopLevelKeys.count(key)) out.push_back({key, "unknown field"});
  }
  if (!doc.contains("n") || !is_integer(doc["n"])) {
    out.push_back({"n", "required integer"});
  } else if (doc["n"].get<long long>() < 2) {
    out.push_back({"n", "n must be >= 2"});
  }
  if (!doc.contains("diag_couplings") || !doc["diag_couplings"].is_array()) {
    out.push_back({"diag_couplings", "required array of numbers"});
  } else {
    for (std::size_t k = 0; k < doc["diag_couplings"].size(); ++k) {
      if (!doc["diag_couplings"][k].is_number()) {
        out.push_back({"diag_couplings[" + std::to_string(k + 1) + "]", "not a number"});
      }
    }
  }
  const std::size_t n = (doc.contains("n") && is_integer(doc["n"]) && doc["n"].get<long long>() > 0)
                            ? doc["n"].get<std::size_t>()
                            : 0;
  if (doc.contains("off_entries")) {
    const json& entries = doc["off_entries"];
    if (!entries.is_array()) {
      out.push_back({"off_entries", "must be an array"});
    } else {
      std::set<IndexPair> seen;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        const json& e = entries[k];
        const std::string field = "off_entries[" + std::to_string(k) + "]";
        if (!e.is_object()) {
          out.push_back({field, "must be an object"});
          continue;
        }
        for (const auto& [key, value] : e.items()) {
          if (!kEntryKeys.count(key)) {
            out.push_back({field + "." + key, "unknown field"});
          } else if (!value.is_number()) {
            out.push_back({field + "." + key, "not a number"});
          }
        }
        if (!e.contains("i") || !is_integer(e["i"]) || !e.contains("j") || !is_integer(e["j"])) {
          out.push_back({field, "integer indices i and j are required"});
          continue;
        }
        const long long i = e["i"].get<long long>();
        const long long j = e["j"].get<long long>();
        if (i < 1 || j < 1 || (n && (i > static_cast<long long>(n) || j > static_cast<long long>(n)))) {
          out.push_back({field, "index out of range"});
          continue;
        }
        if (i == j) {
          out.push_back({field, "diagonal pair (i == j) not allowed"});
          continue;
        }
        if (!seen.insert({static_cast<std::size_t>(i), static_cast<std::size_t>(j)}).second) {
          out.push_back({field, "duplicate pair (" + std::to_string(i) + "," + std::to_string(j) + ")"});
        }
        if (e.contains("beta") && e["beta"].is_number()) {
          const double beta = e["beta"].get<double>();
          if (!(beta > 0.0 && beta < 3.0)) out.push_back({field + ".beta", "beta out of (0,3)"});
        }
      }
    }
  }
  if (!out.empty()) return out;
  return validate_spec(build_unchecked(doc));
}

BlockSpec parse_spec(const json& doc) {
  const auto diags = check_document(doc);
  if (!diags.empty()) {
    throw Error(ErrorKind::kInvalidInput, "spec rejected: " + describe(diags));
  }
  return build_unchecked(doc);
}

BlockSpec parse_spec_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw Error(ErrorKind::kInvalidInput, origin + ":" + std::to_string(line) + ":" +
                                              std::to_string(col) + ": malformed JSON (" +
                                              e.what() + ")");
  }
  try {
    return parse_spec(doc);
  } catch (const Error& e) {
    throw Error(e.kind(), origin + ": " + e.what());
  }
}

BlockSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kInvalidInput, "cannot open spec file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), path.string());
}

json spec_to_json(const BlockSpec& spec) {
  json entries = json::array();
  for (const auto& [ij, e] : spec.off_entries) {
    entries.push_back({{"i", ij.first},
                       {"j", ij.second},
                       {"lambda1", e.lambda1},
                       {"lambda", e.lambda},
                       {"mu", e.mu},
                       {"beta", e.beta}});
  }
  return json{{"n", spec.n}, {"diag_couplings", spec.diag_couplings}, {"off_entries", entries}};
}

}  // namespace gribov::io
