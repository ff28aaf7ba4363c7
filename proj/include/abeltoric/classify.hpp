#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "abeltoric/blowup.hpp"
#include "abeltoric/catalog.hpp"
#include "abeltoric/obstruction.hpp"

namespace abeltoric {

struct ClassificationRow {
  std::string type;
  std::size_t rays = 0;
  Mode mode = Mode::FiniteMorphism;
  Status status = Status::Inconclusive;
  Rule rule = Rule::None;
  Source source = Source::Own;
  std::string source_path;     // "G1>G1/x1x2" for propagated rows
  std::string error;           // set when certification threw
  std::string certificate;     // own certificate text
  bool replay_ok = false;

  std::string verdict_text() const;
  std::string source_text() const;
};

struct ClassifyOptions {
  unsigned jobs = 1;
  std::optional<std::filesystem::path> cert_dir;
};

// Certifies every entry in both modes, then propagates across 2-blow-ups.
// Rows sorted by type label, then mode. Throws ParseError on duplicate labels.
std::vector<ClassificationRow> classify(const std::vector<CatalogEntry>& entries,
                                        const ClassifyOptions& options = {});

// Header type,rays,mode,verdict,rule,source
std::string rows_to_csv(const std::vector<ClassificationRow>& rows);
std::string rows_to_text(const std::vector<ClassificationRow>& rows);

// Writes via a temporary file and rename.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace abeltoric
