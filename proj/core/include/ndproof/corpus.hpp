#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ndproof/checker.hpp"

namespace ndproof {

/// One entry of a corpus index.json.
struct CorpusEntry {
  std::string id;
  std::string title;
  std::string file;  // relative to the corpus directory
  std::string description;
  /// Expected verdict under the default configuration.
  bool accepted = true;
  /// Error and warning codes expected in the default and strict reports.
  std::set<DiagCode> codes;
  std::set<DiagCode> strict_codes;
};

/// A directory of `.ndp` proofs described by an index.json.
class Corpus {
 public:
  /// Throws std::runtime_error when the index is missing or malformed.
  static Corpus load(const std::filesystem::path& dir);

  const std::filesystem::path& dir() const { return dir_; }
  const std::vector<CorpusEntry>& entries() const { return entries_; }
  const CorpusEntry* find(std::string_view id) const;
  /// Raw `.ndp` text of an entry.
  std::string text(const CorpusEntry& e) const;

 private:
  std::filesystem::path dir_;
  std::vector<CorpusEntry> entries_;
};

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::filesystem::path& p);

}  // namespace ndproof
