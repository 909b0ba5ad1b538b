#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idiomcraft/matcher.hpp"
#include "idiomcraft/state.hpp"

namespace idiomcraft {

/// One reviewed sample as published. Authors appear only as pseudonyms.
struct CorpusRecord {
  std::uint64_t id = 0;
  std::string language;
  std::string date;
  std::string idiom_id;
  std::string text;
  bool idiomatic = true;
  SampleType sample_type = SampleType::A;
  int likes = 0;
  int dislikes = 0;
  int reports = 0;
  std::string author_pseudonym;
  bool excluded = false;

  bool operator==(const CorpusRecord&) const = default;
};

struct ExportFilter {
  std::optional<std::string> language;
  std::optional<std::string> from;  // inclusive YYYY-MM-DD
  std::optional<std::string> to;    // inclusive
  bool include_excluded = false;
};

/// Stable, salted hash of a platform identity.
std::string pseudonymize(std::string_view player_id, std::string_view salt);

/// Records ordered by (date, id).
std::vector<CorpusRecord> export_corpus(const GameState& state, const ExportFilter& filter,
                                        std::string_view salt = {});

std::string to_jsonl(const std::vector<CorpusRecord>& records);
std::string to_tsv(const std::vector<CorpusRecord>& records, bool header = true);
std::vector<CorpusRecord> parse_jsonl(std::string_view content);
std::vector<CorpusRecord> parse_tsv(std::string_view content);

const std::vector<std::string>& corpus_columns();

}  // namespace idiomcraft
