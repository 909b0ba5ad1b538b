#include "idiomcraft/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "idiomcraft/error.hpp"
#include "idiomcraft/json_io.hpp"

namespace idiomcraft {

using nlohmann::json;

namespace {

json record_json(const CorpusRecord& r) {
  // field order matches corpus_columns()
  json j = json::object();
  j["id"] = r.id;
  j["language"] = r.language;
  j["date"] = r.date;
  j["idiom_id"] = r.idiom_id;
  j["text"] = r.text;
  j["idiomatic"] = r.idiomatic;
  j["sample_type"] = std::string(to_string(r.sample_type));
  j["likes"] = r.likes;
  j["dislikes"] = r.dislikes;
  j["reports"] = r.reports;
  j["author_pseudonym"] = r.author_pseudonym;
  j["excluded"] = r.excluded;
  return j;
}

// TSV cells cannot hold tabs or newlines; escape them the usual way.
std::string escape_tsv(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\\': out += "\\\\"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_tsv(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += s[i];
    }
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view content) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < content.size()) {
    auto nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    auto line = content.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

}  // namespace

const std::vector<std::string>& corpus_columns() {
  static const std::vector<std::string> cols = {"id",       "language", "date",    "idiom_id",
                                                "text",     "idiomatic", "sample_type", "likes",
                                                "dislikes", "reports",  "author_pseudonym", "excluded"};
  return cols;
}

std::string pseudonymize(std::string_view player_id, std::string_view salt) {
  std::string material(salt);
  material += '\x1f';
  material += player_id;
  return "p_" + sha256_hex(material).substr(0, 16);
}

std::vector<CorpusRecord> export_corpus(const GameState& state, const ExportFilter& filter,
                                        std::string_view salt) {
  std::vector<CorpusRecord> out;
  for (const auto& s : state.submissions) {
    if (filter.language && s.language != *filter.language) continue;
    if (filter.from && s.date < *filter.from) continue;
    if (filter.to && s.date > *filter.to) continue;
    const bool excluded = is_excluded(s.status);
    if (excluded && !filter.include_excluded) continue;
    CorpusRecord r;
    r.id = s.id;
    r.language = s.language;
    r.date = s.date;
    r.idiom_id = s.idiom_id;
    r.text = s.text;
    r.idiomatic = s.idiomatic;
    r.sample_type = s.sample_type;
    r.likes = s.likes;
    r.dislikes = s.dislikes;
    r.reports = s.reports;
    r.author_pseudonym = pseudonymize(s.author, salt);
    r.excluded = excluded;
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const CorpusRecord& a, const CorpusRecord& b) {
    return std::tie(a.date, a.id) < std::tie(b.date, b.id);
  });
  return out;
}

std::string to_jsonl(const std::vector<CorpusRecord>& records) {
  std::string out;
  for (const auto& r : records) out += record_json(r).dump() + '\n';
  return out;
}

std::string to_tsv(const std::vector<CorpusRecord>& records, bool header) {
  std::ostringstream out;
  if (header) {
    const auto& cols = corpus_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "\t" : "") << cols[i];
    out << '\n';
  }
  for (const auto& r : records) {
    out << r.id << '\t' << r.language << '\t' << r.date << '\t' << escape_tsv(r.idiom_id) << '\t'
        << escape_tsv(r.text) << '\t' << (r.idiomatic ? "true" : "false") << '\t' << to_string(r.sample_type)
        << '\t' << r.likes << '\t' << r.dislikes << '\t' << r.reports << '\t' << r.author_pseudonym << '\t'
        << (r.excluded ? "true" : "false") << '\n';
  }
  return out.str();
}

std::vector<CorpusRecord> parse_jsonl(std::string_view content) {
  std::vector<CorpusRecord> out;
  for (const auto line : split_lines(content)) {
    try {
      const auto j = json::parse(line);
      CorpusRecord r;
      r.id = j.at("id").get<std::uint64_t>();
      r.language = j.at("language").get<std::string>();
      r.date = j.at("date").get<std::string>();
      r.idiom_id = j.at("idiom_id").get<std::string>();
      r.text = j.at("text").get<std::string>();
      r.idiomatic = j.at("idiomatic").get<bool>();
      r.sample_type = sample_type_from_string(j.at("sample_type").get<std::string>());
      r.likes = j.at("likes").get<int>();
      r.dislikes = j.at("dislikes").get<int>();
      r.reports = j.at("reports").get<int>();
      r.author_pseudonym = j.at("author_pseudonym").get<std::string>();
      r.excluded = j.at("excluded").get<bool>();
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      fail(ErrorCode::ValidationFailed, std::string("bad corpus line: ") + e.what());
    }
  }
  return out;
}

std::vector<CorpusRecord> parse_tsv(std::string_view content) {
  std::vector<CorpusRecord> out;
  const auto lines = split_lines(content);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (n == 0 && lines[n].starts_with("id\t")) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    const auto line = lines[n];
    while (true) {
      const auto tab = line.find('\t', start);
      cells.push_back(unescape_tsv(line.substr(start, tab == std::string_view::npos ? tab : tab - start)));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (cells.size() != corpus_columns().size()) {
      fail(ErrorCode::ValidationFailed, "corpus TSV line " + std::to_string(n + 1) + " has " +
                                            std::to_string(cells.size()) + " columns");
    }
    try {
      CorpusRecord r;
      r.id = std::stoull(cells[0]);
      r.language = cells[1];
      r.date = cells[2];
      r.idiom_id = cells[3];
      r.text = cells[4];
      r.idiomatic = cells[5] == "true";
      r.sample_type = sample_type_from_string(cells[6]);
      r.likes = std::stoi(cells[7]);
      r.dislikes = std::stoi(cells[8]);
      r.reports = std::stoi(cells[9]);
      r.author_pseudonym = cells[10];
      r.excluded = cells[11] == "true";
      out.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      fail(ErrorCode::ValidationFailed, "corpus TSV line " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace idiomcraft
