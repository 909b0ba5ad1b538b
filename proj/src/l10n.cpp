#include "idiomcraft/l10n.hpp"

#include <fstream>
#include <sstream>

#include "idiomcraft/error.hpp"
#include "idiomcraft/unicode.hpp"

namespace idiomcraft {

namespace {

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// Calls on_text for literal runs and on_name for each {placeholder}.
template <typename Text, typename Name>
void scan(std::string_view text, Text on_text, Name on_name) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && is_name_char(text[j])) ++j;
      if (j < text.size() && text[j] == '}' && j > i + 1) {
        on_name(text.substr(i + 1, j - i - 1));
        i = j + 1;
        continue;
      }
    }
    on_text(text[i]);
    ++i;
  }
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == 'n') {
      out += '\n';
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

Catalog Catalog::from_file(const std::filesystem::path& path, std::string language) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::CatalogFormat, "cannot open catalog " + path.string());
  std::ostringstream content;
  content << in.rdbuf();
  Catalog c(std::move(language));
  c.load(content.str());
  return c;
}

void Catalog::load(std::string_view content) {
  std::size_t start = 0;
  int line_no = 0;
  while (start <= content.size()) {
    auto nl = content.find('\n', start);
    if (nl == std::string_view::npos) nl = content.size();
    auto line = content.substr(start, nl - start);
    start = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto trimmed = unicode::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::CatalogFormat,
           language_ + " catalog line " + std::to_string(line_no) + ": expected key=template");
    }
    const std::string key(unicode::trim(line.substr(0, eq)));
    if (key.empty()) fail(ErrorCode::CatalogFormat, language_ + " catalog line " + std::to_string(line_no) + ": empty key");
    templates_[key] = unescape(line.substr(eq + 1));
  }
}

std::set<std::string> Catalog::keys() const {
  std::set<std::string> out;
  for (const auto& [k, _] : templates_) out.insert(k);
  return out;
}

const std::string& Catalog::raw(const std::string& key) const {
  const auto it = templates_.find(key);
  if (it == templates_.end()) fail(ErrorCode::MissingKey, "no message '" + key + "' in " + language_);
  return it->second;
}

std::set<std::string> Catalog::placeholders(const std::string& key) const { return placeholders_of(raw(key)); }

std::string Catalog::render(const std::string& key, const Params& params) const {
  const auto& tmpl = raw(key);
  std::string out;
  scan(
      tmpl, [&](char c) { out += c; },
      [&](std::string_view name) {
        const auto it = params.find(std::string(name));
        if (it == params.end()) {
          fail(ErrorCode::MissingParam, "message '" + key + "' needs {" + std::string(name) + "}");
        }
        out += it->second;
      });
  return out;
}

std::set<std::string> placeholders_of(std::string_view text) {
  std::set<std::string> out;
  scan(text, [](char) {}, [&](std::string_view name) { out.emplace(name); });
  return out;
}

const std::vector<std::string>& required_catalog_keys() {
  static const std::vector<std::string> keys = {
      "tutorial_1", "tutorial_2", "tutorial_3", "tutorial_4", "tutorial_5",
      "menu", "menu_submit", "menu_review", "menu_scoreboard", "menu_idiom", "menu_help", "help",
      "todays_idiom", "no_day", "submit_prompt", "needs_idiom", "label_question", "label_yes", "label_no",
      "submit_thanks", "near_duplicate",
      "tip_review", "tip_b_type", "tip_c_type", "tip_review_points", "tip_scoreboard",
      "review_prompt", "review_empty", "review_thanks", "verdict_like", "verdict_dislike", "verdict_report",
      "scoreboard_header", "scoreboard_row", "scoreboard_you", "scoreboard_empty", "soft_target_remaining",
      "achievement_early_bird", "achievement_author", "achievement_reviewer", "achievement_streak",
      "error_outside_window", "error_day_closed", "error_banned", "error_duplicate_sentence",
      "error_already_reviewed", "error_self_review", "error_unknown_submission", "error_empty_text",
      "error_not_registered", "error_generic",
      "notify_morning", "notify_score_idiomatic", "notify_score_nonidiomatic", "notify_score_neutral",
      "notify_happy_hour", "notify_like", "notify_rank_leader", "notify_rank_top5",
      "notify_rank_lost_first", "notify_rank_lost_top3", "notify_rank_lost_top5"};
  return keys;
}

std::vector<LintIssue> lint_catalogs(const std::map<std::string, Catalog>& catalogs) {
  std::vector<LintIssue> issues;
  std::set<std::string> all_keys(required_catalog_keys().begin(), required_catalog_keys().end());
  for (const auto& [_, c] : catalogs) {
    for (const auto& k : c.keys()) all_keys.insert(k);
  }
  for (const auto& key : all_keys) {
    // reference placeholder set: the first catalog defining the key
    const Catalog* reference = nullptr;
    for (const auto& [lang, c] : catalogs) {
      if (!c.has(key)) {
        issues.push_back({lang, key, "missing key"});
      } else if (!reference) {
        reference = &c;
      }
    }
    if (!reference) continue;
    const auto expected = reference->placeholders(key);
    for (const auto& [lang, c] : catalogs) {
      if (!c.has(key) || &c == reference) continue;
      const auto got = c.placeholders(key);
      if (got == expected) continue;
      std::string msg = "placeholders differ from " + reference->language() + ":";
      for (const auto& p : expected) {
        if (!got.count(p)) msg += " missing {" + p + "}";
      }
      for (const auto& p : got) {
        if (!expected.count(p)) msg += " extra {" + p + "}";
      }
      issues.push_back({lang, key, msg});
    }
  }
  return issues;
}

std::map<std::string, Catalog> load_catalog_dir(const std::filesystem::path& dir) {
  std::map<std::string, Catalog> out;
  if (!std::filesystem::is_directory(dir)) fail(ErrorCode::CatalogFormat, "no catalog directory " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    const auto lang = entry.path().stem().string();
    out.emplace(lang, Catalog::from_file(entry.path(), lang));
  }
  return out;
}

}  // namespace idiomcraft
