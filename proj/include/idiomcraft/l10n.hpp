#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace idiomcraft {

using Params = std::map<std::string, std::string>;

/// Message templates for one language. File format: `key=template` per line,
/// `#` comments, `{name}` placeholders, `\n` for a line break.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::string language) : language_(std::move(language)) {}

  static Catalog from_file(const std::filesystem::path& path, std::string language);
  void load(std::string_view content);

  const std::string& language() const { return language_; }
  bool has(const std::string& key) const { return templates_.count(key) != 0; }
  std::set<std::string> keys() const;
  std::set<std::string> placeholders(const std::string& key) const;
  const std::string& raw(const std::string& key) const;

  /// Throws MissingKey or MissingParam.
  std::string render(const std::string& key, const Params& params = {}) const;

 private:
  std::string language_;
  std::map<std::string, std::string> templates_;
};

std::set<std::string> placeholders_of(std::string_view text);

struct LintIssue {
  std::string language;
  std::string key;
  std::string message;
};

/// Key and placeholder parity across all catalogs, plus the keys the game needs.
std::vector<LintIssue> lint_catalogs(const std::map<std::string, Catalog>& catalogs);

/// Keys every catalog must define.
const std::vector<std::string>& required_catalog_keys();

/// Loads `<dir>/<lang>.txt` for each language found.
std::map<std::string, Catalog> load_catalog_dir(const std::filesystem::path& dir);

}  // namespace idiomcraft
