#pragma once

// Flat structured-text documents:
//
//   # comment
//   [section optional-label]
//   key = value      # trailing comment
//   1.0 0.0          (data row: any non-blank line without '=')
//
// Keys are unique within a section; sections may repeat (consumers decide). Data rows are kept in order for the
// consumers that accept them and rejected by the others.

#include <Eigen/Core>

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rframes::text {

struct Entry {
  std::string key;
  std::string value;
  int line{0};
};

struct Row {
  std::string text;
  int line{0};
};

class Section {
 public:
  std::string name;
  std::string label;
  int line{0};
  std::vector<Entry> entries;
  std::vector<Row> rows;

  // "[name label]" for diagnostics.
  std::string title() const;

  const Entry* find(std::string_view key) const;
  const Entry& require(std::string_view key) const;
  std::optional<std::string> string(std::string_view key) const;
  double number(std::string_view key) const;
  std::optional<double> optional_number(std::string_view key) const;
  // Whitespace-separated reals.
  std::vector<double> numbers(std::string_view key) const;
  Eigen::Vector3d vector3(std::string_view key) const;
  std::optional<Eigen::Vector3d> optional_vector3(std::string_view key) const;

  // Throws on keys outside `allowed`, or on data rows unless allow_rows.
  void restrict_keys(std::initializer_list<std::string_view> allowed,
                     bool allow_rows = false) const;

  [[noreturn]] void fail(const Entry& e, const std::string& what) const;
};

struct Document {
  std::vector<Section> sections;

  std::vector<const Section*> all(std::string_view name) const;
  const Section* find(std::string_view name, std::string_view label = {}) const;
  // Throws if two sections share this name and the same label.
  void require_unique(std::string_view name) const;
  const Section& require(std::string_view name, std::string_view label = {}) const;
};

/// Throws ParseError with the 1-based line number of the first problem.
Document parse(std::string_view text);
Document parse_file(const std::string& path);

}  // namespace rframes::text
