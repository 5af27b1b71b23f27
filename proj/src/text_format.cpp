#include "rframes/text_format.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rframes/errors.hpp"
#include "rframes/number_format.hpp"

namespace rframes::text {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t'))
      return s.substr(0, i);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string Section::title() const {
  return "[" + name + (label.empty() ? "" : " " + label) + "]";
}

void Section::fail(const Entry& e, const std::string& what) const {
  throw ParseError(e.line, title() + " key '" + e.key + "': " + what);
}

const Entry* Section::find(std::string_view key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

const Entry& Section::require(std::string_view key) const {
  if (const Entry* e = find(key)) return *e;
  throw ParseError(line, title() + ": missing required key '" +
                             std::string(key) + "'");
}

std::optional<std::string> Section::string(std::string_view key) const {
  if (const Entry* e = find(key)) return e->value;
  return std::nullopt;
}

double Section::number(std::string_view key) const {
  const Entry& e = require(key);
  try {
    return parse_real(e.value, e.key);
  } catch (const DomainError& err) {
    fail(e, "expected a finite number, got '" + e.value + "'");
  }
}

std::optional<double> Section::optional_number(std::string_view key) const {
  if (!find(key)) return std::nullopt;
  return number(key);
}

std::vector<double> Section::numbers(std::string_view key) const {
  const Entry& e = require(key);
  std::vector<double> out;
  for (auto tok : split_ws(e.value)) {
    try {
      out.push_back(parse_real(tok, e.key));
    } catch (const DomainError&) {
      fail(e, "expected numbers, got '" + std::string(tok) + "'");
    }
  }
  return out;
}

Eigen::Vector3d Section::vector3(std::string_view key) const {
  const auto v = numbers(key);
  if (v.size() != 3) fail(require(key), "expected 3 components");
  return {v[0], v[1], v[2]};
}

std::optional<Eigen::Vector3d> Section::optional_vector3(std::string_view key) const {
  if (!find(key)) return std::nullopt;
  return vector3(key);
}

void Section::restrict_keys(std::initializer_list<std::string_view> allowed,
                            bool allow_rows) const {
  for (const auto& e : entries)
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      fail(e, "unknown key");
  if (!allow_rows && !rows.empty())
    throw ParseError(rows.front().line,
                     title() + ": expected 'key = value', got '" +
                         rows.front().text + "'");
}

std::vector<const Section*> Document::all(std::string_view name) const {
  std::vector<const Section*> out;
  for (const auto& s : sections)
    if (s.name == name) out.push_back(&s);
  return out;
}

const Section* Document::find(std::string_view name, std::string_view label) const {
  for (const auto& s : sections)
    if (s.name == name && s.label == label) return &s;
  return nullptr;
}

void Document::require_unique(std::string_view name) const {
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (sections[i].name != name) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (sections[j].name == name && sections[j].label == sections[i].label)
        throw ParseError(sections[i].line, "duplicate section " + sections[i].title());
  }
}

const Section& Document::require(std::string_view name, std::string_view label) const {
  if (const Section* s = find(name, label)) return *s;
  throw ParseError(0, "missing section [" + std::string(name) +
                          (label.empty() ? "" : " " + std::string(label)) + "]");
}

Document parse(std::string_view text) {
  Document doc;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                   : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError(line_no, "unterminated section header");
      const auto words = split_ws(trim(line.substr(1, line.size() - 2)));
      if (words.empty() || words.size() > 2)
        throw ParseError(line_no, "section header must be [name] or [name label]");
      Section s;
      s.name = words[0];
      if (words.size() == 2) s.label = words[1];
      s.line = line_no;
      doc.sections.push_back(std::move(s));
      continue;
    }

    if (doc.sections.empty())
      throw ParseError(line_no, "content before the first [section]");
    Section& current = doc.sections.back();

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      current.rows.push_back({std::string(line), line_no});
      continue;
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (current.find(key))
      throw ParseError(line_no, current.title() + ": duplicate key '" +
                                    std::string(key) + "'");
    current.entries.push_back({std::string(key), std::string(value), line_no});
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace rframes::text
