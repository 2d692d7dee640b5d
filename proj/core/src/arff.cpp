#include "regrkit/arff.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "regrkit/error.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct Line {
  std::size_t number;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 1;
  while (!text.empty()) {
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back({number++, line});
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

/// Reads one token from the front of `s`: either a quoted string ('...' or
/// "..." with backslash escapes) or a run up to whitespace or `stop`.
/// Returns nullopt on an unterminated quote.
struct Token {
  std::string text;
  bool quoted = false;
};

std::optional<Token> take_token(std::string_view& s, char stop) {
  s = trim(s);
  Token tok;
  if (!s.empty() && (s.front() == '\'' || s.front() == '"')) {
    const char q = s.front();
    tok.quoted = true;
    std::size_t i = 1;
    for (; i < s.size() && s[i] != q; ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) ++i;
      tok.text += s[i];
    }
    if (i >= s.size()) return std::nullopt;
    s.remove_prefix(i + 1);
    return tok;
  }
  std::size_t i = 0;
  while (i < s.size() && s[i] != stop && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  tok.text = std::string(s.substr(0, i));
  s.remove_prefix(i);
  return tok;
}

bool needs_quotes(std::string_view s) {
  if (s.empty() || s == "?") return true;
  return std::any_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '\'' || c == '"' ||
           c == '%' || c == '{' || c == '}' || c == '\\';
  }) || s.front() == '@';
}

std::string quote(std::string_view s) {
  if (!needs_quotes(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  out += '\'';
  return out;
}

struct Header {
  std::string relation;
  std::vector<AttributeSpec> specs;
  std::size_t data_index = 0;  // index into lines of the first line after @data
};

Header parse_header(const std::vector<Line>& lines) {
  Header h;
  bool have_relation = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& [number, raw] = lines[i];
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '%') continue;
    if (s.front() != '@') throw ParseError(number, "expected a declaration, got '" + std::string(s) + "'");

    auto space = s.find_first_of(" \t");
    const std::string keyword = lower(s.substr(0, space));
    std::string_view rest = space == std::string_view::npos ? std::string_view{} : s.substr(space);

    if (keyword == "@relation") {
      if (have_relation) throw ParseError(number, "duplicate @relation");
      auto tok = take_token(rest, '\0');
      if (!tok || tok->text.empty()) throw ParseError(number, "@relation needs a name");
      h.relation = tok->text;
      have_relation = true;
    } else if (keyword == "@attribute") {
      if (!have_relation) throw ParseError(number, "@attribute before @relation");
      auto name = take_token(rest, '\0');
      if (!name || name->text.empty()) throw ParseError(number, "@attribute needs a name");
      const std::string type_text(trim(rest));
      const std::string type = lower(type_text);
      AttributeKind kind;
      if (type == "numeric" || type == "real" || type == "integer") {
        kind = AttributeKind::numeric;
      } else if (type == "string") {
        kind = AttributeKind::label;
      } else if (!type.empty() && (type.front() == '{' || type.starts_with("date") ||
                                   type.starts_with("relational"))) {
        throw ParseError(number, "unsupported attribute type '" + type_text + "' for '" + name->text + "'");
      } else {
        throw ParseError(number, "unknown attribute type '" + type_text + "' for '" + name->text + "'");
      }
      if (std::any_of(h.specs.begin(), h.specs.end(), [&](const auto& a) { return a.name == name->text; }))
        throw ParseError(number, "duplicate attribute '" + name->text + "'");
      h.specs.push_back({name->text, kind, h.specs.size()});
    } else if (keyword == "@data") {
      if (h.specs.empty()) throw ParseError(number, "@data before any @attribute");
      h.data_index = i + 1;
      return h;
    } else {
      throw ParseError(number, "unknown declaration '" + keyword + "'");
    }
  }
  throw ParseError(lines.empty() ? 0 : lines.back().number, "missing @data section");
}

}  // namespace

std::string arff_relation_name(std::string_view text) {
  return parse_header(split_lines(text)).relation;
}

Dataset parse_arff(std::string_view text) {
  const auto lines = split_lines(text);
  Header h = parse_header(lines);

  std::vector<Row> rows;
  for (std::size_t i = h.data_index; i < lines.size(); ++i) {
    const auto& [number, raw] = lines[i];
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '%') continue;
    if (s.front() == '{') throw ParseError(number, "sparse ARFF rows are not supported");

    Row row;
    while (true) {
      auto tok = take_token(s, ',');
      if (!tok) throw ParseError(number, "unterminated quoted value");
      const std::size_t col = row.size();
      if (col >= h.specs.size())
        throw ParseError(number, "too many values, expected " + std::to_string(h.specs.size()));
      if (!tok->quoted && tok->text == "?")
        throw MissingValueError(number, "missing value for '" + h.specs[col].name + "' is not supported");
      if (h.specs[col].kind == AttributeKind::numeric) {
        auto v = tok->quoted ? std::nullopt : parse_decimal(tok->text);
        if (!v) throw ParseError(number, "'" + tok->text + "' is not a number (attribute '" + h.specs[col].name + "')");
        row.emplace_back(*v);
      } else {
        row.emplace_back(tok->text);
      }
      s = trim(s);
      if (s.empty()) break;
      if (s.front() != ',') throw ParseError(number, "expected ',' after value " + std::to_string(col + 1));
      s.remove_prefix(1);
    }
    if (row.size() != h.specs.size())
      throw ParseError(number, "expected " + std::to_string(h.specs.size()) + " values, got " +
                                   std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  try {
    return build_dataset(std::move(h.specs), std::move(rows));
  } catch (const NonFiniteValueError& e) {
    throw ParseError(0, e.what());
  }
}

std::string write_arff(const Dataset& d, std::string_view relation_name) {
  std::string out = "@relation " + quote(relation_name) + "\n";
  for (const auto& a : d.attributes())
    out += "@attribute " + quote(a.name) + (a.kind == AttributeKind::numeric ? " numeric\n" : " string\n");
  out += "@data\n";
  for (const auto& row : d.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const double* v = std::get_if<double>(&row[c]))
        out += format_shortest(*v);
      else
        out += quote(std::get<std::string>(row[c]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace regrkit
