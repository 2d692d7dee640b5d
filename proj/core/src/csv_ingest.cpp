#include <algorithm>
#include <set>
#include <unordered_set>

#include "regrkit/error.hpp"
#include "regrkit/ingest.hpp"

namespace regrkit {

std::vector<std::vector<std::string>> read_csv_records(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError(line, "unexpected quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        quote_line = line;
        break;
      case ',':
        end_field();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field += c;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw ParseError(quote_line, "unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) end_record();

  // Blank records (a lone empty field) carry no data.
  std::erase_if(records, [](const auto& r) { return r.size() == 1 && r.front().empty(); });
  return records;
}

Dataset ingest_csv(std::string_view text, const std::vector<std::string>& label_columns) {
  const auto records = read_csv_records(text);
  if (records.empty()) throw ParseError(1, "missing header row");

  const auto& header = records.front();
  std::vector<AttributeSpec> specs;
  std::unordered_set<std::string> seen;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c].empty()) throw ParseError(1, "header column " + std::to_string(c + 1) + " is empty");
    if (!seen.insert(header[c]).second) throw ParseError(1, "duplicate header column '" + header[c] + "'");
    specs.push_back({header[c], AttributeKind::numeric, c});
  }
  for (const auto& label : label_columns) {
    auto it = std::find_if(specs.begin(), specs.end(), [&](const auto& s) { return s.name == label; });
    if (it == specs.end()) throw UnknownAttributeError(label);
    it->kind = AttributeKind::label;
  }

  std::vector<Row> rows;
  std::set<Row> distinct;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != specs.size()) throw WidthMismatchError(r, specs.size(), rec.size());
    Row row;
    row.reserve(rec.size());
    for (std::size_t c = 0; c < rec.size(); ++c) {
      if (specs[c].kind == AttributeKind::label) {
        row.emplace_back(rec[c]);
        continue;
      }
      try {
        row.emplace_back(parse_quantity(rec[c]));
      } catch (const MalformedQuantityError& e) {
        throw MalformedQuantityError("row " + std::to_string(r) + ", column '" + specs[c].name +
                                     "': " + e.what());
      }
    }
    if (distinct.insert(row).second) rows.push_back(std::move(row));
  }
  return build_dataset(std::move(specs), std::move(rows));
}

}  // namespace regrkit
