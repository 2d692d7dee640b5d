#include "regrkit/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "regrkit/error.hpp"
#include "regrkit/number_format.hpp"

namespace regrkit {

namespace {

constexpr std::string_view kHeader = "# regrkit model v1";

std::string name_token(std::string_view name) {
  const bool plain = !name.empty() && std::none_of(name.begin(), name.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '\'' || c == '\\';
  });
  if (plain) return std::string(name);
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Splits a value into whitespace-separated tokens, honouring single quotes.
std::vector<std::string> tokens(std::string_view s, std::size_t line) {
  std::vector<std::string> out;
  while (true) {
    s = trim(s);
    if (s.empty()) return out;
    std::string tok;
    if (s.front() == '\'') {
      std::size_t i = 1;
      for (; i < s.size() && s[i] != '\''; ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        tok += s[i];
      }
      if (i >= s.size()) throw ParseError(line, "unterminated quoted name");
      s.remove_prefix(i + 1);
    } else {
      std::size_t i = 0;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      tok = std::string(s.substr(0, i));
      s.remove_prefix(i);
    }
    out.push_back(std::move(tok));
  }
}

double number(std::string_view text, std::size_t line) {
  auto v = parse_decimal(text);
  if (!v || !std::isfinite(*v)) throw ParseError(line, "malformed number '" + std::string(text) + "'");
  return *v;
}

}  // namespace

const std::string& model_target(const Model& m) {
  return std::visit([](const auto& model) -> const std::string& { return model.target; }, m);
}

std::string write_model(const Model& m) {
  std::string out(kHeader);
  out += '\n';
  if (const auto* lin = std::get_if<LinearModel>(&m)) {
    out += "type: linear\n";
    out += "target: " + name_token(lin->target) + "\n";
    out += "filter: none\n";
    for (const auto& t : lin->terms) out += "coef: " + name_token(t.attribute) + " " + format_shortest(t.coefficient) + "\n";
    out += "intercept: " + format_shortest(lin->intercept) + "\n";
    return out;
  }
  const auto& svr = std::get<SvrModel>(m);
  out += "type: svr\n";
  out += "target: " + name_token(svr.target) + "\n";
  out += "filter: " + std::string(to_string(svr.filter.kind())) + "\n";
  for (const auto& p : svr.filter.params())
    out += "filter_param: " + name_token(p.attribute) + " " + format_shortest(p.first) + " " +
           format_shortest(p.second) + "\n";
  for (const auto& t : svr.weights) out += "coef: " + name_token(t.attribute) + " " + format_shortest(t.coefficient) + "\n";
  out += "intercept: " + format_shortest(svr.bias) + "\n";
  out += "params: C=" + format_shortest(svr.params.c) + " epsilon=" + format_shortest(svr.params.epsilon) +
         " tol=" + format_shortest(svr.params.tolerance) + "\n";
  return out;
}

Model read_model(std::string_view text) {
  std::optional<std::string> type, target, filter;
  std::optional<double> intercept;
  std::optional<SvrParams> params;
  std::vector<FilterParam> filter_params;
  std::vector<LinearTerm> coefs;
  bool have_header = false;
  std::size_t number_of_line = 0;

  auto once = [](auto& slot, auto value, std::size_t line, std::string_view key) {
    if (slot) throw ParseError(line, "duplicate key '" + std::string(key) + "'");
    slot = std::move(value);
  };

  while (!text.empty()) {
    ++number_of_line;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty()) continue;
    if (!have_header) {
      if (line != kHeader) throw ParseError(number_of_line, "missing '" + std::string(kHeader) + "' header");
      have_header = true;
      continue;
    }
    if (line.front() == '#') continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(number_of_line, "expected 'key: value'");
    const std::string key(trim(line.substr(0, colon)));
    const auto value = tokens(line.substr(colon + 1), number_of_line);
    auto expect = [&](std::size_t count) {
      if (value.size() != count)
        throw ParseError(number_of_line, "'" + key + "' expects " + std::to_string(count) + " value(s)");
    };

    if (key == "type") {
      expect(1);
      if (value[0] != "linear" && value[0] != "svr") throw ParseError(number_of_line, "unknown model type '" + value[0] + "'");
      once(type, value[0], number_of_line, key);
    } else if (key == "target") {
      expect(1);
      once(target, value[0], number_of_line, key);
    } else if (key == "filter") {
      expect(1);
      try {
        parse_filter_kind(value[0]);
      } catch (const UsageError& e) {
        throw ParseError(number_of_line, e.what());
      }
      once(filter, value[0], number_of_line, key);
    } else if (key == "filter_param") {
      expect(3);
      filter_params.push_back({value[0], number(value[1], number_of_line), number(value[2], number_of_line)});
    } else if (key == "coef") {
      expect(2);
      coefs.push_back({value[0], number(value[1], number_of_line)});
    } else if (key == "intercept") {
      expect(1);
      once(intercept, number(value[0], number_of_line), number_of_line, key);
    } else if (key == "params") {
      SvrParams p;
      std::map<std::string, double> kv;
      for (const auto& item : value) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError(number_of_line, "expected NAME=VALUE, got '" + item + "'");
        const auto name = item.substr(0, eq);
        if (name != "C" && name != "epsilon" && name != "tol") throw ParseError(number_of_line, "unknown parameter '" + name + "'");
        if (!kv.emplace(name, number(item.substr(eq + 1), number_of_line)).second)
          throw ParseError(number_of_line, "duplicate parameter '" + name + "'");
      }
      if (kv.size() != 3) throw ParseError(number_of_line, "params needs C, epsilon and tol");
      p.c = kv["C"];
      p.epsilon = kv["epsilon"];
      p.tolerance = kv["tol"];
      once(params, p, number_of_line, key);
    } else {
      throw ParseError(number_of_line, "unknown key '" + key + "'");
    }
  }

  if (!have_header) throw ParseError(0, "empty model file");
  if (!type) throw ParseError(0, "model file lacks 'type'");
  if (!target) throw ParseError(0, "model file lacks 'target'");
  if (!intercept) throw ParseError(0, "model file lacks 'intercept'");
  if (coefs.empty()) throw ParseError(0, "model file has no 'coef' lines");

  if (*type == "linear") {
    if (filter && *filter != "none") throw ParseError(0, "linear models cannot carry a filter");
    if (!filter_params.empty()) throw ParseError(0, "linear models cannot carry filter parameters");
    if (params) throw ParseError(0, "linear models take no 'params'");
    return LinearModel{*target, std::move(coefs), *intercept};
  }

  if (!filter) throw ParseError(0, "svr model lacks 'filter'");
  if (!params) throw ParseError(0, "svr model lacks 'params'");
  const FilterKind kind = parse_filter_kind(*filter);
  if (kind == FilterKind::none && !filter_params.empty())
    throw ParseError(0, "filter 'none' takes no filter parameters");
  SvrModel m;
  m.target = *target;
  m.weights = std::move(coefs);
  m.bias = *intercept;
  try {
    params->validate();
    m.filter = FilterModel(kind, std::move(filter_params));
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
  if (kind != FilterKind::none)
    for (const auto& w : m.weights)
      if (!m.filter.covers(w.attribute)) throw ParseError(0, "no filter parameters for '" + w.attribute + "'");
  m.params = *params;
  return m;
}

}  // namespace regrkit
