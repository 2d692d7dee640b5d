#include "regrkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "regrkit/arff.hpp"
#include "regrkit/cfs.hpp"
#include "regrkit/error.hpp"
#include "regrkit/evaluate.hpp"
#include "regrkit/ingest.hpp"
#include "regrkit/linreg.hpp"
#include "regrkit/model_io.hpp"
#include "regrkit/number_format.hpp"
#include "regrkit/smoreg.hpp"

namespace regrkit {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error while reading '" + path + "'");
  return buf.str();
}

/// Writes through a sibling temp file and renames it into place.
void write_atomic(const std::string& path, const std::string& content) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw DataError("error while writing '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DataError("cannot write '" + path + "': " + ec.message());
  }
}

/// Re-raises a library error with the offending file named up front.
[[noreturn]] void rethrow_for(const std::string& path, const Error& e) {
  const std::string what = path + ": " + e.what();
  switch (e.category()) {
    case ErrorCategory::usage:
      throw UsageError(what);
    case ErrorCategory::numerical:
      throw NumericalError(what);
    case ErrorCategory::data:
      break;
  }
  throw DataError(what);
}

Dataset load_dataset(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_arff(text);
  } catch (const Error& e) {
    rethrow_for(path, e);
  }
}

Model load_model(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return read_model(text);
  } catch (const Error& e) {
    rethrow_for(path, e);
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw UsageError("empty name in list '" + text + "'");
    out.push_back(item);
  }
  return out;
}

std::vector<std::string> default_attrs(const Dataset& d, const std::string& target,
                                       const std::vector<std::string>& given) {
  if (!given.empty()) return given;
  std::vector<std::string> out;
  for (const auto& n : d.numeric_names())
    if (n != target) out.push_back(n);
  return out;
}

/// Aligned text rendering of a CSV table: numbers right, text left.
std::string render_pretty(const std::string& csv) {
  const auto records = read_csv_records(csv);
  std::size_t cols = 0;
  for (const auto& r : records) cols = std::max(cols, r.size());
  std::vector<std::size_t> width(cols, 0);
  std::vector<bool> numeric(cols, true);
  for (std::size_t i = 0; i < records.size(); ++i)
    for (std::size_t c = 0; c < records[i].size(); ++c) {
      width[c] = std::max(width[c], records[i][c].size());
      if (i > 0 && !records[i][c].empty() && !parse_decimal(records[i][c])) numeric[c] = false;
    }
  std::string out;
  for (const auto& r : records) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string pad(width[c] - r[c].size(), ' ');
      if (c) line += "  ";
      line += numeric[c] ? pad + r[c] : r[c] + pad;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Emits a table to a file or the output stream.
void emit(const std::string& csv, const std::string& out_path, bool pretty, std::ostream& out) {
  const std::string text = pretty ? render_pretty(csv) : csv;
  if (out_path.empty())
    out << text;
  else
    write_atomic(out_path, text);
}

std::string signed_term(double v, int decimals, bool first) {
  const std::string mag = format_rounded(std::abs(v), decimals);
  if (first) return (v < 0 ? "-" : "") + mag;
  return (v < 0 ? " - " : " + ") + mag;
}

std::string describe_linear(const LinearModel& m) {
  std::string s = m.target + " =\n";
  for (const auto& t : m.terms) s += "  " + signed_term(t.coefficient, 4, true) + " * " + t.attribute + " +\n";
  return s + "  " + signed_term(m.intercept, 4, true) + "\n";
}

std::string describe_svr(const SvrModel& m) {
  const std::string tag =
      m.filter.kind() == FilterKind::none ? "" : "(" + std::string(to_string(m.filter.kind())) + "d) ";
  std::string s = "weights (not support vectors):\n";
  for (const auto& t : m.weights) s += signed_term(t.coefficient, 4, false) + " * " + tag + t.attribute + "\n";
  return s + signed_term(m.bias, 4, false) + "\n";
}

struct Options {
  // shared
  std::string data, target, out, attrs;
  bool pretty = false;
  // ingest
  std::string in, label_cols;
  // correlate
  std::optional<int> round;
  // linreg
  std::string selection = "greedy";
  // smoreg
  std::string filter, target_scaling = "filtered";
  SvrParams svr;
  // cfs
  std::string weighting = "spread";
  int stale_limit = 5;
  // evaluate
  std::string model;
  bool ceil_predictions = false;
  std::optional<int> coef_digits;
  int error_decimals = 3;
  // growth
  std::string cost_attrs;
  std::size_t baseline_row = 1;
};

void cmd_ingest(const Options& o, std::ostream& out) {
  const auto labels = o.label_cols.empty() ? std::vector<std::string>{} : split_list(o.label_cols);
  const std::string text = read_file(o.in);
  Dataset d;
  try {
    d = fs::path(o.in).extension() == ".arff" ? parse_arff(text) : ingest_csv(text, labels);
  } catch (const Error& e) {
    rethrow_for(o.in, e);
  }
  write_atomic(o.out, write_arff(d, fs::path(o.in).stem().string()));
  out << "wrote " << d.size() << " instances, " << d.attributes().size() << " attributes to " << o.out << "\n";
}

void cmd_describe(const Options& o, std::ostream& out) {
  const auto d = load_dataset(o.data);
  std::string csv = "attribute,kind,count,min,max,mean,stddev\n";
  for (const auto& a : d.attributes()) {
    csv += csv_field(a.name) + ",";
    if (a.kind == AttributeKind::label) {
      csv += "label," + std::to_string(d.size()) + ",,,,\n";
      continue;
    }
    csv += "numeric," + std::to_string(d.size());
    if (d.empty()) {
      csv += ",,,,\n";
      continue;
    }
    const auto s = column_stats(d, a.name);
    csv += "," + format_significant(s.min, 6) + "," + format_significant(s.max, 6) + "," +
           format_significant(s.mean, 6) + "," + (s.n > 1 ? format_significant(s.stddev, 6) : "") + "\n";
  }
  emit(csv, "", o.pretty, out);
}

void cmd_correlate(const Options& o, std::ostream& out) {
  const auto d = load_dataset(o.data);
  CorrelationMatrix corr;
  try {
    corr = correlation_matrix(d);
  } catch (const Error& e) {
    rethrow_for(o.data, e);
  }
  auto cell = [&](double v) { return o.round ? format_rounded(v, *o.round) : format_significant(v, 6); };
  std::string csv;
  for (const auto& n : corr.names()) csv += "," + csv_field(n);
  csv += "\n";
  for (std::size_t i = 0; i < corr.size(); ++i) {
    csv += csv_field(corr.names()[i]);
    for (std::size_t j = 0; j < corr.size(); ++j) csv += "," + cell(corr(i, j));
    csv += "\n";
  }
  emit(csv, o.out, o.pretty, out);
}

void cmd_fit_linreg(const Options& o, std::ostream& out) {
  const auto selection = parse_selection(o.selection);
  const auto d = load_dataset(o.data);
  const auto m = fit_linreg(d, o.target, default_attrs(d, o.target, split_list(o.attrs)), selection);
  write_atomic(o.out, write_model(m));
  out << describe_linear(m);
}

void cmd_fit_smoreg(const Options& o, std::ostream& out) {
  const auto kind = parse_filter_kind(o.filter);
  if (o.target_scaling != "filtered" && o.target_scaling != "raw")
    throw UsageError("unknown target scaling '" + o.target_scaling + "' (expected filtered or raw)");
  const auto scaling = o.target_scaling == "raw" ? TargetScaling::raw : TargetScaling::filtered;
  o.svr.validate();
  const auto d = load_dataset(o.data);
  const auto m = fit_smoreg(d, o.target, default_attrs(d, o.target, split_list(o.attrs)), kind, o.svr, scaling);
  write_atomic(o.out, write_model(m));
  out << describe_svr(m);
}

void cmd_select_cfs(const Options& o, std::ostream& out) {
  const auto weighting = parse_cfs_weighting(o.weighting);
  if (o.stale_limit < 1) throw UsageError("--stale-limit must be positive");
  const auto d = load_dataset(o.data);
  const auto r = cfs_select(d, o.target, weighting, o.stale_limit);
  std::string idx;
  for (std::size_t i = 0; i < r.indices.size(); ++i) idx += (i ? "," : "") + std::to_string(r.indices[i]);
  out << "Selected attributes: " << idx << " : " << r.selected.size() << "\n";
  for (const auto& s : r.selected) out << "    " << s << "\n";
  out << "Merit of best subset found: " << format_rounded(r.search_merit, 4) << "\n";
}

void cmd_evaluate(const Options& o, std::ostream& out) {
  if (o.coef_digits && (*o.coef_digits < 0 || *o.coef_digits > 15))
    throw UsageError("--coef-digits must be between 0 and 15");
  if (o.error_decimals < 0 || o.error_decimals > 15) throw UsageError("--error-decimals must be between 0 and 15");
  Model m = load_model(o.model);
  const auto d = load_dataset(o.data);
  if (o.coef_digits) std::visit([&](auto& model) { model = round_coefficients(model, *o.coef_digits); }, m);
  const auto rows =
      evaluate_model(m, d, o.ceil_predictions ? PredictionRounding::ceiling : PredictionRounding::none);
  emit(prediction_table_csv(rows, o.error_decimals), o.out, o.pretty, out);
  if (!o.out.empty())
    out << "correlation coefficient: " << format_rounded(correlation_coefficient(rows), 4) << "\n";
}

void cmd_report_growth(const Options& o, std::ostream& out) {
  const auto costs = split_list(o.cost_attrs);
  if (o.baseline_row < 1) throw UsageError("--baseline-row is 1-based");
  const auto d = load_dataset(o.data);
  emit(growth_table_csv(growth_report(d, o.target, costs, o.baseline_row)), o.out, o.pretty, out);
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::usage:
      return kExitUsage;
    case ErrorCategory::data:
      return kExitData;
    case ErrorCategory::numerical:
      return kExitNumerical;
  }
  return kExitData;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  void (*command)(const Options&, std::ostream&) = nullptr;

  CLI::App app{"Regression and attribute-selection toolkit for tabular web metrics", "regrkit"};
  app.require_subcommand(1);
  auto bind = [&command](CLI::App* sub, void (*fn)(const Options&, std::ostream&)) {
    sub->callback([&command, fn] { command = fn; });
  };
  auto add_pretty = [&o](CLI::App* sub) { sub->add_flag("--pretty", o.pretty, "Render tables as aligned text"); };
  auto add_model_inputs = [&o](CLI::App* sub) {
    sub->add_option("--data", o.data, "Training data (ARFF)")->required();
    sub->add_option("--target", o.target, "Attribute to predict")->required();
    sub->add_option("--attrs", o.attrs, "Comma-separated input attributes (default: every other numeric one)");
    sub->add_option("--out", o.out, "Model file to write")->required();
  };

  auto* ingest = app.add_subcommand("ingest", "Convert a CSV export to ARFF");
  ingest->add_option("--in", o.in, "Input CSV (or ARFF) file")->required();
  ingest->add_option("--out", o.out, "Output ARFF file")->required();
  ingest->add_option("--label-cols", o.label_cols, "Comma-separated columns kept as text labels");
  bind(ingest, cmd_ingest);

  auto* describe = app.add_subcommand("describe", "Per-attribute summary statistics");
  describe->add_option("--data", o.data, "Dataset (ARFF)")->required();
  add_pretty(describe);
  bind(describe, cmd_describe);

  auto* correlate = app.add_subcommand("correlate", "Pearson correlation matrix of the numeric attributes");
  correlate->add_option("--data", o.data, "Dataset (ARFF)")->required();
  correlate->add_option("--round", o.round, "Round cells to N decimals (default: 6 significant digits)")
      ->check(CLI::Range(0, 15));
  correlate->add_option("--out", o.out, "CSV file to write (default: standard output)");
  add_pretty(correlate);
  bind(correlate, cmd_correlate);

  auto* fit = app.add_subcommand("fit", "Fit a regression model");
  fit->require_subcommand(1);
  auto* linreg = fit->add_subcommand("linreg", "Least-squares linear regression");
  add_model_inputs(linreg);
  linreg->add_option("--selection", o.selection, "Attribute selection: none, greedy, exhaustive or m5")
      ->capture_default_str();
  bind(linreg, cmd_fit_linreg);

  auto* smoreg = fit->add_subcommand("smoreg", "Linear support vector regression (SMO)");
  add_model_inputs(smoreg);
  smoreg->add_option("--filter", o.filter, "Input filter: none, normalize or standardize")->required();
  smoreg->add_option("--c", o.svr.c, "Box constraint C")->capture_default_str();
  smoreg->add_option("--epsilon", o.svr.epsilon, "Tube half-width in filtered target units")->capture_default_str();
  smoreg->add_option("--tol", o.svr.tolerance, "KKT tolerance")->capture_default_str();
  smoreg->add_option("--max-updates", o.svr.max_updates, "Pair-update limit")->capture_default_str();
  smoreg->add_option("--target-scaling", o.target_scaling, "Filter the target too (filtered) or keep it raw")
      ->capture_default_str();
  bind(smoreg, cmd_fit_smoreg);

  auto* select = app.add_subcommand("select", "Attribute subset selection");
  select->require_subcommand(1);
  auto* cfs = select->add_subcommand("cfs", "Correlation-based feature selection");
  cfs->add_option("--data", o.data, "Dataset (ARFF)")->required();
  cfs->add_option("--target", o.target, "Class attribute")->required();
  cfs->add_option("--weighting", o.weighting, "Merit weighting: spread or uniform")->capture_default_str();
  cfs->add_option("--stale-limit", o.stale_limit, "Non-improving expansions before the search stops")
      ->capture_default_str();
  bind(cfs, cmd_select_cfs);

  auto* evaluate = app.add_subcommand("evaluate", "Predict a dataset with a saved model");
  evaluate->add_option("--model", o.model, "Model file")->required();
  evaluate->add_option("--data", o.data, "Dataset (ARFF)")->required();
  evaluate->add_option("--out", o.out, "CSV file to write (default: standard output)");
  evaluate->add_flag("--ceil-predictions", o.ceil_predictions,
                     "Round predictions up to whole units; error percent rounded away from zero");
  evaluate->add_option("--coef-digits", o.coef_digits, "Round model coefficients to N decimals first");
  evaluate->add_option("--error-decimals", o.error_decimals, "Decimals in the error_pct column")
      ->capture_default_str();
  add_pretty(evaluate);
  bind(evaluate, cmd_evaluate);

  auto* report = app.add_subcommand("report", "Spreadsheet-style reports");
  report->require_subcommand(1);
  auto* growth = report->add_subcommand("growth", "Cost-based growth table");
  growth->add_option("--data", o.data, "Dataset (ARFF)")->required();
  growth->add_option("--target", o.target, "Page-view attribute")->required();
  growth->add_option("--cost-attrs", o.cost_attrs, "Comma-separated cost attributes")->required();
  growth->add_option("--baseline-row", o.baseline_row, "1-based row that fixes the cost per view")
      ->capture_default_str();
  growth->add_option("--out", o.out, "CSV file to write (default: standard output)");
  add_pretty(growth);
  bind(growth, cmd_report_growth);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    command(o, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "regrkit: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "regrkit: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace regrkit
