#include "prosodex/features.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "prosodex/error.hpp"

namespace prosodex {
namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double pstd_of(std::span<const double> v, double mean) {
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

WindowMeasures window_measures(const Window& window) {
  const std::vector<double> d(window.time_diffs.begin(), window.time_diffs.end());
  WindowMeasures m;
  m.span = window.span;
  if (!d.empty()) {
    m.mean_diff = mean_of(d);
    m.std_diff = pstd_of(d, m.mean_diff);
  }
  return m;
}

GridPointFeatures aggregate_windows(const WindowSet& windows) {
  GridPointFeatures f{};
  if (windows.empty()) return f;
  std::vector<double> spans, mus, sigmas;
  for (const auto& w : windows) {
    const auto m = window_measures(w);
    spans.push_back(m.span);
    mus.push_back(m.mean_diff);
    sigmas.push_back(m.std_diff);
  }
  const double mu_l = mean_of(spans);
  const double cv_l = cv(spans);
  const double mean_mu = mean_of(mus);
  const double mean_sigma = mean_of(sigmas);
  f = {mu_l, cv_l, mu_l * cv_l, mean_mu, pstd_of(mus, mean_mu), mean_sigma,
       pstd_of(sigmas, mean_sigma)};
  return f;
}

FeatureVector document_features(const SignalSequence& signals,
                                std::span<const WindowingParams> grid) {
  FeatureVector fv;
  fv.values.reserve(grid.size() * kFeaturesPerGridPoint);
  for (const auto& params : grid) {
    const auto f = aggregate_windows(detect_windows(signals, params));
    fv.values.insert(fv.values.end(), f.begin(), f.end());
  }
  return fv;
}

std::vector<std::string> feature_column_names(std::span<const WindowingParams> grid) {
  std::vector<std::string> names;
  for (const auto& p : grid) {
    char delta[32];
    std::snprintf(delta, sizeof delta, "%.2f", p.delta);
    for (auto name : kFeatureNames) {
      names.push_back("f_" + std::to_string(p.initial_pairs) + "_" + delta + "_" + std::string(name));
    }
  }
  return names;
}

StandardizationModel fit_standardizer(const Matrix& train) {
  if (train.rows() == 0) throw DomainError("cannot fit a standardizer on an empty matrix");
  StandardizationModel model;
  model.mean.resize(train.cols());
  model.stddev.resize(train.cols());
  for (std::size_t c = 0; c < train.cols(); ++c) {
    const auto col = train.column(c);
    model.mean[c] = mean_of(col);
    model.stddev[c] = pstd_of(col, model.mean[c]);
  }
  return model;
}

void apply_standardizer_inplace(const StandardizationModel& model, std::span<double> row) {
  if (row.size() != model.mean.size()) throw DomainError("standardizer width mismatch");
  for (std::size_t c = 0; c < row.size(); ++c) {
    row[c] = model.stddev[c] > 0.0 ? (row[c] - model.mean[c]) / model.stddev[c] : 0.0;
  }
}

Matrix apply_standardizer(const StandardizationModel& model, const Matrix& data) {
  Matrix out = data;
  for (std::size_t r = 0; r < out.rows(); ++r) apply_standardizer_inplace(model, out.row(r));
  return out;
}

Matrix FeatureTable::matrix() const {
  Matrix m;
  for (const auto& row : rows) m.append_row(row.values);
  if (rows.empty()) m = Matrix(0, names.size());
  return m;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_feature_csv(std::ostream& out, const FeatureTable& table) {
  out << "doc_id,label";
  for (const auto& n : table.names) out << ',' << n;
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.values.size() != table.names.size()) throw DomainError("feature row width mismatch");
    out << csv_escape(row.doc_id) << ',' << to_string(row.label);
    for (double v : row.values) out << ',' << format_double(v);
    out << '\n';
  }
}

FeatureTable read_feature_csv(std::istream& in) {
  FeatureTable table;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("feature CSV is empty", 0);
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "doc_id" || header[1] != "label") {
    throw ParseError("feature CSV header must start with doc_id,label", 1);
  }
  table.names.assign(header.begin() + 2, header.end());
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    FeatureVector fv;
    fv.doc_id = fields[0];
    try {
      fv.label = parse_label(fields[1]);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), line_no);
    }
    fv.values.reserve(fields.size() - 2);
    for (std::size_t i = 2; i < fields.size(); ++i) {
      double v = 0.0;
      const auto& f = fields[i];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw ParseError("bad number '" + f + "' in column " + header[i], line_no);
      }
      fv.values.push_back(v);
    }
    table.rows.push_back(std::move(fv));
  }
  return table;
}

}  // namespace prosodex
