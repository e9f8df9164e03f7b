#include "drpkit/io/files.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace drpkit::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string text;
};

// Non-empty lines; `#` lines are returned only when keep_comments is set.
std::vector<Line> read_lines(const fs::path& path, bool keep_comments) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, 0, "cannot open file");
  std::vector<Line> lines;
  std::string text;
  std::size_t n = 0;
  while (std::getline(in, text)) {
    ++n;
    std::string t = trim(text);
    if (t.empty()) continue;
    if (t[0] == '#' && !keep_comments) continue;
    lines.push_back({n, std::move(t)});
  }
  return lines;
}

double parse_double(const std::string& field, const fs::path& path, std::size_t line,
                    const std::string& column) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw SchemaError(path, line, "column " + column + ": '" + field + "' is not a number");
  }
  if (!std::isfinite(v)) throw SchemaError(path, line, "column " + column + ": value is not finite");
  return v;
}

std::uint64_t parse_index(const std::string& field, const fs::path& path, std::size_t line,
                          const std::string& column) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw SchemaError(path, line,
                      "column " + column + ": '" + field + "' is not a non-negative integer");
  }
  return v;
}

// Checks `fixed` leading columns then prefix_0..prefix_{k-1}; returns k.
std::size_t check_header(const Line& header, const fs::path& path,
                         const std::vector<std::string>& fixed, const std::string& prefix) {
  const auto cols = split(header.text, ',');
  if (cols.size() <= fixed.size()) {
    throw SchemaError(path, header.number, "header needs at least one " + prefix + "_* column");
  }
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    if (cols[i] != fixed[i]) {
      throw SchemaError(path, header.number,
                        "header column " + std::to_string(i + 1) + " must be '" + fixed[i] + "'");
    }
  }
  for (std::size_t i = fixed.size(); i < cols.size(); ++i) {
    const std::string want = prefix + "_" + std::to_string(i - fixed.size());
    if (cols[i] != want) {
      throw SchemaError(path, header.number,
                        "header column " + std::to_string(i + 1) + " must be '" + want + "'");
    }
  }
  return cols.size() - fixed.size();
}

std::vector<std::string> row_fields(const Line& line, const fs::path& path, std::size_t expected) {
  auto fields = split(line.text, ',');
  if (fields.size() != expected) {
    throw SchemaError(path, line.number,
                      "expected " + std::to_string(expected) + " fields, found " +
                          std::to_string(fields.size()));
  }
  return fields;
}

// Rows keyed by sim_id must be dense in [0, N) without duplicates.
template <typename T>
std::vector<T> dense_by_id(std::vector<std::pair<std::uint64_t, T>> rows,
                           const std::vector<std::size_t>& line_numbers, const fs::path& path) {
  if (rows.empty()) throw SchemaError(path, 0, "file has no data rows");
  const std::size_t n = rows.size();
  std::vector<T> out(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = rows[i].first;
    if (id >= n) {
      throw SchemaError(path, line_numbers[i],
                        "sim_id " + std::to_string(id) + " outside dense range [0, " +
                            std::to_string(n) + ")");
    }
    if (seen[id]) {
      throw SchemaError(path, line_numbers[i], "duplicate sim_id " + std::to_string(id));
    }
    seen[id] = true;
    out[id] = std::move(rows[i].second);
  }
  return out;
}

}  // namespace

SchemaError::SchemaError(const fs::path& file, std::size_t line, const std::string& invariant)
    : Error(file.string() + (line ? ":" + std::to_string(line) : std::string()) + ": " + invariant),
      file_(file),
      line_(line) {}

void write_file_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_coverage_csv(const coverage::CoverageCurve& curve, const CoverageMeta& meta) {
  std::string out = "credibility,alpha,ecp,band_lo,band_hi\n";
  for (std::size_t i = 0; i < curve.credibility_levels.size(); ++i) {
    const double c = curve.credibility_levels[i];
    const double e = curve.ecp[i];
    const double hw = curve.band.half_widths[i];
    out += format_double(c) + ',' + format_double(1.0 - c) + ',' + format_double(e) + ',' +
           format_double(std::max(0.0, e - hw)) + ',' + format_double(std::min(1.0, e + hw)) + '\n';
  }
  out += "# method=" + meta.method + '\n';
  out += "# n_sims=" + std::to_string(meta.n_sims) + '\n';
  out += "# n_post=" + std::to_string(meta.n_post) + '\n';
  out += "# seed=" + std::to_string(meta.seed) + '\n';
  out += "# policy=" + meta.policy + '\n';
  out += "# metric=" + meta.metric + '\n';
  if (!meta.label.empty()) out += "# label=" + meta.label + '\n';
  return out;
}

CoverageTable read_coverage_csv(const fs::path& path) {
  const auto lines = read_lines(path, true);
  if (lines.empty() || lines[0].text != "credibility,alpha,ecp,band_lo,band_hi") {
    throw SchemaError(path, lines.empty() ? 0 : lines[0].number,
                      "header must be 'credibility,alpha,ecp,band_lo,band_hi'");
  }
  CoverageTable t;
  bool in_meta = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.text[0] == '#') {
      in_meta = true;
      const std::string body = trim(std::string_view(l.text).substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw SchemaError(path, l.number, "metadata row needs key=value");
      t.meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    if (in_meta) throw SchemaError(path, l.number, "data row after metadata rows");
    const auto f = row_fields(l, path, 5);
    const double c = parse_double(f[0], path, l.number, "credibility");
    const double a = parse_double(f[1], path, l.number, "alpha");
    const double e = parse_double(f[2], path, l.number, "ecp");
    const double lo = parse_double(f[3], path, l.number, "band_lo");
    const double hi = parse_double(f[4], path, l.number, "band_hi");
    if (c < 0.0 || c > 1.0) throw SchemaError(path, l.number, "credibility outside [0, 1]");
    if (std::abs(c + a - 1.0) > 1e-12) throw SchemaError(path, l.number, "credibility + alpha != 1");
    if (e < 0.0 || e > 1.0) throw SchemaError(path, l.number, "ecp outside [0, 1]");
    if (!(lo <= e && e <= hi)) throw SchemaError(path, l.number, "need band_lo <= ecp <= band_hi");
    if (!t.credibility.empty() && !(c > t.credibility.back())) {
      throw SchemaError(path, l.number, "credibility not strictly ascending");
    }
    t.credibility.push_back(c);
    t.alpha.push_back(a);
    t.ecp.push_back(e);
    t.band_lo.push_back(lo);
    t.band_hi.push_back(hi);
  }
  if (t.credibility.empty()) throw SchemaError(path, 0, "no data rows");
  return t;
}

std::string format_joint_csv(const coverage::JointSampleSet& dataset) {
  const std::size_t d = dataset.dim_theta();
  std::vector<const coverage::Simulation*> by_id(dataset.n_sims());
  for (const auto& s : dataset.sims()) by_id[s.sim_id] = &s;
  std::string out = "sim_id";
  for (std::size_t k = 0; k < d; ++k) out += ",theta_" + std::to_string(k);
  out += '\n';
  for (const auto* s : by_id) {
    out += std::to_string(s->sim_id);
    for (double v : s->theta_true) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

std::string format_observation_csv(const coverage::JointSampleSet& dataset) {
  std::vector<const coverage::Simulation*> by_id(dataset.n_sims());
  for (const auto& s : dataset.sims()) by_id[s.sim_id] = &s;
  const std::size_t m = by_id.empty() ? 0 : by_id[0]->x.size();
  std::string out = "sim_id";
  for (std::size_t k = 0; k < m; ++k) out += ",x_" + std::to_string(k);
  out += '\n';
  for (const auto* s : by_id) {
    if (s->x.size() != m) throw DimensionError("observations differ in length");
    out += std::to_string(s->sim_id);
    for (double v : s->x) out += ',' + format_double(v);
    out += '\n';
  }
  return out;
}

std::string format_posterior_csv(const std::vector<coverage::DenseMatrix>& samples) {
  const std::size_t d = samples.empty() ? 0 : samples[0].cols();
  std::string out = "sim_id,sample_id";
  for (std::size_t k = 0; k < d; ++k) out += ",theta_" + std::to_string(k);
  out += '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& m = samples[i];
    if (m.cols() != d) throw DimensionError("posterior sample blocks differ in width");
    for (std::size_t j = 0; j < m.rows(); ++j) {
      out += std::to_string(i) + ',' + std::to_string(j);
      for (double v : m.row(j)) out += ',' + format_double(v);
      out += '\n';
    }
  }
  return out;
}

JointRows read_joint_csv(const fs::path& path) {
  const auto lines = read_lines(path, false);
  if (lines.empty()) throw SchemaError(path, 0, "empty file");
  JointRows out;
  out.dim = check_header(lines[0], path, {"sim_id"}, "theta");
  std::vector<std::pair<std::uint64_t, coverage::Vector>> rows;
  std::vector<std::size_t> numbers;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = row_fields(lines[i], path, out.dim + 1);
    coverage::Vector theta(out.dim);
    for (std::size_t k = 0; k < out.dim; ++k) {
      theta[k] = parse_double(f[k + 1], path, lines[i].number, "theta_" + std::to_string(k));
    }
    rows.emplace_back(parse_index(f[0], path, lines[i].number, "sim_id"), std::move(theta));
    numbers.push_back(lines[i].number);
  }
  out.theta = dense_by_id(std::move(rows), numbers, path);
  return out;
}

std::vector<coverage::Observation> read_observation_csv(const fs::path& path, std::size_t n_sims) {
  const auto lines = read_lines(path, false);
  if (lines.empty()) throw SchemaError(path, 0, "empty file");
  const std::size_t m = check_header(lines[0], path, {"sim_id"}, "x");
  std::vector<std::pair<std::uint64_t, coverage::Observation>> rows;
  std::vector<std::size_t> numbers;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = row_fields(lines[i], path, m + 1);
    coverage::Observation x(m);
    for (std::size_t k = 0; k < m; ++k) {
      x[k] = parse_double(f[k + 1], path, lines[i].number, "x_" + std::to_string(k));
    }
    rows.emplace_back(parse_index(f[0], path, lines[i].number, "sim_id"), std::move(x));
    numbers.push_back(lines[i].number);
  }
  auto out = dense_by_id(std::move(rows), numbers, path);
  if (out.size() != n_sims) {
    throw SchemaError(path, 0,
                      "observation file has " + std::to_string(out.size()) +
                          " sims, joint file has " + std::to_string(n_sims));
  }
  return out;
}

std::vector<coverage::DenseMatrix> read_posterior_csv(const fs::path& path, std::size_t n_sims,
                                                      std::size_t dim) {
  const auto lines = read_lines(path, false);
  if (lines.empty()) throw SchemaError(path, 0, "empty file");
  const std::size_t d = check_header(lines[0], path, {"sim_id", "sample_id"}, "theta");
  if (d != dim) {
    throw SchemaError(path, lines[0].number,
                      "posterior has " + std::to_string(d) + " theta columns, joint file has " +
                          std::to_string(dim));
  }
  std::vector<std::vector<double>> flat(n_sims);
  std::vector<std::size_t> counts(n_sims, 0);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = row_fields(lines[i], path, d + 2);
    const auto id = parse_index(f[0], path, lines[i].number, "sim_id");
    (void)parse_index(f[1], path, lines[i].number, "sample_id");
    if (id >= n_sims) {
      throw SchemaError(path, lines[i].number,
                        "sim_id " + std::to_string(id) + " not present in joint file");
    }
    for (std::size_t k = 0; k < d; ++k) {
      flat[id].push_back(parse_double(f[k + 2], path, lines[i].number, "theta_" + std::to_string(k)));
    }
    ++counts[id];
  }
  std::vector<coverage::DenseMatrix> out(n_sims);
  for (std::size_t i = 0; i < n_sims; ++i) {
    if (counts[i] == 0) {
      throw SchemaError(path, 0, "sim_id " + std::to_string(i) + " has no posterior samples");
    }
    out[i] = coverage::DenseMatrix(counts[i], d);
    std::copy(flat[i].begin(), flat[i].end(), out[i].data().begin());
  }
  return out;
}

std::vector<coverage::Vector> read_theta_table(const fs::path& path, std::size_t dim) {
  const auto lines = read_lines(path, false);
  if (lines.empty()) throw SchemaError(path, 0, "empty file");
  const std::size_t d = check_header(lines[0], path, {}, "theta");
  if (d != dim) {
    throw SchemaError(path, lines[0].number,
                      "expected " + std::to_string(dim) + " theta columns, found " + std::to_string(d));
  }
  std::vector<coverage::Vector> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = row_fields(lines[i], path, d);
    coverage::Vector v(d);
    for (std::size_t k = 0; k < d; ++k) {
      v[k] = parse_double(f[k], path, lines[i].number, "theta_" + std::to_string(k));
    }
    out.push_back(std::move(v));
  }
  if (out.empty()) throw SchemaError(path, 0, "no data rows");
  return out;
}

std::vector<coverage::Bounds> read_bounds_file(const fs::path& path) {
  std::vector<coverage::Bounds> out;
  for (const auto& l : read_lines(path, false)) {
    const auto parts = split(l.text, ':');
    if (parts.size() != 2) throw SchemaError(path, l.number, "bounds line must be lo:hi");
    const double lo = parse_double(parts[0], path, l.number, "lo");
    const double hi = parse_double(parts[1], path, l.number, "hi");
    if (!(lo < hi)) throw SchemaError(path, l.number, "bounds need lo < hi");
    out.push_back({lo, hi});
  }
  if (out.empty()) throw SchemaError(path, 0, "no bounds");
  return out;
}

std::string format_bounds_file(const std::vector<coverage::Bounds>& bounds) {
  std::string out;
  for (const auto& b : bounds) out += format_double(b.lo) + ':' + format_double(b.hi) + '\n';
  return out;
}

std::vector<double> read_weights_file(const fs::path& path) {
  std::vector<double> out;
  for (const auto& l : read_lines(path, false)) {
    for (const auto& f : split(l.text, ',')) {
      if (f.empty()) continue;
      out.push_back(parse_double(f, path, l.number, "weight"));
    }
  }
  if (out.empty()) throw SchemaError(path, 0, "no weights");
  return out;
}

std::string format_config(const KeyValues& entries) {
  std::string out;
  for (const auto& [k, v] : entries) out += k + '=' + v + '\n';
  return out;
}

KeyValues read_config(const fs::path& path) {
  KeyValues out;
  for (const auto& l : read_lines(path, false)) {
    const auto eq = l.text.find('=');
    if (eq == std::string::npos) throw SchemaError(path, l.number, "config line needs key=value");
    out.emplace_back(trim(l.text.substr(0, eq)), trim(l.text.substr(eq + 1)));
  }
  return out;
}

}  // namespace drpkit::io
