#include "aaprox_tools/dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace aaprox::tools {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, Eigen::Index min_cols) {
  std::vector<Eigen::Triplet<double>> entries;
  std::vector<double> labels;
  Eigen::Index cols = min_cols;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = trim(view.substr(0, hash));
    if (view.empty()) continue;

    std::istringstream tokens{std::string(view)};
    std::string token;
    tokens >> token;
    double label = 0.0;
    if (!parse_double(token, label)) fail(line_no, "bad label '" + token + "'");
    const auto row = static_cast<int>(labels.size());
    labels.push_back(label);

    long previous = 0;
    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) fail(line_no, "expected idx:val, got '" + token + "'");
      long index = 0;
      const std::string_view idx_text(token.data(), colon);
      auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), index);
      if (ec != std::errc() || ptr != idx_text.data() + idx_text.size() || index < 1) {
        fail(line_no, "bad index in '" + token + "'");
      }
      if (index <= previous) fail(line_no, "indices must be strictly increasing");
      previous = index;
      double value = 0.0;
      if (!parse_double(std::string_view(token).substr(colon + 1), value)) {
        fail(line_no, "bad value in '" + token + "'");
      }
      entries.emplace_back(row, static_cast<int>(index - 1), value);
      cols = std::max<Eigen::Index>(cols, index);
    }
  }
  if (labels.empty()) throw ParseError("no data rows");

  bool zero_one = true;
  for (double l : labels) zero_one = zero_one && (l == 0.0 || l == 1.0);
  Vector b(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double l = labels[i];
    b(static_cast<Eigen::Index>(i)) = zero_one ? (l == 0.0 ? -1.0 : 1.0) : l;
  }

  DataMatrix::Sparse sparse(b.size(), cols);
  sparse.setFromTriplets(entries.begin(), entries.end());
  sparse.makeCompressed();
  return {DataMatrix(std::move(sparse)), std::move(b)};
}

Dataset parse_libsvm_file(const std::string& path, Eigen::Index min_cols) {
  auto in = open(path);
  return parse_libsvm(in, min_cols);
}

void write_libsvm(std::ostream& out, const Dataset& data) {
  const DataMatrix::Sparse sparse =
      data.a.sparse() ? *data.a.sparse() : data.a.to_dense().sparseView(0.0, 0.0);
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < sparse.outerSize(); ++i) {
    out << data.b(i);
    for (DataMatrix::Sparse::InnerIterator it(sparse, i); it; ++it) {
      if (it.value() != 0.0) out << ' ' << (it.col() + 1) << ':' << it.value();
    }
    out << '\n';
  }
  out.precision(old_precision);
}

Dataset parse_dense_csv(std::istream& in, bool has_header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (has_header && line_no == 1) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = view.find(',', start);
      const auto field = trim(view.substr(start, comma == std::string_view::npos ? view.npos : comma - start));
      double value = 0.0;
      if (!parse_double(field, value)) fail(line_no, "bad number '" + std::string(field) + "'");
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (row.size() < 2) fail(line_no, "need a target and at least one feature");
    if (width == 0) width = row.size();
    if (row.size() != width) fail(line_no, "expected " + std::to_string(width) + " fields");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no data rows");

  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(width - 1);
  Matrix a(m, n);
  Vector b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    b(i) = row[0];
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = row[static_cast<std::size_t>(j + 1)];
  }
  return {DataMatrix(std::move(a)), std::move(b)};
}

Dataset parse_dense_csv_file(const std::string& path, bool has_header) {
  auto in = open(path);
  return parse_dense_csv(in, has_header);
}

}  // namespace aaprox::tools
