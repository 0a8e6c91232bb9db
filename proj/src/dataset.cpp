#include "tsketch/dataset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>

#include "tsketch/errors.hpp"

namespace tsketch {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\v\f");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

bool parse_index(std::string_view tok, std::size_t& out) {
  if (tok.empty()) return false;
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string quoted(std::string_view tok) {
  return "'" + std::string(tok.substr(0, 64)) + "'";
}

std::string format_double(double v) {
  std::array<char, 40> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::size_t final_dim(std::size_t seen, std::optional<std::size_t> forced) {
  std::size_t dim = std::max<std::size_t>(seen, 1);
  if (forced) dim = std::max(dim, *forced);
  return dim;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::optional<std::size_t> forced_dim) {
  std::vector<std::vector<SparseEntry>> rows;
  std::vector<double> labels;
  std::size_t max_index = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;

    std::vector<SparseEntry> entries;
    std::size_t pos = 0;
    bool have_label = false;
    double label = 0.0;
    while (pos < body.size()) {
      const auto start = body.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      auto stop = body.find_first_of(" \t", start);
      if (stop == std::string_view::npos) stop = body.size();
      const std::string_view tok = body.substr(start, stop - start);
      pos = stop;

      if (!have_label) {
        if (!parse_double(tok, label)) {
          throw ParseError(line_no, "malformed label " + quoted(tok));
        }
        have_label = true;
        continue;
      }
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected index:value, got " + quoted(tok));
      }
      std::size_t index = 0;
      double value = 0.0;
      if (!parse_index(tok.substr(0, colon), index)) {
        throw ParseError(line_no, "malformed index in " + quoted(tok));
      }
      if (index == 0) throw ParseError(line_no, "indices are 1-based; got 0");
      if (!parse_double(tok.substr(colon + 1), value)) {
        throw ParseError(line_no, "malformed value in " + quoted(tok));
      }
      if (!entries.empty() && index - 1 <= entries.back().index) {
        throw ParseError(line_no, "indices not increasing at " + quoted(tok));
      }
      if (forced_dim && index > *forced_dim) {
        throw ParseError(line_no, "index " + std::to_string(index) +
                                      " exceeds forced dimension " +
                                      std::to_string(*forced_dim));
      }
      max_index = std::max(max_index, index);
      entries.push_back({index - 1, value});
    }
    labels.push_back(label);
    rows.push_back(std::move(entries));
  }

  Dataset data;
  if (rows.empty()) {
    data.dim = forced_dim.value_or(0);
    return data;
  }
  data.dim = final_dim(max_index, forced_dim);
  data.vectors.reserve(rows.size());
  for (auto& r : rows) data.vectors.push_back(InputVector::sparse(data.dim, std::move(r)));
  data.labels = std::move(labels);
  return data;
}

Dataset parse_csv_dense(std::istream& in, bool label_first,
                        std::optional<std::size_t> forced_dim) {
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  std::size_t width = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;

    std::vector<double> cells;
    std::size_t pos = 0;
    for (;;) {
      const auto comma = body.find(',', pos);
      const std::string_view cell =
          trim(body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos));
      double v = 0.0;
      if (!parse_double(cell, v)) {
        throw ParseError(line_no, "malformed number " + quoted(cell) + " in column " +
                                      std::to_string(cells.size() + 1));
      }
      cells.push_back(v);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (label_first) {
      if (cells.size() < 2) throw ParseError(line_no, "row has a label but no features");
      labels.push_back(cells.front());
      cells.erase(cells.begin());
    }
    if (rows.empty()) {
      width = cells.size();
      if (forced_dim && width > *forced_dim) {
        throw ParseError(line_no, "row width " + std::to_string(width) +
                                      " exceeds forced dimension " +
                                      std::to_string(*forced_dim));
      }
    } else if (cells.size() != width) {
      throw ParseError(line_no, "ragged row: expected " + std::to_string(width) +
                                    " features, got " + std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
  }

  Dataset data;
  if (rows.empty()) {
    data.dim = forced_dim.value_or(0);
    return data;
  }
  data.dim = final_dim(width, forced_dim);
  data.vectors.reserve(rows.size());
  for (auto& r : rows) {
    r.resize(data.dim, 0.0);
    data.vectors.push_back(InputVector::dense(std::move(r)));
  }
  if (label_first) data.labels = std::move(labels);
  return data;
}

void write_libsvm(std::ostream& out, const Dataset& data) {
  for (std::size_t r = 0; r < data.vectors.size(); ++r) {
    out << format_double(data.labels ? (*data.labels)[r] : 0.0);
    data.vectors[r].for_each_nonzero([&](std::size_t i, double v) {
      out << ' ' << (i + 1) << ':' << format_double(v);
    });
    out << '\n';
  }
}

void write_csv_dense(std::ostream& out, const Dataset& data, bool label_first) {
  for (std::size_t r = 0; r < data.vectors.size(); ++r) {
    bool first = true;
    if (label_first) {
      out << format_double(data.labels ? (*data.labels)[r] : 0.0);
      first = false;
    }
    for (double v : data.vectors[r].to_dense()) {
      if (!first) out << ',';
      out << format_double(v);
      first = false;
    }
    out << '\n';
  }
}

void write_feature_csv(std::ostream& out, const FeatureMatrix& m) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    const auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << format_double(row[c]);
    }
    out << '\n';
  }
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    bytes[b] = static_cast<char>((value >> (8 * b)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
bool get_le(std::istream& in, T& value) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) return false;
  value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) value |= static_cast<T>(bytes[b]) << (8 * b);
  return true;
}

}  // namespace

void write_feature_binary(std::ostream& out, const FeatureMatrix& m) {
  put_le<std::uint32_t>(out, kFeatureMatrixMagic);
  put_le<std::uint64_t>(out, m.rows);
  put_le<std::uint64_t>(out, m.cols);
  for (double v : m.values) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
}

FeatureMatrix read_feature_binary(std::istream& in) {
  std::uint32_t magic = 0;
  std::uint64_t rows = 0;
  std::uint64_t cols = 0;
  if (!get_le(in, magic) || !get_le(in, rows) || !get_le(in, cols)) {
    throw ParseError(0, "feature matrix: truncated header");
  }
  if (magic != kFeatureMatrixMagic) throw ParseError(0, "feature matrix: bad magic");
  if (cols != 0 && rows > (std::uint64_t{1} << 40) / cols) {
    throw ParseError(0, "feature matrix: implausible shape");
  }
  FeatureMatrix m{rows, cols, std::vector<double>(rows * cols)};
  for (double& v : m.values) {
    std::uint64_t bits = 0;
    if (!get_le(in, bits)) throw ParseError(0, "feature matrix: truncated payload");
    v = std::bit_cast<double>(bits);
  }
  return m;
}

}  // namespace tsketch
