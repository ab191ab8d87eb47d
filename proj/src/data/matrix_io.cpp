#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "subclust/data_model.hpp"

namespace subclust {
namespace {

constexpr std::array<char, 4> kMagic = {'S', 'S', 'C', 'B'};
constexpr std::uint8_t kVersion = 0x01;

static_assert(std::numeric_limits<double>::is_iec559);

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size())) {
    throw DataError("truncated binary matrix file: " + path.string());
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw DataError("malformed number '" + std::string(field) + "' at " + path.string() + ":" +
                    std::to_string(line));
  }
  return value;
}

Matrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma), path, line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("ragged CSV row at " + path.string() + ":" + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("empty matrix file " + path.string());
  // One sample per row on disk, one sample per column in memory.
  Matrix m(static_cast<Index>(rows.front().size()), static_cast<Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (std::size_t i = 0; i < rows[j].size(); ++i) m(Index(i), Index(j)) = rows[j][i];
  }
  return m;
}

Matrix read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DataError("bad magic in binary matrix file " + path.string());
  }
  const auto version = get_le<std::uint8_t>(in, path);
  if (version != kVersion) {
    throw DataError("unsupported binary matrix version " + std::to_string(version));
  }
  const auto d = get_le<std::uint32_t>(in, path);
  const auto n = get_le<std::uint32_t>(in, path);
  Matrix m(static_cast<Index>(d), static_cast<Index>(n));
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) m(i, j) = get_le<double>(in, path);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw DataError("trailing bytes in binary matrix file " + path.string());
  }
  return m;
}

}  // namespace

FileFormat parse_file_format(std::string_view text) {
  if (text == "csv") return FileFormat::csv;
  if (text == "binary" || text == "bin") return FileFormat::binary;
  throw ConfigError("unknown file format '" + std::string(text) + "' (expected csv or binary)");
}

Matrix read_matrix(const std::filesystem::path& path, FileFormat format) {
  Matrix m = format == FileFormat::csv ? read_csv(path) : read_binary(path);
  if (!m.allFinite()) throw DataError("non-finite entries in " + path.string());
  return m;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m, FileFormat format) {
  if (format == FileFormat::binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint8_t>(out, kVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.rows()));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i < m.rows(); ++i) put_le<double>(out, m(i, j));
    }
    if (!out) throw DataError("write failed for " + path.string());
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  std::array<char, 32> buf;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      // Shortest representation that round-trips exactly.
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), m(i, j));
      if (i > 0) out << ',';
      out.write(buf.data(), ptr - buf.data());
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<std::int64_t> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::int64_t> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto field = trim(line);
    if (field.empty()) continue;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw DataError("malformed label '" + std::string(field) + "' at " + path.string() + ":" +
                      std::to_string(line_no));
    }
    labels.push_back(v);
  }
  return labels;
}

void write_labels(const std::filesystem::path& path, const LabelVector& labels) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (int l : labels.labels()) out << l << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

Dataset load_dataset(const std::filesystem::path& matrix_path,
                     const std::filesystem::path& labels_path, FileFormat format) {
  DataMatrix x(read_matrix(matrix_path, format));
  const auto raw = read_labels(labels_path);
  return Dataset(std::move(x), LabelVector::remap(raw), matrix_path.stem().string());
}

void save_dataset(const Dataset& ds, const std::filesystem::path& matrix_path,
                  const std::filesystem::path& labels_path, FileFormat format) {
  write_matrix(matrix_path, ds.matrix.values(), format);
  write_labels(labels_path, ds.truth);
}

}  // namespace subclust
