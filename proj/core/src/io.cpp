#include "kpdkit/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "kpdkit/errors.hpp"

namespace kpdkit {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

// A non-comment line split into tokens.
struct Line {
  std::size_t number = 0;
  std::string text;
};

std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.push_back({number, raw});
  }
  return lines;
}

std::vector<Token> tokenize(const Line& line, std::size_t from = 0) {
  std::vector<Token> out;
  std::string_view s(line.text);
  std::size_t i = from;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back({s.substr(i, j - i), line.number});
    i = j;
  }
  return out;
}

double parse_double(const Token& t) {
  double x = 0.0;
  const char* begin = t.text.data();
  const char* end = begin + t.text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, x);
  if (ec != std::errc() || ptr != end)
    throw ParseError(t.line, "expected a number, got '" + std::string(t.text) + "'");
  if (!std::isfinite(x)) throw ParseError(t.line, "non-finite value '" + std::string(t.text) + "'");
  return x;
}

std::size_t parse_size(const Token& t) {
  std::size_t x = 0;
  const char* begin = t.text.data();
  const char* end = begin + t.text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, x);
  if (ec != std::errc() || ptr != end)
    throw ParseError(t.line, "expected a positive integer, got '" + std::string(t.text) + "'");
  return x;
}

// Parses "<key>: a b c" on `line`; returns nullopt if the key is absent.
std::optional<std::vector<Token>> keyed_header(const Line& line, std::string_view key) {
  const auto first = line.text.find_first_not_of(" \t");
  if (line.text.compare(first, key.size(), key) != 0) return std::nullopt;
  const auto after = first + key.size();
  if (after >= line.text.size() || line.text[after] != ':') return std::nullopt;
  return tokenize(line, after + 1);
}

std::vector<Token> body_tokens(const std::vector<Line>& lines, std::size_t from) {
  std::vector<Token> out;
  for (std::size_t k = from; k < lines.size(); ++k) {
    auto t = tokenize(lines[k]);
    out.insert(out.end(), t.begin(), t.end());
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

Hypermatrix parse_hypermatrix(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError(0, "empty input, expected 'dims:' header");
  const auto header = keyed_header(lines.front(), "dims");
  if (!header) throw ParseError(lines.front().number, "expected 'dims: n1 ... nd'");
  if (header->empty()) throw ParseError(lines.front().number, "'dims:' lists no dimensions");

  std::vector<std::size_t> dims;
  for (const auto& t : *header) {
    const std::size_t n = parse_size(t);
    if (n == 0) throw ParseError(t.line, "dimension must be positive");
    dims.push_back(n);
  }
  Shape shape(std::move(dims));

  const auto body = body_tokens(lines, 1);
  std::vector<double> values;
  values.reserve(body.size());
  for (const auto& t : body) values.push_back(parse_double(t));
  if (body.size() > shape.total())
    throw ParseError(body[shape.total()].line,
                     "more than the " + std::to_string(shape.total()) + " values declared");
  if (body.size() < shape.total())
    throw ParseError(0, "expected " + std::to_string(shape.total()) + " values, got " +
                            std::to_string(body.size()));
  return Hypermatrix(std::move(shape), std::move(values));
}

}  // namespace

Hypermatrix read_hypermatrix(std::istream& in) { return parse_hypermatrix(content_lines(in)); }

Hypermatrix read_hypermatrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_hypermatrix(in);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {
void write_values(std::ostream& out, std::span<const double> v, std::size_t per_line) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    out << format_double(v[k]);
    out << ((k + 1) % per_line == 0 || k + 1 == v.size() ? '\n' : ' ');
  }
}
}  // namespace

void write_hypermatrix(std::ostream& out, const Hypermatrix& h) {
  out << "dims:";
  for (std::size_t n : h.shape().dims()) out << ' ' << n;
  out << '\n';
  write_values(out, h.values(), h.shape().dims().back());
}

void write_vector(std::ostream& out, std::span<const double> v) {
  out << "dims: " << v.size() << '\n';
  write_values(out, v, v.empty() ? 1 : v.size());
}

Matrix read_matrix(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError(0, "empty input, expected a matrix");
  if (keyed_header(lines.front(), "dims")) {
    const Hypermatrix h = parse_hypermatrix(lines);
    if (h.shape().order() != 2)
      throw ParseError(lines.front().number, "matrix input needs exactly two dims");
    return Matrix(h.shape().dims()[0], h.shape().dims()[1],
                  std::vector<double>(h.values().begin(), h.values().end()));
  }
  std::vector<double> values;
  std::size_t cols = 0;
  for (const auto& line : lines) {
    const auto toks = tokenize(line);
    if (cols == 0) cols = toks.size();
    if (toks.size() != cols)
      throw ParseError(line.number, "row has " + std::to_string(toks.size()) +
                                        " entries, expected " + std::to_string(cols));
    for (const auto& t : toks) values.push_back(parse_double(t));
  }
  return Matrix(lines.size(), cols, std::move(values));
}

Matrix read_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << "dims: " << m.rows() << ' ' << m.cols() << '\n';
  write_values(out, m.values(), m.cols());
}

void write_permmap(std::ostream& out, const PermutationMap& map) {
  out << "permmap: " << map.size() << '\n';
  for (std::size_t p = 0; p < map.size(); ++p)
    out << map.dest()[p] << ((p + 1) % 16 == 0 || p + 1 == map.size() ? '\n' : ' ');
}

PermutationMap read_permmap(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError(0, "empty input, expected 'permmap:' header");
  const auto header = keyed_header(lines.front(), "permmap");
  if (!header || header->size() != 1) throw ParseError(lines.front().number, "expected 'permmap: n'");
  const std::size_t n = parse_size(header->front());
  const auto body = body_tokens(lines, 1);
  if (body.size() != n)
    throw ParseError(0, "expected " + std::to_string(n) + " destinations, got " +
                            std::to_string(body.size()));
  std::vector<std::size_t> dest;
  for (const auto& t : body) dest.push_back(parse_size(t));
  try {
    return PermutationMap(std::move(dest));
  } catch (const DomainError& e) {
    throw ParseError(lines.front().number, e.what());
  }
}

std::vector<std::size_t> parse_dims_list(std::string_view text) {
  std::vector<std::size_t> dims;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ' || text[i] == 'x')) ++i;
    if (i == text.size()) break;
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), n);
    if (ec != std::errc() || n == 0)
      throw DomainError("bad dimension list '" + std::string(text) + "'");
    dims.push_back(n);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  if (dims.empty()) throw DomainError("empty dimension list");
  return dims;
}

}  // namespace kpdkit
