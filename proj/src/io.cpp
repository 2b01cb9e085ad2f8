#include "majo/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "majo/error.hpp"

namespace majo::io {

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void fail(const Token& t, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(t.line) + ", column " +
                                         std::to_string(t.column) + ": " + what + " '" +
                                         std::string(t.text) + "'");
}

// Splits into lines of whitespace-separated tokens; `#` starts a comment.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tokens.push_back({line.substr(start, i - start), line_no, start + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    pos = end + 1;
  }
  return lines;
}

Rational rational_at(const Token& t) {
  try {
    return parse_rational(t.text);
  } catch (const Error&) {
    fail(t, "expected a rational, got");
  }
}

ExtendedReal extended_at(const Token& t) {
  if (t.text == "inf") return ExtendedReal::infinity();
  return ExtendedReal(rational_at(t));
}

std::size_t count_at(const Token& t) {
  Rational r = rational_at(t);
  if (r < 0 || denominator(r) != 1) fail(t, "expected a nonnegative integer, got");
  return numerator(r).convert_to<std::size_t>();
}

struct PartitionSpec {
  bool present = false;
  std::vector<Rational> masses;
  std::optional<Rational> tail_mass;
  std::optional<std::size_t> tail_count;  // nullopt with tail_mass set: unbounded

  Partition build() const {
    if (!tail_mass) return Partition(masses);
    return Partition(masses, *tail_mass, tail_count);
  }
};

// Consumes `partition` and `tail` lines; returns true when the line was one.
bool absorb_partition_line(const std::vector<Token>& tokens, PartitionSpec& spec) {
  const Token& head = tokens.front();
  if (head.text == "partition") {
    spec.present = true;
    for (std::size_t i = 1; i < tokens.size(); ++i) spec.masses.push_back(rational_at(tokens[i]));
    return true;
  }
  if (head.text == "tail") {
    spec.present = true;
    if (tokens.size() != 4 || tokens[2].text != "x") fail(head, "expected 'tail <mass> x <count|inf>' at");
    if (spec.tail_mass) fail(head, "duplicate");
    spec.tail_mass = rational_at(tokens[1]);
    if (tokens[3].text == "inf") spec.tail_count.reset();
    else spec.tail_count = count_at(tokens[3]);
    return true;
  }
  return false;
}

std::string join_line(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

}  // namespace

SfnDocument parse_sfn(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "line 1, column 1: missing 'total' line");

  const auto& first = lines.front();
  if (first.front().text != "total") fail(first.front(), "expected 'total' first, got");
  if (first.size() != 2) fail(first.front(), "expected 'total <rational>|inf' at");
  ExtendedReal total = extended_at(first[1]);

  PartitionSpec spec;
  std::vector<Piece> pieces;
  std::vector<std::pair<Rational, std::optional<Rational>>> atom_lines;
  std::vector<Token> atom_heads;

  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& tokens = lines[l];
    if (absorb_partition_line(tokens, spec)) continue;
    if (tokens.front().text == "total") fail(tokens.front(), "duplicate");
    if (tokens.size() > 2) fail(tokens[2], "unexpected token");
    Rational value = rational_at(tokens[0]);
    std::optional<Rational> mass;
    if (tokens.size() == 2) mass = rational_at(tokens[1]);
    atom_lines.emplace_back(value, mass);
    atom_heads.push_back(tokens[0]);
  }

  SfnDocument doc;
  if (!spec.present) {
    for (std::size_t i = 0; i < atom_lines.size(); ++i) {
      if (!atom_lines[i].second) fail(atom_heads[i], "missing mass after value");
      pieces.push_back({atom_lines[i].first, *atom_lines[i].second});
    }
    doc.function = StepFunction::canonicalize(pieces, total);
    return doc;
  }

  Partition p = spec.build();
  if (p.total_measure() != total) {
    fail(first[1], "partition measures " + p.total_measure().str() + " but total is");
  }
  if (atom_lines.size() > p.size()) fail(atom_heads[p.size()], "more values than atoms at");
  std::vector<Rational> values(p.size(), Rational(0));
  for (std::size_t i = 0; i < atom_lines.size(); ++i) {
    if (atom_lines[i].second && *atom_lines[i].second != p.mass(i)) {
      fail(atom_heads[i], "mass does not match atom " + std::to_string(i) + " for value");
    }
    values[i] = atom_lines[i].first;
  }
  doc.aligned.emplace(p, std::move(values));
  doc.function = doc.aligned->to_step_function();
  return doc;
}

Partition parse_partition(std::string_view text) {
  auto lines = tokenize(text);
  PartitionSpec spec;
  std::optional<std::pair<ExtendedReal, Token>> total;
  for (const auto& tokens : lines) {
    if (absorb_partition_line(tokens, spec)) continue;
    if (tokens.front().text == "total") {
      if (tokens.size() != 2) fail(tokens.front(), "expected 'total <rational>|inf' at");
      total.emplace(extended_at(tokens[1]), tokens[1]);
    }
  }
  if (!spec.present) throw Error(ErrorCode::ParseError, "line 1, column 1: no 'partition' line");
  Partition p = spec.build();
  if (total && total->first != p.total_measure()) {
    fail(total->second, "partition measures " + p.total_measure().str() + " but total is");
  }
  return p;
}

OperatorMatrix parse_mat(std::string_view text) {
  auto lines = tokenize(text);
  std::vector<Token> tokens;
  for (auto& l : lines) tokens.insert(tokens.end(), l.begin(), l.end());
  if (tokens.size() < 2) throw Error(ErrorCode::ParseError, "line 1, column 1: missing 'rows cols' header");
  std::size_t rows = count_at(tokens[0]);
  std::size_t cols = count_at(tokens[1]);
  if (tokens.size() - 2 != rows * cols) {
    const Token& at = tokens.size() - 2 > rows * cols ? tokens[2 + rows * cols] : tokens.back();
    fail(at, "expected " + std::to_string(rows * cols) + " entries, found " +
                 std::to_string(tokens.size() - 2) + " near");
  }
  std::vector<Rational> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 2; i < tokens.size(); ++i) entries.push_back(rational_at(tokens[i]));
  return OperatorMatrix(rows, cols, std::move(entries));
}

std::string format_sfn(const StepFunction& f) {
  std::string out = "total " + f.total_measure().str() + "\n";
  for (const Piece& p : f.pieces()) out += join_line({to_string(p.value), to_string(p.mass)}) + "\n";
  return out;
}

std::string format_partition(const Partition& p) {
  std::string out = "partition";
  for (const Rational& m : p.masses()) out += " " + to_string(m);
  out += "\n";
  if (p.tail_mass()) out += "tail " + to_string(*p.tail_mass()) + " x inf\n";
  return out;
}

std::string format_sfn(const AlignedFunction& f) {
  std::string out = "total " + f.partition.total_measure().str() + "\n";
  out += format_partition(f.partition);
  for (std::size_t n = 0; n < f.values.size(); ++n) {
    out += join_line({to_string(f.values[n]), to_string(f.partition.mass(n))}) + "\n";
  }
  return out;
}

std::string format_mat(const OperatorMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += to_string(m(i, j));
    }
    out += "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << contents;
}

}  // namespace majo::io
