#include "latkit/gram_io.hpp"

#include <fstream>
#include <sstream>

namespace latkit {

namespace {

mpq_class parse_rational(const std::string& tok) {
  mpq_class q;
  if (tok.empty() || q.set_str(tok, 10) != 0) throw Error(ErrorCode::kParse, "bad rational '" + tok + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::kParse, "zero denominator in '" + tok + "'");
  q.canonicalize();
  return q;
}

std::vector<std::string> split_single_spaces(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

// Reads the next non-comment, non-blank line; comment lines go to sink.
bool next_data_line(std::istream& in, std::string& line, std::vector<std::string>* sink) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '#') {
      if (sink) sink->push_back(line.substr(1));
      continue;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    return true;
  }
  return false;
}

}  // namespace

GramText read_gram_text(std::istream& in) {
  GramText g;
  std::string line;
  if (!next_data_line(in, line, &g.comments)) throw Error(ErrorCode::kParse, "missing dimension line");
  auto head = split_single_spaces(line);
  long d = 0;
  try {
    std::size_t used = 0;
    if (head.size() != 1) throw std::invalid_argument("x");
    d = std::stol(head[0], &used);
    if (used != head[0].size() || d < 0) throw std::invalid_argument("x");
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "bad dimension line '" + line + "'");
  }
  g.matrix = RatMatrix(d, d);
  for (long i = 0; i < d; ++i) {
    if (!next_data_line(in, line, nullptr)) throw Error(ErrorCode::kParse, "unexpected end of Gram data");
    auto toks = split_single_spaces(line);
    if (static_cast<long>(toks.size()) != d) throw Error(ErrorCode::kParse, "row " + std::to_string(i) + " has wrong length");
    for (long j = 0; j < d; ++j) g.matrix(i, j) = parse_rational(toks[j]);
  }
  return g;
}

GramText read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  return read_gram_text(in);
}

RatMatrix parse_gram(const std::string& text) {
  std::istringstream in(text);
  return read_gram_text(in).matrix;
}

void write_gram_text(std::ostream& out, const GramText& g) {
  for (const auto& c : g.comments) out << '#' << c << '\n';
  out << g.matrix.rows() << '\n';
  for (std::size_t i = 0; i < g.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < g.matrix.cols(); ++j) {
      if (j) out << ' ';
      out << g.matrix(i, j).get_str();
    }
    out << '\n';
  }
}

std::string format_gram(const RatMatrix& m) {
  std::ostringstream out;
  write_gram_text(out, GramText{{}, m});
  return out.str();
}

IntMatrix parse_int_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!next_data_line(in, line, nullptr)) throw Error(ErrorCode::kParse, "missing header");
  auto head = split_single_spaces(line);
  long r = 0, c = 0;
  try {
    if (head.size() == 1) r = c = std::stol(head[0]);
    else if (head.size() == 2) r = std::stol(head[0]), c = std::stol(head[1]);
    else throw std::invalid_argument("x");
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "bad matrix header '" + line + "'");
  }
  if (r < 0 || c < 0) throw Error(ErrorCode::kParse, "negative matrix size");
  IntMatrix m(r, c);
  for (long i = 0; i < r; ++i) {
    if (!next_data_line(in, line, nullptr)) throw Error(ErrorCode::kParse, "unexpected end of matrix data");
    auto toks = split_single_spaces(line);
    if (static_cast<long>(toks.size()) != c) throw Error(ErrorCode::kParse, "row " + std::to_string(i) + " has wrong length");
    for (long j = 0; j < c; ++j) {
      mpq_class q = parse_rational(toks[j]);
      if (q.get_den() != 1) throw Error(ErrorCode::kParse, "expected integer entry '" + toks[j] + "'");
      m(i, j) = q.get_num();
    }
  }
  return m;
}

IntMatrix read_int_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_int_matrix(ss.str());
}

}  // namespace latkit
