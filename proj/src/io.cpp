#include "gmtl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gmtl {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path,
                             std::size_t line_no, const std::string& why) {
  std::ostringstream os;
  os << path.string() << ":" << line_no << ": " << why;
  throw Error(os.str());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  return out;
}

double parse_real(const std::string& s, const std::filesystem::path& path,
                  std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    parse_fail(path, line_no, "cannot parse real '" + s + "'");
  }
}

std::size_t parse_label(const std::string& s, const std::filesystem::path& path,
                        std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size() || v < 0) throw std::invalid_argument(s);
    return std::size_t(v);
  } catch (const std::exception&) {
    parse_fail(path, line_no, "cannot parse label '" + s + "'");
  }
}

std::ifstream open_or_fail(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> read_counts(
    const std::filesystem::path& path) {
  std::ifstream in = open_or_fail(path);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty file");
  ++line_no;
  struct Cell {
    std::size_t y, yp;
    double count;
  };
  std::vector<Cell> cells;
  std::size_t max_y = 0, max_yp = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() != 3)
      parse_fail(path, line_no, "expected 3 tab-separated fields");
    Cell c;
    c.y = parse_label(fields[0], path, line_no);
    c.yp = parse_label(fields[1], path, line_no);
    c.count = parse_real(fields[2], path, line_no);
    if (c.count < 0) parse_fail(path, line_no, "negative count");
    max_y = std::max(max_y, c.y);
    max_yp = std::max(max_yp, c.yp);
    cells.push_back(c);
  }
  if (cells.empty()) throw Error(path.string() + ": no count records");
  std::vector<std::vector<double>> counts(
      max_y + 1, std::vector<double>(max_yp + 1, 0.0));
  for (const Cell& c : cells) counts[c.y][c.yp] += c.count;
  return counts;
}

void write_counts(const std::filesystem::path& path,
                  const std::vector<std::vector<double>>& counts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "y\ty_prime\tcount\n";
  for (std::size_t y = 0; y < counts.size(); ++y)
    for (std::size_t yp = 0; yp < counts[y].size(); ++yp)
      out << y << '\t' << yp << '\t' << format_real(counts[y][yp]) << '\n';
}

namespace {

std::vector<double> parse_vector(const std::string& s,
                                 const std::filesystem::path& path,
                                 std::size_t line_no) {
  std::vector<double> out;
  for (const std::string& f : split(s, ','))
    out.push_back(parse_real(f, path, line_no));
  return out;
}

ScoreRecord parse_record(const std::string& line,
                         const std::filesystem::path& path,
                         std::size_t line_no) {
  const auto fields = split(line, '\t');
  if (fields.size() != 5)
    parse_fail(path, line_no, "expected 5 tab-separated fields");
  ScoreRecord r;
  r.example_id = fields[0];
  r.log_post_main = parse_vector(fields[1], path, line_no);
  r.log_post_aux = parse_vector(fields[2], path, line_no);
  r.label_main = parse_label(fields[3], path, line_no);
  r.label_aux = parse_label(fields[4], path, line_no);
  return r;
}

}  // namespace

std::vector<ScoreRecord> read_scores(const std::filesystem::path& path,
                                     const TargetSpace& space) {
  std::ifstream in = open_or_fail(path);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty file");
  ++line_no;
  std::vector<ScoreRecord> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ScoreRecord r = parse_record(line, path, line_no);
    try {
      r.validate(space);
    } catch (const Error& e) {
      parse_fail(path, line_no, e.what());
    }
    out.push_back(std::move(r));
  }
  if (out.empty()) throw Error(path.string() + ": no score records");
  return out;
}

void write_scores(const std::filesystem::path& path,
                  const std::vector<ScoreRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "example_id\tlog_post_main\tlog_post_aux\tlabel_main\tlabel_aux\n";
  for (const ScoreRecord& r : records) {
    out << r.example_id << '\t';
    for (std::size_t i = 0; i < r.log_post_main.size(); ++i)
      out << (i ? "," : "") << format_real(r.log_post_main[i]);
    out << '\t';
    for (std::size_t i = 0; i < r.log_post_aux.size(); ++i)
      out << (i ? "," : "") << format_real(r.log_post_aux[i]);
    out << '\t' << r.label_main << '\t' << r.label_aux << '\n';
  }
}

TargetSpace scores_target_space(const std::filesystem::path& path) {
  std::ifstream in = open_or_fail(path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path.string() + ": empty file");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ScoreRecord r = parse_record(line, path, line_no);
    return TargetSpace(r.log_post_main.size(), r.log_post_aux.size());
  }
  throw Error(path.string() + ": no score records");
}

}  // namespace gmtl
