#include "bipres/firep_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bipres/errors.hpp"

namespace bipres {

namespace {

using json = nlohmann::json;

struct LineCursor {
  std::vector<std::string_view> lines;
  std::int64_t next = 0;  // 0-based index of the next unread line

  explicit LineCursor(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) {
        if (pos < text.size()) lines.push_back(text.substr(pos));
        break;
      }
      lines.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }

  std::int64_t line_number() const { return next; }  // 1-based number of the line just read

  std::string_view take(const char* what) {
    if (next >= std::int64_t(lines.size()))
      throw ValidationError(std::string("unexpected end of file, expected ") + what,
                            std::int64_t(lines.size()));
    return lines[std::size_t(next++)];
  }

  bool exhausted() const {
    for (std::size_t i = std::size_t(next); i < lines.size(); ++i)
      if (!lines[i].empty()) return false;
    return true;
  }
};

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::int64_t line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ValidationError(std::string("bad ") + what + " '" + std::string(tok) + "'", line);
  return value;
}

// One matrix column: `<gx> <gy> ; <row>:<coeff> ...`
void parse_column_line(std::string_view line, std::int64_t line_no, const PrimeField& f,
                       std::int64_t num_rows, Grade& grade, SparseColumn& col) {
  auto toks = split_tokens(line);
  if (toks.size() < 3 || toks[2] != ";")
    throw ValidationError("bad column line, expected '<gx> <gy> ; <entries>'", line_no);
  grade.x = parse_int(toks[0], line_no, "grade");
  grade.y = parse_int(toks[1], line_no, "grade");
  col.entries.clear();
  std::int64_t previous_row = -1;
  for (std::size_t t = 3; t < toks.size(); ++t) {
    std::string_view tok = toks[t];
    std::size_t colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 >= tok.size())
      throw ValidationError("bad entry '" + std::string(tok) + "', expected <row>:<coeff>",
                            line_no);
    std::int64_t row = parse_int(tok.substr(0, colon), line_no, "row index");
    std::int64_t coeff = parse_int(tok.substr(colon + 1), line_no, "coefficient");
    if (row < 0 || row >= num_rows)
      throw ValidationError("row index out of range", line_no);
    if (row <= previous_row)
      throw ValidationError("row indices not strictly increasing", line_no);
    if (coeff <= 0 || coeff >= std::int64_t(f.p()))
      throw ValidationError("coefficient out of field", line_no);
    col.entries.push_back({row_index_t(row), coeff_t(coeff)});
    previous_row = row;
  }
}

void append_grade(std::string& out, const Grade& g) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%" PRId64 " %" PRId64, g.x, g.y);
  out += buf;
}

void append_column(std::string& out, const Grade& g, const SparseColumn& col) {
  append_grade(out, g);
  out += " ;";
  char buf[64];
  for (const Entry& e : col.entries) {
    std::snprintf(buf, sizeof buf, " %u:%u", unsigned(e.row), unsigned(e.coeff));
    out += buf;
  }
  out += '\n';
}

json grade_to_json(const Grade& g) { return json::array({g.x, g.y}); }

json betti_map_to_json(const BettiMap& m) {
  json arr = json::array();
  for (const auto& [g, count] : m) arr.push_back(json::array({g.x, g.y, count}));
  return arr;
}

std::vector<double> parse_numeric_row(std::string_view line, std::int64_t line_no) {
  std::string buf(line);
  for (char& c : buf)
    if (c == ',') c = ' ';
  std::vector<double> row;
  for (std::string_view tok : split_tokens(buf)) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw ValidationError("bad numeric value '" + std::string(tok) + "'", line_no);
    row.push_back(v);
  }
  return row;
}

}  // namespace

FIRep parse_firep(std::string_view text) {
  LineCursor cursor(text);

  auto header = split_tokens(cursor.take("header"));
  if (header.size() != 2 || header[0] != "firep" || header[1] != "v1")
    throw ValidationError("bad header, expected 'firep v1'", cursor.line_number());

  auto pline = split_tokens(cursor.take("field line"));
  if (pline.size() != 2 || pline[0] != "p")
    throw ValidationError("bad header, expected 'p <prime>'", cursor.line_number());
  std::int64_t p = parse_int(pline[1], cursor.line_number(), "prime");
  if (p < 2 || p >= (1 << 16) || !is_supported_prime(std::uint32_t(p)))
    throw ValidationError("bad header, p must be a prime below 2^16", cursor.line_number());
  PrimeField field{std::uint32_t(p)};

  auto sline = split_tokens(cursor.take("sizes line"));
  if (sline.size() != 4 || sline[0] != "sizes")
    throw ValidationError("bad header, expected 'sizes <a> <b> <c>'", cursor.line_number());
  std::int64_t a = parse_int(sline[1], cursor.line_number(), "size");
  std::int64_t b = parse_int(sline[2], cursor.line_number(), "size");
  std::int64_t c = parse_int(sline[3], cursor.line_number(), "size");
  if (a < 0 || b < 0 || c < 0)
    throw ValidationError("bad header, sizes must be nonnegative", cursor.line_number());

  FIRep fr;
  fr.d2.field = field;
  fr.d2.num_rows = b;
  fr.d1.field = field;
  fr.d1.num_rows = a;

  std::vector<std::int64_t> d2_lines(static_cast<std::size_t>(c));
  for (std::int64_t j = 0; j < c; ++j) {
    std::string_view line = cursor.take("d2 column");
    Grade g;
    SparseColumn col;
    parse_column_line(line, cursor.line_number(), field, b, g, col);
    if (j > 0 && colex_less(g, fr.d2.col_grades.back()))
      throw ValidationError("grades not colex-sorted", cursor.line_number());
    fr.d2.col_grades.push_back(g);
    fr.d2.columns.push_back(std::move(col));
    d2_lines[std::size_t(j)] = cursor.line_number();
  }
  for (std::int64_t j = 0; j < b; ++j) {
    std::string_view line = cursor.take("d1 column");
    Grade g;
    SparseColumn col;
    parse_column_line(line, cursor.line_number(), field, a, g, col);
    if (j > 0 && colex_less(g, fr.d1.col_grades.back()))
      throw ValidationError("grades not colex-sorted", cursor.line_number());
    fr.d1.col_grades.push_back(g);
    fr.d1.columns.push_back(std::move(col));
  }
  if (!cursor.exhausted())
    throw ValidationError("unexpected trailing content", cursor.line_number() + 1);

  fr.d2.row_grades = fr.d1.col_grades;

  // Homogeneity of d2 against the shared grades.
  for (std::int64_t j = 0; j < c; ++j)
    for (const Entry& e : fr.d2.columns[std::size_t(j)].entries)
      if (!leq(fr.d1.col_grades[e.row], fr.d2.col_grades[std::size_t(j)]))
        throw ValidationError("entry violates homogeneity", d2_lines[std::size_t(j)]);

  // Chain condition d1 * d2 = 0, reported at the offending d2 column.
  if (a > 0) {
    const PrimeField& f = field;
    std::vector<coeff_t> acc(std::size_t(a), 0);
    for (std::int64_t j = 0; j < c; ++j) {
      std::fill(acc.begin(), acc.end(), coeff_t(0));
      for (const Entry& e : fr.d2.columns[std::size_t(j)].entries)
        for (const Entry& w : fr.d1.columns[e.row].entries)
          acc[w.row] = f.add(acc[w.row], f.mul(w.coeff, e.coeff));
      for (coeff_t v : acc)
        if (v != 0)
          throw ValidationError("chain condition violated", d2_lines[std::size_t(j)]);
    }
  }
  return fr;
}

std::string serialize_firep(const FIRep& fr) {
  std::string out = "firep v1\n";
  out += "p " + std::to_string(fr.field().p()) + "\n";
  out += "sizes " + std::to_string(fr.d1.num_rows) + " " + std::to_string(fr.d1.num_cols()) +
         " " + std::to_string(fr.d2.num_cols()) + "\n";
  for (std::int64_t j = 0; j < fr.d2.num_cols(); ++j)
    append_column(out, fr.d2.col_grades[std::size_t(j)], fr.d2.columns[std::size_t(j)]);
  for (std::int64_t j = 0; j < fr.d1.num_cols(); ++j)
    append_column(out, fr.d1.col_grades[std::size_t(j)], fr.d1.columns[std::size_t(j)]);
  return out;
}

std::string serialize_betti(const BettiTable& bt, OutputFormat format) {
  if (format == OutputFormat::json) {
    json doc;
    doc["format"] = "betti";
    doc["v"] = 1;
    doc["beta0"] = betti_map_to_json(bt.beta0);
    doc["beta1"] = betti_map_to_json(bt.beta1);
    doc["beta2"] = betti_map_to_json(bt.beta2);
    return doc.dump(2) + "\n";
  }
  std::string out = "betti v1\n";
  auto section = [&out](const char* name, const BettiMap& m) {
    out += std::string(name) + " " + std::to_string(m.size()) + "\n";
    for (const auto& [g, count] : m) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%" PRId64 " %" PRId64 " %" PRId64 "\n", g.x, g.y, count);
      out += buf;
    }
  };
  section("beta0", bt.beta0);
  section("beta1", bt.beta1);
  section("beta2", bt.beta2);
  return out;
}

std::string serialize_presentation(const Presentation& p, OutputFormat format) {
  if (format == OutputFormat::json) {
    json doc;
    doc["format"] = "presentation";
    doc["v"] = 1;
    doc["p"] = p.field.p();
    doc["kind"] = p.kind == PresentationKind::minimal ? "minimal" : "semi-minimal";
    json rows = json::array();
    for (const Grade& g : p.row_grades) rows.push_back(grade_to_json(g));
    doc["rows"] = rows;
    json cols = json::array();
    for (std::int64_t j = 0; j < p.num_cols(); ++j) {
      json col;
      col["grade"] = grade_to_json(p.col_grades[std::size_t(j)]);
      json entries = json::array();
      for (const Entry& e : p.columns[std::size_t(j)].entries)
        entries.push_back(json::array({e.row, e.coeff}));
      col["entries"] = entries;
      cols.push_back(col);
    }
    doc["cols"] = cols;
    return doc.dump(2) + "\n";
  }
  std::string out = "presentation v1\n";
  out += "p " + std::to_string(p.field.p()) + "\n";
  out += std::string("kind ") +
         (p.kind == PresentationKind::minimal ? "minimal" : "semi-minimal") + "\n";
  out += "rows=" + std::to_string(p.num_rows()) + " cols=" + std::to_string(p.num_cols()) + "\n";
  for (const Grade& g : p.row_grades) {
    append_grade(out, g);
    out += '\n';
  }
  for (std::int64_t j = 0; j < p.num_cols(); ++j)
    append_column(out, p.col_grades[std::size_t(j)], p.columns[std::size_t(j)]);
  return out;
}

std::string serialize_hilbert(const HilbertFunction& hf, OutputFormat format) {
  if (format == OutputFormat::json) {
    json doc;
    doc["format"] = "hilbert";
    doc["v"] = 1;
    json entries = json::array();
    for (std::size_t xi = 0; xi < hf.xs.size(); ++xi)
      for (std::size_t yi = 0; yi < hf.ys.size(); ++yi)
        entries.push_back(json::array(
            {hf.xs[xi], hf.ys[yi], hf.values[std::size_t(hf.cell(xi, yi))]}));
    doc["entries"] = entries;
    return doc.dump(2) + "\n";
  }
  std::string out = "hilbert v1\n";
  out += "grid " + std::to_string(hf.xs.size()) + " " + std::to_string(hf.ys.size()) + "\n";
  for (std::size_t xi = 0; xi < hf.xs.size(); ++xi)
    for (std::size_t yi = 0; yi < hf.ys.size(); ++yi) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%" PRId64 " %" PRId64 " %" PRId64 "\n", hf.xs[xi],
                    hf.ys[yi], hf.values[std::size_t(hf.cell(xi, yi))]);
      out += buf;
    }
  return out;
}

PointCloud parse_point_cloud(std::string_view text) {
  LineCursor cursor(text);
  PointCloud cloud;
  for (std::int64_t ln = 0; ln < std::int64_t(cursor.lines.size()); ++ln) {
    std::string_view line = cursor.lines[std::size_t(ln)];
    auto toks = split_tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    std::vector<double> row = parse_numeric_row(line, ln + 1);
    if (cloud.dim == 0) {
      cloud.dim = std::int64_t(row.size());
      if (cloud.dim == 0) throw ValidationError("empty point row", ln + 1);
    } else if (std::int64_t(row.size()) != cloud.dim) {
      throw ValidationError("inconsistent point dimension", ln + 1);
    }
    cloud.coords.insert(cloud.coords.end(), row.begin(), row.end());
  }
  if (cloud.size() == 0) throw ValidationError("no points found");
  return cloud;
}

std::string serialize_point_cloud(const PointCloud& points) {
  std::string out;
  char buf[64];
  for (std::int64_t i = 0; i < points.size(); ++i) {
    for (std::int64_t k = 0; k < points.dim; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", points.coord(i, k));
      if (k) out += ' ';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

DistanceMatrix parse_distance_matrix(std::string_view text) {
  LineCursor cursor(text);
  std::vector<std::vector<double>> rows;
  for (std::int64_t ln = 0; ln < std::int64_t(cursor.lines.size()); ++ln) {
    std::string_view line = cursor.lines[std::size_t(ln)];
    auto toks = split_tokens(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    rows.push_back(parse_numeric_row(line, ln + 1));
    if (rows.back().size() != rows.front().size())
      throw ValidationError("ragged distance matrix row", ln + 1);
  }
  if (rows.empty()) throw ValidationError("empty distance matrix");
  if (rows.size() != rows.front().size())
    throw ValidationError("distance matrix is not square");
  DistanceMatrix dist;
  dist.n = std::int64_t(rows.size());
  dist.d.reserve(rows.size() * rows.size());
  for (const auto& row : rows) dist.d.insert(dist.d.end(), row.begin(), row.end());
  return dist;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), std::streamsize(contents.size()));
  if (!out) throw IoError("write failure on '" + path + "'");
}

FIRep read_firep_file(const std::string& path) { return parse_firep(read_file(path)); }
PointCloud read_point_cloud_file(const std::string& path) {
  return parse_point_cloud(read_file(path));
}
DistanceMatrix read_distance_matrix_file(const std::string& path) {
  return parse_distance_matrix(read_file(path));
}

}  // namespace bipres
