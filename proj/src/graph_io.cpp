#include "qwalk/graph_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace qwalk {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

long long parse_integer(std::string_view field, std::size_t line_no) {
  long long value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line_no, "expected a decimal integer, got '" + std::string(field) + "'");
  }
  return value;
}

Vertex parse_vertex(std::string_view field, int n, std::size_t line_no) {
  const long long v = parse_integer(field, line_no);
  if (v < 0) throw ParseError(line_no, "negative vertex index " + std::to_string(v));
  if (v >= n) {
    throw ParseError(line_no, "vertex index " + std::to_string(v) + " >= declared count " +
                                  std::to_string(n));
  }
  return static_cast<Vertex>(v);
}

}  // namespace

DiGraph parse_graph(std::string_view text) {
  int n = -1;
  std::vector<Arc> arcs;
  std::vector<std::string> labels;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    if (n < 0) {
      if (fields.size() != 2 || fields[0] != "vertices") {
        throw ParseError(line_no, "expected 'vertices N' header");
      }
      const long long count = parse_integer(fields[1], line_no);
      if (count < 1) throw ParseError(line_no, "vertex count must be positive");
      if (count > 1 << 16) throw ParseError(line_no, "vertex count too large");
      n = static_cast<int>(count);
      continue;
    }

    if (fields[0] == "label") {
      if (fields.size() != 3) throw ParseError(line_no, "expected 'label V name'");
      const Vertex v = parse_vertex(fields[1], n, line_no);
      if (labels.empty()) labels.resize(static_cast<std::size_t>(n));
      labels[static_cast<std::size_t>(v)] = std::string(fields[2]);
      continue;
    }
    if (fields.size() != 2) throw ParseError(line_no, "expected 'U V' arc line");
    arcs.push_back({parse_vertex(fields[0], n, line_no), parse_vertex(fields[1], n, line_no)});
  }

  if (n < 0) throw ParseError(0, "missing 'vertices N' header");
  DiGraph g(n, arcs);
  if (!labels.empty()) {
    for (std::size_t v = 0; v < labels.size(); ++v) {
      if (labels[v].empty()) labels[v] = std::to_string(v);
    }
    g.set_labels(std::move(labels));
  }
  return g;
}

std::string format_graph(const DiGraph& g) {
  std::ostringstream out;
  out << "vertices " << g.size() << '\n';
  for (std::size_t v = 0; v < g.labels().size(); ++v) {
    out << "label " << v << ' ' << g.labels()[v] << '\n';
  }
  for (const Arc& a : g.arcs()) {
    if (a.is_loop() && g.self_loops_added()) continue;
    out << a.from << ' ' << a.to << '\n';
  }
  return out.str();
}

nlohmann::json adjacency_json(const DiGraph& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (Vertex i = 0; i < g.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Vertex j = 0; j < g.size(); ++j) row.push_back(g.has_arc(j, i) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return {{"n", g.size()}, {"rows", std::move(rows)}};
}

}  // namespace qwalk
