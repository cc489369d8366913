#ifndef QWALK_GRAPH_IO_HPP
#define QWALK_GRAPH_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qwalk/digraph.hpp"

namespace qwalk {

//! Parse failure with the 1-based line number it occurred on (0 when the
//! document as a whole is at fault, e.g. it is empty).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

//! Parses the edge-list format:
//!
//!     # comment
//!     vertices N
//!     U V          # arc U -> V
//!     label V name # optional vertex label
//!
//! Self-loops are added at every vertex. Repeated arcs are harmless.
DiGraph parse_graph(std::string_view text);

//! Edge-list text for g. Self-loops are omitted when g carries them
//! implicitly, so parse_graph(format_graph(g)) == g.
std::string format_graph(const DiGraph& g);

//! {"n": N, "rows": [[...], ...]} with rows[i][j] = 1 iff j -> i.
nlohmann::json adjacency_json(const DiGraph& g);

}  // namespace qwalk

#endif  // QWALK_GRAPH_IO_HPP
