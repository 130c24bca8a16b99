#include "reltutte/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "reltutte/error.hpp"

namespace reltutte {

namespace {

struct Token {
  std::string text;
  std::size_t col;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineError {
 public:
  LineError(std::string_view source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(Errc code, std::size_t col, const std::string& msg) const {
    throw Error(code, source_ + ":" + std::to_string(line_) + ":" + std::to_string(col) + ": " + msg);
  }

 private:
  std::string source_;
  std::size_t line_;
};

int parse_vertex(const Token& t, const LineError& err) {
  int v = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) err.fail(Errc::ParseError, t.col, "expected an integer vertex id, got '" + t.text + "'");
  return v;
}

}  // namespace

ColoredMultigraph parse_graph(std::istream& in, std::string_view source) {
  ColoredMultigraph g;
  std::string line;
  std::size_t lineno = 0;
  std::string pointed_seen;
  while (std::getline(in, line)) {
    ++lineno;
    const LineError err(source, lineno);
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0].text == "vertex") {
      if (toks.size() != 2) err.fail(Errc::ParseError, toks[0].col, "expected 'vertex <id>'");
      g.add_vertex(parse_vertex(toks[1], err));
      continue;
    }
    if (toks[0].text != "edge") err.fail(Errc::ParseError, toks[0].col, "unknown declaration '" + toks[0].text + "'");
    if (toks.size() < 4) err.fail(Errc::ParseError, toks[0].col, "expected 'edge <id> <u> <v> color=<token> [zero] [pointed]'");

    EdgeRecord e;
    e.id = toks[1].text;
    e.u = parse_vertex(toks[2], err);
    e.v = parse_vertex(toks[3], err);
    bool has_color = false;
    for (std::size_t i = 4; i < toks.size(); ++i) {
      const auto& t = toks[i].text;
      if (t.rfind("color=", 0) == 0) {
        if (has_color) err.fail(Errc::ParseError, toks[i].col, "color given twice");
        e.color = t.substr(6);
        if (e.color.empty()) err.fail(Errc::ParseError, toks[i].col + 6, "empty color token");
        has_color = true;
      } else if (t == "zero") {
        e.zero = true;
      } else if (t == "pointed") {
        e.pointed = true;
      } else {
        err.fail(Errc::ParseError, toks[i].col, "unexpected token '" + t + "'");
      }
    }
    if (e.zero && e.pointed) err.fail(Errc::PointedZeroConflict, toks[0].col, "edge '" + e.id + "' is both zero and pointed");
    if (e.pointed && !has_color) {
      e.color = std::string(kPointedColor);
      has_color = true;
    }
    if (!has_color) err.fail(Errc::ParseError, toks.back().col, "missing color=<token>");
    if (e.pointed) {
      if (!pointed_seen.empty())
        err.fail(Errc::TwoPointedEdges, toks[0].col, "second pointed edge '" + e.id + "' (first was '" + pointed_seen + "')");
      pointed_seen = e.id;
    }
    if (g.find_edge(e.id)) err.fail(Errc::DuplicateEdgeId, toks[1].col, "duplicate edge id '" + e.id + "'");
    g.add_edge(std::move(e));
  }
  return g;
}

ColoredMultigraph parse_graph_string(std::string_view text, std::string_view source) {
  std::istringstream in{std::string(text)};
  return parse_graph(in, source);
}

ColoredMultigraph parse_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, path.string() + ": cannot open file");
  return parse_graph(in, path.string());
}

std::string format_graph(const ColoredMultigraph& g) {
  std::ostringstream out;
  std::set<int> touched;
  for (const auto& e : g.edges()) {
    out << "edge " << e.id << ' ' << e.u << ' ' << e.v << " color=" << e.color;
    if (e.zero) out << " zero";
    if (e.pointed) out << " pointed";
    out << '\n';
    touched.insert(e.u);
    touched.insert(e.v);
  }
  for (int v : g.vertices()) {
    if (!touched.count(v)) out << "vertex " << v << '\n';
  }
  return out.str();
}

}  // namespace reltutte
