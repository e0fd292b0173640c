#pragma once

// Text and JSON input documents: a matrix, a graph, or a clutter.
//
//   matrix n q / r_1 / ... / r_n      n rows of q non-negative entries
//   graph n / u v / ...               edges, vertices 1..n
//   clutter n / e_1 / ...             edges as vertex lists, vertices 1..n
//
// Rows are separated by '/' or a newline; '#' starts a comment.

#include "monalg/clutters.hpp"

#include "json.hpp"
#include <openssl/evp.h>

#include <charconv>
#include <cstdio>
#include <map>

namespace monalg {

/// A well-formed input that breaks a semantic rule; rule() is a stable name.
class ValidationError : public DomainError {
public:
  ValidationError(std::string rule, const std::string &msg, int line = 0, int column = 0)
      : DomainError("validation failed [" + rule + "]: " + msg +
                    (line > 0 ? " (line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ")"
                              : "")),
        rule_(std::move(rule)), line_(line), column_(column) {}
  const std::string &rule() const noexcept { return rule_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  std::string rule_;
  int line_, column_;
};

enum class InputKind { matrix, graph, clutter };

inline constexpr std::string_view input_kind_name(InputKind k) {
  switch (k) {
  case InputKind::matrix: return "matrix";
  case InputKind::graph: return "graph";
  case InputKind::clutter: return "clutter";
  }
  return "?";
}

struct InputDocument {
  InputKind kind = InputKind::matrix;
  int vertices = 0;             ///< rows of the matrix, or vertex count
  std::vector<IntVector> rows;  ///< matrix kind only
  std::vector<VertexSet> edges; ///< 0-based, input order; graph and clutter

  IntMatrix incidence() const {
    if (kind == InputKind::matrix) return IntMatrix::from_rows(rows);
    IntMatrix a(vertices, edges.size());
    for (std::size_t j = 0; j < edges.size(); ++j)
      for (int v : edges[j]) a(v, j) = 1;
    return a;
  }
  Clutter clutter() const {
    if (kind == InputKind::matrix) return clutter_of_matrix(incidence());
    return Clutter(vertices, edges);
  }
  Graph graph() const {
    if (kind == InputKind::graph) return Graph(vertices, edges_as_pairs());
    std::vector<std::pair<int, int>> pairs;
    const auto c = clutter();
    for (const auto &e : c.edges()) {
      if (e.size() != 2)
        throw DomainError("input is not a graph: edge " + Clutter::set_string(e) + " has " +
                          std::to_string(e.size()) + " vertices");
      pairs.emplace_back(e[0], e[1]);
    }
    return Graph(vertices, pairs);
  }
  friend bool operator==(const InputDocument &, const InputDocument &) = default;

private:
  std::vector<std::pair<int, int>> edges_as_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto &e : edges) out.emplace_back(e[0], e[1]);
    return out;
  }
};

namespace detail {

struct Token {
  std::string text;
  int line = 0, column = 0;
};

struct Segment {
  std::vector<Token> tokens;
  int line = 0, column = 0;
};

inline std::vector<Segment> segments_of(std::string_view text) {
  std::vector<Segment> out;
  Segment cur;
  Token tok;
  int line = 1, col = 1;
  bool comment = false;
  auto end_token = [&] {
    if (tok.text.empty()) return;
    if (cur.tokens.empty()) {
      cur.line = tok.line;
      cur.column = tok.column;
    }
    cur.tokens.push_back(std::move(tok));
    tok = Token{};
  };
  auto end_segment = [&] {
    end_token();
    if (!cur.tokens.empty()) out.push_back(std::move(cur));
    cur = Segment{};
  };
  for (char ch : text) {
    if (ch == '\n') {
      end_segment();
      comment = false;
      ++line;
      col = 1;
      continue;
    }
    if (!comment) {
      if (ch == '#') {
        comment = true;
        end_token();
      } else if (ch == '/') {
        end_segment();
      } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
        end_token();
      } else {
        if (tok.text.empty()) {
          tok.line = line;
          tok.column = col;
        }
        tok.text.push_back(ch);
      }
    }
    ++col;
  }
  end_segment();
  return out;
}

inline long long integer_token(const Token &t) {
  long long v = 0;
  const char *b = t.text.data(), *e = b + t.text.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec == std::errc::result_out_of_range)
    throw ParseError("integer '" + t.text + "' out of range", t.line, t.column);
  if (ec != std::errc() || p != e)
    throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.column);
  return v;
}

struct Position {
  int line = 0, column = 0;
};

inline void validate_matrix(const std::vector<IntVector> &rows, const std::vector<Position> &pos) {
  if (rows.empty() || rows.front().empty())
    throw ValidationError("empty-matrix", "matrix has no rows or no columns");
  const std::size_t q = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < q; ++j)
      if (rows[i][j] < 0)
        throw ValidationError("negative-entry",
                              "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                  ") is negative",
                              pos[i].line, pos[i].column);
    if (is_zero(rows[i]))
      throw ValidationError("zero-row", "row " + std::to_string(i + 1) + " is zero", pos[i].line,
                            pos[i].column);
  }
  for (std::size_t j = 0; j < q; ++j) {
    bool zero = true;
    for (const auto &r : rows) zero = zero && r[j] == 0;
    if (zero) throw ValidationError("zero-column", "column " + std::to_string(j + 1) + " is zero");
  }
}

/// Edges arrive 1-based; they are checked and stored 0-based.
inline std::vector<VertexSet> validate_edges(InputKind kind, int n,
                                             const std::vector<std::vector<long long>> &raw,
                                             const std::vector<Position> &pos) {
  if (n < 1) throw ValidationError("vertex-count", "vertex count must be positive");
  if (raw.empty()) throw ValidationError("no-edges", "input has no edges");
  std::vector<VertexSet> edges;
  std::map<VertexSet, std::size_t> seen;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto where = pos[k];
    const std::string name = "edge " + std::to_string(k + 1);
    if (kind == InputKind::graph && raw[k].size() != 2)
      throw ValidationError("edge-size", name + " needs exactly two vertices", where.line,
                            where.column);
    VertexSet e;
    for (long long v : raw[k]) {
      if (v < 1 || v > n)
        throw ValidationError("vertex-range",
                              name + " uses vertex " + std::to_string(v) + ", outside 1.." +
                                  std::to_string(n),
                              where.line, where.column);
      e.push_back(int(v - 1));
    }
    VertexSet sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError(kind == InputKind::graph ? "self-loop" : "repeated-vertex",
                            name + " repeats a vertex", where.line, where.column);
    if (auto it = seen.find(sorted); it != seen.end())
      throw ValidationError("repeated-edge",
                            name + " repeats edge " + std::to_string(it->second + 1), where.line,
                            where.column);
    seen.emplace(sorted, k);
    edges.push_back(e);
  }
  if (kind == InputKind::clutter)
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (i == j) continue;
        VertexSet a = edges[i], b = edges[j];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (std::includes(b.begin(), b.end(), a.begin(), a.end()))
          throw ValidationError("edge-containment",
                                "edge " + std::to_string(i + 1) + " is contained in edge " +
                                    std::to_string(j + 1),
                                pos[i].line, pos[i].column);
      }
  return edges;
}

} // namespace detail

/// Parses the line-oriented text format.
inline InputDocument parse_input(std::string_view text) {
  auto segs = detail::segments_of(text);
  if (segs.empty()) throw ParseError("empty input", 1, 1);
  const auto &head = segs.front().tokens;
  InputDocument doc;
  const auto &kw = head.front();
  if (kw.text == "matrix") doc.kind = InputKind::matrix;
  else if (kw.text == "graph") doc.kind = InputKind::graph;
  else if (kw.text == "clutter") doc.kind = InputKind::clutter;
  else throw ParseError("expected 'matrix', 'graph' or 'clutter', got '" + kw.text + "'", kw.line,
                        kw.column);
  const std::size_t want = doc.kind == InputKind::matrix ? 3 : 2;
  if (head.size() < want) {
    const auto &last = head.back();
    throw ParseError("header needs " + std::to_string(want - 1) + " size(s)", last.line,
                     last.column + int(last.text.size()));
  }
  if (head.size() > want)
    throw ParseError("unexpected '" + head[want].text + "' after header", head[want].line,
                     head[want].column);
  const long long n = detail::integer_token(head[1]);
  if (n < 0 || n > 100000)
    throw ParseError("size " + std::to_string(n) + " out of range", head[1].line, head[1].column);
  doc.vertices = int(n);
  std::vector<detail::Position> pos;

  if (doc.kind == InputKind::matrix) {
    const long long q = detail::integer_token(head[2]);
    if (q < 0 || q > 100000)
      throw ParseError("size " + std::to_string(q) + " out of range", head[2].line, head[2].column);
    for (std::size_t s = 1; s < segs.size(); ++s) {
      const auto &seg = segs[s];
      if (doc.rows.size() == std::size_t(n))
        throw ParseError("more than " + std::to_string(n) + " rows", seg.line, seg.column);
      if (seg.tokens.size() != std::size_t(q)) {
        const auto &t = seg.tokens.size() > std::size_t(q) ? seg.tokens[q] : seg.tokens.back();
        throw ParseError("row " + std::to_string(doc.rows.size() + 1) + " has " +
                             std::to_string(seg.tokens.size()) + " entries, expected " +
                             std::to_string(q),
                         t.line, t.column);
      }
      IntVector row;
      for (const auto &t : seg.tokens) row.push_back(Integer(detail::integer_token(t)));
      doc.rows.push_back(std::move(row));
      pos.push_back({seg.line, seg.column});
    }
    if (doc.rows.size() != std::size_t(n)) {
      const auto &t = segs.back().tokens.back();
      throw ParseError("expected " + std::to_string(n) + " rows, found " +
                           std::to_string(doc.rows.size()),
                       t.line, t.column + int(t.text.size()));
    }
    if (q == 0 && n > 0) doc.rows.assign(n, IntVector{});
    detail::validate_matrix(doc.rows, pos);
    return doc;
  }

  std::vector<std::vector<long long>> raw;
  for (std::size_t s = 1; s < segs.size(); ++s) {
    std::vector<long long> e;
    for (const auto &t : segs[s].tokens) e.push_back(detail::integer_token(t));
    raw.push_back(std::move(e));
    pos.push_back({segs[s].line, segs[s].column});
  }
  doc.edges = detail::validate_edges(doc.kind, doc.vertices, raw, pos);
  return doc;
}

/// Parses the JSON form: {"kind": "matrix", "rows": [[...], ...]} or
/// {"kind": "graph"|"clutter", "vertices": n, "edges": [[u, v, ...], ...]}.
inline InputDocument parse_json_input(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", line, col);
  }
  auto fail = [](const std::string &msg) -> ParseError { return ParseError(msg, 1, 1); };
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw fail("JSON input needs a string member 'kind'");
  InputDocument doc;
  const auto kind = j["kind"].get<std::string>();
  if (kind == "matrix") doc.kind = InputKind::matrix;
  else if (kind == "graph") doc.kind = InputKind::graph;
  else if (kind == "clutter") doc.kind = InputKind::clutter;
  else throw fail("unknown kind '" + kind + "'");

  auto int_at = [&](const nlohmann::json &v, const std::string &path) -> long long {
    if (!v.is_number_integer()) throw fail("expected an integer at " + path);
    return v.get<long long>();
  };
  std::vector<detail::Position> pos;
  if (doc.kind == InputKind::matrix) {
    if (!j.contains("rows") || !j["rows"].is_array()) throw fail("matrix input needs 'rows'");
    const auto &rows = j["rows"];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string path = "/rows/" + std::to_string(i);
      if (!rows[i].is_array()) throw fail("expected an array at " + path);
      if (i > 0 && rows[i].size() != rows[0].size())
        throw fail("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                   " entries, expected " + std::to_string(rows[0].size()));
      IntVector row;
      for (std::size_t k = 0; k < rows[i].size(); ++k)
        row.push_back(Integer(int_at(rows[i][k], path + "/" + std::to_string(k))));
      doc.rows.push_back(std::move(row));
      pos.push_back({});
    }
    doc.vertices = int(doc.rows.size());
    detail::validate_matrix(doc.rows, pos);
    return doc;
  }
  if (!j.contains("vertices")) throw fail(kind + " input needs 'vertices'");
  const long long n = int_at(j["vertices"], "/vertices");
  if (n < 0 || n > 100000) throw fail("vertex count out of range");
  doc.vertices = int(n);
  if (!j.contains("edges") || !j["edges"].is_array()) throw fail(kind + " input needs 'edges'");
  std::vector<std::vector<long long>> raw;
  const auto &edges = j["edges"];
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string path = "/edges/" + std::to_string(k);
    if (!edges[k].is_array()) throw fail("expected an array at " + path);
    std::vector<long long> e;
    for (std::size_t t = 0; t < edges[k].size(); ++t)
      e.push_back(int_at(edges[k][t], path + "/" + std::to_string(t)));
    raw.push_back(std::move(e));
    pos.push_back({});
  }
  doc.edges = detail::validate_edges(doc.kind, doc.vertices, raw, pos);
  return doc;
}

/// Canonical text form; parse_input(to_text(d)) == d.
inline std::string to_text(const InputDocument &d) {
  std::string s(input_kind_name(d.kind));
  s += " " + std::to_string(d.vertices);
  if (d.kind == InputKind::matrix) {
    s += " " + std::to_string(d.rows.empty() ? 0 : d.rows.front().size()) + "\n";
    for (const auto &r : d.rows) {
      for (std::size_t j = 0; j < r.size(); ++j) s += (j ? " " : "") + r[j].str();
      s += "\n";
    }
    return s;
  }
  s += "\n";
  for (const auto &e : d.edges) {
    for (std::size_t j = 0; j < e.size(); ++j) s += (j ? " " : "") + std::to_string(e[j] + 1);
    s += "\n";
  }
  return s;
}

inline nlohmann::json to_json_input(const InputDocument &d) {
  nlohmann::json j;
  j["kind"] = std::string(input_kind_name(d.kind));
  if (d.kind == InputKind::matrix) {
    j["rows"] = nlohmann::json::array();
    for (const auto &r : d.rows) {
      auto row = nlohmann::json::array();
      for (const auto &x : r) row.push_back(x.convert_to<long long>());
      j["rows"].push_back(row);
    }
    return j;
  }
  j["vertices"] = d.vertices;
  j["edges"] = nlohmann::json::array();
  for (const auto &e : d.edges) {
    auto row = nlohmann::json::array();
    for (int v : e) row.push_back(v + 1);
    j["edges"].push_back(row);
  }
  return j;
}

/// "sha256:<hex>" of the canonical text form.
inline std::string input_digest(const InputDocument &d) {
  const std::string text = to_text(d);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

} // namespace monalg
