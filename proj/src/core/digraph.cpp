#include "core/digraph.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

#include "core/error.hpp"

namespace synccensus {

namespace {

void sort_small(Vertex* row, int k) {
  for (int i = 1; i < k; ++i) {
    Vertex x = row[i];
    int j = i - 1;
    while (j >= 0 && row[j] > x) {
      row[j + 1] = row[j];
      --j;
    }
    row[j + 1] = x;
  }
}

std::string parse_error(int line, int column, const std::string& what) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
}

}  // namespace

Digraph::Digraph(int n, int k) {
  if (n < 1 || n > kMaxVertices) {
    throw Error(ErrorCode::kSizeLimit, "vertex count must be in [1, " + std::to_string(kMaxVertices) + "], got " + std::to_string(n));
  }
  if (k < 1 || k > kMaxDegree) {
    throw Error(ErrorCode::kSizeLimit, "out-degree must be in [1, " + std::to_string(kMaxDegree) + "], got " + std::to_string(k));
  }
  n_ = static_cast<std::uint8_t>(n);
  k_ = static_cast<std::uint8_t>(k);
}

Digraph Digraph::from_rows(int n, int k, const std::vector<std::vector<int>>& rows) {
  if (auto violation = validate(n, k, rows)) throw Error(ErrorCode::kInvalidArgument, *violation);
  Digraph d(n, k);
  std::array<Vertex, kMaxDegree> row{};
  for (int v = 0; v < n; ++v) {
    for (int i = 0; i < k; ++i) row[i] = static_cast<Vertex>(rows[v][i]);
    d.set_dests(v, std::span<const Vertex>(row.data(), k));
  }
  return d;
}

void Digraph::set_dests(int v, std::span<const Vertex> row) {
  if (v < 0 || v >= n_ || static_cast<int>(row.size()) != k_) {
    throw Error(ErrorCode::kInvalidArgument, "set_dests: bad vertex or row length");
  }
  Vertex* out = slots_.data() + static_cast<std::size_t>(v) * k_;
  for (int i = 0; i < k_; ++i) {
    if (row[i] >= n_) throw Error(ErrorCode::kInvalidArgument, "destination out of range");
    out[i] = row[i];
  }
  sort_small(out, k_);
}

std::vector<std::pair<int, int>> Digraph::multiplicities(int v) const {
  std::vector<std::pair<int, int>> out;
  for (Vertex w : dests(v)) {
    if (!out.empty() && out.back().first == w) {
      ++out.back().second;
    } else {
      out.emplace_back(w, 1);
    }
  }
  return out;
}

int Digraph::loop_count(int v) const {
  auto row = dests(v);
  return static_cast<int>(std::count(row.begin(), row.end(), static_cast<Vertex>(v)));
}

std::vector<std::vector<int>> Digraph::rows() const {
  std::vector<std::vector<int>> out(n_);
  for (int v = 0; v < n_; ++v) out[v].assign(dests(v).begin(), dests(v).end());
  return out;
}

std::optional<std::string> validate(int n, int k, const std::vector<std::vector<int>>& rows) {
  if (n < 1) return "vertex count must be positive";
  if (k < 1) return "out-degree must be positive";
  if (n > kMaxVertices) return "vertex count exceeds limit " + std::to_string(kMaxVertices);
  if (k > kMaxDegree) return "out-degree exceeds limit " + std::to_string(kMaxDegree);
  if (static_cast<int>(rows.size()) != n) {
    return "expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size());
  }
  for (int v = 0; v < n; ++v) {
    const auto& row = rows[v];
    if (static_cast<int>(row.size()) != k) {
      return "vertex " + std::to_string(v) + " has " + std::to_string(row.size()) + " edges, expected " + std::to_string(k);
    }
    for (int w : row) {
      if (w < 0 || w >= n) {
        return "vertex " + std::to_string(v) + " has destination " + std::to_string(w) + " out of range [0, " + std::to_string(n) + ")";
      }
    }
    if (!std::is_sorted(row.begin(), row.end())) {
      return "destinations of vertex " + std::to_string(v) + " are not in non-decreasing order";
    }
  }
  return std::nullopt;
}

Automaton::Automaton(int n, int k, std::vector<Vertex> table) : n_(n), k_(k), table_(std::move(table)) {
  if (n < 1 || n > kMaxStates) throw Error(ErrorCode::kSizeLimit, "automaton state count out of range");
  if (k < 1 || k > kMaxLetters) throw Error(ErrorCode::kSizeLimit, "automaton alphabet size out of range");
  if (table_.size() != static_cast<std::size_t>(n) * k) {
    throw Error(ErrorCode::kInvalidArgument, "transition table has wrong size");
  }
  for (Vertex q : table_) {
    if (q >= n) throw Error(ErrorCode::kInvalidArgument, "transition target out of range");
  }
}

Automaton Automaton::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "automaton needs at least one state");
  int n = static_cast<int>(rows.size());
  int k = static_cast<int>(rows.front().size());
  std::vector<Vertex> table;
  table.reserve(static_cast<std::size_t>(n) * k);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != k) throw Error(ErrorCode::kInvalidArgument, "ragged transition table");
    for (int q : row) {
      if (q < 0 || q >= n) throw Error(ErrorCode::kInvalidArgument, "transition target out of range");
      table.push_back(static_cast<Vertex>(q));
    }
  }
  return Automaton(n, k, std::move(table));
}

Digraph digraph_of_automaton(const Automaton& a) {
  Digraph d(a.n(), a.k());
  for (int q = 0; q < a.n(); ++q) {
    d.set_dests(q, a.table().subspan(static_cast<std::size_t>(q) * a.k(), a.k()));
  }
  return d;
}

Digraph parse_digraph(std::string_view text) {
  struct Token {
    int value;
    int column;
  };
  int line_no = 0;
  bool have_header = false;
  int n = 0, k = 0;
  std::vector<std::vector<int>> rows;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
      std::string_view word = line.substr(start, i - start);
      int value = 0;
      auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
      if (ec != std::errc() || ptr != word.data() + word.size()) {
        throw Error(ErrorCode::kParse, parse_error(line_no, static_cast<int>(start) + 1, "expected an integer, got '" + std::string(word) + "'"));
      }
      tokens.push_back({value, static_cast<int>(start) + 1});
    }
    if (tokens.empty()) continue;

    if (!have_header) {
      if (tokens.size() != 2) throw Error(ErrorCode::kParse, parse_error(line_no, 1, "header must be 'n k'"));
      n = tokens[0].value;
      k = tokens[1].value;
      if (n < 1 || n > kMaxVertices) throw Error(ErrorCode::kParse, parse_error(line_no, tokens[0].column, "vertex count must be in [1, 15]"));
      if (k < 1 || k > kMaxDegree) throw Error(ErrorCode::kParse, parse_error(line_no, tokens[1].column, "out-degree must be in [1, 6]"));
      have_header = true;
      continue;
    }
    if (static_cast<int>(rows.size()) == n) {
      throw Error(ErrorCode::kParse, parse_error(line_no, tokens[0].column, "unexpected data after " + std::to_string(n) + " vertex lines"));
    }
    if (static_cast<int>(tokens.size()) != k) {
      throw Error(ErrorCode::kParse, parse_error(line_no, 1, "expected " + std::to_string(k) + " destinations, got " + std::to_string(tokens.size())));
    }
    std::vector<int> row;
    for (const Token& t : tokens) {
      if (t.value < 1 || t.value > n) {
        throw Error(ErrorCode::kParse, parse_error(line_no, t.column, "destination " + std::to_string(t.value) + " out of range [1, " + std::to_string(n) + "]"));
      }
      if (!row.empty() && t.value - 1 < row.back()) {
        throw Error(ErrorCode::kParse, parse_error(line_no, t.column, "destinations must be non-decreasing"));
      }
      row.push_back(t.value - 1);
    }
    rows.push_back(std::move(row));
  }
  if (!have_header) throw Error(ErrorCode::kParse, parse_error(line_no, 1, "missing 'n k' header"));
  if (static_cast<int>(rows.size()) != n) {
    throw Error(ErrorCode::kParse, parse_error(line_no, 1, "expected " + std::to_string(n) + " vertex lines, got " + std::to_string(rows.size())));
  }
  return Digraph::from_rows(n, k, rows);
}

std::string format_digraph(const Digraph& d) {
  std::string out = std::to_string(d.n()) + " " + std::to_string(d.k()) + "\n";
  for (int v = 0; v < d.n(); ++v) {
    bool first = true;
    for (Vertex w : d.dests(v)) {
      if (!first) out += ' ';
      out += std::to_string(w + 1);
      first = false;
    }
    out += '\n';
  }
  return out;
}

Digraph parse_digraph_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON digraph: ") + e.what());
  }
  try {
    int n = j.at("n").get<int>();
    int k = j.at("k").get<int>();
    auto rows = j.at("dests").get<std::vector<std::vector<int>>>();
    if (auto violation = validate(n, k, rows)) throw Error(ErrorCode::kParse, *violation);
    return Digraph::from_rows(n, k, rows);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("invalid JSON digraph: ") + e.what());
  }
}

std::string format_digraph_json(const Digraph& d) {
  nlohmann::ordered_json j;
  j["n"] = d.n();
  j["k"] = d.k();
  j["dests"] = d.rows();
  return j.dump() + "\n";
}

}  // namespace synccensus
