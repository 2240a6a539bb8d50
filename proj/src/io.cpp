#include "tcsat/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "tcsat/error.hpp"

namespace tcsat::io {

namespace {

constexpr std::int64_t kMinValue = -(std::int64_t{1} << 31);
constexpr std::int64_t kMaxValue = (std::int64_t{1} << 31) - 1;

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    Line l{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) l.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ParseError(line, "expected integer, got '" + std::string(s) + "'");
  if (v < kMinValue || v > kMaxValue) throw ParseError(line, "integer out of range: " + std::string(s));
  return v;
}

int parse_count(std::string_view s, std::size_t line) {
  const auto v = parse_int(s, line);
  if (v < 0) throw ParseError(line, "expected non-negative count");
  return static_cast<int>(v);
}

// "<idx>:<w>" with an optional one-letter prefix on the index.
std::pair<std::int64_t, std::int64_t> parse_term(std::string_view s, std::size_t line, char prefix = 0) {
  if (prefix) {
    if (s.empty() || s.front() != prefix) throw ParseError(line, "expected '" + std::string(1, prefix) + "' term");
    s.remove_prefix(1);
  }
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) throw ParseError(line, "expected <index>:<weight>, got '" + std::string(s) + "'");
  const auto idx = parse_int(s.substr(0, colon), line);
  const auto w = parse_int(s.substr(colon + 1), line);
  if (w == 0) throw ParseError(line, "zero weight");
  return {idx, w};
}

void expect(const Line& l, std::string_view keyword, std::size_t min_tokens) {
  if (l.tokens.front() != keyword)
    throw ParseError(l.number, "expected '" + std::string(keyword) + "', got '" + std::string(l.tokens.front()) + "'");
  if (l.tokens.size() < min_tokens) throw ParseError(l.number, "too few fields for '" + std::string(keyword) + "'");
}

void check_var(std::int64_t idx, int n, std::size_t line) {
  if (idx < 0 || idx >= n) throw ParseError(line, "variable index " + std::to_string(idx) + " out of range");
}

// Rejects instances whose accumulations could leave int64: n * max|w| < 2^62.
void check_magnitude(int n, std::int64_t max_abs, std::size_t line) {
  const __int128 bound = static_cast<__int128>(std::max(n, 1)) * max_abs;
  if (bound >= (static_cast<__int128>(1) << 62)) throw ParseError(line, "n * max|weight| must stay below 2^62");
}

std::size_t header_line(const std::vector<Line>& lines) { return lines.empty() ? 1 : lines.front().number; }

template <class F>
auto with_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError& e) {
    throw ParseError(line, e.what());
  }
}

Predicate parse_predicate(const Line& l, std::size_t& pos) {
  auto need = [&](std::size_t k) {
    if (pos + k > l.tokens.size()) throw ParseError(l.number, "incomplete predicate");
  };
  need(2);
  const auto kind = l.tokens[pos];
  if (kind == "ge") {
    auto t = parse_int(l.tokens[pos + 1], l.number);
    pos += 2;
    return pred::AtLeast{t};
  }
  if (kind == "eq") {
    auto v = parse_int(l.tokens[pos + 1], l.number);
    pos += 2;
    return pred::Exactly{v};
  }
  if (kind == "mod") {
    need(3);
    auto m = parse_int(l.tokens[pos + 1], l.number);
    auto r = parse_int(l.tokens[pos + 2], l.number);
    if (m <= 0 || r < 0 || r >= m) throw ParseError(l.number, "mod needs m > 0 and 0 <= r < m");
    pos += 3;
    return pred::Modulo{m, r};
  }
  if (kind == "set") {
    pred::OneOf s;
    std::string_view list = l.tokens[pos + 1];
    while (!list.empty()) {
      const auto comma = list.find(',');
      s.values.insert(parse_int(list.substr(0, comma), l.number));
      if (comma == std::string_view::npos) break;
      list.remove_prefix(comma + 1);
      if (list.empty()) throw ParseError(l.number, "trailing comma in set");
    }
    pos += 2;
    return s;
  }
  throw ParseError(l.number, "unknown predicate '" + std::string(kind) + "'");
}

void emit_predicate(std::ostringstream& os, const Predicate& p) {
  std::visit(
      [&](const auto& q) {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, pred::AtLeast>) {
          os << "ge " << q.t;
        } else if constexpr (std::is_same_v<T, pred::Exactly>) {
          os << "eq " << q.v;
        } else if constexpr (std::is_same_v<T, pred::Modulo>) {
          os << "mod " << q.m << ' ' << q.r;
        } else {
          os << "set ";
          bool first = true;
          for (auto v : q.values) {
            os << (first ? "" : ",") << v;
            first = false;
          }
        }
      },
      p);
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kGe: return "ge";
    case Relation::kGt: return "gt";
    case Relation::kLe: return "le";
    case Relation::kLt: return "lt";
    case Relation::kEq: return "eq";
  }
  return "?";
}

}  // namespace

ThresholdCircuit parse_circuit(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty circuit file");
  const auto& head = lines.front();
  expect(head, "tc2", 3);
  if (head.tokens.size() != 3) throw ParseError(head.number, "header is 'tc2 <n> <m>'");
  ThresholdCircuit c;
  c.n_vars = parse_count(head.tokens[1], head.number);
  const int m = parse_count(head.tokens[2], head.number);
  if (lines.size() != static_cast<std::size_t>(m) + 2)
    throw ParseError(lines.back().number, "expected " + std::to_string(m) + " gate lines and one top line");

  std::int64_t max_abs = 0;
  for (int g = 0; g < m; ++g) {
    const auto& l = lines[static_cast<std::size_t>(g) + 1];
    expect(l, "gate", 2);
    ThresholdGate gate;
    gate.threshold = parse_int(l.tokens[1], l.number);
    for (std::size_t i = 2; i < l.tokens.size(); ++i) {
      const auto [idx, w] = parse_term(l.tokens[i], l.number);
      check_var(idx, c.n_vars, l.number);
      gate.inputs.push_back({static_cast<int>(idx), w});
      max_abs = std::max(max_abs, w < 0 ? -w : w);
    }
    with_line(l.number, [&] {
      ThresholdCircuit probe{c.n_vars, {gate}, {1}, {}, 0};
      probe.validate();
    });
    c.bottom.push_back(std::move(gate));
  }

  const auto& top = lines.back();
  expect(top, "top", 2);
  c.top_threshold = parse_int(top.tokens[1], top.number);
  c.top_gate_weights.assign(static_cast<std::size_t>(m), 0);
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (std::size_t i = 2; i < top.tokens.size(); ++i) {
    const auto tok = top.tokens[i];
    const char kind = tok.empty() ? 0 : tok.front();
    if (kind == 'g') {
      const auto [j, w] = parse_term(tok, top.number, 'g');
      if (j < 0 || j >= m) throw ParseError(top.number, "gate index " + std::to_string(j) + " out of range");
      if (seen[static_cast<std::size_t>(j)]) throw ParseError(top.number, "duplicate gate in top line");
      seen[static_cast<std::size_t>(j)] = true;
      c.top_gate_weights[static_cast<std::size_t>(j)] = w;
      max_abs = std::max(max_abs, w < 0 ? -w : w);
    } else if (kind == 'x') {
      const auto [idx, w] = parse_term(tok, top.number, 'x');
      check_var(idx, c.n_vars, top.number);
      c.direct_wires.push_back({static_cast<int>(idx), w});
      max_abs = std::max(max_abs, w < 0 ? -w : w);
    } else {
      throw ParseError(top.number, "unknown token '" + std::string(tok) + "'");
    }
  }
  with_line(top.number, [&] { c.validate(); });
  check_magnitude(std::max<int>(c.n_vars, m), max_abs, header_line(lines));
  return c;
}

std::string emit_circuit(const ThresholdCircuit& c) {
  std::ostringstream os;
  os << "tc2 " << c.n_vars << ' ' << c.bottom.size() << '\n';
  for (const auto& g : c.bottom) {
    os << "gate " << g.threshold;
    for (const auto& in : g.inputs) os << ' ' << in.var << ':' << in.weight;
    os << '\n';
  }
  os << "top " << c.top_threshold;
  for (std::size_t g = 0; g < c.top_gate_weights.size(); ++g)
    if (c.top_gate_weights[g] != 0) os << " g" << g << ':' << c.top_gate_weights[g];
  for (const auto& in : c.direct_wires) os << " x" << in.var << ':' << in.weight;
  os << '\n';
  return os.str();
}

SymmetricCircuit parse_symmetric(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty circuit file");
  const auto& head = lines.front();
  expect(head, "sc2", 4);
  if (head.tokens.size() != 4) throw ParseError(head.number, "header is 'sc2 <n> <m> <c>'");
  SymmetricCircuit c;
  c.n_vars = parse_count(head.tokens[1], head.number);
  const int m = parse_count(head.tokens[2], head.number);
  c.declared_c = parse_int(head.tokens[3], head.number);
  if (lines.size() != static_cast<std::size_t>(m) + 2)
    throw ParseError(lines.back().number, "expected " + std::to_string(m) + " gate lines and one top line");

  std::int64_t max_abs = 0;
  std::vector<std::int64_t> gate_line(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) {
    const auto& l = lines[static_cast<std::size_t>(g) + 1];
    expect(l, "sgate", 3);
    SymmetricGate gate;
    std::size_t pos = 1;
    gate.predicate = parse_predicate(l, pos);
    for (; pos < l.tokens.size(); ++pos) {
      const auto [idx, w] = parse_term(l.tokens[pos], l.number);
      check_var(idx, c.n_vars, l.number);
      gate.inputs.push_back({static_cast<int>(idx), w});
      max_abs = std::max(max_abs, w < 0 ? -w : w);
    }
    with_line(l.number, [&] {
      SymmetricCircuit probe;
      probe.n_vars = c.n_vars;
      probe.declared_c = INT32_MAX;
      probe.bottom.push_back(gate);
      probe.validate();
    });
    c.bottom.push_back(std::move(gate));
  }

  const auto& top = lines.back();
  expect(top, "stop", 3);
  std::size_t pos = 1;
  c.top.predicate = parse_predicate(top, pos);
  for (; pos < top.tokens.size(); ++pos) {
    const auto tok = top.tokens[pos];
    const char kind = tok.empty() ? 0 : tok.front();
    if (kind == 'g') {
      const auto [j, w] = parse_term(tok, top.number, 'g');
      if (j < 0 || j >= m) throw ParseError(top.number, "gate index " + std::to_string(j) + " out of range");
      c.top.gates.push_back({static_cast<int>(j), w});
      max_abs = std::max(max_abs, w < 0 ? -w : w);
    } else if (kind == 'x') {
      const auto [idx, w] = parse_term(tok, top.number, 'x');
      check_var(idx, c.n_vars, top.number);
      c.top.direct.push_back({static_cast<int>(idx), w});
      max_abs = std::max(max_abs, w < 0 ? -w : w);
    } else {
      throw ParseError(top.number, "unknown token '" + std::string(tok) + "'");
    }
  }
  with_line(top.number, [&] { c.validate(); });
  check_magnitude(std::max<int>(c.n_vars, m), max_abs, header_line(lines));
  return c;
}

std::string emit_symmetric(const SymmetricCircuit& c) {
  std::ostringstream os;
  os << "sc2 " << c.n_vars << ' ' << c.bottom.size() << ' ' << c.declared_c << '\n';
  for (const auto& g : c.bottom) {
    os << "sgate ";
    emit_predicate(os, g.predicate);
    for (const auto& in : g.inputs) os << ' ' << in.var << ':' << in.weight;
    os << '\n';
  }
  os << "stop ";
  emit_predicate(os, c.top.predicate);
  for (const auto& gi : c.top.gates) os << " g" << gi.gate << ':' << gi.weight;
  for (const auto& in : c.top.direct) os << " x" << in.var << ':' << in.weight;
  os << '\n';
  return os.str();
}

IneqSystem parse_ilp(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty ILP file");
  const auto& head = lines.front();
  expect(head, "ilp", 4);
  if (head.tokens.size() != 4) throw ParseError(head.number, "header is 'ilp <n> <m> <arity>'");
  IneqSystem sys;
  sys.n_vars = parse_count(head.tokens[1], head.number);
  const int m = parse_count(head.tokens[2], head.number);
  sys.arity = parse_count(head.tokens[3], head.number);
  if (sys.arity < 2 || sys.arity > 255) throw ParseError(head.number, "arity must be in [2, 255]");
  if (lines.size() != static_cast<std::size_t>(m) + 1)
    throw ParseError(lines.back().number, "expected " + std::to_string(m) + " row lines");

  std::int64_t max_abs = 0;
  for (int j = 0; j < m; ++j) {
    const auto& l = lines[static_cast<std::size_t>(j) + 1];
    expect(l, "row", 3);
    LinearRow row;
    const auto rel = l.tokens[1];
    if (rel == "ge") row.rel = Relation::kGe;
    else if (rel == "gt") row.rel = Relation::kGt;
    else if (rel == "le") row.rel = Relation::kLe;
    else if (rel == "lt") row.rel = Relation::kLt;
    else if (rel == "eq") row.rel = Relation::kEq;
    else throw ParseError(l.number, "unknown relation '" + std::string(rel) + "'");
    row.rhs = parse_int(l.tokens[2], l.number);
    max_abs = std::max(max_abs, row.rhs < 0 ? -row.rhs : row.rhs);
    for (std::size_t i = 3; i < l.tokens.size(); ++i) {
      const auto [idx, w] = parse_term(l.tokens[i], l.number);
      check_var(idx, sys.n_vars, l.number);
      row.terms.push_back({static_cast<int>(idx), w});
      max_abs = std::max(max_abs, w < 0 ? -w : w);
    }
    sys.rows.push_back(std::move(row));
    with_line(l.number, [&] {
      IneqSystem probe{sys.n_vars, sys.arity, {sys.rows.back()}};
      probe.validate();
    });
  }
  check_magnitude(sys.n_vars, max_abs * (sys.arity - 1), header_line(lines));
  return sys;
}

std::string emit_ilp(const IneqSystem& sys) {
  std::ostringstream os;
  os << "ilp " << sys.n_vars << ' ' << sys.rows.size() << ' ' << sys.arity << '\n';
  for (const auto& row : sys.rows) {
    os << "row " << relation_name(row.rel) << ' ' << row.rhs;
    for (const auto& t : row.terms) os << ' ' << t.var << ':' << t.weight;
    os << '\n';
  }
  return os.str();
}

std::string format_witness(const Assignment& a) {
  std::string s;
  s.reserve(a.size());
  for (auto v : a.values) s.push_back(static_cast<char>('0' + v));
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tcsat::io
