#include "gft/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gft {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    fields.push_back(trim(std::string_view(line).substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, long line,
                             const std::string& what) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& tok, const std::filesystem::path& path,
                    long line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    parse_fail(path, line, "expected a number, got '" + tok + "'");
  return value;
}

long parse_long(const std::string& tok, const std::filesystem::path& path,
                long line) {
  long value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    parse_fail(path, line, "expected an integer, got '" + tok + "'");
  return value;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct EdgeKeyHash {
  std::size_t operator()(const std::pair<Index, Index>& p) const {
    return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^
                                  static_cast<long long>(p.second));
  }
};

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path.string());

  std::optional<Index> declared_count;
  std::vector<NodeMeta> table;
  std::unordered_map<std::string, Index> id_to_index;
  std::vector<Edge> edges;
  std::unordered_set<std::pair<Index, Index>, EdgeKeyHash> seen;

  bool saw_edge = false;
  bool saw_header = false;
  std::string raw;
  long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = trim(raw);
    if (text.empty()) continue;
    if (text[0] == '#') {
      std::string body = trim(std::string_view(text).substr(1));
      std::string low = lower(body);
      if (low.rfind("nodes:", 0) == 0) {
        if (saw_edge) parse_fail(path, line, "'# nodes:' must precede edges");
        declared_count = parse_long(trim(body.substr(6)), path, line);
        if (*declared_count <= 0)
          parse_fail(path, line, "declared node count must be positive");
      } else if (low.rfind("node:", 0) == 0) {
        if (saw_edge) parse_fail(path, line, "'# node:' must precede edges");
        auto fields = split_csv(trim(body.substr(5)));
        if (fields.empty() || fields[0].empty())
          parse_fail(path, line, "node table entry needs an id");
        NodeMeta meta;
        meta.id = fields[0];
        if (fields.size() >= 3) {
          meta.latitude = parse_double(fields[1], path, line);
          meta.longitude = parse_double(fields[2], path, line);
        } else if (fields.size() == 2) {
          parse_fail(path, line, "node table entry needs id or id,lat,lon");
        }
        if (id_to_index.count(meta.id))
          parse_fail(path, line, "duplicate node id '" + meta.id + "'");
        id_to_index.emplace(meta.id, static_cast<Index>(table.size()));
        table.push_back(std::move(meta));
      }
      continue; // plain comment
    }

    auto fields = split_csv(text);
    if (!saw_edge && !saw_header && lower(fields[0]) == "src") {
      saw_header = true;
      continue;
    }
    if (fields.size() < 2 || fields.size() > 3)
      parse_fail(path, line, "expected src,dst[,weight]");
    saw_edge = true;

    Index src = 0, dst = 0;
    const bool explicit_table = !table.empty();
    if (explicit_table) {
      for (auto [tok, out] : {std::pair{&fields[0], &src}, {&fields[1], &dst}}) {
        auto it = id_to_index.find(*tok);
        if (it == id_to_index.end())
          parse_fail(path, line, "node id '" + *tok + "' not in node table");
        *out = it->second;
      }
    } else if (declared_count) {
      src = parse_long(fields[0], path, line);
      dst = parse_long(fields[1], path, line);
      if (src < 0 || src >= *declared_count || dst < 0 || dst >= *declared_count)
        parse_fail(path, line, "node index out of range [0, " +
                                   std::to_string(*declared_count) + ")");
    } else {
      // first-appearance interning keeps indexing deterministic
      for (auto [tok, out] : {std::pair{&fields[0], &src}, {&fields[1], &dst}}) {
        auto [it, inserted] =
            id_to_index.emplace(*tok, static_cast<Index>(table.size()));
        if (inserted) table.push_back(NodeMeta{*tok});
        *out = it->second;
      }
    }

    double weight = 1.0;
    if (fields.size() == 3) {
      weight = parse_double(fields[2], path, line);
      if (!std::isfinite(weight) || weight <= 0.0)
        parse_fail(path, line, "edge weight must be a positive real");
    }
    if (!seen.insert({src, dst}).second)
      parse_fail(path, line, "duplicate edge (" + fields[0] + ", " + fields[1] + ")");
    edges.push_back(Edge{src, dst, Complex(weight, 0.0)});
  }

  Index count = 0;
  if (declared_count)
    count = *declared_count;
  else
    count = static_cast<Index>(table.size());
  if (count == 0)
    throw InputError(path.string() + ": no nodes (declare '# nodes: N' for edgeless graphs)");
  return Graph(count, std::move(edges), std::move(table));
}

Graph load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file: " + path.string());

  std::string raw;
  long line = 0;
  if (!std::getline(in, raw)) throw InputError(path.string() + ": empty file");
  ++line;
  std::istringstream banner(raw);
  std::string tag, object, fmt, field, symmetry;
  banner >> tag >> object >> fmt >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix" ||
      lower(fmt) != "coordinate")
    parse_fail(path, line, "expected '%%MatrixMarket matrix coordinate ...'");
  field = lower(field);
  symmetry = lower(symmetry);
  const bool complex_field = field == "complex";
  if (field != "real" && field != "integer" && !complex_field)
    parse_fail(path, line, "unsupported field '" + field + "' (real, integer, complex)");
  if (symmetry != "general")
    parse_fail(path, line, "unsupported symmetry '" + symmetry + "' (general only)");

  long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = trim(raw);
    if (text.empty() || text[0] == '%') continue;
    std::istringstream sz(text);
    if (!(sz >> rows >> cols >> nnz))
      parse_fail(path, line, "bad size line");
    break;
  }
  if (rows < 0) throw InputError(path.string() + ": missing size line");
  if (rows != cols)
    throw InputError(path.string() + ": adjacency matrix must be square");
  if (rows == 0) throw InputError(path.string() + ": empty matrix");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(nnz));
  std::unordered_set<std::pair<Index, Index>, EdgeKeyHash> seen;
  long read = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = trim(raw);
    if (text.empty() || text[0] == '%') continue;
    std::istringstream entry(text);
    long i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(entry >> i >> j >> re)) parse_fail(path, line, "bad entry");
    if (complex_field && !(entry >> im)) parse_fail(path, line, "bad complex entry");
    if (i < 1 || i > rows || j < 1 || j > cols)
      parse_fail(path, line, "index out of range");
    ++read;
    if (!seen.insert({i - 1, j - 1}).second)
      parse_fail(path, line, "duplicate entry (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
    Complex w(re, im);
    if (w == Complex(0.0, 0.0)) continue; // explicit zero: no edge
    edges.push_back(Edge{i - 1, j - 1, w});
  }
  if (read != nnz)
    throw InputError(path.string() + ": entry count " + std::to_string(read) +
                     " does not match declared " + std::to_string(nnz));
  return Graph(rows, std::move(edges), {});
}

}  // namespace

Graph::Graph(Index node_count, std::vector<Edge> edges,
             std::vector<NodeMeta> node_meta)
    : node_count_(node_count),
      edges_(std::move(edges)),
      node_meta_(std::move(node_meta)) {
  if (node_count_ <= 0) throw InputError("graph needs at least one node");
  if (!node_meta_.empty() &&
      static_cast<Index>(node_meta_.size()) != node_count_)
    throw InputError("node metadata size does not match node count");
  std::unordered_set<std::pair<Index, Index>, EdgeKeyHash> seen;
  for (const Edge& e : edges_) {
    if (e.src < 0 || e.src >= node_count_ || e.dst < 0 || e.dst >= node_count_)
      throw InputError("edge endpoint out of range");
    if (!std::isfinite(e.weight.real()) || !std::isfinite(e.weight.imag()))
      throw InputError("edge weight must be finite");
    if (e.weight == Complex(0.0, 0.0))
      throw InputError("edge weight must be nonzero");
    if (!seen.insert({e.src, e.dst}).second)
      throw InputError("duplicate edge (" + std::to_string(e.src) + ", " +
                       std::to_string(e.dst) + ")");
  }
}

Matrix Graph::adjacency() const {
  Matrix a = Matrix::Zero(node_count_, node_count_);
  for (const Edge& e : edges_) a(e.src, e.dst) = e.weight;
  return a;
}

std::optional<Index> Graph::index_of(const std::string& id) const {
  for (Index i = 0; i < static_cast<Index>(node_meta_.size()); ++i)
    if (node_meta_[static_cast<std::size_t>(i)].id == id) return i;
  return std::nullopt;
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  switch (format) {
    case GraphFormat::EdgeListCsv:
      return load_edge_list(path);
    case GraphFormat::MatrixMarket:
      return load_matrix_market(path);
  }
  throw InputError("unknown graph format");
}

void save_graph(const Graph& graph, const std::filesystem::path& path,
                GraphFormat format) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write graph file: " + path.string());
  if (format == GraphFormat::EdgeListCsv) {
    for (const Edge& e : graph.edges())
      if (e.weight.imag() != 0.0)
        throw InputError("complex weights cannot be saved as edge-list CSV");
    if (graph.has_meta()) {
      for (const NodeMeta& m : graph.node_meta()) {
        out << "# node: " << m.id;
        if (std::isfinite(m.latitude) && std::isfinite(m.longitude))
          out << "," << format_double(m.latitude) << ","
              << format_double(m.longitude);
        out << "\n";
      }
    } else {
      out << "# nodes: " << graph.node_count() << "\n";
    }
    out << "src,dst,weight\n";
    const auto& meta = graph.node_meta();
    for (const Edge& e : graph.edges()) {
      if (graph.has_meta())
        out << meta[static_cast<std::size_t>(e.src)].id << ","
            << meta[static_cast<std::size_t>(e.dst)].id;
      else
        out << e.src << "," << e.dst;
      out << "," << format_double(e.weight.real()) << "\n";
    }
  } else {
    bool complex_field = false;
    for (const Edge& e : graph.edges())
      if (e.weight.imag() != 0.0) complex_field = true;
    out << "%%MatrixMarket matrix coordinate "
        << (complex_field ? "complex" : "real") << " general\n";
    out << graph.node_count() << " " << graph.node_count() << " "
        << graph.edges().size() << "\n";
    for (const Edge& e : graph.edges()) {
      out << (e.src + 1) << " " << (e.dst + 1) << " "
          << format_double(e.weight.real());
      if (complex_field) out << " " << format_double(e.weight.imag());
      out << "\n";
    }
  }
  if (!out) throw InputError("failed writing graph file: " + path.string());
}

GraphSignal load_signal(const std::filesystem::path& path, const Graph& graph) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open signal file: " + path.string());

  GraphSignal signal;
  signal.values = Vector::Zero(graph.node_count());
  signal.label = path.stem().string();

  std::unordered_map<std::string, Index> id_to_index;
  for (Index i = 0; i < static_cast<Index>(graph.node_meta().size()); ++i)
    id_to_index.emplace(graph.node_meta()[static_cast<std::size_t>(i)].id, i);

  std::string raw;
  long line = 0;
  bool first_data = true;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    auto fields = split_csv(text);
    if (first_data) {
      first_data = false;
      std::string head = lower(fields[0]);
      if (head == "node" || head == "node_id" || head == "id") continue;
    }
    if (fields.size() < 2 || fields.size() > 3)
      parse_fail(path, line, "expected node_id,value[,imag]");

    Index node = -1;
    auto it = id_to_index.find(fields[0]);
    if (it != id_to_index.end()) {
      node = it->second;
    } else {
      long idx = 0;
      const char* first = fields[0].data();
      const char* last = fields[0].data() + fields[0].size();
      auto [ptr, ec] = std::from_chars(first, last, idx);
      if (ec != std::errc() || ptr != last || idx < 0 ||
          idx >= graph.node_count())
        parse_fail(path, line, "unknown node id '" + fields[0] + "'");
      node = idx;
    }
    double re = parse_double(fields[1], path, line);
    double im = fields.size() == 3 ? parse_double(fields[2], path, line) : 0.0;
    if (!std::isfinite(re) || !std::isfinite(im))
      parse_fail(path, line, "signal value must be finite");
    signal.values(node) = Complex(re, im);
  }
  return signal;
}

Graph permute_graph(const Graph& graph, std::span<const Index> perm) {
  const Index n = graph.node_count();
  if (static_cast<Index>(perm.size()) != n)
    throw InputError("permutation length does not match node count");
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (Index p : perm) {
    if (p < 0 || p >= n || hit[static_cast<std::size_t>(p)])
      throw InputError("permutation is not a bijection on [0, N)");
    hit[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(graph.edges().size());
  for (const Edge& e : graph.edges())
    edges.push_back(Edge{perm[static_cast<std::size_t>(e.src)],
                         perm[static_cast<std::size_t>(e.dst)], e.weight});
  std::vector<NodeMeta> meta;
  if (graph.has_meta()) {
    meta.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i)
      meta[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
          graph.node_meta()[static_cast<std::size_t>(i)];
  }
  return Graph(n, std::move(edges), std::move(meta));
}

}  // namespace gft
