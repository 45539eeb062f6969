#include "acthom/persistence.hpp"

#include <algorithm>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "acthom/error.hpp"
#include "acthom/io.hpp"
#include "acthom/union_find.hpp"

namespace acthom {

std::vector<PersistencePair> PersistenceDiagram::in_dim(int dim, bool include_zero) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.dim == dim && (include_zero || !p.zero_persistence())) out.push_back(p);
  std::sort(out.begin(), out.end(), [](const PersistencePair& a, const PersistencePair& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  return out;
}

std::size_t PersistenceDiagram::count(int dim) const {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [dim](const auto& p) { return p.dim == dim; }));
}

namespace {

using Column = std::vector<std::uint32_t>;
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::uint64_t edge_key(Vertex a, Vertex b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Boundary columns (ascending row indices) in filtration order.
std::vector<Column> boundary_matrix(const std::vector<Simplex>& simplices) {
  std::unordered_map<Vertex, std::uint32_t> vertex_index;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
  std::vector<Column> columns(simplices.size());
  auto face = [&](auto& table, auto key, std::uint32_t self) {
    auto it = table.find(key);
    if (it == table.end()) throw InvalidFiltration("filtration is not closed under faces");
    if (it->second > self) throw InvalidFiltration("a face enters after one of its cofaces");
    return it->second;
  };
  for (std::uint32_t i = 0; i < simplices.size(); ++i) {
    const Simplex& s = simplices[i];
    if (s.count < 1 || s.count > 3) throw InvalidFiltration("malformed simplex");
    for (int k = 1; k < s.count; ++k)
      if (s.v[k - 1] >= s.v[k]) throw InvalidFiltration("malformed simplex");
    if (s.count == 1) {
      if (!vertex_index.emplace(s.v[0], i).second) throw InvalidFiltration("duplicate vertex");
    } else if (s.count == 2) {
      if (!edge_index.emplace(edge_key(s.v[0], s.v[1]), i).second)
        throw InvalidFiltration("duplicate edge");
      columns[i] = {face(vertex_index, s.v[0], i), face(vertex_index, s.v[1], i)};
    } else {
      columns[i] = {face(edge_index, edge_key(s.v[0], s.v[1]), i),
                    face(edge_index, edge_key(s.v[0], s.v[2]), i),
                    face(edge_index, edge_key(s.v[1], s.v[2]), i)};
    }
    std::sort(columns[i].begin(), columns[i].end());
  }
  return columns;
}

void add_into(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

PersistenceDiagram compute_persistence(const FiltrationComplex& filtration) {
  const auto& simplices = filtration.simplices();
  std::vector<Column> columns = boundary_matrix(simplices);
  const std::size_t n = simplices.size();

  std::vector<std::uint32_t> pivot_owner(n, kNone);
  std::vector<char> paired(n, 0);
  Column scratch;
  PersistenceDiagram diagram;

  auto reduce = [&](std::uint32_t j) {
    Column& col = columns[j];
    while (!col.empty() && pivot_owner[col.back()] != kNone) add_into(col, columns[pivot_owner[col.back()]], scratch);
    if (col.empty()) return;
    const std::uint32_t low = col.back();
    pivot_owner[low] = j;
    paired[low] = paired[j] = 1;
    const Simplex& creator = simplices[low];
    diagram.pairs.push_back({creator.dim(), creator.value, simplices[j].value});
  };

  // Triangles first so positive edges can be cleared before their turn.
  for (std::uint32_t j = 0; j < n; ++j)
    if (simplices[j].count == 3) reduce(j);
  for (std::uint32_t j = 0; j < n; ++j)
    if (simplices[j].count == 2 && !paired[j]) reduce(j);

  for (std::uint32_t j = 0; j < n; ++j) {
    if (paired[j] || simplices[j].count == 3) continue;
    // An unpaired edge here has a zero reduced column, so it is an essential cycle.
    diagram.pairs.push_back({simplices[j].dim(), simplices[j].value, kInfinity});
  }
  return diagram;
}

std::size_t betti_at(const PersistenceDiagram& diagram, int dim, double t) {
  return static_cast<std::size_t>(std::count_if(
      diagram.pairs.begin(), diagram.pairs.end(),
      [&](const PersistencePair& p) { return p.dim == dim && p.birth <= t && t < p.death; }));
}

std::size_t betti0_unionfind(const FiltrationComplex& filtration, double t) {
  std::unordered_map<Vertex, std::size_t> index;
  for (const auto& s : filtration.simplices())
    if (s.count == 1 && s.value <= t) index.emplace(s.v[0], index.size());
  UnionFind uf(index.size());
  for (const auto& s : filtration.simplices()) {
    if (s.count != 2 || s.value > t) continue;
    auto a = index.find(s.v[0]);
    auto b = index.find(s.v[1]);
    if (a == index.end() || b == index.end()) throw InvalidFiltration("edge without its vertices");
    uf.unite(a->second, b->second);
  }
  return uf.set_count();
}

std::size_t edge_component_count(const FiltrationComplex& filtration, double t) {
  std::unordered_map<Vertex, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto id = [&](Vertex v) { return index.emplace(v, index.size()).first->second; };
  for (const auto& s : filtration.simplices())
    if (s.count == 2 && s.value <= t) edges.emplace_back(id(s.v[0]), id(s.v[1]));
  UnionFind uf(index.size());
  for (const auto& [a, b] : edges) uf.unite(a, b);
  return uf.set_count();
}

std::vector<ScaleWindow> betti_windows(const PersistenceDiagram& diagram, int dim,
                                       std::size_t value) {
  // Sweep the interval endpoints; births open and deaths close at the same scale.
  std::vector<std::pair<double, int>> events;
  for (const auto& p : diagram.pairs) {
    if (p.dim != dim || p.zero_persistence()) continue;
    events.emplace_back(p.birth, +1);
    if (!p.essential()) events.emplace_back(p.death, -1);
  }
  std::sort(events.begin(), events.end());
  std::vector<ScaleWindow> out;
  std::size_t live = 0;
  double start = -kInfinity;
  bool open = value == 0;
  for (std::size_t i = 0; i < events.size();) {
    const double at = events[i].first;
    long delta = 0;
    for (; i < events.size() && events[i].first == at; ++i) delta += events[i].second;
    live = static_cast<std::size_t>(static_cast<long>(live) + delta);
    const bool now = live == value;
    if (open && !now) out.push_back({start, at});
    if (!open && now) start = at;
    open = now;
  }
  if (open) out.push_back({start, kInfinity});
  return out;
}

std::string diagram_to_json(const PersistenceDiagram& diagram, bool include_zero) {
  nlohmann::ordered_json doc;
  for (int dim = 0; dim <= 1; ++dim) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& p : diagram.in_dim(dim, include_zero)) {
      if (p.essential())
        rows.push_back({p.birth, "inf"});
      else
        rows.push_back({p.birth, p.death});
    }
    doc["dim" + std::to_string(dim)] = std::move(rows);
  }
  return doc.dump(1) + "\n";
}

PersistenceDiagram diagram_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("diagram JSON must be an object");
  PersistenceDiagram diagram;
  for (int dim = 0; dim <= 1; ++dim) {
    const std::string key = "dim" + std::to_string(dim);
    if (!doc.contains(key)) continue;
    const auto& rows = doc[key];
    if (!rows.is_array()) throw ParseError(key + " must be an array");
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (!row.is_array() || row.size() != 2 || !row[0].is_number())
        throw ParseError(key + " entries must be [birth, death]", r + 1);
      PersistencePair p{dim, row[0].get<double>(), kInfinity};
      if (row[1].is_number())
        p.death = row[1].get<double>();
      else if (!(row[1].is_string() && row[1].get<std::string>() == "inf"))
        throw ParseError(key + " death must be a number or \"inf\"", r + 1);
      if (p.death < p.birth) throw ParseError(key + " pair has death < birth", r + 1);
      diagram.pairs.push_back(p);
    }
  }
  return diagram;
}

void save_diagram(const PersistenceDiagram& diagram, const std::filesystem::path& path,
                  bool include_zero) {
  io::write_text(path, diagram_to_json(diagram, include_zero));
}

PersistenceDiagram load_diagram(const std::filesystem::path& path) {
  return diagram_from_json(io::read_text(path));
}

}  // namespace acthom
