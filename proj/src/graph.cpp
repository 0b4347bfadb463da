#include "nucdim/graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "nucdim/errors.hpp"

namespace nucdim {

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::shared_ptr<const DirectedGraph> DirectedGraph::make(
    std::vector<std::string> vertices,
    std::vector<std::array<std::string, 3>> edges) {
  auto g = std::shared_ptr<DirectedGraph>(new DirectedGraph());
  g->vertices_ = std::move(vertices);
  for (std::size_t i = 0; i < g->vertices_.size(); ++i) {
    const auto& v = g->vertices_[i];
    if (v.empty()) fail(ErrorKind::ParseError, "vertex id must be nonempty");
    if (!g->vertex_index_.emplace(v, static_cast<int>(i)).second)
      fail(ErrorKind::DuplicateId, "vertex " + quote(v));
  }
  g->in_edges_.resize(g->vertices_.size());
  g->out_edges_.resize(g->vertices_.size());
  for (const auto& [id, range, source] : edges) {
    if (id.empty()) fail(ErrorKind::ParseError, "edge id must be nonempty");
    if (g->edge_index_.count(id) || g->vertex_index_.count(id))
      fail(ErrorKind::DuplicateId, "edge " + quote(id));
    auto rit = g->vertex_index_.find(range);
    if (rit == g->vertex_index_.end())
      fail(ErrorKind::DanglingEndpoint,
           "edge " + quote(id) + " has range " + quote(range) +
               " not in the vertex set");
    auto sit = g->vertex_index_.find(source);
    if (sit == g->vertex_index_.end())
      fail(ErrorKind::DanglingEndpoint,
           "edge " + quote(id) + " has source " + quote(source) +
               " not in the vertex set");
    int e = static_cast<int>(g->edges_.size());
    g->edges_.push_back(Edge{id, rit->second, sit->second});
    g->edge_index_.emplace(id, e);
    g->in_edges_[rit->second].push_back(e);
    g->out_edges_[sit->second].push_back(e);
  }
  return g;
}

std::shared_ptr<const DirectedGraph> DirectedGraph::from_json(
    const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::ParseError, e.what());
  }
  if (!j.is_object()) fail(ErrorKind::ParseError, "top level must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "vertices" && key != "edges")
      fail(ErrorKind::ParseError, "unknown key " + quote(key));
  }
  if (!j.contains("vertices") || !j["vertices"].is_array())
    fail(ErrorKind::ParseError, "missing \"vertices\" array");
  if (!j.contains("edges") || !j["edges"].is_array())
    fail(ErrorKind::ParseError, "missing \"edges\" array");

  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) fail(ErrorKind::ParseError, "vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::array<std::string, 3>> edges;
  std::size_t line = 0;
  for (const auto& e : j["edges"]) {
    ++line;
    if (!e.is_object())
      fail(ErrorKind::ParseError,
           "edge #" + std::to_string(line) + " must be an object");
    for (const auto& [key, _] : e.items()) {
      if (key != "id" && key != "range" && key != "source")
        fail(ErrorKind::ParseError,
             "edge #" + std::to_string(line) + ": unknown key " + quote(key));
    }
    for (const char* field : {"id", "range", "source"}) {
      if (!e.contains(field) || !e[field].is_string())
        fail(ErrorKind::ParseError, "edge #" + std::to_string(line) +
                                        ": missing string field \"" + field +
                                        "\"");
    }
    edges.push_back({e["id"].get<std::string>(), e["range"].get<std::string>(),
                     e["source"].get<std::string>()});
  }
  return make(std::move(vertices), std::move(edges));
}

int DirectedGraph::vertex_index(const std::string& id) const {
  auto it = vertex_index_.find(id);
  return it == vertex_index_.end() ? -1 : it->second;
}

int DirectedGraph::edge_index(const std::string& id) const {
  auto it = edge_index_.find(id);
  return it == edge_index_.end() ? -1 : it->second;
}

std::string DirectedGraph::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : vertices_) j["vertices"].push_back(v);
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_) {
    nlohmann::ordered_json je;
    je["id"] = e.id;
    je["range"] = vertices_[e.range];
    je["source"] = vertices_[e.source];
    j["edges"].push_back(je);
  }
  return j.dump(2);
}

std::string DirectedGraph::to_dot() const {
  std::ostringstream out;
  out << "digraph E {\n";
  for (const auto& v : vertices_) out << "  " << quote(v) << ";\n";
  for (const auto& e : edges_) {
    out << "  " << quote(vertices_[e.source]) << " -> "
        << quote(vertices_[e.range]) << " [label=" << quote(e.id) << "];\n";
  }
  out << "}\n";
  return out.str();
}

bool DirectedGraph::same_structure(const DirectedGraph& other) const {
  if (vertices_ != other.vertices_) return false;
  if (edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].id != other.edges_[i].id ||
        edges_[i].range != other.edges_[i].range ||
        edges_[i].source != other.edges_[i].source)
      return false;
  }
  return true;
}

void require_same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return;
  if (a && b && a->same_structure(*b)) return;
  fail(ErrorKind::GraphMismatch, "values live on different graphs");
}

ReturnPath::ReturnPath(GraphPtr graph, std::vector<int> edges)
    : graph_(std::move(graph)), edges_(std::move(edges)) {
  if (!graph_) fail(ErrorKind::InvalidPath, "return path needs a graph");
  if (edges_.empty())
    fail(ErrorKind::NotAReturnPath, "a return path has nonzero length");
  for (std::size_t j = 0; j < edges_.size(); ++j) {
    if (edges_[j] < 0 || edges_[j] >= static_cast<int>(graph_->edge_count()))
      fail(ErrorKind::InvalidPath, "edge index out of range");
    if (j + 1 < edges_.size() &&
        graph_->edge(edges_[j]).source != graph_->edge(edges_[j + 1]).range)
      fail(ErrorKind::NotAReturnPath,
           "consecutive edges do not satisfy s(mu_j) = r(mu_{j+1})");
  }
  if (graph_->edge(edges_.back()).source != graph_->edge(edges_.front()).range)
    fail(ErrorKind::NotAReturnPath, "s(mu) != r(mu)");
  std::set<int> ranges;
  for (int e : edges_) ranges.insert(graph_->edge(e).range);
  simple_ = ranges.size() == edges_.size();
}

ReturnPath ReturnPath::from_ids(const GraphPtr& graph,
                                const std::vector<std::string>& ids) {
  std::vector<int> edges;
  for (const auto& id : ids) {
    int e = graph->edge_index(id);
    if (e < 0) fail(ErrorKind::InvalidPath, "no edge named \"" + id + "\"");
    edges.push_back(e);
  }
  return ReturnPath(graph, std::move(edges));
}

int ReturnPath::range() const { return graph_->edge(edges_.front()).range; }
int ReturnPath::source() const { return graph_->edge(edges_.back()).source; }

std::set<int> ReturnPath::vertex_set() const {
  std::set<int> vs;
  for (int e : edges_) vs.insert(graph_->edge(e).range);
  return vs;
}

ReturnPath ReturnPath::rotated(std::size_t i) const {
  std::vector<int> edges;
  edges.reserve(edges_.size());
  for (std::size_t j = 0; j < edges_.size(); ++j)
    edges.push_back(edges_[(i + j) % edges_.size()]);
  return ReturnPath(graph_, std::move(edges));
}

std::vector<std::string> ReturnPath::edge_ids() const {
  std::vector<std::string> ids;
  ids.reserve(edges_.size());
  for (int e : edges_) ids.push_back(graph_->edge_id(e));
  return ids;
}

bool ReturnPath::operator==(const ReturnPath& other) const {
  return graph_->same_structure(*other.graph_) && edges_ == other.edges_;
}

std::set<int> sources(const DirectedGraph& g) {
  std::set<int> result;
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
    if (g.in_edges(v).empty()) result.insert(v);
  return result;
}

namespace {

// Tarjan over the arc direction source -> range (arcs s(e) -> r(e)).
// Which direction is chosen does not matter for the SCC partition.
struct SccFinder {
  const DirectedGraph& g;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  explicit SccFinder(const DirectedGraph& g)
      : g(g),
        index(g.vertex_count(), -1),
        low(g.vertex_count(), 0),
        comp(g.vertex_count(), -1),
        on_stack(g.vertex_count(), false) {}

  void run() {
    for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
      if (index[v] < 0) strongconnect(v);
  }

  void strongconnect(int root) {
    // Iterative to be safe on long chains.
    struct Frame { int v; std::size_t next_out = 0; };
    std::vector<Frame> frames{{root}};
    begin(root);
    while (!frames.empty()) {
      auto& f = frames.back();
      const auto& outs = g.out_edges(f.v);
      if (f.next_out < outs.size()) {
        int w = g.edge(outs[f.next_out++]).range;
        if (index[w] < 0) {
          begin(w);
          frames.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }

  void begin(int v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
  }
};

}  // namespace

std::set<int> cycle_vertices(const DirectedGraph& g) {
  SccFinder scc(g);
  scc.run();
  // A vertex lies on a return path iff its SCC contains an arc staying
  // inside the SCC (this also catches loops).
  std::set<int> cyclic_comps;
  for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
    int a = g.edge(e).source, b = g.edge(e).range;
    if (scc.comp[a] == scc.comp[b]) cyclic_comps.insert(scc.comp[a]);
  }
  std::set<int> result;
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v)
    if (cyclic_comps.count(scc.comp[v])) result.insert(v);
  return result;
}

namespace {

// Enumerates elementary circuits in arc direction (source -> range),
// each rooted at its minimal vertex, restricted to one SCC at a time.
void enumerate_circuits(const DirectedGraph& g, std::size_t cap,
                        std::vector<std::vector<int>>& circuits) {
  SccFinder scc(g);
  scc.run();
  std::vector<bool> on_path(g.vertex_count(), false);
  std::vector<int> arc_path;  // edges along the current DFS path

  std::function<void(int, int)> dfs = [&](int start, int v) {
    for (int e : g.out_edges(v)) {
      int w = g.edge(e).range;
      if (scc.comp[w] != scc.comp[start]) continue;
      if (w == start) {
        arc_path.push_back(e);
        circuits.push_back(arc_path);
        arc_path.pop_back();
        if (circuits.size() > cap)
          fail(ErrorKind::CapExceeded,
               "more than " + std::to_string(cap) + " simple cycles");
        continue;
      }
      if (w < start || on_path[w]) continue;
      on_path[w] = true;
      arc_path.push_back(e);
      dfs(start, w);
      arc_path.pop_back();
      on_path[w] = false;
    }
  };

  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
    on_path[v] = true;
    dfs(v, v);
    on_path[v] = false;
  }
}

}  // namespace

std::vector<ReturnPath> enumerate_simple_cycles(const GraphPtr& g,
                                                std::size_t cap) {
  if (cap < 1) fail(ErrorKind::PreconditionViolated, "cap must be >= 1");
  std::vector<std::vector<int>> circuits;
  enumerate_circuits(*g, cap, circuits);

  std::vector<ReturnPath> result;
  for (auto& arcs : circuits) {
    // Reverse arc order to list the return path from its range.
    std::vector<int> edges(arcs.rbegin(), arcs.rend());
    ReturnPath path(g, std::move(edges));
    // Normalise to the rotation with smallest first edge id.
    std::size_t best = 0;
    for (std::size_t i = 1; i < path.length(); ++i)
      if (g->edge_id(path.edges()[i]) < g->edge_id(path.edges()[best]))
        best = i;
    result.push_back(path.rotated(best));
  }
  std::sort(result.begin(), result.end(),
            [](const ReturnPath& a, const ReturnPath& b) {
              return a.edge_ids() < b.edge_ids();
            });
  return result;
}

namespace {

void require_return_path_of(const DirectedGraph& g, const ReturnPath& c) {
  if (!c.graph() || !c.graph()->same_structure(g))
    fail(ErrorKind::NotAReturnPath, "return path belongs to another graph");
}

}  // namespace

bool has_entrance(const DirectedGraph& g, const ReturnPath& c) {
  require_return_path_of(g, c);
  for (int e : c.edges())
    if (g.in_edges(g.edge(e).range).size() > 1) return true;
  return false;
}

bool has_exit(const DirectedGraph& g, const ReturnPath& c) {
  require_return_path_of(g, c);
  for (int e : c.edges())
    if (g.out_edges(g.edge(e).source).size() > 1) return true;
  return false;
}

Classification classify(const GraphPtr& g, std::size_t cap) {
  Classification result;
  result.is_row_finite = true;  // finite graphs are row-finite
  for (int v : sources(*g)) result.source_vertices.insert(g->vertex_id(v));

  std::set<int> cyc = cycle_vertices(*g);
  result.has_cycles = !cyc.empty();

  // Fast route: no return path has an entrance iff every cycle vertex has
  // in-degree exactly 1.
  bool stably_finite_fast = true;
  for (int v : cyc)
    if (g->in_edges(v).size() != 1) stably_finite_fast = false;

  std::vector<ReturnPath> cycles;
  try {
    cycles = enumerate_simple_cycles(g, cap);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CapExceeded)
      fail(ErrorKind::CapExceeded,
           std::string(e.what()) + " (fast stably-finite check: " +
               (stably_finite_fast ? "true" : "false") + ")");
    throw;
  }

  bool stably_finite_slow = true;
  bool all_entrances = result.has_cycles;
  bool all_exits = true;
  for (const auto& c : cycles) {
    if (has_entrance(*g, c)) stably_finite_slow = false;
    else all_entrances = false;
    if (!has_exit(*g, c)) all_exits = false;
  }
  if (stably_finite_fast != stably_finite_slow)
    fail(ErrorKind::VerificationFailed,
         "stably-finite cross-check disagreed (fast vs exhaustive)");
  result.stably_finite = stably_finite_fast;
  result.every_cycle_has_exit = all_exits;
  // Vacuously true on acyclic graphs; every return path contains a simple
  // cycle on its vertex set, so checking simple cycles suffices.
  result.condition_K = !result.has_cycles || all_entrances;

  // Cycle classes: equal vertex sets.
  std::map<std::set<int>, ReturnPath> classes;
  for (const auto& c : cycles) classes.emplace(c.vertex_set(), c);
  for (const auto& [vs, rep] : classes) {
    std::set<std::string> ids;
    for (int v : vs) ids.insert(g->vertex_id(v));
    result.cycle_classes.emplace_back(rep, std::move(ids));
  }
  return result;
}

std::vector<ReturnPath> cycle_representatives(const GraphPtr& g,
                                              std::size_t cap) {
  auto cycles = enumerate_simple_cycles(g, cap);
  for (const auto& c : cycles) {
    if (has_entrance(*g, c))
      fail(ErrorKind::PreconditionViolated,
           "return path through \"" + g->vertex_id(c.range()) +
               "\" has an entrance");
    if (!has_exit(*g, c))
      fail(ErrorKind::PreconditionViolated,
           "return path through \"" + g->vertex_id(c.range()) +
               "\" has no exit");
  }
  // Under the no-entrance hypothesis the classes have disjoint vertex sets
  // and each class consists of the rotations of one simple cycle.
  std::map<std::set<int>, ReturnPath> classes;
  for (const auto& c : cycles) classes.emplace(c.vertex_set(), c);

  std::vector<ReturnPath> reps;
  for (const auto& [vs, c] : classes) {
    // Admissible rotations start at a vertex with an exit; among those pick
    // the smallest first edge id.
    ReturnPath path(g, c.edges());
    std::vector<std::size_t> admissible;
    for (std::size_t i = 0; i < path.length(); ++i) {
      int start_vertex = g->edge(path.edges()[i]).range;
      if (g->out_edges(start_vertex).size() > 1) admissible.push_back(i);
    }
    if (admissible.empty())
      fail(ErrorKind::PreconditionViolated, "cycle has no exit rotation");
    std::size_t best = admissible.front();
    for (std::size_t i : admissible)
      if (g->edge_id(path.edges()[i]) < g->edge_id(path.edges()[best]))
        best = i;
    reps.push_back(path.rotated(best));
  }
  std::sort(reps.begin(), reps.end(),
            [](const ReturnPath& a, const ReturnPath& b) {
              return a.edge_ids() < b.edge_ids();
            });
  return reps;
}

}  // namespace nucdim
