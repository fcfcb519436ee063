#include "coxgraph/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "coxgraph/cycshift.hpp"
#include "coxgraph/errors.hpp"
#include "json.hpp"

namespace coxgraph {

namespace {

bool lex(Subset a, Subset b) { return sub::lex_less(a, b); }

void insert_label(Edge& e, Subset K) {
  auto it = std::lower_bound(e.labels.begin(), e.labels.end(), K, lex);
  if (it != e.labels.end() && *it == K) return;
  e.labels.insert(it, K);
  e.label = e.labels.front();
}

}  // namespace

int ConjGraph::find(Subset s) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].subset == s) return static_cast<int>(i);
  return -1;
}

int ConjGraph::add_vertex(Subset s) {
  vertices_.push_back(Vertex{s, std::nullopt, {}});
  return static_cast<int>(vertices_.size()) - 1;
}

void ConjGraph::add_edge(int i, int j, Subset K) {
  if (i == j) return;
  if (i > j) std::swap(i, j);
  for (Edge& e : edges_)
    if (e.from == i && e.to == j) {
      insert_label(e, K);
      return;
    }
  edges_.push_back(Edge{i, j, K, {K}});
}

bool ConjGraph::adjacent(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const Edge& e : edges_)
    if (e.from == i && e.to == j) return true;
  return false;
}

std::vector<std::vector<int>> ConjGraph::adjacency() const {
  std::vector<std::vector<int>> adj(vertices_.size());
  for (const Edge& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

void ConjGraph::canonicalize() {
  std::vector<int> order(vertices_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return lex(vertices_[a].subset, vertices_[b].subset); });
  std::vector<int> where(order.size());
  std::vector<Vertex> vs;
  for (std::size_t k = 0; k < order.size(); ++k) {
    where[order[k]] = static_cast<int>(k);
    vs.push_back(vertices_[order[k]]);
  }
  vertices_ = std::move(vs);
  for (Edge& e : edges_) {
    e.from = where[e.from];
    e.to = where[e.to];
    if (e.from > e.to) std::swap(e.from, e.to);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
  if (!vertices_.empty()) base_ = where[base_];
}

bool ConjGraph::connected() const {
  if (vertices_.empty()) return true;
  auto adj = adjacency();
  std::vector<bool> seen(vertices_.size(), false);
  std::deque<int> q{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        q.push_back(u);
      }
  }
  return count == vertices_.size();
}

int ConjGraph::diameter() const {
  auto adj = adjacency();
  int best = 0;
  for (std::size_t s = 0; s < vertices_.size(); ++s) {
    std::vector<int> dist(vertices_.size(), -1);
    std::deque<int> q{static_cast<int>(s)};
    dist[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int u : adj[v])
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          q.push_back(u);
        }
    }
    for (int d : dist) {
      if (d < 0) return -1;
      best = std::max(best, d);
    }
  }
  return best;
}

bool ConjGraph::complete() const {
  const std::size_t n = vertices_.size();
  return edges_.size() == n * (n - 1) / 2;
}

bool ConjGraph::operator==(const ConjGraph& o) const {
  return names_ == o.names_ && ambient_ == o.ambient_ && vertices_ == o.vertices_ && edges_ == o.edges_ &&
         base_ == o.base_;
}

ConjGraph quotient(const ConjGraph& g, const std::vector<Perm>& gens, bool partial) {
  const int n = static_cast<int>(g.names().size());
  std::map<Subset, int> index;
  for (std::size_t i = 0; i < g.size(); ++i) index[g.vertices()[i].subset] = static_cast<int>(i);
  auto group = perm::generate(gens, n);
  std::vector<int> cls(g.size(), -1);
  ConjGraph q(g.names(), g.ambient());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (cls[i] >= 0) continue;
    // Each orbit must lie in the vertex set or meet it once (a graph that is already a quotient).
    std::set<Subset> orbit;
    for (const Perm& p : group) orbit.insert(perm::apply(p, g.vertices()[i].subset));
    std::vector<int> members;
    for (Subset s : orbit) {
      auto it = index.find(s);
      if (it != index.end()) members.push_back(it->second);
    }
    if (!partial && members.size() != 1 && members.size() != orbit.size())
      throw Error(ErrorCode::NotStable, "automorphism group moves " + sub::to_string(g.vertices()[i].subset, g.names()) +
                                            " off the vertex set");
    int rep = members.front();
    for (int j : members) {
      cls[j] = static_cast<int>(q.size());
      if (lex(g.vertices()[j].subset, g.vertices()[rep].subset)) rep = j;
    }
    int k = q.add_vertex(g.vertices()[rep].subset);
    q.vertices()[k] = g.vertices()[rep];
  }
  for (const Edge& e : g.edges())
    for (Subset K : e.labels) q.add_edge(cls[e.from], cls[e.to], K);
  q.set_base(cls[g.base()]);
  q.canonicalize();
  return q;
}

ConjGraph tight_closure(const ConjGraph& g, const std::function<bool(Subset)>& admissible) {
  ConjGraph out = g;
  auto adj = g.adjacency();
  std::map<std::pair<int, int>, std::vector<Subset>> labels;
  for (const Edge& e : g.edges()) {
    labels[{e.from, e.to}] = e.labels;
    labels[{e.to, e.from}] = e.labels;
  }
  for (std::size_t s = 0; s < g.size(); ++s) {
    std::set<std::pair<int, Subset>> seen;
    std::deque<std::pair<int, Subset>> q;
    q.push_back({static_cast<int>(s), 0});
    seen.insert(q.back());
    while (!q.empty()) {
      auto [v, U] = q.front();
      q.pop_front();
      for (int u : adj[v])
        for (Subset K : labels.at({v, u})) {
          Subset V = U | K;
          if (!admissible(V)) continue;
          if (!seen.insert({u, V}).second) continue;
          out.add_edge(static_cast<int>(s), u, V);
          q.push_back({u, V});
        }
    }
  }
  return out;
}

TwistedElement replay(const TwistedElement& start, const std::vector<CertStep>& steps) {
  TwistedElement cur = start;
  for (const CertStep& st : steps) {
    if (st.kind == CertStep::Shift) {
      for (int s : st.shifts) {
        TwistedElement next = cur.conj(s);
        if (next.length() > cur.length()) throw Error(ErrorCode::VerificationFailed, "shift step increases the length");
        cur = std::move(next);
      }
    } else {
      cur = k_conjugate(cur, st.K);
    }
  }
  return cur;
}

namespace {

nlohmann::ordered_json subset_json(Subset s) { return sub::members(s); }

Subset subset_from(const nlohmann::json& j) {
  Subset s = 0;
  for (int i : j.get<std::vector<int>>()) s |= sub::bit(i);
  return s;
}

}  // namespace

std::string export_json(const ConjGraph& g) {
  nlohmann::ordered_json j;
  j["generators"] = g.names();
  if (!g.ambient().empty()) j["ambient"] = g.ambient();
  j["vertices"] = nlohmann::ordered_json::array();
  for (const Vertex& v : g.vertices()) {
    nlohmann::ordered_json jv;
    jv["subset"] = subset_json(v.subset);
    jv["names"] = sub::to_string(v.subset, g.names());
    if (v.representative) jv["representative"] = *v.representative;
    if (!v.certificate.empty()) {
      nlohmann::ordered_json cert = nlohmann::ordered_json::array();
      for (const CertStep& c : v.certificate) {
        if (c.kind == CertStep::Shift)
          cert.push_back({{"shift", c.shifts}});
        else
          cert.push_back({{"K", subset_json(c.K)}});
      }
      jv["certificate"] = cert;
    }
    j["vertices"].push_back(jv);
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    nlohmann::ordered_json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["label"] = subset_json(e.label);
    je["labels"] = nlohmann::ordered_json::array();
    for (Subset K : e.labels) je["labels"].push_back(subset_json(K));
    j["edges"].push_back(je);
  }
  j["base"] = g.base();
  return j.dump(2);
}

ConjGraph parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    std::vector<std::string> ambient;
    if (j.contains("ambient")) ambient = j["ambient"].get<std::vector<std::string>>();
    ConjGraph g(j.at("generators").get<std::vector<std::string>>(), ambient);
    for (const auto& jv : j.at("vertices")) {
      int k = g.add_vertex(subset_from(jv.at("subset")));
      Vertex& v = g.vertices()[k];
      if (jv.contains("representative")) v.representative = jv["representative"].get<Word>();
      if (jv.contains("certificate"))
        for (const auto& c : jv["certificate"]) {
          CertStep step;
          if (c.contains("shift")) {
            step.kind = CertStep::Shift;
            step.shifts = c["shift"].get<Word>();
          } else {
            step.kind = CertStep::KConj;
            step.K = subset_from(c.at("K"));
          }
          v.certificate.push_back(step);
        }
    }
    for (const auto& je : j.at("edges"))
      for (const auto& K : je.at("labels")) g.add_edge(je.at("from"), je.at("to"), subset_from(K));
    g.set_base(j.at("base"));
    return g;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

std::string export_dot(const ConjGraph& g) {
  std::ostringstream os;
  os << "graph K {\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vertex& v = g.vertices()[i];
    os << "  v" << i << " [label=\"" << sub::to_string(v.subset, g.names()) << "\"";
    if (static_cast<int>(i) == g.base()) os << ", shape=box";
    os << "];\n";
  }
  for (const Edge& e : g.edges())
    os << "  v" << e.from << " -- v" << e.to << " [label=\"" << sub::to_string(e.label, g.names()) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace coxgraph
