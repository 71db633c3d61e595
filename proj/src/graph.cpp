#include "heatpoll/graph.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "heatpoll/rounding.hpp"

namespace heatpoll {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(Role r) {
    return r == Role::FamilyRepresentative ? "representative" : "member";
}

std::string_view to_string(HeaterPreference p) {
    return kPreferenceNames[static_cast<std::size_t>(p)];
}

Role role_from_string(std::string_view s) {
    if (s == "representative") return Role::FamilyRepresentative;
    if (s == "member") return Role::FamilyMember;
    throw std::invalid_argument("unknown role '" + std::string(s) + "'");
}

HeaterPreference preference_from_string(std::string_view s) {
    for (std::size_t i = 0; i < kPreferenceNames.size(); ++i) {
        if (s == kPreferenceNames[i]) return static_cast<HeaterPreference>(i);
    }
    throw std::invalid_argument("unknown heater preference '" + std::string(s) + "'");
}

void SocialGraph::add_node(Persona p) {
    if (nodes_.count(p.id) != 0) {
        throw std::invalid_argument("duplicate node id " + std::to_string(p.id));
    }
    incident_[p.id];
    nodes_.emplace(p.id, std::move(p));
}

void SocialGraph::add_edge(int u, int v, EdgeKind kind, int closeness) {
    if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
    if (!has_node(u)) throw UnknownNode(u);
    if (!has_node(v)) throw UnknownNode(v);
    if (u > v) std::swap(u, v);
    for (std::size_t idx : incident_.at(u)) {
        if (edges_[idx].u == u && edges_[idx].v == v) {
            throw std::invalid_argument("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
        }
    }
    if (kind == EdgeKind::Friend) {
        if (closeness < 1 || closeness > 5) {
            throw std::invalid_argument("closeness " + std::to_string(closeness) + " outside [1,5]");
        }
    } else {
        closeness = 0;
    }
    edges_.push_back(Edge{u, v, kind, closeness});
    incident_[u].push_back(edges_.size() - 1);
    incident_[v].push_back(edges_.size() - 1);
}

const Persona& SocialGraph::persona(int id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNode(id);
    return it->second;
}

Persona& SocialGraph::persona(int id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw UnknownNode(id);
    return it->second;
}

std::vector<int> SocialGraph::node_ids() const {
    std::vector<int> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, _] : nodes_) ids.push_back(id);
    return ids;
}

std::vector<int> SocialGraph::friends_of(int id) const {
    auto it = incident_.find(id);
    if (it == incident_.end()) throw UnknownNode(id);
    std::vector<int> out;
    for (std::size_t idx : it->second) {
        const Edge& e = edges_[idx];
        if (e.kind == EdgeKind::Friend) out.push_back(e.u == id ? e.v : e.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t SocialGraph::degree(int id) const {
    auto it = incident_.find(id);
    if (it == incident_.end()) throw UnknownNode(id);
    return it->second.size();
}

std::size_t SocialGraph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = incident_.find(u);
    if (it == incident_.end()) throw UnknownNode(u);
    for (std::size_t idx : it->second) {
        if (edges_[idx].u == u && edges_[idx].v == v) return idx;
    }
    throw std::invalid_argument("no edge " + std::to_string(u) + "-" + std::to_string(v));
}

int SocialGraph::closeness(int u, int v) const {
    return edges_[edge_index(u, v)].closeness;
}

void SocialGraph::set_closeness(int u, int v, int value) {
    Edge& e = edges_[edge_index(u, v)];
    if (e.kind != EdgeKind::Friend) {
        throw std::invalid_argument("family edges carry no closeness");
    }
    e.closeness = clamp_int(value, 1, 5);
}

bool SocialGraph::operator==(const SocialGraph& other) const {
    if (nodes_ != other.nodes_) return false;
    auto sorted_edges = [](const std::vector<Edge>& edges) {
        std::vector<Edge> out = edges;
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        return out;
    };
    return sorted_edges(edges_) == sorted_edges(other.edges_);
}

double average_friend_weight(const SocialGraph& g) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const Edge& e : g.edges()) {
        if (e.kind == EdgeKind::Friend) {
            sum += e.closeness;
            ++n;
        }
    }
    if (n == 0) throw NoFriendEdges();
    return sum / static_cast<double>(n);
}

int strong_friendship_count(const SocialGraph& g) {
    int n = 0;
    for (const Edge& e : g.edges()) {
        if (e.kind == EdgeKind::Friend && e.closeness > 3) ++n;
    }
    return n;
}

double degree_centrality(const SocialGraph& g, int node) {
    if (g.node_count() < 2) throw std::invalid_argument("degree centrality needs >= 2 nodes");
    const std::size_t deg = g.degree(node);
    return static_cast<double>(deg) / static_cast<double>(g.node_count() - 1);
}

double average_happiness(const SocialGraph& g) {
    if (g.node_count() == 0) throw EmptyGraph();
    double sum = 0.0;
    for (const auto& [_, p] : g.nodes()) sum += p.happiness;
    return sum / static_cast<double>(g.node_count());
}

namespace {

ordered_json persona_to_json(const Persona& p) {
    ordered_json traits = ordered_json::object();
    for (std::size_t i = 0; i < kTraitCount; ++i) {
        const auto d = static_cast<TraitDim>(i);
        traits[std::string(trait_info(d).key)] = std::string(p.traits.adjective(d));
    }
    return ordered_json{
        {"id", p.id},
        {"name", p.name},
        {"age", p.age},
        {"role", std::string(to_string(p.role))},
        {"family_id", p.family_id},
        {"traits", std::move(traits)},
        {"heater_preference", std::string(to_string(p.heater_preference))},
        {"happiness", p.happiness},
        {"last_choices", p.last_choices},
    };
}

Persona persona_from_json(const ordered_json& j) {
    Persona p;
    p.id = j.at("id").get<int>();
    p.name = j.at("name").get<std::string>();
    p.age = j.at("age").get<int>();
    p.role = role_from_string(j.at("role").get<std::string>());
    p.family_id = j.at("family_id").get<int>();
    for (std::size_t i = 0; i < kTraitCount; ++i) {
        const auto d = static_cast<TraitDim>(i);
        const std::string adj = j.at("traits").at(std::string(trait_info(d).key)).get<std::string>();
        p.traits.set_positive(d, TraitProfile::polarity_of(d, adj));
    }
    p.heater_preference = preference_from_string(j.at("heater_preference").get<std::string>());
    p.happiness = j.at("happiness").get<int>();
    p.last_choices = j.at("last_choices").get<std::vector<int>>();
    return p;
}

} // namespace

std::string graph_to_json(const SocialGraph& g) {
    ordered_json nodes = ordered_json::array();
    for (const auto& [_, p] : g.nodes()) nodes.push_back(persona_to_json(p));

    std::vector<Edge> sorted = g.edges();
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    ordered_json edges = ordered_json::array();
    for (const Edge& e : sorted) {
        ordered_json je{{"u", e.u}, {"v", e.v},
                        {"kind", e.kind == EdgeKind::Friend ? "friend" : "family"}};
        if (e.kind == EdgeKind::Friend) je["closeness"] = e.closeness;
        edges.push_back(std::move(je));
    }
    ordered_json doc{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
    return doc.dump(2) + "\n";
}

SocialGraph graph_from_json(const std::string& text) {
    const ordered_json doc = ordered_json::parse(text);
    SocialGraph g;
    for (const auto& jn : doc.at("nodes")) g.add_node(persona_from_json(jn));
    for (const auto& je : doc.at("edges")) {
        const std::string kind = je.at("kind").get<std::string>();
        if (kind == "friend") {
            g.add_edge(je.at("u").get<int>(), je.at("v").get<int>(), EdgeKind::Friend,
                       je.at("closeness").get<int>());
        } else if (kind == "family") {
            g.add_edge(je.at("u").get<int>(), je.at("v").get<int>(), EdgeKind::Family);
        } else {
            throw std::invalid_argument("unknown edge kind '" + kind + "'");
        }
    }
    return g;
}

} // namespace heatpoll
