#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatpoll/traits.hpp"

namespace heatpoll {

enum class Role { FamilyRepresentative, FamilyMember };
enum class EdgeKind { Family, Friend };
enum class HeaterPreference { Cold, Cool, Neutral, Warm, Hot };

inline constexpr std::array<std::string_view, 5> kPreferenceNames = {
    "Cold", "Cool", "Neutral", "Warm", "Hot"};

std::string_view to_string(Role r);
std::string_view to_string(HeaterPreference p);
Role role_from_string(std::string_view s);
HeaterPreference preference_from_string(std::string_view s);

struct Persona {
    int id = 0;
    std::string name;
    int age = 0;
    Role role = Role::FamilyRepresentative;
    int family_id = 0; // the representative's node id
    TraitProfile traits;
    HeaterPreference heater_preference = HeaterPreference::Neutral;
    int happiness = 100; // always in [1,100]
    std::vector<int> last_choices; // newest last, length <= 3; representatives only

    bool operator==(const Persona&) const = default;
};

struct Edge {
    int u = 0;
    int v = 0;
    EdgeKind kind = EdgeKind::Friend;
    int closeness = 0; // friend edges only, in [1,5]; 0 on family edges

    bool operator==(const Edge&) const = default;
};

struct NoFriendEdges : std::runtime_error {
    NoFriendEdges() : std::runtime_error("graph has no friend edges") {}
};
struct UnknownNode : std::runtime_error {
    explicit UnknownNode(int id) : std::runtime_error("unknown node id " + std::to_string(id)) {}
};
struct EmptyGraph : std::runtime_error {
    EmptyGraph() : std::runtime_error("graph has no nodes") {}
};

// Undirected simple graph with persona-carrying nodes and typed edges.
// Friend edges carry a closeness weight in [1,5]; family edges are
// unweighted. Stored adjacency-list style so degree queries over both
// edge kinds are a single traversal.
class SocialGraph {
public:
    void add_node(Persona p);
    void add_edge(int u, int v, EdgeKind kind, int closeness = 0);

    bool has_node(int id) const { return nodes_.count(id) != 0; }
    const Persona& persona(int id) const;
    Persona& persona(int id);
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Node ids in ascending order.
    std::vector<int> node_ids() const;
    const std::map<int, Persona>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Friend-edge neighbors of a node, ascending id.
    std::vector<int> friends_of(int id) const;
    // Number of incident edges of either kind.
    std::size_t degree(int id) const;

    int closeness(int u, int v) const;
    void set_closeness(int u, int v, int value); // clamped to [1,5]

    // Structural equality; edge insertion order does not matter.
    bool operator==(const SocialGraph& other) const;

private:
    std::size_t edge_index(int u, int v) const;

    std::map<int, Persona> nodes_;
    std::vector<Edge> edges_; // normalized u < v, insertion order
    std::map<int, std::vector<std::size_t>> incident_;
};

// Mean closeness over friend edges only. Throws NoFriendEdges.
double average_friend_weight(const SocialGraph& g);
// Friend edges with closeness strictly greater than 3.
int strong_friendship_count(const SocialGraph& g);
// Incident edges of either kind divided by (N - 1). Throws UnknownNode.
double degree_centrality(const SocialGraph& g, int node);
// Mean happiness over all nodes. Throws EmptyGraph.
double average_happiness(const SocialGraph& g);

// Graph snapshot JSON (nodes with full persona, edges with kind and
// closeness). Deterministic: nodes ascending id, edges sorted (u, v),
// fixed key order.
std::string graph_to_json(const SocialGraph& g);
SocialGraph graph_from_json(const std::string& text);

} // namespace heatpoll
