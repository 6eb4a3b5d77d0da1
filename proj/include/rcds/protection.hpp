#ifndef RCDS_PROTECTION_HPP
#define RCDS_PROTECTION_HPP

#include <map>
#include <optional>
#include <string>

#include "rcds/graph.hpp"

namespace rcds {

// A stealth measurement attack: fictitious phasors per bus, the induced
// flow component per line and injection component per bus.
//
// Invariants (checked by verify_attack):
//   flow{u,v}   = H_uv * (phasor_u - phasor_v)  with u < v     (rule A1)
//   injection_v = sum over incident edges of signed flow        (rule A2)
//   flows on edges incident to the protected set and injections
//   at protected buses are all zero                             (rule P1)
struct Attack {
    std::map<VertexId, double> phasors;
    std::map<Edge, double> flow;      // keyed by canonical edge, value oriented low->high id
    std::map<VertexId, double> injection;
    std::map<Edge, double> line_constants; // H_uv; empty entries default to 1

    double h(const Edge& e) const;
    bool nonzero() const;
};

std::string attack_to_json(const Attack& a);
Attack attack_from_json(const std::string& text);

// Proposition-1 characterization: D protects perfectly iff (V, I_D(E))
// is connected. Requires a connected graph.
bool is_perfect_protection(const Graph& g, const VertexSet& d);

// Proposition-2 characterization: D is dominating and any two members are
// joined by a relaxed path (at most one non-member between consecutive
// members). Decided through the auxiliary graph on D.
bool is_rcds(const Graph& g, const VertexSet& d);

// Constructive side of Proposition 1: when D is not perfect, produce a
// nonzero attack by setting phasors to one on a component of (V, I_D(E)).
// Returns nullopt iff D is perfect. H defaults to 1 on every line.
std::optional<Attack> construct_stealth_attack(const Graph& g, const VertexSet& d,
                                               const std::map<Edge, double>& h = {});

// True iff `a` satisfies A1, A2 and P1 under D and is not identically zero.
bool verify_attack(const Graph& g, const VertexSet& d, const Attack& a);

} // namespace rcds

#endif
