#pragma once

// Positive NAE-SAT -> strong cfvc 3-colorability gadget graphs.
//
// Vertex layout of a built instance (n variables, m clauses):
//   0..6    h1..h7       chain hubs
//   7..13   a1..a7
//   14..20  b1..b7
//   21..    clause vertices (input order), then variable vertices,
//           then (dp variant only) the m-1 connectors c(j,j+1).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cfvc/graph.hpp"
#include "cfvc/verify.hpp"

namespace cfvc {

/// CNF without negative literals. Variables are 0-based.
struct PositiveCnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    int num_clauses() const noexcept { return static_cast<int>(clauses.size()); }
    friend bool operator==(const PositiveCnf&, const PositiveCnf&) = default;
};

/// Throws InvalidInput on empty clauses, repeated or out-of-range variables.
void validate(const PositiveCnf& cnf);

using Assignment = std::vector<bool>;

/// Every clause has at least one true and one false variable.
bool is_nae_satisfying(const PositiveCnf& cnf, const Assignment& a);

PositiveCnf parse_cnf(std::string_view text);
std::string write_cnf(const PositiveCnf& cnf);

/// Exhaustive search. Returns the first NAE assignment in counting order
/// (variable i is bit i of the counter), or nullopt. Clauses of size <= 1
/// make the instance unsatisfiable. Throws InvalidInput above `max_vars`.
std::optional<Assignment> nae_oracle(const PositiveCnf& cnf, int max_vars = 24);

/// Seeded generator; clause sizes uniform in [min_clause_size, num_vars].
PositiveCnf random_positive_cnf(int num_vars, int num_clauses, int min_clause_size, std::uint64_t seed);

enum class Variant { vc, dp };

std::string_view variant_name(Variant v) noexcept;
Variant parse_variant(std::string_view name);

enum class RoleKind { hub, a, b, variable, clause, connector };

struct Role {
    RoleKind kind;
    int index;  // 1..7 for hub/a/b; 0-based otherwise (connector j joins clauses j and j+1)

    std::string name() const;
    static Role parse(std::string_view name);
    friend bool operator==(const Role&, const Role&) = default;
};

struct ReductionArtifact {
    Graph graph;
    Variant variant = Variant::vc;
    std::vector<Role> roles;          // per vertex
    std::vector<Vertex> modulator;    // sorted
    PositiveCnf cnf;
    std::vector<std::string> warnings;

    Vertex hub(int i) const { return i - 1; }
    Vertex a(int i) const { return 7 + i - 1; }
    Vertex b(int i) const { return 14 + i - 1; }
    Vertex clause_vertex(int j) const { return 21 + j; }
    Vertex variable_vertex(int i) const { return 21 + cnf.num_clauses() + i; }
    Vertex connector_vertex(int j) const { return 21 + cnf.num_clauses() + cnf.num_vars + j; }
};

/// Refuses formulas with a clause of size <= 1 (trivially unsatisfiable)
/// or with no clauses. Unused variables are allowed and reported in warnings.
ReductionArtifact build_reduction_vc(const PositiveCnf& cnf);
/// vc construction plus the clause path c1 - c(1,2) - c2 - ... - cm.
ReductionArtifact build_reduction_dp(const PositiveCnf& cnf);
ReductionArtifact build_reduction(const PositiveCnf& cnf, Variant variant);

/// Variables 1/0 by truth value, clauses and hubs 2, a_i 0, b_i 1,
/// connectors 0. Throws InvalidInput unless `a` is NAE-satisfying.
Coloring assignment_to_coloring(const ReductionArtifact& art, const Assignment& a);

/// Normalizes f(h1) to 2 and the other two colors to 0 < 1 by original
/// order, then reads variables colored 1 as true. Throws InvalidInput when
/// `f` is not a strong cfvc coloring of art.graph using exactly 3 colors.
Assignment coloring_to_assignment(const ReductionArtifact& art, const Coloring& f);

/// Sidecar fields: variant, roles (1-based vertex id -> role), modulator
/// (1-based), num_vars, num_clauses.
nlohmann::json to_sidecar(const ReductionArtifact& art);
/// Rebuilds an artifact from a sidecar and its graph; the formula is read
/// back from clause-variable adjacency.
ReductionArtifact from_sidecar(const nlohmann::json& sidecar, const Graph& g);

std::string format_assignment(const Assignment& a);

}  // namespace cfvc
