#include "cfvc/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

namespace cfvc {

void validate(const PositiveCnf& cnf) {
    if (cnf.num_vars < 0) throw InvalidInput("negative variable count");
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
        const auto& clause = cnf.clauses[j];
        if (clause.empty()) throw InvalidInput("clause " + std::to_string(j + 1) + " is empty");
        std::vector<int> sorted(clause);
        std::sort(sorted.begin(), sorted.end());
        if (sorted.front() < 0 || sorted.back() >= cnf.num_vars)
            throw InvalidInput("clause " + std::to_string(j + 1) + " has a variable out of range");
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidInput("clause " + std::to_string(j + 1) + " repeats a variable");
    }
}

bool is_nae_satisfying(const PositiveCnf& cnf, const Assignment& a) {
    if (static_cast<int>(a.size()) != cnf.num_vars) return false;
    return std::all_of(cnf.clauses.begin(), cnf.clauses.end(), [&](const auto& clause) {
        bool any_true = false, any_false = false;
        for (int v : clause) (a[static_cast<std::size_t>(v)] ? any_true : any_false) = true;
        return any_true && any_false;
    });
}

// --- DIMACS CNF -------------------------------------------------------------------

PositiveCnf parse_cnf(std::string_view text) {
    PositiveCnf cnf;
    long long declared_m = -1;
    std::vector<int> current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::istringstream fields{std::string(text.substr(pos, eol - pos))};
        pos = eol + 1;
        ++line_no;

        std::string tok;
        if (!(fields >> tok) || tok[0] == 'c') continue;
        if (tok == "%") break;  // SATLIB end marker
        if (tok == "p") {
            std::string kind;
            long long n = -1;
            if (declared_m >= 0) throw ParseError(line_no, "duplicate header");
            if (!(fields >> kind >> n >> declared_m) || kind != "cnf" || n < 0 || declared_m < 0 || n > (1 << 24))
                throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
            cnf.num_vars = static_cast<int>(n);
            continue;
        }
        if (declared_m < 0) throw ParseError(line_no, "clause before header");
        do {
            long long lit = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), lit);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw ParseError(line_no, "expected integer literal, got '" + tok + "'");
            if (lit < 0) throw ParseError(line_no, "negative literal " + tok + ": positive formulas only");
            if (lit == 0) {
                if (current.empty()) throw ParseError(line_no, "empty clause");
                cnf.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (lit > cnf.num_vars) throw ParseError(line_no, "variable " + tok + " out of range 1.." + std::to_string(cnf.num_vars));
            const int var = static_cast<int>(lit - 1);
            if (std::find(current.begin(), current.end(), var) != current.end())
                throw ParseError(line_no, "variable " + tok + " repeated within a clause");
            current.push_back(var);
        } while (fields >> tok);
    }
    if (declared_m < 0) throw ParseError(0, "missing header 'p cnf <vars> <clauses>'");
    if (!current.empty()) throw ParseError(line_no, "last clause is not terminated by 0");
    if (static_cast<long long>(cnf.clauses.size()) != declared_m)
        throw ParseError(0, "header declares " + std::to_string(declared_m) + " clauses, found " +
                                std::to_string(cnf.clauses.size()));
    return cnf;
}

std::string write_cnf(const PositiveCnf& cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.num_vars << ' ' << cnf.num_clauses() << '\n';
    for (const auto& clause : cnf.clauses) {
        for (int v : clause) out << v + 1 << ' ';
        out << "0\n";
    }
    return out.str();
}

// --- oracle and generator ------------------------------------------------------------

std::optional<Assignment> nae_oracle(const PositiveCnf& cnf, int max_vars) {
    validate(cnf);
    if (cnf.num_vars > max_vars || cnf.num_vars > 62)
        throw InvalidInput("NAE oracle limited to " + std::to_string(max_vars) + " variables");
    std::vector<std::uint64_t> masks;
    for (const auto& clause : cnf.clauses) {
        if (clause.size() <= 1) return std::nullopt;
        std::uint64_t m = 0;
        for (int v : clause) m |= std::uint64_t{1} << v;
        masks.push_back(m);
    }
    const std::uint64_t end = std::uint64_t{1} << cnf.num_vars;
    for (std::uint64_t x = 0; x < end; ++x) {
        const bool nae = std::all_of(masks.begin(), masks.end(), [x](std::uint64_t m) {
            const std::uint64_t t = x & m;
            return t != 0 && t != m;
        });
        if (!nae) continue;
        Assignment a(static_cast<std::size_t>(cnf.num_vars));
        for (int i = 0; i < cnf.num_vars; ++i) a[static_cast<std::size_t>(i)] = (x >> i) & 1U;
        return a;
    }
    return std::nullopt;
}

PositiveCnf random_positive_cnf(int num_vars, int num_clauses, int min_clause_size, std::uint64_t seed) {
    if (min_clause_size < 2) throw InvalidInput("minimum clause size must be at least 2");
    if (num_vars < min_clause_size) throw InvalidInput("fewer variables than the minimum clause size");
    if (num_clauses < 0) throw InvalidInput("negative clause count");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_dist(min_clause_size, num_vars);
    std::vector<int> vars(static_cast<std::size_t>(num_vars));
    PositiveCnf cnf{num_vars, {}};
    for (int j = 0; j < num_clauses; ++j) {
        const int size = size_dist(rng);
        std::iota(vars.begin(), vars.end(), 0);
        // Partial Fisher-Yates: the first `size` entries form a uniform subset.
        for (int i = 0; i < size; ++i) {
            std::uniform_int_distribution<int> pick(i, num_vars - 1);
            std::swap(vars[static_cast<std::size_t>(i)], vars[static_cast<std::size_t>(pick(rng))]);
        }
        std::vector<int> clause(vars.begin(), vars.begin() + size);
        std::sort(clause.begin(), clause.end());
        cnf.clauses.push_back(std::move(clause));
    }
    return cnf;
}

// --- roles --------------------------------------------------------------------------

std::string_view variant_name(Variant v) noexcept {
    return v == Variant::vc ? "vc" : "dp";
}

Variant parse_variant(std::string_view name) {
    if (name == "vc") return Variant::vc;
    if (name == "dp") return Variant::dp;
    throw InvalidInput("unknown variant '" + std::string(name) + "' (expected vc or dp)");
}

std::string Role::name() const {
    switch (kind) {
    case RoleKind::hub: return "h" + std::to_string(index);
    case RoleKind::a: return "a" + std::to_string(index);
    case RoleKind::b: return "b" + std::to_string(index);
    case RoleKind::variable: return "var" + std::to_string(index + 1);
    case RoleKind::clause: return "clause" + std::to_string(index + 1);
    case RoleKind::connector: return "conn" + std::to_string(index + 1) + "-" + std::to_string(index + 2);
    }
    return "?";
}

Role Role::parse(std::string_view name) {
    auto number = [&](std::string_view digits) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
            throw InvalidInput("malformed role '" + std::string(name) + "'");
        return value;
    };
    auto starts = [&](std::string_view prefix) { return name.substr(0, prefix.size()) == prefix; };
    if (starts("var")) return {RoleKind::variable, number(name.substr(3)) - 1};
    if (starts("clause")) return {RoleKind::clause, number(name.substr(6)) - 1};
    if (starts("conn")) {
        auto rest = name.substr(4);
        auto dash = rest.find('-');
        if (dash == std::string_view::npos) throw InvalidInput("malformed role '" + std::string(name) + "'");
        const int first = number(rest.substr(0, dash));
        if (number(rest.substr(dash + 1)) != first + 1) throw InvalidInput("malformed role '" + std::string(name) + "'");
        return {RoleKind::connector, first - 1};
    }
    if (!name.empty()) {
        const int i = name.size() > 1 ? number(name.substr(1)) : 0;
        if (i >= 1 && i <= 7) {
            if (name[0] == 'h') return {RoleKind::hub, i};
            if (name[0] == 'a') return {RoleKind::a, i};
            if (name[0] == 'b') return {RoleKind::b, i};
        }
    }
    throw InvalidInput("unknown role '" + std::string(name) + "'");
}

// --- builders -----------------------------------------------------------------------

ReductionArtifact build_reduction(const PositiveCnf& cnf, Variant variant) {
    validate(cnf);
    if (cnf.clauses.empty()) throw InvalidInput("formula has no clauses; reduction refused");
    for (std::size_t j = 0; j < cnf.clauses.size(); ++j)
        if (cnf.clauses[j].size() <= 1)
            throw InvalidInput("clause " + std::to_string(j + 1) + " has fewer than two variables: trivially unsatisfiable, reduction refused");

    ReductionArtifact art;
    art.variant = variant;
    art.cnf = cnf;
    const int m = cnf.num_clauses();
    const int n = cnf.num_vars;
    const int connectors = variant == Variant::dp ? m - 1 : 0;
    const int total = 21 + m + n + connectors;

    art.roles.resize(static_cast<std::size_t>(total), Role{RoleKind::hub, 0});
    for (int i = 1; i <= 7; ++i) {
        art.roles[static_cast<std::size_t>(art.hub(i))] = {RoleKind::hub, i};
        art.roles[static_cast<std::size_t>(art.a(i))] = {RoleKind::a, i};
        art.roles[static_cast<std::size_t>(art.b(i))] = {RoleKind::b, i};
    }
    for (int j = 0; j < m; ++j) art.roles[static_cast<std::size_t>(art.clause_vertex(j))] = {RoleKind::clause, j};
    for (int i = 0; i < n; ++i) art.roles[static_cast<std::size_t>(art.variable_vertex(i))] = {RoleKind::variable, i};
    for (int j = 0; j < connectors; ++j) art.roles[static_cast<std::size_t>(art.connector_vertex(j))] = {RoleKind::connector, j};

    std::vector<std::pair<Vertex, Vertex>> edges;
    // Chain of six 4-cycles h_i a_i h_{i+1} b_i.
    for (int i = 1; i <= 6; ++i) {
        edges.emplace_back(art.hub(i), art.a(i));
        edges.emplace_back(art.a(i), art.hub(i + 1));
        edges.emplace_back(art.hub(i + 1), art.b(i));
        edges.emplace_back(art.b(i), art.hub(i));
    }
    edges.emplace_back(art.hub(7), art.a(7));
    edges.emplace_back(art.hub(7), art.b(7));
    for (int j = 0; j < m; ++j) {
        for (int v : cnf.clauses[static_cast<std::size_t>(j)]) edges.emplace_back(art.clause_vertex(j), art.variable_vertex(v));
        edges.emplace_back(art.a(7), art.clause_vertex(j));
        edges.emplace_back(art.b(7), art.clause_vertex(j));
    }
    for (int i = 0; i < n; ++i) edges.emplace_back(art.hub(1), art.variable_vertex(i));
    for (int j = 0; j < connectors; ++j) {
        edges.emplace_back(art.clause_vertex(j), art.connector_vertex(j));
        edges.emplace_back(art.connector_vertex(j), art.clause_vertex(j + 1));
    }
    art.graph = Graph(total, edges);

    for (int i = 0; i < n; ++i) art.modulator.push_back(art.variable_vertex(i));
    for (int i = 1; i <= 7; ++i) art.modulator.push_back(art.hub(i));
    if (variant == Variant::vc) {
        art.modulator.push_back(art.a(7));
        art.modulator.push_back(art.b(7));
    } else {
        for (int i = 1; i <= 7; ++i) {
            art.modulator.push_back(art.a(i));
            art.modulator.push_back(art.b(i));
        }
    }
    std::sort(art.modulator.begin(), art.modulator.end());

    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (const auto& clause : cnf.clauses)
        for (int v : clause) used[static_cast<std::size_t>(v)] = 1;
    for (int i = 0; i < n; ++i)
        if (!used[static_cast<std::size_t>(i)])
            art.warnings.push_back("variable " + std::to_string(i + 1) + " occurs in no clause; it becomes a pendant on h1");
    return art;
}

ReductionArtifact build_reduction_vc(const PositiveCnf& cnf) { return build_reduction(cnf, Variant::vc); }
ReductionArtifact build_reduction_dp(const PositiveCnf& cnf) { return build_reduction(cnf, Variant::dp); }

// --- solution mappings --------------------------------------------------------------

Coloring assignment_to_coloring(const ReductionArtifact& art, const Assignment& a) {
    if (static_cast<int>(a.size()) != art.cnf.num_vars)
        throw InvalidInput("assignment has " + std::to_string(a.size()) + " values, formula has " +
                           std::to_string(art.cnf.num_vars) + " variables");
    if (!is_nae_satisfying(art.cnf, a)) throw InvalidInput("assignment is not NAE-satisfying");

    Coloring f{3, std::vector<int>(static_cast<std::size_t>(art.graph.num_vertices()), 0)};
    for (Vertex v = 0; v < art.graph.num_vertices(); ++v) {
        const Role role = art.roles[static_cast<std::size_t>(v)];
        int color = 0;
        switch (role.kind) {
        case RoleKind::variable: color = a[static_cast<std::size_t>(role.index)] ? 1 : 0; break;
        case RoleKind::clause:
        case RoleKind::hub: color = 2; break;
        case RoleKind::a:
        case RoleKind::connector: color = 0; break;
        case RoleKind::b: color = 1; break;
        }
        f.colors[static_cast<std::size_t>(v)] = color;
    }
    return f;
}

Assignment coloring_to_assignment(const ReductionArtifact& art, const Coloring& f) {
    check_coloring_shape(art.graph, f);
    if (f.k != 3 || f.colors_used() != 3) throw InvalidInput("expected a coloring with exactly 3 colors");
    const VerificationReport report = verify_strong_cfvc(art.graph, f, VerifyMode::fast_fail);
    if (!report.strong_cfvc()) throw InvalidInput("coloring is not a strong cfvc coloring of the instance");

    // Pin f(h1) to 2; the remaining colors keep their relative order as 0 < 1.
    const int pinned = f[art.hub(1)];
    int canonical[3];
    canonical[pinned] = 2;
    int next = 0;
    for (int c = 0; c < 3; ++c)
        if (c != pinned) canonical[c] = next++;

    Assignment a(static_cast<std::size_t>(art.cnf.num_vars));
    for (int i = 0; i < art.cnf.num_vars; ++i) a[static_cast<std::size_t>(i)] = canonical[f[art.variable_vertex(i)]] == 1;
    return a;
}

std::string format_assignment(const Assignment& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ' ';
        out += "v" + std::to_string(i + 1) + "=" + (a[i] ? "T" : "F");
    }
    return out;
}

// --- sidecar ------------------------------------------------------------------------

nlohmann::json to_sidecar(const ReductionArtifact& art) {
    nlohmann::json roles = nlohmann::json::object();
    for (std::size_t v = 0; v < art.roles.size(); ++v) roles[std::to_string(v + 1)] = art.roles[v].name();
    std::vector<int> modulator;
    for (Vertex v : art.modulator) modulator.push_back(v + 1);
    return {
        {"variant", std::string(variant_name(art.variant))},
        {"roles", roles},
        {"modulator", modulator},
        {"num_vars", art.cnf.num_vars},
        {"num_clauses", art.cnf.num_clauses()},
    };
}

ReductionArtifact from_sidecar(const nlohmann::json& sidecar, const Graph& g) {
    ReductionArtifact art;
    int m = 0;
    try {
        art.variant = parse_variant(sidecar.at("variant").get<std::string>());
        art.cnf.num_vars = sidecar.at("num_vars").get<int>();
        m = sidecar.at("num_clauses").get<int>();
        if (m < 1 || art.cnf.num_vars < 1) throw InvalidInput("sidecar counts must be positive");
        const auto& roles = sidecar.at("roles");
        if (static_cast<int>(roles.size()) != g.num_vertices())
            throw InvalidInput("sidecar lists " + std::to_string(roles.size()) + " roles, graph has " +
                               std::to_string(g.num_vertices()) + " vertices");
        art.graph = g;
        art.roles.resize(static_cast<std::size_t>(g.num_vertices()), Role{RoleKind::hub, 0});
        for (Vertex v = 0; v < g.num_vertices(); ++v)
            art.roles[static_cast<std::size_t>(v)] = Role::parse(roles.at(std::to_string(v + 1)).get<std::string>());
        for (int id : sidecar.at("modulator").get<std::vector<int>>()) art.modulator.push_back(id - 1);
        art.cnf.clauses.resize(static_cast<std::size_t>(m));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed sidecar: ") + e.what());
    }

    // The layout is fixed, so the roles must sit exactly where a rebuild puts them.
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
        const Role role = art.roles[static_cast<std::size_t>(v)];
        const int limit = role.kind == RoleKind::clause      ? m
                          : role.kind == RoleKind::variable  ? art.cnf.num_vars
                          : role.kind == RoleKind::connector ? m - 1
                                                             : 8;
        if (role.index >= limit) throw InvalidInput("sidecar role " + role.name() + " is out of range");
        Vertex expected = -1;
        switch (role.kind) {
        case RoleKind::hub: expected = art.hub(role.index); break;
        case RoleKind::a: expected = art.a(role.index); break;
        case RoleKind::b: expected = art.b(role.index); break;
        case RoleKind::clause: expected = art.clause_vertex(role.index); break;
        case RoleKind::variable: expected = art.variable_vertex(role.index); break;
        case RoleKind::connector: expected = art.connector_vertex(role.index); break;
        }
        if (expected != v) throw InvalidInput("sidecar role " + role.name() + " does not match the vertex layout");
        if (role.kind == RoleKind::clause) {
            auto& clause = art.cnf.clauses[static_cast<std::size_t>(role.index)];
            for (Vertex w : g.neighbors(v))
                if (art.roles[static_cast<std::size_t>(w)].kind == RoleKind::variable)
                    clause.push_back(art.roles[static_cast<std::size_t>(w)].index);
        }
    }
    validate(art.cnf);
    const ReductionArtifact rebuilt = build_reduction(art.cnf, art.variant);
    if (rebuilt.graph != g) throw InvalidInput("graph does not match the reduction described by the sidecar");
    if (rebuilt.modulator != art.modulator) throw InvalidInput("sidecar modulator does not match the reduction");
    art.warnings = rebuilt.warnings;
    return art;
}

}  // namespace cfvc
