#include "fedirec/ppr.hpp"

#include <cmath>
#include <stdexcept>

#include "fedirec/kernels.hpp"

namespace fedirec::ppr {

namespace {

std::vector<std::vector<NodeId>> transition_lists(const DirectedGraph& g,
                                                  bool undirected) {
    std::vector<std::vector<NodeId>> adj(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        adj[u] = undirected ? g.undirected_neighbors(u) : g.out_neighbors(u);
    }
    return adj;
}

}  // namespace

PprVector power_iteration(const DirectedGraph& g, NodeId seed,
                          const PprConfig& config) {
    const std::size_t n = g.node_count();
    if (seed >= n) throw std::out_of_range("ppr: seed out of range");
    const double lambda = config.damping;
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("ppr: damping must be in (0, 1)");
    }
    const auto adj = transition_lists(g, config.undirected);

    PprVector result;
    result.seed = seed;
    std::vector<double> r(n, 0.0), next(n, 0.0);
    r[seed] = 1.0;

    for (std::size_t it = 1; it <= config.max_iterations; ++it) {
        kernels::fill(next, 0.0);
        double dangling = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            if (r[u] == 0.0) continue;
            if (adj[u].empty()) {
                dangling += r[u];
                continue;
            }
            const double share = lambda * r[u] / static_cast<double>(adj[u].size());
            for (NodeId v : adj[u]) next[v] += share;
        }
        next[seed] += lambda * dangling + (1.0 - lambda);
        const double residual = kernels::l1_diff(r, next);
        r.swap(next);
        result.iterations_used = it;
        if (residual < config.tolerance) {
            result.converged = true;
            break;
        }
    }
    result.scores = std::move(r);
    return result;
}

PprVector dense_solve(const DirectedGraph& g, NodeId seed, double damping,
                      bool undirected) {
    const std::size_t n = g.node_count();
    if (seed >= n) throw std::out_of_range("ppr: seed out of range");
    const auto adj = transition_lists(g, undirected);

    // A = I - damping * M^T, column u of M^T spreads node u's mass
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 1.0;
    for (NodeId u = 0; u < n; ++u) {
        if (adj[u].empty()) {
            a[seed][u] -= damping;  // dangling mass to the seed
        } else {
            const double w = damping / static_cast<double>(adj[u].size());
            for (NodeId v : adj[u]) a[v][u] -= w;
        }
    }
    std::vector<double> rhs(n, 0.0);
    rhs[seed] = 1.0 - damping;

    // Gaussian elimination with partial pivoting
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        }
        if (a[pivot][col] == 0.0) {
            throw std::runtime_error("ppr dense solve: singular system");
        }
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<double> r(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double v = rhs[row];
        for (std::size_t j = row + 1; j < n; ++j) v -= a[row][j] * r[j];
        r[row] = v / a[row][row];
    }

    PprVector result;
    result.seed = seed;
    result.converged = true;
    result.iterations_used = 1;
    result.scores = std::move(r);
    return result;
}

rec::RankedList recommend_ppr(const DirectedGraph& g_train, NodeId target,
                              const PprOptions& options) {
    PprVector v = power_iteration(g_train, target, options.config);
    std::vector<std::pair<NodeId, double>> scored;
    scored.reserve(v.scores.size());
    for (NodeId u = 0; u < v.scores.size(); ++u) {
        if (u == target || v.scores[u] <= 0.0) continue;
        if (options.filter_followees && g_train.has_edge(target, u)) continue;
        scored.emplace_back(u, v.scores[u]);
    }
    rec::RankedList list;
    list.target = target;
    list.k = options.k;
    list.algorithm = "ppr";
    list.converged = v.converged;
    list.entries = rec::top_k(std::move(scored), options.k);
    return list;
}

}  // namespace fedirec::ppr
