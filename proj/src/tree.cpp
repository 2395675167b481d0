#include "sos/tree.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "sos/errors.hpp"

namespace sos {

namespace {

// 3^i for i up to 39, the largest power fitting in int64.
constexpr std::int64_t pow3(int i) {
    std::int64_t v = 1;
    for (int j = 0; j < i; ++j) v *= 3;
    return v;
}

constexpr int kMaxEncodableVertices = 39;

// Enumeration is capped independently of the tree-building budget: the
// probability table holds 3^V doubles.
constexpr int kMaxEnumerationVertices = 15;

// Work is split into fixed-size chunks of configuration codes. Chunk
// boundaries, the per-chunk accumulation order and the cross-chunk reduction
// order never depend on the worker count, which keeps results bit-identical.
constexpr std::int64_t kChunkSize = 4096;

void require_config(const std::vector<int>& config, const FiniteTree& tree) {
    if (static_cast<int>(config.size()) != tree.vertex_count())
        throw contract_error("config holds " + std::to_string(config.size()) +
                             " spins for a tree of " + std::to_string(tree.vertex_count()) +
                             " vertices");
    for (int s : config)
        if (s < 0 || s > 2) throw domain_error("spins must lie in {0, 1, 2}");
}

// Runs fn(chunk_index, code_begin, code_end) over all chunks using the given
// number of worker threads. Chunks are claimed via a shared counter; since
// every chunk writes only its own slots, the thread assignment is irrelevant.
template <typename Fn>
void for_each_chunk(std::int64_t n_codes, int workers, Fn fn) {
    const std::int64_t n_chunks = (n_codes + kChunkSize - 1) / kChunkSize;
    workers = static_cast<int>(std::min<std::int64_t>(std::max(workers, 1), n_chunks));
    if (workers == 1) {
        for (std::int64_t ci = 0; ci < n_chunks; ++ci)
            fn(ci, ci * kChunkSize, std::min(n_codes, (ci + 1) * kChunkSize));
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::int64_t ci = next.fetch_add(1);
            if (ci >= n_chunks) return;
            fn(ci, ci * kChunkSize, std::min(n_codes, (ci + 1) * kChunkSize));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
}

} // namespace

int FiniteTree::sphere_size(int j) const {
    if (j < 0 || j > n) throw domain_error("sphere index out of range");
    return sphere_start[static_cast<std::size_t>(j) + 1] - sphere_start[static_cast<std::size_t>(j)];
}

int FiniteTree::ball_size(int j) const {
    if (j < 0 || j > n) throw domain_error("ball index out of range");
    return sphere_start[static_cast<std::size_t>(j) + 1];
}

std::vector<std::pair<int, int>> FiniteTree::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(vertices.size() - 1);
    for (int v = 1; v < vertex_count(); ++v)
        out.emplace_back(vertices[static_cast<std::size_t>(v)].parent, v);
    return out;
}

FiniteTree build_tree(int k, int n, int max_vertices) {
    if (k < 1) throw domain_error("tree order k must be >= 1");
    if (n < 0) throw domain_error("ball radius n must be >= 0");

    FiniteTree tree;
    tree.k = k;
    tree.n = n;
    tree.vertices.push_back({-1, 0});
    tree.sphere_start.assign(static_cast<std::size_t>(n) + 2, 0);
    tree.sphere_start[0] = 0;

    for (int depth = 1; depth <= n; ++depth) {
        tree.sphere_start[static_cast<std::size_t>(depth)] = tree.vertex_count();
        const int first_parent = tree.sphere_start[static_cast<std::size_t>(depth) - 1];
        const int last_parent = tree.sphere_start[static_cast<std::size_t>(depth)];
        for (int p = first_parent; p < last_parent; ++p) {
            const int fanout = (p == 0) ? k + 1 : k;
            for (int child = 0; child < fanout; ++child) {
                if (tree.vertex_count() >= max_vertices)
                    throw size_error("ball of radius " + std::to_string(n) + " at order " +
                                     std::to_string(k) + " exceeds the vertex budget of " +
                                     std::to_string(max_vertices));
                tree.vertices.push_back({p, depth});
            }
        }
    }
    tree.sphere_start[static_cast<std::size_t>(n) + 1] = tree.vertex_count();
    if (tree.vertex_count() > max_vertices)
        throw size_error("ball exceeds the vertex budget of " + std::to_string(max_vertices));
    return tree;
}

double hamiltonian(const std::vector<int>& config, const FiniteTree& tree, double J) {
    require_config(config, tree);
    if (!std::isfinite(J)) throw domain_error("coupling J must be finite");
    int gap_sum = 0;
    for (int v = 1; v < tree.vertex_count(); ++v) {
        const int p = tree.vertices[static_cast<std::size_t>(v)].parent;
        gap_sum += std::abs(config[static_cast<std::size_t>(v)] - config[static_cast<std::size_t>(p)]);
    }
    return -J * gap_sum;
}

FieldAssignment FieldAssignment::perturbed(double dh2, double dl2) const {
    FieldAssignment out = *this;
    out.h2 += dh2;
    out.l2 += dl2;
    return out;
}

FieldAssignment assign_fields(const FiniteTree& tree, const BranchPattern& pattern,
                              double h2, double l2, Label root_label,
                              std::optional<RootSplit> split) {
    if (pattern.a < 0 || pattern.b < 0 || pattern.c < 0 || pattern.d < 0)
        throw contract_error("branch pattern entries must be non-negative");
    if (pattern.a + pattern.b != tree.k || pattern.c + pattern.d != tree.k)
        throw contract_error("branch pattern rows must sum to the tree order k");

    RootSplit rs;
    if (split) {
        rs = *split;
        if (rs.to_h < 0 || rs.to_l < 0 || rs.to_h + rs.to_l != tree.k + 1)
            throw contract_error("root split must distribute exactly k + 1 children");
    } else if (root_label == Label::HBar) {
        rs = {pattern.a + 1, pattern.b};
    } else {
        rs = {pattern.c, pattern.d + 1};
    }

    FieldAssignment out;
    out.h2 = h2;
    out.l2 = l2;
    out.labels.assign(static_cast<std::size_t>(tree.vertex_count()), Label::HBar);
    out.labels[0] = root_label;

    // Children of any vertex are contiguous in breadth-first order, so a
    // per-parent counter decides which side of the split each child lands on.
    std::vector<int> seen(static_cast<std::size_t>(tree.vertex_count()), 0);
    for (int v = 1; v < tree.vertex_count(); ++v) {
        const int p = tree.vertices[static_cast<std::size_t>(v)].parent;
        const int rank = seen[static_cast<std::size_t>(p)]++;
        int h_share;
        if (p == 0)
            h_share = rs.to_h;
        else
            h_share = (out.labels[static_cast<std::size_t>(p)] == Label::HBar) ? pattern.a
                                                                               : pattern.c;
        out.labels[static_cast<std::size_t>(v)] = (rank < h_share) ? Label::HBar : Label::LBar;
    }
    return out;
}

int ExactDistribution::spin_of(std::int64_t code, int v) {
    return static_cast<int>((code / pow3(v)) % 3);
}

std::int64_t ExactDistribution::encode(const std::vector<int>& config) {
    if (static_cast<int>(config.size()) > kMaxEncodableVertices)
        throw size_error("configuration too long to encode in 64 bits");
    std::int64_t code = 0;
    for (std::size_t v = config.size(); v-- > 0;) {
        if (config[v] < 0 || config[v] > 2) throw domain_error("spins must lie in {0, 1, 2}");
        code = code * 3 + config[v];
    }
    return code;
}

ExactDistribution exact_mu_n(const FiniteTree& tree, const FieldAssignment& fields,
                             double theta, int workers) {
    if (!std::isfinite(theta) || theta <= 0.0) throw domain_error("theta must be positive");
    if (workers < 1) throw contract_error("workers must be >= 1");
    if (static_cast<int>(fields.labels.size()) != tree.vertex_count())
        throw contract_error("field assignment does not match the tree");
    if (tree.vertex_count() > kMaxEnumerationVertices)
        throw size_error("exact enumeration is capped at " +
                         std::to_string(kMaxEnumerationVertices) + " vertices");

    const int V = tree.vertex_count();
    const std::int64_t n_codes = pow3(V);
    const double log_theta = std::log(theta);
    const int boundary_lo = tree.sphere_start[static_cast<std::size_t>(tree.n)];
    const int boundary_hi = tree.sphere_start[static_cast<std::size_t>(tree.n) + 1];

    ExactDistribution dist;
    dist.n_vertices = V;
    dist.n_configs = n_codes;
    dist.probabilities.resize(static_cast<std::size_t>(n_codes));

    auto log_weight = [&](std::int64_t code) {
        int spins[kMaxEnumerationVertices];
        std::int64_t rest = code;
        for (int v = 0; v < V; ++v) {
            spins[v] = static_cast<int>(rest % 3);
            rest /= 3;
        }
        int gap_sum = 0;
        for (int v = 1; v < V; ++v)
            gap_sum += std::abs(spins[v] - spins[tree.vertices[static_cast<std::size_t>(v)].parent]);
        double lw = gap_sum * log_theta;
        for (int v = boundary_lo; v < boundary_hi; ++v)
            if (spins[v] == 1) lw += fields.value_of(v);
        return lw;
    };

    const std::int64_t n_chunks = (n_codes + kChunkSize - 1) / kChunkSize;
    std::vector<double> chunk_max(static_cast<std::size_t>(n_chunks),
                                  -std::numeric_limits<double>::infinity());
    for_each_chunk(n_codes, workers, [&](std::int64_t ci, std::int64_t lo, std::int64_t hi) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::int64_t code = lo; code < hi; ++code) {
            const double lw = log_weight(code);
            dist.probabilities[static_cast<std::size_t>(code)] = lw;
            m = std::max(m, lw);
        }
        chunk_max[static_cast<std::size_t>(ci)] = m;
    });
    double max_lw = -std::numeric_limits<double>::infinity();
    for (double m : chunk_max) max_lw = std::max(max_lw, m);

    std::vector<double> chunk_sum(static_cast<std::size_t>(n_chunks), 0.0);
    for_each_chunk(n_codes, workers, [&](std::int64_t ci, std::int64_t lo, std::int64_t hi) {
        double s = 0.0;
        for (std::int64_t code = lo; code < hi; ++code) {
            const double w = std::exp(dist.probabilities[static_cast<std::size_t>(code)] - max_lw);
            dist.probabilities[static_cast<std::size_t>(code)] = w;
            s += w;
        }
        chunk_sum[static_cast<std::size_t>(ci)] = s;
    });
    double total = 0.0;
    for (double s : chunk_sum) total += s;

    for_each_chunk(n_codes, workers, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
        for (std::int64_t code = lo; code < hi; ++code)
            dist.probabilities[static_cast<std::size_t>(code)] /= total;
    });

    dist.log_partition = max_lw + std::log(total);
    dist.partition_value = std::exp(dist.log_partition);
    return dist;
}

std::array<double, 3> root_marginal(const ExactDistribution& dist) {
    std::array<double, 3> out{0.0, 0.0, 0.0};
    for (std::int64_t code = 0; code < dist.n_configs; ++code)
        out[static_cast<std::size_t>(code % 3)] +=
            dist.probabilities[static_cast<std::size_t>(code)];
    return out;
}

double check_compatibility(const FiniteTree& tree, const FieldAssignment& fields,
                           double theta, int workers) {
    if (tree.n < 2)
        throw contract_error("compatibility check needs a ball of radius >= 2");

    const auto dist_n = exact_mu_n(tree, fields, theta, workers);

    FiniteTree inner = build_tree(tree.k, tree.n - 1, tree.vertex_count());
    FieldAssignment inner_fields;
    inner_fields.h2 = fields.h2;
    inner_fields.l2 = fields.l2;
    inner_fields.labels.assign(fields.labels.begin(),
                               fields.labels.begin() + inner.vertex_count());
    const auto dist_inner = exact_mu_n(inner, inner_fields, theta, workers);

    // Vertices of the inner ball are a prefix of the tree order and vertex 0
    // is the least-significant base-3 digit, so restriction is a modulus.
    const std::int64_t inner_codes = dist_inner.n_configs;
    std::vector<double> marginal(static_cast<std::size_t>(inner_codes), 0.0);
    for (std::int64_t code = 0; code < dist_n.n_configs; ++code)
        marginal[static_cast<std::size_t>(code % inner_codes)] +=
            dist_n.probabilities[static_cast<std::size_t>(code)];

    double dev = 0.0;
    for (std::int64_t c = 0; c < inner_codes; ++c)
        dev = std::max(dev, std::abs(marginal[static_cast<std::size_t>(c)] -
                                     dist_inner.probabilities[static_cast<std::size_t>(c)]));
    return dev;
}

void dump_distribution_csv(const ExactDistribution& dist, const FiniteTree& tree,
                           const std::string& path) {
    if (dist.n_vertices != tree.vertex_count())
        throw contract_error("distribution does not match the tree");
    std::ofstream out(path);
    if (!out) throw io_error("cannot open " + path + " for writing");

    out << "# sosgibbs distribution v1\n";
    out << "config,weight,probability\n";
    char buf[64];
    std::string spins(static_cast<std::size_t>(dist.n_vertices), '0');
    for (std::int64_t code = 0; code < dist.n_configs; ++code) {
        std::int64_t rest = code;
        for (int v = 0; v < dist.n_vertices; ++v) {
            spins[static_cast<std::size_t>(v)] = static_cast<char>('0' + rest % 3);
            rest /= 3;
        }
        const double p = dist.probabilities[static_cast<std::size_t>(code)];
        out << spins << ',';
        std::snprintf(buf, sizeof buf, "%.17g", p * dist.partition_value);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", p);
        out << buf << '\n';
    }
    if (!out) throw io_error("failed while writing " + path);
}

} // namespace sos
