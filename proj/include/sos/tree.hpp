#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sos/model.hpp"

namespace sos {

// Ball of radius n around the root of a Cayley tree of order k: the root has
// k+1 children, every other interior vertex has k. Vertices are stored in
// breadth-first order, so the ball of radius j is a prefix of the vertex list.
struct FiniteTree {
    int k = 0;
    int n = 0;

    struct Vertex {
        int parent = -1;
        int depth = 0;
    };
    std::vector<Vertex> vertices;
    std::vector<int> sphere_start;  // sphere_start[j] = first index at depth j; size n+2

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int sphere_size(int j) const;  // |W_j|
    int ball_size(int j) const;    // |V_j|
    std::vector<std::pair<int, int>> edges() const;  // (parent, child) pairs
};

// Exact enumeration walks all 3^{|V_n|} spin configurations, so the vertex
// count is budgeted. 3^14 is about 4.8e6 configurations.
inline constexpr int kDefaultEnumerationBudget = 14;

// Throws domain_error for k < 1 or n < 0, size_error when the ball exceeds
// max_vertices.
FiniteTree build_tree(int k, int n, int max_vertices = kDefaultEnumerationBudget);

// H(config) = -J * sum over edges of |spin(x) - spin(y)|. config holds one
// spin in {0,1,2} per vertex, in tree order.
double hamiltonian(const std::vector<int>& config, const FiniteTree& tree, double J);

enum class Label { HBar, LBar };

// How the root's k+1 children split between the two labels. Default: the
// branch pattern covers k of them and the extra child repeats the root's
// own label.
struct RootSplit {
    int to_h = 0;
    int to_l = 0;
};

// A label per vertex plus the two reduced field values. A vertex with label
// HBar carries the log-weight vector (0, h2, 0) over the spins {0, 1, 2},
// an LBar vertex carries (0, l2, 0); the third component is the gauge zero.
struct FieldAssignment {
    std::vector<Label> labels;
    double h2 = 0.0;
    double l2 = 0.0;

    double value_of(int v) const { return labels[static_cast<std::size_t>(v)] == Label::HBar ? h2 : l2; }
    std::array<double, 3> field_of(int v) const { return {0.0, value_of(v), 0.0}; }
    FieldAssignment perturbed(double dh2, double dl2) const;
};

// Propagates labels from the root: an HBar vertex gives HBar to its first a
// children and LBar to the remaining b, an LBar vertex splits c/d, and the
// root's k+1 children follow `split`.
FieldAssignment assign_fields(const FiniteTree& tree, const BranchPattern& pattern,
                              double h2, double l2, Label root_label = Label::HBar,
                              std::optional<RootSplit> split = std::nullopt);

// Exact finite-volume distribution: the weight of a configuration is
// theta^{sum of edge gaps} * exp(sum of boundary fields over the outer
// sphere W_n), normalised by the partition sum.
struct ExactDistribution {
    int n_vertices = 0;
    std::int64_t n_configs = 0;
    std::vector<double> probabilities;  // indexed by base-3 code, vertex 0 least significant
    double partition_value = 0.0;
    double log_partition = 0.0;

    static int spin_of(std::int64_t code, int v);
    static std::int64_t encode(const std::vector<int>& config);
};

// Enumerates all configurations. `workers` splits the enumeration over fixed
// chunks; the reduction order is independent of the worker count, so results
// are bit-identical for any worker setting.
ExactDistribution exact_mu_n(const FiniteTree& tree, const FieldAssignment& fields,
                             double theta, int workers = 1);

// Distribution of the root spin.
std::array<double, 3> root_marginal(const ExactDistribution& dist);

// Max-abs deviation between the radius-(n-1) marginal of the level-n
// distribution and the level-(n-1) distribution built from the same
// assignment. Zero (to rounding) exactly when the field values solve the
// compatibility recursion for this pattern. Requires n >= 2.
double check_compatibility(const FiniteTree& tree, const FieldAssignment& fields,
                           double theta, int workers = 1);

// CSV dump of a distribution: one row per configuration with its spin string,
// weight and probability. Schema is versioned in the header comment line.
void dump_distribution_csv(const ExactDistribution& dist, const FiniteTree& tree,
                           const std::string& path);

} // namespace sos
