#pragma once

#include <utility>
#include <vector>

namespace sos {

// Model of height functions with values {0, ..., m} on a Cayley tree of
// order k (every vertex has k+1 neighbours). The coupling J and inverse
// temperature beta enter every formula only through theta = exp(J * beta),
// so theta is the primary parameter.
struct ModelParams {
    double theta;
    int k;
    int m = 2;

    ModelParams(double theta, int k, int m = 2);

    static ModelParams from_coupling(double J, double beta, int k, int m = 2);

    // theta == 1 collapses every recursion kernel to zero.
    bool degenerate() const { return theta == 1.0; }
};

// Two-letter branching rule for boundary fields: a vertex carrying the h
// field sends the h field to a of its k children and the l field to the
// other b; a vertex carrying l splits c/d the same way.
struct BranchPattern {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;

    int order() const { return a + b; }
    bool consistent_with(const ModelParams& params) const;
    // Throws contract_error unless a,b,c,d >= 0, a+b == k and c+d == k.
    void require_consistent(const ModelParams& params) const;
};

// Unknowns of the full boundary-field system, in equation order.
struct FieldVector {
    double h1 = 0.0;
    double h2 = 0.0;
    double l1 = 0.0;
    double l2 = 0.0;
};

// Coordinates on the invariant set h1 = l1 = 0 where all the analysis happens.
struct ReducedField {
    double h2 = 0.0;
    double l2 = 0.0;
};

// Scalar recursion kernel f(x, theta) = ln((e^x + 2 theta) / (theta^2 + theta e^x + 1)).
// Evaluated through log-sum-exp, so it is finite for every finite x.
double kernel_f(double x, double theta);

// df/dx = -e^x (theta^2 - 1) / ((e^x + 2 theta)(theta^2 + theta e^x + 1)).
// Positive for theta < 1, negative for theta > 1, identically 0 at theta = 1.
double kernel_f_derivative(double x, double theta);

// d2f/dx2; changes sign exactly once, at x = inflection_point(theta).
double kernel_f_second(double x, double theta);

// x*(theta) = (1/2) ln(2 theta^2 + 2), the unique inflection of kernel_f.
double inflection_point(double theta);

// {lower, upper} envelope of kernel_f over all x: the two limits
// ln(1/theta) and ln(2 theta / (theta^2 + 1)), ordered.
std::pair<double, double> kernel_f_bounds(double theta);

// Vector recursion map for general m: component i of F(h, m, theta) is
//   ln[(sum_j theta^{|i-j|} e^{h_j} + theta^{m-i}) / (sum_j theta^{m-j} e^{h_j} + 1)]
// for i = 0..m-1. With m = 2 and h = (0, t) the second component is kernel_f(t).
std::vector<double> map_F(const std::vector<double>& h, const ModelParams& params);

// One level of the boundary-field recursion for the two-letter pattern,
// acting on (h1, h2, l1, l2). The set {h1 = l1 = 0} is invariant.
FieldVector operator_W(const FieldVector& v, const BranchPattern& pattern,
                       const ModelParams& params);

// Restriction of operator_W to the invariant set:
//   (h2, l2) -> (a f(h2) + b f(l2), c f(h2) + d f(l2)).
ReducedField reduced_rhs(const ReducedField& r, const BranchPattern& pattern,
                         const ModelParams& params);

} // namespace sos
