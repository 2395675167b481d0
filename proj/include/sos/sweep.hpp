#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sos/model.hpp"
#include "sos/roots.hpp"

namespace sos {

// Grid sweep over (theta, c) for the b = 0 chain at fixed k, or over theta
// alone for a fixed b != 0 pattern. Output is deterministic: rows ordered
// theta-major then by c, numbers printed with 17 significant digits.
struct SweepSpec {
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    int theta_steps = 0;
    std::vector<int> c_values;               // b = 0 mode; 0 <= c <= k per value
    int k = 0;
    std::optional<BranchPattern> pattern;    // set: classify this b != 0 pattern instead
    std::string output_path;
    enum class Format { Csv, Json };
    Format format = Format::Csv;
    int workers = 1;
    RootFindConfig root_config{};

    // Throws contract_error / size_error / domain_error on a bad grid
    // (needs 0 < theta_lo < theta_hi < 1, theta_steps >= 2, at most 1e7
    // grid points).
    void validate() const;
};

struct SweepRow {
    double theta = 0.0;
    double c = 0.0;
    int k = 0;
    int d = 0;
    double theta_c = 0.0;     // NaN when the critical analysis does not apply
    double c_star_1 = 0.0;    // k/h* prefactor convention; NaN when absent
    double c_star_2 = 0.0;
    int n_predicted = 0;
    int n_found = 0;
    std::string regime;
};

// Computes all rows; `workers` parallelises over rows without changing
// their values or order.
std::vector<SweepRow> run_sweep_rows(const SweepSpec& spec);

// Deterministic serialisations of a row set.
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

// Computes the rows and writes output_path in the requested format.
void run_sweep(const SweepSpec& spec);

} // namespace sos
