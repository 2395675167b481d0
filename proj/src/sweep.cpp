#include "sos/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "sos/classifier.hpp"
#include "sos/errors.hpp"

namespace sos {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// theta grid node i, computed directly from the endpoints so the values do
// not depend on evaluation order.
double theta_at(const SweepSpec& spec, int i) {
    if (spec.theta_steps == 1) return spec.theta_lo;
    return spec.theta_lo +
           (spec.theta_hi - spec.theta_lo) * (static_cast<double>(i) / (spec.theta_steps - 1));
}

SweepRow compute_row(const SweepSpec& spec, double theta, int c) {
    SweepRow row;
    row.theta = theta;
    row.k = spec.k;

    BranchPattern pattern;
    if (spec.pattern) {
        pattern = *spec.pattern;
        row.c = pattern.c;
        row.d = pattern.d;
    } else {
        pattern = BranchPattern{spec.k, 0, c, spec.k - c};
        row.c = c;
        row.d = spec.k - c;
    }

    const ModelParams params(theta, spec.k);
    const auto rep = classify_point(pattern, params, spec.root_config);

    row.theta_c = (!spec.pattern && row.d >= 2) ? theta_critical(row.d) : kNaN;
    row.c_star_1 = kNaN;
    row.c_star_2 = kNaN;
    if (rep.criticals && rep.criticals->c_star_1) {
        row.c_star_1 = *rep.criticals->c_star_1;
        row.c_star_2 = *rep.criticals->c_star_2;
    }
    row.n_predicted = rep.n_solutions_predicted;
    row.n_found = rep.n_solutions_found;
    row.regime = to_string(rep.regime);
    return row;
}

} // namespace

void SweepSpec::validate() const {
    if (!std::isfinite(theta_lo) || !std::isfinite(theta_hi) || theta_lo <= 0.0 ||
        theta_lo >= theta_hi || theta_hi >= 1.0)
        throw domain_error("theta grid needs 0 < theta_lo < theta_hi < 1");
    if (theta_steps < 2) throw contract_error("theta_steps must be >= 2");
    if (k < 1) throw domain_error("k must be >= 1");
    if (workers < 1) throw contract_error("workers must be >= 1");
    root_config.validate();

    std::size_t per_theta = 1;
    if (pattern) {
        if (pattern->b == 0)
            throw contract_error("use c_values, not a pattern, for the b = 0 chain");
        if (pattern->a + pattern->b != k || pattern->c + pattern->d != k)
            throw contract_error("pattern rows must sum to k");
        if (pattern->a < 0 || pattern->b < 0 || pattern->c < 0 || pattern->d < 0)
            throw contract_error("pattern entries must be non-negative");
        if (!c_values.empty())
            throw contract_error("c_values and pattern modes are mutually exclusive");
    } else {
        if (c_values.empty()) throw contract_error("b = 0 sweep needs at least one c value");
        for (int c : c_values)
            if (c < 0 || c > k) throw contract_error("each c must satisfy 0 <= c <= k");
        per_theta = c_values.size();
    }
    if (static_cast<std::size_t>(theta_steps) * per_theta > 10'000'000u)
        throw size_error("sweep grid exceeds 1e7 points");
}

std::vector<SweepRow> run_sweep_rows(const SweepSpec& spec) {
    spec.validate();
    const std::size_t per_theta = spec.pattern ? 1 : spec.c_values.size();
    const std::size_t n_rows = static_cast<std::size_t>(spec.theta_steps) * per_theta;
    std::vector<SweepRow> rows(n_rows);

    // Each row index maps to a fixed (theta, c) pair; workers claim indices
    // from a shared counter and write disjoint slots, so the output is
    // identical for any worker count.
    auto fill = [&](std::size_t idx) {
        const int ti = static_cast<int>(idx / per_theta);
        const int ci = static_cast<int>(idx % per_theta);
        const int c = spec.pattern ? 0 : spec.c_values[static_cast<std::size_t>(ci)];
        rows[idx] = compute_row(spec, theta_at(spec, ti), c);
    };

    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(spec.workers), n_rows));
    if (workers <= 1) {
        for (std::size_t idx = 0; idx < n_rows; ++idx) fill(idx);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto run = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= n_rows || failed.load()) return;
            try {
                fill(idx);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(failure);
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out;
    out += "# sosgibbs sweep v1; c* bounds use the k/h* prefactor convention\n";
    out += "theta,c,k,d,theta_c,c_star_1,c_star_2,N_predicted,N_found,regime\n";
    for (const auto& r : rows) {
        out += fmt17(r.theta);
        out += ',';
        out += fmt17(r.c);
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += std::to_string(r.d);
        out += ',';
        out += fmt17(r.theta_c);
        out += ',';
        out += fmt17(r.c_star_1);
        out += ',';
        out += fmt17(r.c_star_2);
        out += ',';
        out += std::to_string(r.n_predicted);
        out += ',';
        out += std::to_string(r.n_found);
        out += ',';
        out += r.regime;
        out += '\n';
    }
    return out;
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json doc;
    doc["schema"] = "sosgibbs sweep v1";
    doc["convention"] = "k/h*";
    auto& arr = doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        j["theta"] = r.theta;
        j["c"] = r.c;
        j["k"] = r.k;
        j["d"] = r.d;
        j["theta_c"] = r.theta_c;
        j["c_star_1"] = r.c_star_1;
        j["c_star_2"] = r.c_star_2;
        j["N_predicted"] = r.n_predicted;
        j["N_found"] = r.n_found;
        j["regime"] = r.regime;
        arr.push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

void run_sweep(const SweepSpec& spec) {
    if (spec.output_path.empty()) throw contract_error("sweep needs an output path");
    const auto rows = run_sweep_rows(spec);
    const std::string text =
        spec.format == SweepSpec::Format::Csv ? sweep_csv(rows) : sweep_json(rows);
    std::ofstream out(spec.output_path, std::ios::binary);
    if (!out) throw io_error("cannot open " + spec.output_path + " for writing");
    out << text;
    if (!out) throw io_error("failed while writing " + spec.output_path);
}

} // namespace sos
