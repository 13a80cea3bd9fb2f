#include "onecopy/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "onecopy/lightcone.hpp"
#include "onecopy/parallel.hpp"

namespace onecopy {

std::string backend_name(Backend b) {
    switch (b) {
        case Backend::dense: return "dense";
        case Backend::mps: return "mps";
        case Backend::autosel: return "auto";
    }
    return "auto";
}

Backend parse_backend(const std::string& name) {
    if (name == "dense") return Backend::dense;
    if (name == "mps") return Backend::mps;
    if (name == "auto") return Backend::autosel;
    throw DomainError("unknown backend '" + name + "'");
}

namespace {

bool is_line_circuit(const LayeredCircuit& c) {
    for (const Layer& layer : c.layers)
        for (const Gate& g : layer.gates)
            if (g.arity() != 2 || std::abs(g.qubits[0] - g.qubits[1]) != 1)
                return false;
    return true;
}

}  // namespace

Backend resolve_backend(const LayeredCircuit& c, Backend requested) {
    if (requested != Backend::autosel) return requested;
    if (c.n <= dense_cap_qubits) return Backend::dense;
    if (is_line_circuit(c)) return Backend::mps;
    throw DomainError(
        "no backend for this circuit: register exceeds the dense cap and "
        "the gates are not nearest-neighbor on a line");
}

double term_value(const Shot& shot, const std::vector<int>& support) {
    int sign = 1;
    for (int q : support) {
        if (q < 0 || q >= static_cast<int>(shot.values.size()))
            throw DomainError("term support outside the shot register");
        if (shot.values[q] < 0) sign = -sign;
    }
    return static_cast<double>(sign);
}

double estimate_value(const Shot& shot, const Observable& o) {
    double y = 0.0;
    for (const Term& t : o.terms) y += t.coeff * term_value(shot, t.support);
    return y;
}

EstimateReport single_copy_estimate(const Shot& shot, const Observable& o) {
    validate_observable(o);
    if (o.n() != static_cast<int>(shot.values.size()))
        throw DomainError("observable register does not match the shot");
    if (o.basis != shot.basis)
        throw DomainError("shot was measured in basis " + shot.basis +
                          ", observable needs " + o.basis);
    EstimateReport report;
    report.term_values.reserve(o.terms.size());
    for (const Term& t : o.terms) {
        const double r = term_value(shot, t.support);
        report.term_values.push_back(r);
        report.estimate += t.coeff * r;
    }
    report.seed = shot.seed;
    report.shot_index = shot.index;
    return report;
}

double variance_bound(const LayeredCircuit& c, const Observable& o) {
    const OverlapGraph g = overlap_graph(term_lightcones(c, o));
    return static_cast<double>(g.max_degree) * observable_norm(o);
}

double confidence(double variance_bound, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (variance_bound < 0.0) throw DomainError("variance bound is negative");
    return std::min(1.0, variance_bound / (epsilon * epsilon));
}

double multi_observable_budget(const LayeredCircuit& c,
                               const std::vector<Observable>& os,
                               double epsilon) {
    if (os.empty()) throw DomainError("no observables given");
    for (const Observable& o : os)
        if (o.basis != os.front().basis)
            throw DomainError(
                "observables use different bases; one shot covers only "
                "observables measured in a single product basis");
    double total = 0.0;
    for (const Observable& o : os)
        total += confidence(variance_bound(c, o), epsilon);
    return std::min(1.0, total);
}

const std::vector<double>& default_eps_grid() {
    static const std::vector<double> grid{0.05, 0.1, 0.2, 0.5};
    return grid;
}

TrialStats trial_harness(const LayeredCircuit& c, const Observable& o,
                         std::size_t trials, std::uint64_t seed,
                         Backend backend, int jobs) {
    if (trials < 1) throw DomainError("trials must be at least 1");
    validate_observable(o);

    const Backend resolved = resolve_backend(c, backend);
    const std::string zeros(c.n, '0');

    std::unique_ptr<DenseSampler> dense;
    MpsState mps_state;
    std::unique_ptr<MpsSampler> mps;
    if (resolved == Backend::dense) {
        dense = std::make_unique<DenseSampler>(c, o.basis, zeros, seed);
    } else {
        mps_state = build_mps(c);
        mps = std::make_unique<MpsSampler>(mps_state, o.basis, seed);
    }

    TrialStats stats;
    stats.trials = trials;
    stats.seed = seed;
    stats.backend = backend_name(resolved);
    stats.exact = exact_expectation(c, o, zeros).value;
    const OverlapGraph g = overlap_graph(term_lightcones(c, o));
    stats.overlap_degree = g.max_degree;
    stats.bound = g.max_degree * observable_norm(o);
    stats.eps_grid = default_eps_grid();

    std::vector<double> ys(trials);
    parallel_for(trials, jobs, [&](std::size_t t) {
        const Shot shot = dense ? dense->sample(t) : mps->sample(t);
        ys[t] = estimate_value(shot, o);
    });

    double sum = 0.0;
    for (double y : ys) sum += y;
    stats.mean = sum / static_cast<double>(trials);
    if (trials > 1) {
        double ss = 0.0;
        for (double y : ys) ss += (y - stats.mean) * (y - stats.mean);
        stats.variance = ss / static_cast<double>(trials - 1);
    }
    stats.failure_rates.resize(stats.eps_grid.size(), 0.0);
    for (std::size_t e = 0; e < stats.eps_grid.size(); ++e) {
        std::size_t bad = 0;
        for (double y : ys)
            if (std::abs(y - stats.exact) >= stats.eps_grid[e]) ++bad;
        stats.failure_rates[e] =
            static_cast<double>(bad) / static_cast<double>(trials);
    }
    return stats;
}

}  // namespace onecopy
