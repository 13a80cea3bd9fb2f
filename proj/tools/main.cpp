#include <ctime>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "onecopy/analysis.hpp"
#include "onecopy/circuit.hpp"
#include "onecopy/estimator.hpp"
#include "onecopy/lightcone.hpp"
#include "onecopy/markov.hpp"
#include "onecopy/observable.hpp"
#include "onecopy/parallel.hpp"
#include "onecopy/rng.hpp"
#include "onecopy/serialize.hpp"
#include "onecopy/simulator.hpp"

namespace {

using nlohmann::json;
using namespace onecopy;

constexpr int schema_version = 1;

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// role -> path of each input file; hashed so outputs name their inputs
json provenance(const std::map<std::string, std::string>& inputs) {
    json in = json::object();
    for (const auto& [role, path] : inputs)
        in[role] = {{"path", path}, {"hash", file_hash_hex(path)}};
    return {{"inputs", std::move(in)}, {"timestamp", iso_timestamp()}};
}

void emit(json body, const std::map<std::string, std::string>& inputs) {
    body["schema_version"] = schema_version;
    body["provenance"].update(provenance(inputs));
    std::cout << body.dump(2) << "\n";
}

std::string csv_header() {
    std::string h = "n,depth,trials,backend,seed,exact,mean,variance,bound,overlap_degree";
    for (double eps : default_eps_grid()) h += ",fail_eps" + format_double(eps);
    return h;
}

std::string csv_row(const LayeredCircuit& c, const TrialStats& s) {
    std::string row = std::to_string(c.n) + "," + std::to_string(c.depth()) +
                      "," + std::to_string(s.trials) + "," + s.backend + "," +
                      std::to_string(s.seed) + "," + format_double(s.exact) +
                      "," + format_double(s.mean) + "," +
                      format_double(s.variance) + "," + format_double(s.bound) +
                      "," + std::to_string(s.overlap_degree);
    for (double r : s.failure_rates) row += "," + format_double(r);
    return row;
}

struct ValidateOpts {
    std::string circuit;
};

int run_validate(const ValidateOpts& o) {
    const LayeredCircuit c = load_circuit(o.circuit);
    const ValidationReport report = validate_circuit(c);
    if (report.ok()) {
        std::cout << "ok\n";
        return 0;
    }
    for (const Violation& v : report.violations)
        std::cout << v.kind << ": " << v.message << "\n";
    return 1;
}

struct ExpectOpts {
    std::string circuit, observable, input;
};

void run_expect(const ExpectOpts& o) {
    const LayeredCircuit c = load_circuit(o.circuit);
    const Observable obs = load_observable(o.observable);
    const std::string input = o.input.empty() ? std::string(c.n, '0') : o.input;
    const ExpectationBreakdown b = exact_expectation(c, obs, input);

    json terms = json::array();
    for (std::size_t i = 0; i < obs.terms.size(); ++i)
        terms.push_back({{"support", obs.terms[i].support},
                         {"coeff", obs.terms[i].coeff},
                         {"value", b.term_values[i]}});
    emit({{"value", b.value}, {"input", input}, {"terms", std::move(terms)}},
         {{"circuit", o.circuit}, {"observable", o.observable}});
}

struct EstimateOpts {
    std::string circuit, observable, backend = "auto";
    std::uint64_t seed = 0;
    std::int64_t trials = -1;
    int jobs = default_jobs();
};

void run_estimate(const EstimateOpts& o) {
    const LayeredCircuit c = load_circuit(o.circuit);
    const Observable obs = load_observable(o.observable);
    const Backend backend = resolve_backend(c, parse_backend(o.backend));

    if (o.trials >= 0) {
        if (o.trials < 1) throw DomainError("trials must be at least 1");
        const TrialStats stats = trial_harness(
            c, obs, static_cast<std::size_t>(o.trials), o.seed, backend, o.jobs);
        std::cout << csv_header() << "\n" << csv_row(c, stats) << "\n";
        return;
    }

    Shot shot;
    if (backend == Backend::dense) {
        shot = DenseSampler(c, obs.basis, std::string(c.n, '0'), o.seed).sample(0);
    } else {
        const MpsState state = build_mps(c);
        shot = MpsSampler(state, obs.basis, o.seed).sample(0);
    }
    EstimateReport report = single_copy_estimate(shot, obs);
    report.variance_bound = variance_bound(c, obs);
    report.overlap_degree = overlap_graph(term_lightcones(c, obs)).max_degree;
    for (double eps : default_eps_grid())
        report.confidence.emplace_back(eps, confidence(*report.variance_bound, eps));

    json conf = json::array();
    for (auto [eps, p] : report.confidence)
        conf.push_back({{"epsilon", eps}, {"failure_bound", p}});
    emit({{"estimate", report.estimate},
          {"term_values", report.term_values},
          {"variance_bound", *report.variance_bound},
          {"overlap_degree", *report.overlap_degree},
          {"confidence", std::move(conf)},
          {"provenance",
           {{"seed", o.seed},
            {"shot_index", report.shot_index},
            {"backend", backend_name(backend)},
            {"circuit_hash", hex64(circuit_fingerprint(c))}}}},
         {{"circuit", o.circuit}, {"observable", o.observable}});
}

struct SweepOpts {
    std::vector<int> ns;
    int depth = 2;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    int jobs = default_jobs();
};

void run_sweep(const SweepOpts& o) {
    if (o.ns.empty()) throw DomainError("no register sizes given");
    if (o.trials < 1) throw DomainError("trials must be at least 1");
    if (o.depth < 0) throw DomainError("depth must be nonnegative");

    std::cout << csv_header() << "\n";
    for (int n : o.ns) {
        const LayeredCircuit c = build_random_brickwork(
            n, o.depth, derive_seed(o.seed, {static_cast<std::uint64_t>(n), 0}));
        const TrialStats stats = trial_harness(
            c, mean_z(n), static_cast<std::size_t>(o.trials),
            derive_seed(o.seed, {static_cast<std::uint64_t>(n), 1}),
            Backend::autosel, o.jobs);
        std::cout << csv_row(c, stats) << "\n";
    }
}

struct DiscriminateOpts {
    std::string rho, sigma, observable;
    double epsilon = 0.0;
};

void run_discriminate(const DiscriminateOpts& o) {
    const LayeredCircuit rho = load_circuit(o.rho);
    const LayeredCircuit sigma = load_circuit(o.sigma);
    const Observable obs = load_observable(o.observable);
    const DiscriminationCertificate cert =
        trace_distance_lower_bound(rho, sigma, obs, o.epsilon);

    json body = {{"gap", cert.gap},
                 {"epsilon", cert.epsilon},
                 {"variance_bound_rho", cert.variance_bound_rho},
                 {"variance_bound_sigma", cert.variance_bound_sigma},
                 {"p_rho", cert.p_rho},
                 {"p_sigma", cert.p_sigma},
                 {"p_fail", cert.p_fail},
                 {"lower_bound", cert.lower_bound}};
    body["exact_trace_distance"] =
        cert.exact_trace_distance ? json(*cert.exact_trace_distance)
                                  : json(nullptr);
    emit(std::move(body), {{"rho", o.rho},
                           {"sigma", o.sigma},
                           {"observable", o.observable}});
}

struct DecideOpts {
    std::string circuit, input;
    bool table = false;
    int output_qubit = 0;
    int jobs = default_jobs();
};

void run_decide(const DecideOpts& o) {
    const LayeredCircuit c = load_circuit(o.circuit);
    if (o.table == !o.input.empty())
        throw DomainError("give exactly one of --input or --truth-table");

    if (o.table) {
        const auto rows = truth_table(c, 4096, o.jobs, o.output_qubit);
        std::cout << "input,p_zero,verdict\n";
        for (const auto& [input, d] : rows)
            std::cout << input << "," << format_double(d.p_zero) << ","
                      << verdict_name(d.verdict) << "\n";
        return;
    }

    const Decision d = decide(c, o.input, o.output_qubit);
    emit({{"input", o.input},
          {"output_qubit", o.output_qubit},
          {"p_zero", d.p_zero},
          {"verdict", verdict_name(d.verdict)},
          {"cone_qubits", d.cone_qubits},
          {"cone_gates", d.cone_gates}},
         {{"circuit", o.circuit}});
}

struct MarkovSampleOpts {
    std::string process, functional;
    std::uint64_t seed = 0;
    std::int64_t samples = 1;
};

void run_markov_sample(const MarkovSampleOpts& o) {
    const markov::MarkovProcess m = load_process(o.process);
    markov::validate_process(m);
    if (o.samples < 1) throw DomainError("samples must be at least 1");

    std::map<std::string, std::string> inputs{{"process", o.process}};
    json samples = json::array();
    json estimates = json::array();
    double mean = 0.0;

    markov::LinearFunctional f;
    const bool with_functional = !o.functional.empty();
    if (with_functional) {
        f = load_functional(o.functional);
        markov::validate_pair(m, f);
        inputs.emplace("functional", o.functional);
    }

    for (std::int64_t i = 0; i < o.samples; ++i) {
        const std::vector<int> x = markov::sample_process(
            m, derive_seed(o.seed, {static_cast<std::uint64_t>(i)}));
        samples.push_back(x);
        if (with_functional) {
            const double y = markov::single_sample_estimate(x, f);
            estimates.push_back(y);
            mean += y;
        }
    }

    json body = {{"samples", std::move(samples)},
                 {"provenance", {{"seed", o.seed}}}};
    if (with_functional) {
        body["estimates"] = std::move(estimates);
        body["mean_estimate"] = mean / static_cast<double>(o.samples);
    }
    emit(std::move(body), inputs);
}

struct MarkovExpectOpts {
    std::string process, functional;
};

void run_markov_expect(const MarkovExpectOpts& o) {
    const markov::MarkovProcess m = load_process(o.process);
    const markov::LinearFunctional f = load_functional(o.functional);
    const markov::FunctionalBreakdown b = markov::exact_functional(m, f);
    emit({{"value", b.value},
          {"term_values", b.term_values},
          {"variance_bound", markov::variance_bound(m, f)}},
         {{"process", o.process}, {"functional", o.functional}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-copy estimation toolkit for low-depth circuits"};
    app.require_subcommand(1);

    ValidateOpts vo;
    CLI::App* validate = app.add_subcommand("validate", "check a circuit file");
    validate->add_option("--circuit", vo.circuit, "circuit JSON")->required();

    ExpectOpts eo;
    CLI::App* expect =
        app.add_subcommand("expect", "exact observable expectation");
    expect->add_option("--circuit", eo.circuit, "circuit JSON")->required();
    expect->add_option("--observable", eo.observable, "observable JSON")->required();
    expect->add_option("--input", eo.input, "input bitstring, default all zeros");

    EstimateOpts so;
    CLI::App* estimate =
        app.add_subcommand("estimate", "single-copy estimate or trial harness");
    estimate->add_option("--circuit", so.circuit, "circuit JSON")->required();
    estimate->add_option("--observable", so.observable, "observable JSON")->required();
    estimate->add_option("--seed", so.seed, "base seed")->required();
    estimate->add_option("--backend", so.backend, "dense|mps|auto");
    estimate->add_option("--trials", so.trials, "repeat count, emits CSV");
    estimate->add_option("--jobs", so.jobs, "worker cap");

    SweepOpts wo;
    CLI::App* sweep = app.add_subcommand("sweep", "scaling run over register sizes");
    sweep->add_option("--ns", wo.ns, "register sizes")->required()->delimiter(',');
    sweep->add_option("--depth", wo.depth, "brickwork depth");
    sweep->add_option("--trials", wo.trials, "trials per size")->required();
    sweep->add_option("--seed", wo.seed, "base seed")->required();
    sweep->add_option("--jobs", wo.jobs, "worker cap");

    DiscriminateOpts dto;
    CLI::App* discriminate =
        app.add_subcommand("discriminate", "trace-distance lower bound");
    discriminate->add_option("--rho", dto.rho, "first circuit JSON")->required();
    discriminate->add_option("--sigma", dto.sigma, "second circuit JSON")->required();
    discriminate->add_option("--observable", dto.observable, "observable JSON")->required();
    discriminate->add_option("--epsilon", dto.epsilon, "separation scale")->required();

    DecideOpts dco;
    CLI::App* decide_cmd =
        app.add_subcommand("decide", "threshold decision on the output qubit");
    decide_cmd->add_option("--circuit", dco.circuit, "circuit JSON")->required();
    decide_cmd->add_option("--input", dco.input, "input bitstring");
    decide_cmd->add_flag("--truth-table", dco.table, "evaluate every input");
    decide_cmd->add_option("--output-qubit", dco.output_qubit, "decision qubit");
    decide_cmd->add_option("--jobs", dco.jobs, "worker cap");

    MarkovSampleOpts mso;
    CLI::App* msample = app.add_subcommand("markov-sample", "draw chain samples");
    msample->add_option("--process", mso.process, "process JSON")->required();
    msample->add_option("--functional", mso.functional, "functional JSON");
    msample->add_option("--seed", mso.seed, "base seed")->required();
    msample->add_option("--samples", mso.samples, "sample count")->required();

    MarkovExpectOpts meo;
    CLI::App* mexpect =
        app.add_subcommand("markov-expect", "exact functional expectation");
    mexpect->add_option("--process", meo.process, "process JSON")->required();
    mexpect->add_option("--functional", meo.functional, "functional JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed()) return run_validate(vo);
        if (expect->parsed()) run_expect(eo);
        if (estimate->parsed()) run_estimate(so);
        if (sweep->parsed()) run_sweep(wo);
        if (discriminate->parsed()) run_discriminate(dto);
        if (decide_cmd->parsed()) run_decide(dco);
        if (msample->parsed()) run_markov_sample(mso);
        if (mexpect->parsed()) run_markov_expect(meo);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
