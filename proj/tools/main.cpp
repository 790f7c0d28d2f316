#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtpa/config.hpp"
#include "mtpa/errors.hpp"
#include "mtpa/io.hpp"
#include "mtpa/models.hpp"
#include "mtpa/probe.hpp"
#include "mtpa/stats.hpp"
#include "mtpa/theory.hpp"

namespace {

using nlohmann::json;

// Round a value through the 12-digit artifact format so JSON reports and
// CSV files carry identical numbers.
double artifact_number(double v) { return mtpa::parse_number(mtpa::format_number(v)); }

json zeta_json(const std::vector<double>& zeta) {
    json arr = json::array();
    for (double z : zeta) arr.push_back(artifact_number(z));
    return arr;
}

json estimate_json(const mtpa::ProbeEstimate& e) {
    return json{{"value", artifact_number(e.value)},
                {"std_error", artifact_number(e.std_error)},
                {"hits", e.hits}};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string model_name(const mtpa::ModelSpec& spec) {
    return spec.kind == mtpa::ModelKind::BA ? "ba" : "ie";
}

bool same_initial(const mtpa::InitialConfig& a, const mtpa::InitialConfig& b) {
    if (a.vertex_count != b.vertex_count || a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i)
        if (a.edges[i].a != b.edges[i].a || a.edges[i].b != b.edges[i].b ||
            a.edges[i].type != b.edges[i].type)
            return false;
    return true;
}

std::string initial_descriptor(const mtpa::ModelSpec& spec) {
    if (same_initial(spec.initial, mtpa::InitialConfig::parallel_pair(spec.type_count)))
        return "parallel";
    if (same_initial(spec.initial, mtpa::InitialConfig::path(spec.type_count))) return "path";
    return "custom";
}

json spec_echo(const mtpa::ModelSpec& spec) {
    json j;
    j["model"] = model_name(spec);
    j["types"] = spec.type_count;
    j["steps"] = spec.steps;
    j["seed"] = spec.seed;
    if (spec.batch) j["batch"] = spec.batch->describe();
    if (spec.rate) j["rate"] = spec.rate->describe();
    j["initial"] = initial_descriptor(spec);
    j["census_cap"] = spec.census_cap;
    j["census_schedule"] = spec.census_schedule;
    return j;
}

// Collects the files a command emits and writes the companion manifest next
// to the first one. The wall clock is the only manifest field allowed to
// differ between identical runs; the data artifacts themselves are
// byte-stable.
class ArtifactRun {
public:
    ArtifactRun(std::string command, std::vector<std::string> argv)
        : start_(std::chrono::steady_clock::now()) {
        manifest_["command"] = std::move(command);
        manifest_["argv"] = std::move(argv);
        manifest_["outputs"] = json::array();
    }

    void set_config(const std::string& path) { manifest_["config"] = path; }
    void set_spec(json spec) { manifest_["spec"] = std::move(spec); }

    // anchors the manifest to the command's primary output even when other
    // artifacts (snapshots, checkpoints) are emitted first
    void set_primary(const std::string& path) { primary_ = path; }

    void emit(const std::string& path, const std::string& content) {
        mtpa::write_file(path, content);
        manifest_["outputs"].push_back(json{{"path", path},
                                            {"bytes", content.size()},
                                            {"fnv1a64", mtpa::fnv1a64_hex(content)}});
        if (primary_.empty()) primary_ = path;
    }

    void finish() {
        if (primary_.empty()) return;
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        manifest_["wall_clock_seconds"] = elapsed.count();
        mtpa::write_file(primary_ + ".manifest.json", manifest_.dump(2) + "\n");
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::string primary_;
    json manifest_;
};

std::uint64_t env_or_default_seed() {
    const char* env = std::getenv("MULTITYPE_PA_SEED");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    if (*env == '-') throw mtpa::ConfigError("MULTITYPE_PA_SEED must be an unsigned integer");
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0')
        throw mtpa::ConfigError("MULTITYPE_PA_SEED must be an unsigned integer");
    return v;
}

// --seed beats the config file, which beats MULTITYPE_PA_SEED, which beats
// the default of 1.
void resolve_seed(mtpa::ModelSpec& spec, bool config_had_seed,
                  const std::optional<std::uint64_t>& flag) {
    if (flag)
        spec.seed = *flag;
    else if (!config_had_seed)
        spec.seed = env_or_default_seed();
}

mtpa::LoadedSpec load_spec_file(const std::string& path) {
    return mtpa::load_model_spec(mtpa::parse_config(mtpa::read_file(path)));
}

std::string suffixed_path(const std::string& base, long step) {
    std::size_t slash = base.find_last_of('/');
    std::size_t dot = base.rfind('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return base + ".step" + std::to_string(step);
    return base.substr(0, dot) + ".step" + std::to_string(step) + base.substr(dot);
}

mtpa::MetaMap snapshot_meta(const mtpa::ModelSpec& spec, long step,
                            const std::vector<std::int64_t>& edge_counts) {
    mtpa::MetaMap meta;
    meta["model"] = model_name(spec);
    meta["steps"] = std::to_string(step);
    meta["seed"] = std::to_string(spec.seed);
    if (spec.batch) meta["batch"] = spec.batch->describe();
    if (spec.rate) meta["rate"] = spec.rate->describe();
    meta["initial"] = initial_descriptor(spec);
    std::string counts;
    for (std::size_t k = 0; k < edge_counts.size(); ++k) {
        if (k) counts += ';';
        counts += std::to_string(edge_counts[k]);
    }
    meta["edge_counts"] = counts;
    return meta;
}

struct SimulateOpts {
    std::string config_path;
    std::string out = "census.csv";
    std::optional<std::uint64_t> seed;
    std::optional<long> steps;
    std::optional<int> census_cap;
    std::string checkpoint_out;
};

void run_simulate(const SimulateOpts& opt, const std::vector<std::string>& argv) {
    ArtifactRun run("simulate", argv);
    run.set_primary(opt.out);
    auto loaded = load_spec_file(opt.config_path);
    mtpa::ModelSpec spec = std::move(loaded.spec);
    if (opt.steps) spec.steps = *opt.steps;
    if (opt.census_cap) spec.census_cap = *opt.census_cap;
    resolve_seed(spec, loaded.seed_present, opt.seed);
    spec.validate();
    run.set_config(opt.config_path);
    run.set_spec(spec_echo(spec));

    auto traj = mtpa::grow(spec);
    bool final_written = false;
    for (const auto& snap : traj.snapshots) {
        bool is_final = snap.step == spec.steps;
        std::string path = is_final ? opt.out : suffixed_path(opt.out, snap.step);
        run.emit(path, mtpa::census_csv(snap.census, spec.type_count,
                                        snapshot_meta(spec, snap.step, snap.edge_type_counts)));
        final_written = final_written || is_final;
    }
    if (!final_written)
        run.emit(opt.out,
                 mtpa::census_csv(traj.graph.degree_census(spec.census_cap), spec.type_count,
                                  snapshot_meta(spec, spec.steps, traj.graph.edge_type_counts())));
    if (!opt.checkpoint_out.empty())
        run.emit(opt.checkpoint_out, mtpa::checkpoint_json(traj.graph));
    run.finish();
}

struct TheoryOpts {
    std::string from_run;
    std::string model;
    int types = 0;
    std::vector<double> zeta;
    std::optional<int> m;
    std::string pmf;
    std::optional<double> tpoisson;
    std::optional<double> mu;
    std::string gamma;
    std::string uniform;
    std::optional<int> dmax;
    int marginal = 0;  // 1-based type index; 0 selects the joint table
    int lmax = 400;
    std::string out;
};

struct TheoryInputs {
    std::string model;
    std::optional<mtpa::BatchDistribution> batch;
    std::optional<mtpa::RateDistribution> rate;
    std::vector<double> zeta;
    std::optional<int> run_cap;  // census cap in --from-run mode
};

TheoryInputs theory_inputs(const TheoryOpts& opt) {
    TheoryInputs in;
    if (!opt.from_run.empty()) {
        if (!opt.model.empty() || opt.types != 0 || !opt.zeta.empty() || opt.m ||
            !opt.pmf.empty() || opt.tpoisson || opt.mu || !opt.gamma.empty() ||
            !opt.uniform.empty())
            throw mtpa::ConfigError("--from-run replaces the model, law, and zeta flags");
        auto file = mtpa::parse_census_csv(mtpa::read_file(opt.from_run));
        auto need = [&file](const char* key) -> const std::string& {
            auto it = file.meta.find(key);
            if (it == file.meta.end())
                throw std::runtime_error(std::string("census is missing metadata key ") + key);
            return it->second;
        };
        in.model = need("model");
        in.run_cap = file.census.cap;
        // Realized edge-type proportions, recovered exactly from the
        // integer edge counts the run recorded.
        std::vector<long long> counts;
        for (const std::string& token : split(need("edge_counts"), ';'))
            counts.push_back(std::stoll(token));
        if (counts.size() != static_cast<std::size_t>(file.type_count))
            throw std::runtime_error("census edge_counts width disagrees with its columns");
        long long total = 0;
        for (long long c : counts) total += c;
        if (total <= 0) throw std::runtime_error("census records no edges");
        for (long long c : counts)
            in.zeta.push_back(static_cast<double>(c) / static_cast<double>(total));
        if (in.model == "ba")
            in.batch = mtpa::BatchDistribution::parse(need("batch"));
        else if (in.model == "ie")
            in.rate = mtpa::RateDistribution::parse(need("rate"));
        else
            throw std::runtime_error("census has unknown model '" + in.model + "'");
        return in;
    }

    if (opt.model != "ba" && opt.model != "ie")
        throw mtpa::ConfigError("--model must be ba or ie (or use --from-run)");
    in.model = opt.model;
    if (opt.types < 1) throw mtpa::ConfigError("--types must be >= 1");
    if (opt.zeta.size() != static_cast<std::size_t>(opt.types))
        throw mtpa::ConfigError("--zeta needs exactly --types values");
    in.zeta = opt.zeta;
    int batch_flags = (opt.m ? 1 : 0) + (opt.pmf.empty() ? 0 : 1) + (opt.tpoisson ? 1 : 0);
    int rate_flags = (opt.mu ? 1 : 0) + (opt.gamma.empty() ? 0 : 1) + (opt.uniform.empty() ? 0 : 1);
    if (in.model == "ba") {
        if (rate_flags > 0) throw mtpa::ConfigError("rate flags do not apply to the ba model");
        if (batch_flags != 1)
            throw mtpa::ConfigError("the ba model needs exactly one of --m, --pmf, --tpoisson");
        if (opt.m)
            in.batch = mtpa::BatchDistribution::constant(*opt.m);
        else if (!opt.pmf.empty())
            in.batch = mtpa::BatchDistribution::parse("categorical:" + opt.pmf);
        else
            in.batch = mtpa::BatchDistribution::shifted_poisson(*opt.tpoisson);
    } else {
        if (batch_flags > 0) throw mtpa::ConfigError("batch flags do not apply to the ie model");
        if (rate_flags != 1)
            throw mtpa::ConfigError("the ie model needs exactly one of --mu, --gamma, --uniform");
        if (opt.mu)
            in.rate = mtpa::RateDistribution::constant(*opt.mu);
        else if (!opt.gamma.empty())
            in.rate = mtpa::RateDistribution::parse("gamma:" + opt.gamma);
        else
            in.rate = mtpa::RateDistribution::parse("uniform:" + opt.uniform);
    }
    return in;
}

void run_theory(const TheoryOpts& opt, const std::vector<std::string>& argv) {
    ArtifactRun run("theory", argv);
    auto in = theory_inputs(opt);

    mtpa::MetaMap meta;
    meta["model"] = in.model;
    if (in.batch) meta["batch"] = in.batch->describe();
    if (in.rate) meta["rate"] = in.rate->describe();

    std::string content;
    if (opt.marginal > 0) {
        if (opt.marginal > static_cast<int>(in.zeta.size()))
            throw mtpa::ConfigError("--marginal index out of range");
        double z = in.zeta[static_cast<std::size_t>(opt.marginal - 1)];
        auto values = in.batch ? mtpa::marginal_x_ba(*in.batch, z, opt.lmax)
                               : mtpa::marginal_x_ie(*in.rate, z, opt.lmax);
        meta["k"] = std::to_string(opt.marginal);
        meta["zeta_k"] = mtpa::format_number(z);
        content = mtpa::marginal_csv(values, std::move(meta));
    } else {
        // --from-run inherits the census cap so the pipeline's compare step
        // sees matching shapes without extra flags
        int cap = opt.dmax ? *opt.dmax : in.run_cap.value_or(64);
        mtpa::TheoryTable table = in.batch ? mtpa::BaTheory(*in.batch, in.zeta).table(cap)
                                           : mtpa::IeTheory(*in.rate, in.zeta).table(cap);
        content = mtpa::theory_csv(table, std::move(meta));
    }

    if (opt.out.empty()) {
        std::cout << content;
        return;
    }
    json echo;
    echo["model"] = in.model;
    echo["types"] = in.zeta.size();
    echo["zeta"] = zeta_json(in.zeta);
    if (in.batch) echo["batch"] = in.batch->describe();
    if (in.rate) echo["rate"] = in.rate->describe();
    run.set_spec(std::move(echo));
    run.emit(opt.out, content);
    run.finish();
}

struct CompareOpts {
    std::string census;
    std::string theory;
    std::string out;
};

void run_compare(const CompareOpts& opt, const std::vector<std::string>& argv) {
    ArtifactRun run("compare", argv);
    auto census = mtpa::parse_census_csv(mtpa::read_file(opt.census));
    auto theory = mtpa::parse_theory_csv(mtpa::read_file(opt.theory));
    if (census.type_count != theory.table.type_count)
        throw std::runtime_error("census and theory disagree on the number of types");
    auto report = mtpa::compare(census.census, theory.table);

    json j;
    json spec;
    for (const char* key : {"model", "batch", "rate", "initial"})
        if (auto it = census.meta.find(key); it != census.meta.end()) spec[it->first] = it->second;
    spec["types"] = census.type_count;
    j["spec"] = std::move(spec);
    if (auto it = census.meta.find("steps"); it != census.meta.end())
        j["n"] = std::stoll(it->second);
    if (auto it = census.meta.find("seed"); it != census.meta.end())
        j["seed"] = std::stoull(it->second);
    j["cap"] = report.cap;
    j["sup_distance"] = artifact_number(report.sup_distance);
    j["tv_partial"] = artifact_number(report.tv_partial);
    j["ignored_mass"] = json{{"empirical", artifact_number(report.ignored_mass_empirical)},
                             {"theory", artifact_number(report.ignored_mass_theory)}};
    j["zeta"] = zeta_json(report.zeta);

    std::string content = j.dump(2) + "\n";
    std::cout << content;
    if (!opt.out.empty()) {
        run.emit(opt.out, content);
        run.finish();
    }
}

struct EnsembleCliOpts {
    std::string config_path;
    int replicas = 0;
    int jobs = 1;
    int compare_cap = -1;
    bool dirichlet = false;
    std::optional<std::uint64_t> seed;
    std::string out = "ensemble.json";
    std::string zeta_out;
};

std::string default_zeta_path(const std::string& out) {
    if (out.ends_with(".json")) return out.substr(0, out.size() - 5) + ".zeta.csv";
    return out + ".zeta.csv";
}

void run_ensemble(const EnsembleCliOpts& opt, const std::vector<std::string>& argv) {
    ArtifactRun run("ensemble", argv);
    auto loaded = load_spec_file(opt.config_path);
    mtpa::ModelSpec spec = std::move(loaded.spec);
    resolve_seed(spec, loaded.seed_present, opt.seed);
    spec.validate();
    if (opt.replicas < 1) throw mtpa::ConfigError("--replicas must be >= 1");
    if (opt.jobs < 1) throw mtpa::ConfigError("--jobs must be >= 1");
    run.set_config(opt.config_path);
    run.set_spec(spec_echo(spec));

    mtpa::EnsembleOptions options;
    options.parallelism = opt.jobs;
    options.compare_cap = opt.compare_cap;
    auto result = mtpa::ensemble_run(spec, opt.replicas, options);

    json j;
    j["spec"] = spec_echo(spec);
    j["replicas"] = opt.replicas;
    json runs = json::array();
    for (const auto& r : result.replicas) {
        json rj;
        rj["replica"] = r.replica;
        rj["zeta"] = zeta_json(r.zeta);
        rj["edges_per_step"] = artifact_number(r.edges_per_step);
        if (r.comparison) {
            const auto& c = *r.comparison;
            rj["comparison"] =
                json{{"cap", c.cap},
                     {"sup_distance", artifact_number(c.sup_distance)},
                     {"tv_partial", artifact_number(c.tv_partial)},
                     {"ignored_mass", json{{"empirical", artifact_number(c.ignored_mass_empirical)},
                                           {"theory", artifact_number(c.ignored_mass_theory)}}}};
        }
        runs.push_back(std::move(rj));
    }
    j["runs"] = std::move(runs);
    j["aggregate"] = json{{"zeta_mean", zeta_json(result.zeta_mean)},
                          {"zeta_std_error", zeta_json(result.zeta_std_error)},
                          {"edges_per_step_mean", artifact_number(result.edges_per_step_mean)}};
    if (opt.dirichlet) {
        std::vector<std::int64_t> e0(static_cast<std::size_t>(spec.type_count), 0);
        for (const auto& e : spec.initial.edges) ++e0[static_cast<std::size_t>(e.type)];
        std::vector<std::vector<double>> rows;
        rows.reserve(result.replicas.size());
        for (const auto& r : result.replicas) rows.push_back(r.zeta);
        auto tests = mtpa::dirichlet_marginal_test(rows, e0);
        json dir = json::array();
        for (std::size_t k = 0; k < tests.size(); ++k)
            dir.push_back(json{{"type", k + 1},
                               {"statistic", artifact_number(tests[k].statistic)},
                               {"p_value", artifact_number(tests[k].p_value)},
                               {"samples", tests[k].samples}});
        j["dirichlet"] = std::move(dir);
    }
    run.emit(opt.out, j.dump(2) + "\n");

    std::string zeta_path = opt.zeta_out.empty() ? default_zeta_path(opt.out) : opt.zeta_out;
    std::string table = "# replicas=" + std::to_string(opt.replicas) +
                        " seed=" + std::to_string(spec.seed) + "\n";
    table += "replica";
    for (int k = 1; k <= spec.type_count; ++k) table += ",zeta_" + std::to_string(k);
    table += '\n';
    for (const auto& r : result.replicas) {
        table += std::to_string(r.replica);
        for (double z : r.zeta) table += ',' + mtpa::format_number(z);
        table += '\n';
    }
    run.emit(zeta_path, table);
    run.finish();
}

struct ProbeOpts {
    std::string checkpoint;
    std::string config_path;
    std::vector<int> d;
    std::int64_t samples = 100000;
    std::optional<std::uint64_t> seed;
    std::string out;
};

void run_probe(const ProbeOpts& opt, const std::vector<std::string>& argv) {
    ArtifactRun run("probe", argv);
    auto loaded = load_spec_file(opt.config_path);
    mtpa::ModelSpec spec = std::move(loaded.spec);
    resolve_seed(spec, loaded.seed_present, opt.seed);
    spec.validate();
    if (opt.samples < 1) throw mtpa::ConfigError("--samples must be >= 1");
    if (opt.d.size() != static_cast<std::size_t>(spec.type_count))
        throw mtpa::ConfigError("--d needs one coordinate per type");
    for (int c : opt.d)
        if (c < 0) throw mtpa::ConfigError("--d coordinates must be >= 0");
    run.set_config(opt.config_path);
    run.set_spec(spec_echo(spec));

    auto graph = mtpa::parse_checkpoint_json(mtpa::read_file(opt.checkpoint));
    if (graph.type_count() != spec.type_count)
        throw std::runtime_error("checkpoint type count disagrees with the config");

    // dedicated stream far above the ensemble replica range
    mtpa::RngStream rng(spec.seed, std::uint64_t{1} << 32);
    auto report =
        mtpa::probe_assumptions(graph, spec, mtpa::GeneralizedDegree(opt.d), opt.samples, rng);

    json j;
    j["spec"] = spec_echo(spec);
    j["checkpoint"] = opt.checkpoint;
    j["d"] = opt.d;
    j["scale_n"] = report.scale_n;
    j["samples"] = report.samples;
    j["augmented"] = report.augmented;
    j["u_hat"] = estimate_json(report.u_hat);
    json r_arr = json::array();
    for (const auto& r : report.r_hat) r_arr.push_back(r ? estimate_json(*r) : json(nullptr));
    j["r_hat"] = std::move(r_arr);
    j["q_hat"] = estimate_json(report.q_hat);
    j["multi_hat"] = estimate_json(report.multi_hat);

    std::string content = j.dump(2) + "\n";
    std::cout << content;
    if (!opt.out.empty()) {
        run.emit(opt.out, content);
        run.finish();
    }
}

struct FitTailOpts {
    std::string series;
    double lmin = 0.0;
    double lmax = 0.0;
    std::string out;
};

void run_fit_tail(const FitTailOpts& opt, const std::vector<std::string>& argv) {
    ArtifactRun run("fit-tail", argv);
    auto file = mtpa::parse_series_csv(mtpa::read_file(opt.series));
    auto fit = mtpa::fit_tail_exponent(file.points, opt.lmin, opt.lmax);

    json j;
    j["series"] = opt.series;
    j["l_min"] = opt.lmin;
    j["l_max"] = opt.lmax;
    j["points"] = fit.points;
    j["slope"] = artifact_number(fit.slope);
    j["intercept"] = artifact_number(fit.intercept);
    j["slope_std_error"] = artifact_number(fit.slope_std_error);

    std::string content = j.dump(2) + "\n";
    std::cout << content;
    if (!opt.out.empty()) {
        run.emit(opt.out, content);
        run.finish();
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"Growth and limit analysis for randomly typed preferential attachment graphs"};
    app.require_subcommand(1);

    SimulateOpts sim_opt;
    auto* sim = app.add_subcommand("simulate", "Grow a graph and write census CSVs");
    sim->add_option("--config", sim_opt.config_path, "Model config file")->required();
    sim->add_option("--out", sim_opt.out, "Census CSV path (default census.csv)");
    sim->add_option("--seed", sim_opt.seed, "Override the rng seed");
    sim->add_option("--steps", sim_opt.steps, "Override the number of growth steps");
    sim->add_option("--census-cap", sim_opt.census_cap, "Override the census cap");
    sim->add_option("--checkpoint-out", sim_opt.checkpoint_out,
                    "Also write the final graph state as JSON");
    sim->callback([&] { run_simulate(sim_opt, args); });

    TheoryOpts th_opt;
    auto* th = app.add_subcommand("theory", "Tabulate the asymptotic degree distribution");
    th->add_option("--from-run", th_opt.from_run,
                   "Take model, law, and realized zeta from a census CSV");
    th->add_option("--model", th_opt.model, "ba or ie");
    th->add_option("--types", th_opt.types, "Number of edge types");
    th->add_option("--zeta", th_opt.zeta, "Comma-separated edge-type proportions")
        ->delimiter(',');
    th->add_option("--m", th_opt.m, "Constant batch size (ba)");
    th->add_option("--pmf", th_opt.pmf, "Batch pmf as value:prob;value:prob (ba)");
    th->add_option("--tpoisson", th_opt.tpoisson, "1 + Poisson(rate) batch law (ba)");
    th->add_option("--mu", th_opt.mu, "Constant rate (ie)");
    th->add_option("--gamma", th_opt.gamma, "Gamma rate as shape,scale (ie)");
    th->add_option("--uniform", th_opt.uniform, "Uniform rate as a,b (ie)");
    th->add_option("--dmax", th_opt.dmax, "Joint table cap on the total degree");
    th->add_option("--marginal", th_opt.marginal, "Emit the marginal for this 1-based type");
    th->add_option("--lmax", th_opt.lmax, "Last marginal degree");
    th->add_option("--out", th_opt.out, "Output CSV path (default: stdout)");
    th->callback([&] { run_theory(th_opt, args); });

    CompareOpts cmp_opt;
    auto* cmp = app.add_subcommand("compare", "Join a census CSV with a theory CSV");
    cmp->add_option("census", cmp_opt.census, "Census CSV from simulate")->required();
    cmp->add_option("theory", cmp_opt.theory, "Theory CSV from theory")->required();
    cmp->add_option("--out", cmp_opt.out, "Report JSON path (default: stdout only)");
    cmp->callback([&] { run_compare(cmp_opt, args); });

    EnsembleCliOpts ens_opt;
    auto* ens = app.add_subcommand("ensemble", "Run independent replicas of a config");
    ens->add_option("--config", ens_opt.config_path, "Model config file")->required();
    ens->add_option("--replicas", ens_opt.replicas, "Number of replicas")->required();
    ens->add_option("--jobs", ens_opt.jobs, "Worker threads");
    ens->add_option("--compare-cap", ens_opt.compare_cap,
                    "Compare each replica against theory at its realized zeta, up to this cap");
    ens->add_flag("--dirichlet", ens_opt.dirichlet,
                  "KS-test replica zetas against the Dirichlet marginals of the seed graph");
    ens->add_option("--seed", ens_opt.seed, "Override the rng seed");
    ens->add_option("--out", ens_opt.out, "Summary JSON path (default ensemble.json)");
    ens->add_option("--zeta-out", ens_opt.zeta_out, "Per-replica zeta CSV path");
    ens->callback([&] { run_ensemble(ens_opt, args); });

    ProbeOpts probe_opt;
    auto* probe = app.add_subcommand("probe", "Estimate one-step attachment coefficients");
    probe->add_option("--checkpoint", probe_opt.checkpoint, "Graph checkpoint JSON")->required();
    probe->add_option("--config", probe_opt.config_path, "Model config file")->required();
    probe->add_option("--d", probe_opt.d, "Generalized degree, comma-separated")
        ->required()
        ->delimiter(',');
    probe->add_option("--samples", probe_opt.samples, "Monte-Carlo sample count");
    probe->add_option("--seed", probe_opt.seed, "Override the rng seed");
    probe->add_option("--out", probe_opt.out, "Report JSON path (default: stdout only)");
    probe->callback([&] { run_probe(probe_opt, args); });

    FitTailOpts fit_opt;
    auto* fit = app.add_subcommand("fit-tail", "Fit a power-law exponent from an (l, value) CSV");
    fit->add_option("series", fit_opt.series, "Series CSV")->required();
    fit->add_option("--lmin", fit_opt.lmin, "Lower end of the fit window")->required();
    fit->add_option("--lmax", fit_opt.lmax, "Upper end of the fit window")->required();
    fit->add_option("--out", fit_opt.out, "Fit JSON path (default: stdout only)");
    fit->callback([&] { run_fit_tail(fit_opt, args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mtpa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
