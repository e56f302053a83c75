#include <chrono>
#include <fstream>
#include <set>

#include "dwc/cli.hpp"

namespace dwc {

using nlohmann::json;

StabilizationPolicy PolicyOverrides::resolve(std::size_t nvars, int m) const
{
    auto p = StabilizationPolicy::defaults(nvars, m);
    if (step) p.step = *step;
    if (initial_bound) p.initial_bound = *initial_bound;
    p.max_bound = max_bound ? *max_bound : p.initial_bound + 6 * p.step;
    p.lag = lag ? *lag : p.step;
    p.validate();
    return p;
}

namespace {

const std::set<std::string> kCommands = {"hodge", "dwork",      "affine",  "strands", "koszul", "fourier",
                                         "ts",    "suspension", "compare", "gm",      "verify"};

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out)
{
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <class T>
void read(const json& j, const char* key, T& out)
{
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

}  // namespace

Job Job::from_json(const json& j)
{
    static const std::set<std::string> known = {"command", "polynomial", "polynomials", "variables", "weights",
                                                "strand", "policy", "bound", "r", "force_truncation",
                                                "perturbation", "basis", "samples", "directory", "output"};
    if (!j.is_object()) throw InputError("job must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (!known.count(k)) throw InputError("unknown job field '" + k + "'");
    }
    Job job;
    try {
        read(j, "command", job.command);
        read(j, "polynomial", job.polynomial);
        read(j, "polynomials", job.polynomials);
        read(j, "variables", job.variables);
        read(j, "weights", job.weights);
        read_opt(j, "strand", job.strand);
        read_opt(j, "bound", job.bound);
        read(j, "r", job.r);
        read(j, "force_truncation", job.force_truncation);
        read(j, "perturbation", job.perturbation);
        read(j, "basis", job.basis);
        read(j, "samples", job.samples);
        read(j, "directory", job.directory);
        read(j, "output", job.output);
        if (j.contains("policy")) {
            const auto& p = j.at("policy");
            if (!p.is_object()) throw InputError("policy must be an object");
            for (const auto& [k, v] : p.items()) {
                if (k != "initial_bound" && k != "step" && k != "max_bound" && k != "lag") {
                    throw InputError("unknown policy field '" + k + "'");
                }
            }
            read_opt(p, "initial_bound", job.policy.initial_bound);
            read_opt(p, "step", job.policy.step);
            read_opt(p, "max_bound", job.policy.max_bound);
            read_opt(p, "lag", job.policy.lag);
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed job: ") + e.what());
    }
    if (!kCommands.count(job.command)) throw InputError("unknown command '" + job.command + "'");
    for (auto* v : {&job.policy.initial_bound, &job.policy.max_bound, &job.policy.lag}) {
        if (*v && **v < 0) throw InputError("policy bounds must be nonnegative");
    }
    if (job.policy.step && *job.policy.step < 1) throw InputError("policy step must be positive");
    return job;
}

json Job::to_json() const
{
    json j;
    j["command"] = command;
    if (!polynomial.empty()) j["polynomial"] = polynomial;
    if (!polynomials.empty()) j["polynomials"] = polynomials;
    if (!variables.empty()) j["variables"] = variables;
    if (!weights.empty()) j["weights"] = weights;
    if (strand) j["strand"] = *strand;
    if (!policy.empty()) {
        json p = json::object();
        if (policy.initial_bound) p["initial_bound"] = *policy.initial_bound;
        if (policy.step) p["step"] = *policy.step;
        if (policy.max_bound) p["max_bound"] = *policy.max_bound;
        if (policy.lag) p["lag"] = *policy.lag;
        j["policy"] = p;
    }
    if (bound) j["bound"] = *bound;
    if (command == "fourier") j["r"] = r;
    if (force_truncation) j["force_truncation"] = true;
    if (!perturbation.empty()) j["perturbation"] = perturbation;
    if (!basis.empty()) j["basis"] = basis;
    if (!samples.empty()) j["samples"] = samples;
    if (!directory.empty()) j["directory"] = directory;
    if (!output.empty()) j["output"] = output;
    return j;
}

json report_to_json(const CohomologyReport& rep)
{
    json j;
    j["input"] = rep.input;
    j["kind"] = rep.kind;
    j["m"] = rep.m;
    j["nvars"] = rep.nvars;
    j["weights"] = rep.weights;
    j["strand"] = rep.strand ? json(*rep.strand) : json(nullptr);
    j["modulus"] = rep.modulus;
    j["path"] = to_string(rep.path);
    j["dims"] = json::array();
    j["dims_by_label"] = json::object();
    for (const auto& d : rep.dims) {
        j["dims"].push_back({{"degree", d.degree}, {"key", d.key}, {"paper_label", d.label}, {"dim", d.dim}});
        j["dims_by_label"][d.key] = d.dim;
    }
    if (rep.certificate) {
        j["certificate"] = {{"bounds", rep.certificate->bounds},
                            {"lag", rep.certificate->lag},
                            {"agreed", rep.certificate->agreed}};
    } else {
        j["certificate"] = nullptr;
    }
    j["exact"] = rep.path == ComputationPath::Jacobian;
    j["checks"] = json::array();
    for (const auto& c : rep.checks) {
        j["checks"].push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
    }
    return j;
}

json verdict_to_json(const Verdict& v)
{
    json j;
    j["name"] = v.name;
    j["pass"] = v.pass();
    j["checks"] = json::array();
    for (const auto& c : v.checks) {
        j["checks"].push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
    }
    j["reports"] = json::array();
    for (const auto& r : v.reports) j["reports"].push_back(report_to_json(r));
    return j;
}

void write_report(const json& report, const std::filesystem::path& path)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw InputError("cannot write report to " + path.string());
        os << report.dump(2) << '\n';
        if (!os) throw InputError("failed writing report to " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

struct Context {
    const Job& job;
    std::vector<std::string> vars;
    PipelineOptions opt;
};

std::vector<std::string> variables_for(const Job& job, const std::vector<std::string>& texts)
{
    if (!job.variables.empty()) return job.variables;
    std::string all;
    for (const auto& t : texts) all += t + " ";
    auto v = infer_variables(all);
    if (v.empty()) throw InputError("no variables given and none found in the polynomial");
    return v;
}

Polynomial<Rational> parse(const Context& ctx, const std::string& text, const char* what)
{
    if (text.empty()) throw InputError(std::string("job is missing '") + what + "'");
    return parse_polynomial(text, ctx.vars);
}

int step_of(const Polynomial<Rational>& f, const std::vector<int>& weights)
{
    int d = weights.empty() ? f.total_degree() : f.max_weighted_degree(weights);
    return std::max(1, d);
}

void set_policy(Context& ctx, std::size_t nvars, int m)
{
    if (!ctx.job.policy.empty()) ctx.opt.policy = ctx.job.policy.resolve(nvars, m);
}

void merge_report(json& out, const CohomologyReport& rep, const std::vector<std::string>& vars)
{
    auto j = report_to_json(rep);
    for (auto& [k, v] : j.items()) out[k] = v;
    out["variables"] = vars;
}

int stability_code(const std::vector<CohomologyReport>& reps)
{
    for (const auto& r : reps) {
        if (!r.stabilized()) return kExitUnstabilized;
    }
    return kExitOk;
}

int verdict_code(const Verdict& v)
{
    if (int c = stability_code(v.reports)) return c;
    return v.pass() ? kExitOk : kExitCheckFailed;
}

std::string poly_string(const Polynomial<Rational>& f, const std::vector<std::string>& vars)
{
    return f.to_string(vars);
}

int run_hodge(Context& ctx, json& out)
{
    auto f = parse(ctx, ctx.job.polynomial, "polynomial");
    auto p = jacobian_hilbert(f, ctx.opt.exec);
    out["input"] = poly_string(f, ctx.vars);
    out["variables"] = ctx.vars;
    out["m"] = p.m;
    out["nvars"] = p.nvars;
    out["path"] = "jacobian";
    out["hilbert"] = p.hilbert;
    out["smooth"] = p.smooth;
    if (!p.smooth) {
        out["error"] = {{"kind", "not_smooth"}, {"message", "Jacobian ring is infinite-dimensional"}};
        return kExitNotSmooth;
    }
    out["milnor"] = p.milnor;
    out["socle_degree"] = p.socle_degree;
    json hodge = json::array();
    json by_label = json::object();
    for (const auto& h : primitive_hodge_numbers(p)) {
        hodge.push_back({{"q", h.q}, {"h", h.h}});
        by_label["h" + std::to_string(h.q)] = h.h;
    }
    out["hodge"] = hodge;
    out["dims_by_label"] = by_label;

    std::vector<Check> checks;
    bool symmetric = true;
    for (int d = 0; d <= p.socle_degree; ++d) symmetric = symmetric && p.h(d) == p.h(p.socle_degree - d);
    checks.push_back(make_check("Gorenstein symmetry h_d = h_(sigma-d)", symmetric ? "symmetric" : "asymmetric", "symmetric"));
    std::size_t mu = 1;
    for (std::size_t i = 0; i < p.nvars; ++i) mu *= static_cast<std::size_t>(p.m - 1);
    checks.push_back(make_check("milnor = (m-1)^(n+1)", p.milnor, mu));
    out["checks"] = json::array();
    bool pass = true;
    for (const auto& c : checks) {
        out["checks"].push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
        pass = pass && c.pass;
    }
    return pass ? kExitOk : kExitCheckFailed;
}

int run_verdict(const Verdict& v, json& out)
{
    auto j = verdict_to_json(v);
    for (auto& [k, val] : j.items()) out[k] = val;
    return verdict_code(v);
}

int run_gm(Context& ctx, json& out)
{
    Family fam{parse(ctx, ctx.job.polynomial, "polynomial"), parse(ctx, ctx.job.perturbation, "perturbation")};
    std::optional<std::vector<Polynomial<Rational>>> basis;
    if (!ctx.job.basis.empty()) {
        basis.emplace();
        for (const auto& b : ctx.job.basis) basis->push_back(parse(ctx, b, "basis"));
    }
    auto cm = family_connection_matrix(fam, basis, ctx.opt.exec);
    out["input"] = poly_string(fam.base, ctx.vars) + " + t*(" + poly_string(fam.perturbation, ctx.vars) + ")";
    out["variables"] = ctx.vars;
    out["m"] = fam.degree();
    out["nvars"] = fam.nvars();
    out["path"] = "reduction";
    out["window_level"] = cm.window_level;
    out["basis"] = json::array();
    for (const auto& b : cm.basis) out["basis"].push_back(poly_string(b, ctx.vars));
    out["matrix"] = json::array();
    for (const auto& row : cm.entries) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.to_string());
        out["matrix"].push_back(r);
    }
    out["discriminant"] = discriminant_polynomial(cm).to_string();
    if (ctx.job.samples.empty()) return kExitOk;
    std::vector<Rational> samples;
    for (const auto& s : ctx.job.samples) samples.push_back(parse_rational(s));
    auto v = connection_properties_check(fam, samples, cm.basis, 20240601, ctx.opt.exec);
    out["checks"] = verdict_to_json(v)["checks"];
    out["pass"] = v.pass();
    return v.pass() ? kExitOk : kExitCheckFailed;
}

int dispatch(const Job& job, json& out)
{
    Context ctx{job, {}, {}};
    ctx.opt.force_truncation = job.force_truncation;
    const auto& cmd = job.command;

    if (cmd == "verify") {
        if (job.directory.empty()) throw InputError("verify needs a directory");
        auto summary = corpus_runner(job.directory);
        json entries = json::array();
        for (const auto& e : summary.entries) {
            entries.push_back({{"name", e.name}, {"status", e.status}, {"details", e.details}});
        }
        out["corpus"] = entries;
        out["passed"] = summary.passed();
        out["mismatches"] = summary.mismatches();
        out["infra_failures"] = summary.infra_failures();
        return summary.exit_code();
    }
    if (cmd == "fourier") {
        set_policy(ctx, 2 * static_cast<std::size_t>(std::max(job.r, 1)), 2);
        return run_verdict(fourier_lemma_check(job.r, job.bound, ctx.opt), out);
    }
    if (cmd == "koszul") {
        std::vector<std::string> texts = job.polynomials;
        if (texts.empty() && !job.polynomial.empty()) texts.push_back(job.polynomial);
        if (texts.empty()) throw InputError("koszul needs 'polynomials'");
        ctx.vars = variables_for(job, texts);
        std::vector<Polynomial<Rational>> fs;
        for (const auto& t : texts) fs.push_back(parse_polynomial(t, ctx.vars));
        int step = 1;
        for (const auto& f : fs) step = std::max(step, f.total_degree() + 1);
        set_policy(ctx, fs.front().nvars() + fs.size(), step);
        auto rep = ci_dwork_koszul(fs, job.bound, ctx.opt);
        merge_report(out, rep, ctx.vars);
        out["equations"] = json::array();
        for (const auto& f : fs) out["equations"].push_back(poly_string(f, ctx.vars));
        return stability_code({rep});
    }

    std::vector<std::string> texts = {job.polynomial};
    if (cmd == "gm") {
        texts.push_back(job.perturbation);
        texts.insert(texts.end(), job.basis.begin(), job.basis.end());
    }
    ctx.vars = variables_for(job, texts);
    if (cmd == "gm") return run_gm(ctx, out);
    if (cmd == "hodge") return run_hodge(ctx, out);

    auto f = parse(ctx, job.polynomial, "polynomial");
    set_policy(ctx, f.nvars(), step_of(f, job.weights));
    if (cmd == "dwork") {
        auto rep = primitive_dwork_cohomology(f, ctx.opt);
        rep.input = poly_string(f, ctx.vars);
        merge_report(out, rep, ctx.vars);
        return stability_code({rep});
    }
    if (cmd == "affine") {
        auto rep = affine_twisted_cohomology(f, job.weights, ctx.opt);
        rep.input = poly_string(f, ctx.vars);
        merge_report(out, rep, ctx.vars);
        return stability_code({rep});
    }
    if (cmd == "strands") {
        auto reps = strand_decomposition(f, ctx.opt);
        if (job.strand) {
            if (*job.strand < 0 || *job.strand >= static_cast<int>(reps.size())) throw InputError("strand out of range");
            reps = {reps[static_cast<std::size_t>(*job.strand)]};
        }
        out["input"] = poly_string(f, ctx.vars);
        out["variables"] = ctx.vars;
        out["reports"] = json::array();
        out["dims_by_label"] = json::object();
        for (auto& r : reps) {
            r.input = poly_string(f, ctx.vars);
            auto j = report_to_json(r);
            for (auto& [k, v] : j["dims_by_label"].items()) out["dims_by_label"][k] = v;
            out["reports"].push_back(j);
        }
        return stability_code(reps);
    }
    out["input"] = poly_string(f, ctx.vars);
    out["variables"] = ctx.vars;
    if (cmd == "ts") return run_verdict(thom_sebastiani_check(f, ctx.opt), out);
    if (cmd == "suspension") return run_verdict(suspension_check(f, ctx.opt), out);
    if (cmd == "compare") return run_verdict(compare_smooth_paths(f, ctx.opt), out);
    throw InputError("unknown command '" + cmd + "'");
}

json error_json(const char* kind, const std::exception& e)
{
    return {{"kind", kind}, {"message", e.what()}};
}

}  // namespace

JobResult run_job(const Job& job)
{
    auto start = std::chrono::steady_clock::now();
    JobResult res;
    json& out = res.report;
    out["engine_version"] = kEngineVersion;
    out["command"] = job.command;
    out["job"] = job.to_json();
    try {
        res.exit_code = dispatch(job, out);
    } catch (const ParseError& e) {
        out["error"] = error_json("parse", e);
        out["error"]["position"] = e.position();
        res.exit_code = kExitInput;
    } catch (const InputError& e) {
        out["error"] = error_json("input", e);
        res.exit_code = kExitInput;
    } catch (const Unstabilized& e) {
        out["error"] = error_json("unstabilized", e);
        res.exit_code = kExitUnstabilized;
    } catch (const NotSmooth& e) {
        out["error"] = error_json("not_smooth", e);
        res.exit_code = kExitNotSmooth;
    } catch (const DiscriminantError& e) {
        out["error"] = error_json("discriminant", e);
        res.exit_code = kExitInput;
    } catch (const Error& e) {
        out["error"] = error_json("internal", e);
        res.exit_code = kExitInput;
    } catch (const json::exception& e) {
        out["error"] = error_json("input", e);
        res.exit_code = kExitInput;
    }
    out["exit_code"] = res.exit_code;
    out["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!job.output.empty()) write_report(out, job.output);
    return res;
}

}  // namespace dwc
