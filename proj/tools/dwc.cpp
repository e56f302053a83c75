// dwc: twisted de Rham cohomology of hypersurfaces from the command line.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dwc/cli.hpp"
#include "dwc/exec.hpp"

namespace {

struct Flags {
    std::string vars;
    std::vector<int> weights;
    std::optional<int> strand;
    std::optional<int> initial_bound, step, max_bound, lag, bound;
    bool force = false;
    std::string output;
};

std::vector<std::string> split_vars(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void add_common(CLI::App* sub, Flags& f, bool policy = true)
{
    sub->add_option("--vars", f.vars, "Comma-separated variable names (default: inferred)");
    sub->add_option("-o,--output", f.output, "Also write the JSON report to this file");
    if (!policy) return;
    sub->add_flag("--force-truncation", f.force, "Use staircase truncation even for smooth input");
    sub->add_option("--initial-bound", f.initial_bound, "First staircase level");
    sub->add_option("--step", f.step, "Level increment");
    sub->add_option("--max-bound", f.max_bound, "Last staircase level");
    sub->add_option("--lag", f.lag, "How far past each level coboundaries are sought");
}

dwc::Job to_job(const std::string& command, const Flags& f)
{
    dwc::Job job;
    job.command = command;
    job.variables = split_vars(f.vars);
    job.weights = f.weights;
    job.strand = f.strand;
    job.policy = {f.initial_bound, f.step, f.max_bound, f.lag};
    job.bound = f.bound;
    job.force_truncation = f.force;
    job.output = f.output;
    return job;
}

int emit(const dwc::JobResult& res)
{
    std::cout << res.report.dump(2) << '\n';
    if (res.report.contains("error")) std::cerr << "dwc: " << res.report["error"]["message"].get<std::string>() << '\n';
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv)
{
    dwc::configure_threads_from_env();
    CLI::App app{"Twisted de Rham cohomology of hypersurfaces (exact arithmetic)"};
    app.require_subcommand(1);
    Flags f;
    std::string poly, perturbation, dir, job_file;
    std::vector<std::string> polys, basis, samples;
    int r = 1;

    auto* hodge = app.add_subcommand("hodge", "Jacobian ring, Milnor number and primitive Hodge numbers");
    hodge->add_option("polynomial", poly)->required();
    add_common(hodge, f, false);

    auto* dwork = app.add_subcommand("dwork", "Primitive cohomology of a projective hypersurface");
    dwork->add_option("polynomial", poly)->required();
    add_common(dwork, f);

    auto* affine = app.add_subcommand("affine", "Twisted cohomology of A^N, i.e. reduced cohomology of G = 1");
    affine->add_option("polynomial", poly)->required();
    affine->add_option("--weights", f.weights, "Quasi-homogeneous weights, comma-separated")->delimiter(',');
    add_common(affine, f);

    auto* strands = app.add_subcommand("strands", "Cohomology of each residue strand");
    strands->add_option("polynomial", poly)->required();
    strands->add_option("--strand", f.strand, "Only this residue");
    add_common(strands, f);

    auto* koszul = app.add_subcommand("koszul", "Koszul complex of a complete intersection f_1 = ... = f_r = 0");
    koszul->add_option("polynomials", polys)->required();
    koszul->add_option("--bound", f.bound, "First staircase level");
    add_common(koszul, f);

    auto* fourier = app.add_subcommand("fourier", "Koszul complex of sum y_i y'_i");
    fourier->add_option("r", r)->required()->check(CLI::PositiveNumber);
    fourier->add_option("--bound", f.bound, "First staircase level");
    add_common(fourier, f);

    auto* ts = app.add_subcommand("ts", "Thom-Sebastiani dimension identities for F + x_new^m");
    ts->add_option("polynomial", poly)->required();
    add_common(ts, f);

    auto* susp = app.add_subcommand("suspension", "Suspension additivity for F and F + x_new^m");
    susp->add_option("polynomial", poly)->required();
    add_common(susp, f);

    auto* compare = app.add_subcommand("compare", "Jacobian path against truncation path for smooth F");
    compare->add_option("polynomial", poly)->required();
    add_common(compare, f);

    auto* gm = app.add_subcommand("gm", "Gauss-Manin matrix of F + t*G");
    gm->add_option("polynomial", poly, "F_0")->required();
    gm->add_option("--perturbation", perturbation, "G")->required();
    gm->add_option("--basis", basis, "Top-form coefficients of the basis classes");
    gm->add_option("--samples", samples, "Rational t values for the consistency checks");
    add_common(gm, f, false);

    auto* verify = app.add_subcommand("verify", "Run a regression corpus directory");
    verify->add_option("directory", dir)->required();
    verify->add_option("-o,--output", f.output, "Write the JSON summary to this file");

    auto* run = app.add_subcommand("run", "Run a JSON job file");
    run->add_option("job", job_file)->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::ifstream is(job_file);
            auto job = dwc::Job::from_json(nlohmann::json::parse(is));
            return emit(dwc::run_job(job));
        }
        if (verify->parsed()) {
            auto summary = dwc::corpus_runner(dir);
            dwc::print_summary(summary, std::cout);
            if (!f.output.empty()) {
                nlohmann::json j = nlohmann::json::array();
                for (const auto& e : summary.entries) j.push_back({{"name", e.name}, {"status", e.status}, {"details", e.details}});
                dwc::write_report({{"engine_version", dwc::kEngineVersion}, {"corpus", j}}, f.output);
            }
            return summary.exit_code();
        }
        for (auto* sub : app.get_subcommands()) {
            auto job = to_job(sub->get_name(), f);
            job.polynomial = poly;
            job.polynomials = polys;
            job.r = r;
            job.perturbation = perturbation;
            job.basis = basis;
            job.samples = samples;
            return emit(dwc::run_job(job));
        }
    } catch (const std::exception& e) {
        std::cerr << "dwc: " << e.what() << '\n';
        return dwc::kExitInput;
    }
    return dwc::kExitInput;
}
