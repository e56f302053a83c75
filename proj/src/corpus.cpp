#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "dwc/cli.hpp"

namespace dwc {

using nlohmann::json;

std::size_t CorpusSummary::passed() const
{
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == "pass"; }));
}

std::size_t CorpusSummary::mismatches() const
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == "mismatch"; }));
}

std::size_t CorpusSummary::infra_failures() const
{
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == "infra"; }));
}

int CorpusSummary::exit_code() const
{
    if (infra_failures()) return kExitInput;
    if (mismatches()) return kExitCheckFailed;
    return kExitOk;
}

std::vector<std::string> diff_expected(const json& expected, const json& actual, const std::string& path)
{
    std::vector<std::string> out;
    auto where = [&](const std::string& k) { return path.empty() ? k : path + "." + k; };
    if (expected.is_object()) {
        if (!actual.is_object()) return {(path.empty() ? "<root>" : path) + ": expected an object"};
        for (const auto& [k, v] : expected.items()) {
            if (k == "timing_ms") continue;
            if (!actual.contains(k)) {
                out.push_back(where(k) + ": missing");
                continue;
            }
            auto sub = diff_expected(v, actual.at(k), where(k));
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    if (expected.is_array()) {
        if (!actual.is_array() || actual.size() != expected.size()) {
            return {path + ": expected " + expected.dump() + ", got " + actual.dump()};
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            auto sub = diff_expected(expected[i], actual[i], path + "[" + std::to_string(i) + "]");
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    if (expected != actual) out.push_back(path + ": expected " + expected.dump() + ", got " + actual.dump());
    return out;
}

namespace {

json load(const std::filesystem::path& p)
{
    std::ifstream is(p);
    if (!is) throw InputError("cannot open " + p.string());
    try {
        return json::parse(is);
    } catch (const json::exception& e) {
        throw InputError(p.filename().string() + ": " + e.what());
    }
}

}  // namespace

CorpusSummary corpus_runner(const std::filesystem::path& dir)
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
    std::vector<fs::path> jobs;
    const std::string suffix = ".job.json";
    for (const auto& entry : fs::directory_iterator(dir)) {
        auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
            jobs.push_back(entry.path());
        }
    }
    std::sort(jobs.begin(), jobs.end());

    CorpusSummary summary;
    for (const auto& jp : jobs) {
        auto fname = jp.filename().string();
        CorpusEntry e;
        e.name = fname.substr(0, fname.size() - suffix.size());
        auto start = std::chrono::steady_clock::now();
        try {
            auto expect_path = jp.parent_path() / (e.name + ".expect.json");
            if (!fs::exists(expect_path)) throw InputError("missing expectation file " + expect_path.filename().string());
            auto expected = load(expect_path);
            if (!expected.is_object()) throw InputError(expect_path.filename().string() + ": expectation must be an object");
            auto job = Job::from_json(load(jp));
            if (job.command == "verify") throw InputError("nested verify jobs are not allowed");
            job.output.clear();
            auto res = run_job(job);
            e.details = diff_expected(expected, res.report);
            e.status = e.details.empty() ? "pass" : "mismatch";
        } catch (const std::exception& ex) {
            e.status = "infra";
            e.details = {ex.what()};
        }
        e.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        summary.entries.push_back(std::move(e));
    }
    return summary;
}

void print_summary(const CorpusSummary& s, std::ostream& os)
{
    std::size_t width = 4;
    for (const auto& e : s.entries) width = std::max(width, e.name.size());
    os << std::left << std::setw(static_cast<int>(width)) << "name" << "  " << std::setw(8) << "status"
       << "  time_ms\n";
    for (const auto& e : s.entries) {
        os << std::left << std::setw(static_cast<int>(width)) << e.name << "  " << std::setw(8) << e.status << "  "
           << std::fixed << std::setprecision(1) << e.ms << '\n';
        for (const auto& d : e.details) os << "    " << d << '\n';
    }
    os << s.passed() << " passed, " << s.mismatches() << " mismatched, " << s.infra_failures()
       << " infrastructure failures\n";
}

}  // namespace dwc
