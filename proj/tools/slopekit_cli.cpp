// slopekit-cli — command-line front end over the slopekit C API.
//
// Every subcommand prints exactly one canonical JSON document to stdout;
// human mode adds an elapsed-time line on stderr so the document itself
// stays byte-identical across runs.  Exit codes: 0 success/PASS, 1 a
// verification failure (a theorem-violating witness, i.e. a bug), 2 usage
// or budget errors.
#include "slopekit/slopekit.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using nlohmann::ordered_json;

using Clock = std::chrono::steady_clock;

// Owned wrapper for strings handed out by the C API.
struct ApiString {
    char* s = nullptr;
    ~ApiString() { sk_string_free(s); }
    const char* get() const { return s == nullptr ? "" : s; }
};

int status_exit(sk_status st) {
    switch (st) {
        case SK_OK:
            return 0;
        case SK_ERR_INCONSISTENCY:
        case SK_ERR_INTERNAL:
            return 1;   // the library caught itself out — that is a bug
        default:
            return 2;   // usage, parse, budget, unsupported
    }
}

// Prints the record (or the error) and derives the exit code; the verdict
// inside a successfully computed record decides PASS vs FAIL.
int emit(sk_status st, ApiString& out, bool json_mode, Clock::time_point t0) {
    if (st != SK_OK) {
        std::cerr << "error: " << sk_last_error() << "\n";
        return status_exit(st);
    }
    std::cout << out.get();
    std::cout.flush();
    if (!json_mode) {
        const std::chrono::duration<double> dt = Clock::now() - t0;
        std::cerr << "elapsed: " << dt.count() << "s\n";
    }
    return sk_record_ok(out.get()) ? 0 : 1;
}

std::vector<uint32_t> parse_tile_set(const std::string& text) {
    std::vector<uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            const unsigned long v = std::stoul(item);
            if (v == 0 || v > 1000) throw std::out_of_range("range");
            out.push_back(static_cast<uint32_t>(v));
        } catch (const std::exception&) {
            throw CLI::ValidationError("S", "'" + item + "' is not a tile length");
        }
    }
    if (out.empty()) throw CLI::ValidationError("S", "empty tile set");
    return out;
}

std::string join_curve(const std::vector<std::string>& parts) {
    std::string text;
    for (const auto& part : parts) {
        if (!text.empty()) text += ' ';
        text += part;
    }
    return text;
}

// ---- scan mode -------------------------------------------------------------

struct ScanJobResult {
    std::string line;   // one JSONL record, no trailing newline
    int rc = 0;
};

ScanJobResult scan_one(const std::string& curve_text, int verify, uint64_t budget) {
    ScanJobResult res;
    sk_curve* c = nullptr;
    if (sk_curve_parse(curve_text.c_str(), &c) != SK_OK) {
        ordered_json j;
        j["curve"] = curve_text;
        j["error"] = sk_last_error();
        res.line = j.dump();
        res.rc = 2;
        return res;
    }
    ApiString rec;
    const sk_status st = sk_check_json(c, verify, budget, 1, &rec.s);
    sk_curve_free(c);
    if (st != SK_OK) {
        ordered_json j;
        j["curve"] = curve_text;
        j["error"] = sk_last_error();
        res.line = j.dump();
        res.rc = status_exit(st);
        return res;
    }
    ordered_json j;
    j["curve"] = curve_text;
    j["record"] = ordered_json::parse(rec.get());
    res.line = j.dump();
    res.rc = sk_record_ok(rec.get()) ? 0 : 1;
    return res;
}

int run_scan(const std::string& family, const std::string& out_path, uint64_t seed,
             uint64_t count, uint64_t budget, int verify, unsigned jobs,
             bool json_mode) {
    ApiString plan;
    const sk_status st = sk_sweep_plan_json(family.c_str(), seed, count, budget, &plan.s);
    if (st != SK_OK) {
        std::cerr << "error: " << sk_last_error() << "\n";
        return status_exit(st);
    }
    const ordered_json plan_json = ordered_json::parse(plan.get());
    std::vector<std::string> curves = plan_json.at("curves").get<std::vector<std::string>>();

    // Resume: keys already present in the output file are not recomputed.
    std::set<std::string> done_keys;
    {
        std::ifstream in(out_path);
        std::string line;
        while (std::getline(in, line)) {
            const auto j = ordered_json::parse(line, nullptr, false);
            if (!j.is_discarded() && j.contains("curve") && j["curve"].is_string())
                done_keys.insert(j["curve"].get<std::string>());
        }
    }
    std::vector<std::string> todo;
    for (auto& c : curves)
        if (done_keys.find(c) == done_keys.end()) todo.push_back(std::move(c));

    std::ofstream out(out_path, std::ios::app);
    if (!out) {
        std::cerr << "error: cannot open '" << out_path << "' for append\n";
        return 2;
    }

    // Workers fill results by job index; the single writer appends them in
    // plan order so the file content is deterministic.
    std::vector<ScanJobResult> results(todo.size());
    std::vector<char> ready(todo.size(), 0);
    std::mutex m;
    std::condition_variable cv;
    std::atomic<size_t> next{0};
    const unsigned nworkers =
        std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(todo.size() ? todo.size() : 1)));
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned w = 0; w < nworkers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const size_t k = next.fetch_add(1);
                if (k >= todo.size()) return;
                ScanJobResult res = scan_one(todo[k], verify, budget);
                {
                    std::lock_guard<std::mutex> lock(m);
                    results[k] = std::move(res);
                    ready[k] = 1;
                }
                cv.notify_all();
            }
        });

    int worst = 0;
    size_t failures = 0;
    for (size_t k = 0; k < todo.size(); ++k) {
        std::unique_lock<std::mutex> lock(m);
        cv.wait(lock, [&] { return ready[k] != 0; });
        out << results[k].line << "\n";
        out.flush();
        if (results[k].rc != 0) ++failures;
        worst = std::max(worst, results[k].rc);
        if (!json_mode)
            std::cerr << "[" << (k + 1) << "/" << todo.size() << "] " << todo[k]
                      << (results[k].rc == 0 ? " ok" : " FAIL") << "\n";
    }
    for (auto& t : pool) t.join();

    ordered_json summary;
    summary["family"] = plan_json.at("family");
    summary["seed"] = seed;
    summary["planned"] = curves.size();
    summary["skipped"] = curves.size() - todo.size();
    summary["run"] = todo.size();
    summary["failures"] = failures;
    summary["ok"] = failures == 0;
    std::cout << summary.dump(2) << "\n";
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact L-polynomials, Newton slopes and series checks for "
                 "curves y^(p^u) - y = f(x) over F_(p^s)"};
    app.set_version_flag("--version", std::string(sk_version()));
    app.require_subcommand(1);
    app.fallthrough();   // accept --json/--budget/--threads after the subcommand too

    uint64_t budget = 0;   // 0 = library default
    bool json_mode = false;
    int nthreads = 0;
    app.add_option("--budget", budget, "work cap in enumerated field elements")
        ->envname("SLOPEKIT_BUDGET");
    app.add_flag("--json", json_mode, "print the JSON record only (no timing line)");
    app.add_option("--threads", nthreads, "threads for point counting (0 = auto)");

    std::vector<std::string> curve_parts;
    bool verify = false;

    auto* c_lpoly = app.add_subcommand("lpoly", "L-polynomial and Newton slopes");
    auto* c_newton = app.add_subcommand("newton", "Newton polygon of the L-polynomial");
    auto* c_check = app.add_subcommand("check", "full verdict pipeline for one curve");
    for (CLI::App* sub : {c_lpoly, c_newton, c_check}) {
        sub->add_option("curve", curve_parts, "curve text, e.g.: p=2 u=1 s=1 f=x^3")
            ->required()
            ->expected(-1);
        if (sub != c_newton)
            sub->add_flag("--verify", verify, "recount with the independent counter");
    }

    uint32_t bp = 0, bs = 0, bu = 0;
    uint64_t bd = 0, bn = 0;
    auto* c_bounds = app.add_subcommand("bounds", "genus, tau and improved Weil bound");
    c_bounds->add_option("p", bp, "characteristic")->required();
    c_bounds->add_option("s", bs, "base field degree")->required();
    c_bounds->add_option("u", bu, "cover degree exponent")->required();
    c_bounds->add_option("d", bd, "degree of f")->required();
    c_bounds->add_option("n", bn, "extension degree")->required();

    app.add_subcommand("examples", "built-in reference bound computations");

    uint64_t tr = 0;
    std::string tset;
    uint32_t tp = 0, td = 0;
    auto* c_tiling = app.add_subcommand("tiling", "minimal tiling weight s~_p(r, S)");
    c_tiling->add_option("r", tr, "radius")->required();
    c_tiling->add_option("S", tset, "comma-separated tile lengths, e.g. 1,3")->required();
    c_tiling->add_option("p", tp, "characteristic")->required();
    c_tiling->add_option("--d", td, "also check the partition bijection for d rows");

    std::string selector = "all";
    auto* c_series = app.add_subcommand("series-verify", "power-series verification grids");
    c_series->add_option("selector", selector, "y | D | E | C | rel | cmod | all");

    std::string family = "p=2,3,5 u=1,2 s=1,2 dmax=9";
    std::string out_path;
    uint64_t seed = 1, count = 300;
    unsigned jobs = std::max(1u, std::min(4u, std::thread::hardware_concurrency()));
    auto* c_scan = app.add_subcommand("scan", "run check over a random curve family");
    c_scan->add_option("--family", family, "family clauses, e.g. 'p=2,3 u=1 s=1 dmax=7'");
    c_scan->add_option("--out", out_path, "JSONL output path (appended, resumable)")
        ->required();
    c_scan->add_option("--seed", seed, "sweep seed");
    c_scan->add_option("--count", count, "number of curves");
    c_scan->add_option("--jobs", jobs, "concurrent curve jobs");
    c_scan->add_flag("--verify", verify, "recount each curve with the independent counter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;   // --help / --version exit 0, bad usage exits 2
    }

    const auto t0 = Clock::now();
    sk_status st = SK_OK;
    ApiString out;

    if (app.got_subcommand(c_lpoly) || app.got_subcommand(c_newton) ||
        app.got_subcommand(c_check)) {
        sk_curve* c = nullptr;
        st = sk_curve_parse(join_curve(curve_parts).c_str(), &c);
        if (st != SK_OK) {
            std::cerr << "error: " << sk_last_error() << "\n";
            return status_exit(st);
        }
        if (app.got_subcommand(c_lpoly))
            st = sk_lpoly_json(c, verify ? 1 : 0, budget, nthreads, &out.s);
        else if (app.got_subcommand(c_newton))
            st = sk_newton_json(c, budget, nthreads, &out.s);
        else
            st = sk_check_json(c, verify ? 1 : 0, budget, nthreads, &out.s);
        sk_curve_free(c);
        return emit(st, out, json_mode, t0);
    }
    if (app.got_subcommand(c_bounds)) {
        st = sk_bounds_json(bp, bs, bu, bd, bn, &out.s);
        return emit(st, out, json_mode, t0);
    }
    if (app.got_subcommand("examples")) {
        st = sk_examples_json(&out.s);
        return emit(st, out, json_mode, t0);
    }
    if (app.got_subcommand(c_tiling)) {
        std::vector<uint32_t> S;
        try {
            S = parse_tile_set(tset);
        } catch (const CLI::ParseError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        st = sk_tiling_json(tr, S.data(), S.size(), tp, td, &out.s);
        return emit(st, out, json_mode, t0);
    }
    if (app.got_subcommand(c_series)) {
        st = sk_series_verify_json(selector.c_str(), &out.s);
        return emit(st, out, json_mode, t0);
    }
    if (app.got_subcommand(c_scan))
        return run_scan(family, out_path, seed, count, budget, verify ? 1 : 0, jobs,
                        json_mode);

    std::cerr << "error: no subcommand\n";
    return 2;
}
