#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "halfguard/boolean.hpp"
#include "halfguard/bounds.hpp"
#include "halfguard/classify.hpp"
#include "halfguard/generators.hpp"
#include "halfguard/io.hpp"
#include "halfguard/oracle.hpp"
#include "halfguard/report.hpp"
#include "halfguard/spiral.hpp"
#include "halfguard/staircase.hpp"
#include "halfguard/svg.hpp"

using namespace halfguard;
using nlohmann::json;

namespace {

// 0 is reserved for a verified PASS; anything the run cannot verify exits 1.
constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitClass = 3;
constexpr int kExitTimeout = 4;

struct ClassMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Polygon load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_polygon(in);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double default_timeout() {
    if (const char* s = std::getenv("HALFGUARD_TIMEOUT_SECS")) {
        try {
            return std::stod(s);
        } catch (const std::logic_error&) {
            throw ParseError(std::string("bad HALFGUARD_TIMEOUT_SECS value: ") + s);
        }
    }
    return 0;
}

const std::vector<std::string>& algorithm_names() {
    static const std::vector<std::string> names = {
        "fisk", "convex", "lshape", "mountain", "mountain-high", "staircase", "spiral"};
    return names;
}

void require_class(const PolygonClass& cls, const std::string& alg) {
    auto fail = [&](const char* what) {
        throw ClassMismatch(alg + " needs " + what + " polygon");
    };
    if (alg == "lshape" && !cls.orthogonal) fail("an orthogonal");
    if ((alg == "mountain" || alg == "mountain-high") && !cls.monotone_mountain)
        fail("a monotone mountain");
    if (alg == "staircase" && !cls.staircase) fail("a staircase");
    if (alg == "spiral" && !cls.spiral) fail("a spiral");
}

GuardSolution run_algorithm(const Polygon& P, const std::string& alg, bool vertex_guards,
                            SpiralDpTrace* trace) {
    if (alg == "fisk") return fisk_double(P);
    if (alg == "convex") return convex_partition_guards(P);
    if (alg == "lshape") return lshape_guards(P);
    if (alg == "mountain") return mountain_guards(P);
    if (alg == "mountain-high") return mountain_high_reflex_guards(P);
    if (alg == "staircase") return staircase_guards(P, vertex_guards);
    if (alg == "spiral") return spiral_dp(P, trace);
    throw std::runtime_error("unknown algorithm " + alg);
}

RunReport solve_one(const Polygon& P, const std::string& id, const std::string& alg,
                    bool vertex_guards, bool with_oracle, OracleLimits limits,
                    SpiralDpTrace* trace, std::vector<HalfGuard>* out_guards) {
    RunReport r;
    r.instance = id;
    PolygonClass cls = classify(P);
    r.class_flags = class_flag_string(cls);
    r.algorithm = alg;
    require_class(cls, alg);
    auto t0 = std::chrono::steady_clock::now();
    GuardSolution sol = run_algorithm(P, alg, vertex_guards, trace);
    r.guard_count = sol.guards.size();
    r.bound = sol.bound;
    r.covered = covers(P, sol.guards).covered;
    r.wall_time_secs = seconds_since(t0);
    if (with_oracle) {
        if (auto best = min_cover(P, limits)) {
            r.opt = static_cast<long>(best->guards.size());
            if (*r.opt > 0)
                r.ratio = static_cast<double>(r.guard_count) / static_cast<double>(*r.opt);
        }
    }
    if (out_guards) *out_guards = sol.guards;
    return r;
}

void print_report(const RunReport& r, const std::vector<HalfGuard>& guards) {
    std::cout << "instance: " << r.instance << "\n";
    std::cout << "class: " << r.class_flags << "\n";
    std::cout << "algorithm: " << r.algorithm << "\n";
    std::cout << "guards: " << r.guard_count << "\n";
    for (const HalfGuard& g : guards)
        std::cout << "  " << to_string(g.dir) << " " << g.pos.x.str() << " " << g.pos.y.str()
                  << "\n";
    std::cout << "bound: " << r.bound << "\n";
    if (r.opt) std::cout << "opt: " << *r.opt << "\n";
    if (r.ratio) std::cout << "ratio: " << *r.ratio << "\n";
    std::cout << "covered: " << (r.covered ? "yes" : "no") << "\n";
    std::cout << "time: " << r.wall_time_secs << "s\n";
    std::cout << (r.covered ? "PASS" : "FAIL") << "\n";
}

json report_json(const RunReport& r, const std::vector<HalfGuard>& guards) {
    json j;
    j["instance"] = r.instance;
    j["class_flags"] = r.class_flags;
    j["algorithm"] = r.algorithm;
    j["guard_count"] = r.guard_count;
    j["bound"] = r.bound;
    j["opt"] = r.opt ? json(*r.opt) : json(nullptr);
    j["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
    j["covered"] = r.covered;
    j["wall_time_secs"] = r.wall_time_secs;
    json gs = json::array();
    for (const HalfGuard& g : guards)
        gs.push_back({{"dir", to_string(g.dir)}, {"x", g.pos.x.str()}, {"y", g.pos.y.str()}});
    j["guard_positions"] = gs;
    return j;
}

json trace_json(const SpiralDpTrace& tr) {
    json j;
    j["candidates"] = tr.candidates;
    j["states"] = tr.states;
    json rows = json::array();
    for (const DpRow& row : tr.rows)
        rows.push_back({{"edge", row.edge},
                        {"p", {row.p.x.str(), row.p.y.str()}},
                        {"q", {row.q.x.str(), row.q.y.str()}},
                        {"value", row.value},
                        {"case", row.chosen_case}});
    j["rows"] = rows;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

int do_classify(const std::string& path) {
    PolygonClass cls = classify(load(path));
    std::istringstream flags(class_flag_string(cls));
    std::string f;
    while (flags >> f) std::cout << f << "\n";
    return kExitPass;
}

int do_generate(const std::string& family, long n, unsigned long seed, const std::string& eps,
                long length, bool allow_vertical, const std::string& out_path) {
    auto fam = family_from_string(family);
    if (!fam) throw ParseError("unknown family " + family);
    FamilySpec spec;
    spec.family = *fam;
    spec.n = n;
    spec.seed = seed;
    spec.length = length;
    spec.allow_vertical = allow_vertical;
    if (!eps.empty()) {
        auto e = Rational::parse(eps);
        if (!e || e->sign() <= 0) throw ParseError("bad eps value " + eps);
        spec.eps = *e;
    }
    Polygon P = generate(spec);
    if (out_path.empty() || out_path == "-") {
        write_polygon(std::cout, P);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        write_polygon(out, P);
    }
    return kExitPass;
}

int do_solve(const std::string& path, const std::string& alg, bool vertex_guards,
             bool with_oracle, long kmax, double timeout, const std::string& json_path,
             const std::string& dump_dp_path) {
    Polygon P = load(path);
    OracleLimits limits;
    limits.k_max = kmax;
    limits.timeout_secs = timeout;
    SpiralDpTrace trace;
    std::vector<HalfGuard> guards;
    RunReport r = solve_one(P, path, alg, vertex_guards, with_oracle, limits,
                            alg == "spiral" ? &trace : nullptr, &guards);
    print_report(r, guards);
    if (!json_path.empty()) write_text_file(json_path, report_json(r, guards).dump(2) + "\n");
    if (!dump_dp_path.empty()) write_text_file(dump_dp_path, trace_json(trace).dump(2) + "\n");
    return r.covered ? kExitPass : kExitFailure;
}

/// Greedy pass over the sample points: keep one whenever its full
/// visibility region stays interior-disjoint from everything kept so far.
std::vector<Point> disjoint_witnesses(const Polygon& P) {
    std::vector<Point> kept;
    std::vector<Polygon> vis;
    for (const Point& p : witness_points(P)) {
        Polygon v = visibility_polygon(P, p);
        bool clash = false;
        for (const Polygon& u : vis)
            if (total_area(polygon_boolean(u, v, BoolOp::Intersection)).sign() != 0) {
                clash = true;
                break;
            }
        if (clash) continue;
        kept.push_back(p);
        vis.push_back(std::move(v));
    }
    return kept;
}

int do_oracle(const std::string& path, long kmax, double timeout, bool witness_bound) {
    Polygon P = load(path);
    OracleLimits limits;
    limits.k_max = kmax;
    limits.timeout_secs = timeout;
    auto best = min_cover(P, limits);
    if (!best) {
        std::cout << "no cover with at most " << kmax << " guards\n";
        return kExitFailure;
    }
    bool covered = covers(P, best->guards).covered;
    std::cout << "opt: " << best->guards.size() << "\n";
    for (const HalfGuard& g : best->guards)
        std::cout << "  " << to_string(g.dir) << " " << g.pos.x.str() << " " << g.pos.y.str()
                  << "\n";
    if (witness_bound) {
        long lb = lower_bound_witnesses(P, disjoint_witnesses(P));
        std::cout << "witness lower bound: " << lb << "\n";
    }
    if (!best->notes.empty()) std::cout << "notes:" << best->notes << "\n";
    std::cout << "covered: " << (covered ? "yes" : "no") << "\n";
    std::cout << (covered ? "PASS" : "FAIL") << "\n";
    return covered ? kExitPass : kExitFailure;
}

int do_render(const std::string& path, const std::string& out_path, const std::string& alg,
              bool regions, bool witnesses, const std::vector<std::string>& manual_guards) {
    Polygon P = load(path);
    SvgScene scene(P);
    std::vector<HalfGuard> guards;
    for (const std::string& spec : manual_guards) {
        std::istringstream in(spec);
        std::string dir, xs, ys;
        std::getline(in, dir, ',');
        std::getline(in, xs, ',');
        std::getline(in, ys);
        auto x = Rational::parse(xs);
        auto y = Rational::parse(ys);
        if ((dir != "L" && dir != "R") || !x || !y)
            throw ParseError("bad guard spec '" + spec + "', expected D,x,y with D in {L,R}");
        guards.push_back({{*x, *y}, dir == "L" ? Direction::Left : Direction::Right});
    }
    if (!alg.empty()) {
        PolygonClass cls = classify(P);
        require_class(cls, alg);
        GuardSolution sol = run_algorithm(P, alg, false, nullptr);
        guards.insert(guards.end(), sol.guards.begin(), sol.guards.end());
    }
    if (witnesses) {
        if (!classify(P).staircase)
            throw ClassMismatch("witness overlay needs a staircase polygon");
        for (const Point& w : place_cws(P).witnesses) scene.add_witness(w);
    }
    if (regions)
        for (const HalfGuard& g : guards) scene.add_region(half_visibility(P, g));
    for (const HalfGuard& g : guards) scene.add_guard(g);
    write_text_file(out_path, scene.str());
    return kExitPass;
}

int do_batch(const std::string& spec_path, const std::string& out_path, bool with_oracle,
             long kmax, double timeout) {
    std::ifstream in(spec_path);
    if (!in) throw ParseError("cannot open " + spec_path);
    struct Job {
        FamilySpec spec;
        std::string id;
        std::string alg;
    };
    std::vector<Job> jobs;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string family, alg;
        long n = 0;
        unsigned long seed = 0;
        if (!(ls >> family)) continue;
        if (!(ls >> n >> seed >> alg))
            throw ParseError("batch line " + std::to_string(lineno) +
                             ": expected 'family n seed algorithm'");
        auto fam = family_from_string(family);
        if (!fam)
            throw ParseError("batch line " + std::to_string(lineno) + ": unknown family " +
                             family);
        bool known = false;
        for (const std::string& name : algorithm_names()) known |= name == alg;
        if (!known)
            throw ParseError("batch line " + std::to_string(lineno) + ": unknown algorithm " +
                             alg);
        Job job;
        job.spec.family = *fam;
        job.spec.n = n;
        job.spec.seed = seed;
        job.id = family + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
        job.alg = alg;
        jobs.push_back(std::move(job));
    }
    OracleLimits limits;
    limits.k_max = kmax;
    limits.timeout_secs = timeout;

    std::ostringstream csv;
    csv << run_report_csv_header() << "\n";
    for (const Job& job : jobs) {
        RunReport r;
        r.instance = job.id;
        r.algorithm = job.alg;
        try {
            Polygon P = generate(job.spec);
            r = solve_one(P, job.id, job.alg, false, with_oracle, limits, nullptr, nullptr);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        csv << run_report_csv_row(r) << "\n";
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        write_text_file(out_path, csv.str());
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opposing half guard toolkit: generate, classify, solve, verify, draw"};
    app.require_subcommand(1);

    std::string cl_path;
    CLI::App* cmd_classify = app.add_subcommand("classify", "print a polygon's shape flags");
    cmd_classify->add_option("file", cl_path, "polygon file")->required();

    std::string gen_family, gen_eps, gen_out;
    long gen_n = 0, gen_length = 100;
    unsigned long gen_seed = 0;
    bool gen_allow_vertical = false;
    CLI::App* cmd_generate = app.add_subcommand("generate", "write a generated polygon");
    cmd_generate->add_option("--family", gen_family, "instance family")->required();
    cmd_generate->add_option("--n", gen_n, "size parameter, meaning depends on family");
    cmd_generate->add_option("--seed", gen_seed, "random seed");
    cmd_generate->add_option("--eps", gen_eps, "witness offset fraction, rational");
    cmd_generate->add_option("--length", gen_length, "two-guardable long edge scale");
    cmd_generate->add_flag("--allow-vertical", gen_allow_vertical,
                           "random-spiral: skip the vertical-removing shear");
    cmd_generate->add_option("-o,--output", gen_out, "output file, stdout when absent");

    std::string sol_path, sol_alg, sol_json, sol_dump_dp;
    bool sol_vertex_guards = false, sol_oracle = false;
    long sol_kmax = 8;
    double sol_timeout = -1;
    CLI::App* cmd_solve = app.add_subcommand("solve", "run an algorithm and verify coverage");
    cmd_solve->add_option("file", sol_path, "polygon file")->required();
    cmd_solve->add_option("--alg", sol_alg, "algorithm")
        ->required()
        ->check(CLI::IsMember(algorithm_names()));
    cmd_solve->add_flag("--vertex-guards", sol_vertex_guards,
                        "staircase: slide guards onto polygon vertices");
    cmd_solve->add_flag("--oracle", sol_oracle, "also compute the exact optimum and the ratio");
    cmd_solve->add_option("--kmax", sol_kmax, "oracle guard count cap");
    cmd_solve->add_option("--timeout", sol_timeout,
                          "oracle time budget in seconds, 0 for none");
    cmd_solve->add_option("--json", sol_json, "write the report as JSON to this file");
    cmd_solve->add_option("--dump-dp", sol_dump_dp,
                          "spiral only: write the program table as JSON");

    std::string ora_path;
    long ora_kmax = 8;
    double ora_timeout = -1;
    bool ora_witness_bound = false;
    CLI::App* cmd_oracle = app.add_subcommand("oracle", "exact minimum cover");
    cmd_oracle->add_option("file", ora_path, "polygon file")->required();
    cmd_oracle->add_option("--kmax", ora_kmax, "guard count cap");
    cmd_oracle->add_option("--timeout", ora_timeout, "time budget in seconds, 0 for none");
    cmd_oracle->add_flag("--witness-bound", ora_witness_bound,
                         "also certify a disjoint-witness lower bound");

    std::string ren_path, ren_out, ren_alg;
    bool ren_regions = false, ren_witnesses = false;
    std::vector<std::string> ren_guards;
    CLI::App* cmd_render = app.add_subcommand("render", "draw the polygon as SVG");
    cmd_render->add_option("file", ren_path, "polygon file")->required();
    cmd_render->add_option("-o,--output", ren_out, "output SVG file")->required();
    cmd_render->add_option("--alg", ren_alg, "overlay this algorithm's guards")
        ->check(CLI::IsMember(algorithm_names()));
    cmd_render->add_flag("--regions", ren_regions, "shade each guard's half-visibility region");
    cmd_render->add_flag("--witnesses", ren_witnesses, "staircase: mark the witness sweep");
    cmd_render->add_option("--guard", ren_guards, "extra guard as D,x,y with D in {L,R}");

    std::string bat_path, bat_out;
    bool bat_oracle = false;
    long bat_kmax = 8;
    double bat_timeout = -1;
    CLI::App* cmd_batch = app.add_subcommand("batch", "run a sweep spec, emit CSV");
    cmd_batch->add_option("file", bat_path, "spec file: 'family n seed algorithm' per line")
        ->required();
    cmd_batch->add_option("-o,--output", bat_out, "output CSV file, stdout when absent");
    cmd_batch->add_flag("--oracle", bat_oracle, "compute the optimum and ratio per row");
    cmd_batch->add_option("--kmax", bat_kmax, "oracle guard count cap");
    cmd_batch->add_option("--timeout", bat_timeout, "oracle time budget in seconds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sol_timeout < 0) sol_timeout = default_timeout();
        if (ora_timeout < 0) ora_timeout = default_timeout();
        if (bat_timeout < 0) bat_timeout = default_timeout();
        if (!sol_dump_dp.empty() && sol_alg != "spiral")
            throw ParseError("--dump-dp only applies to --alg spiral");

        if (*cmd_classify) return do_classify(cl_path);
        if (*cmd_generate)
            return do_generate(gen_family, gen_n, gen_seed, gen_eps, gen_length,
                               gen_allow_vertical, gen_out);
        if (*cmd_solve)
            return do_solve(sol_path, sol_alg, sol_vertex_guards, sol_oracle, sol_kmax,
                            sol_timeout, sol_json, sol_dump_dp);
        if (*cmd_oracle) return do_oracle(ora_path, ora_kmax, ora_timeout, ora_witness_bound);
        if (*cmd_render)
            return do_render(ren_path, ren_out, ren_alg, ren_regions, ren_witnesses, ren_guards);
        if (*cmd_batch) return do_batch(bat_path, bat_out, bat_oracle, bat_kmax, bat_timeout);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ClassMismatch& e) {
        std::cerr << "class mismatch: " << e.what() << "\n";
        return kExitClass;
    } catch (const OracleTimeout& e) {
        std::cerr << "timeout: " << e.what() << "\n";
        return kExitTimeout;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
