// abcroots: exact continued-fraction expansions of integer roots and the
// ABC-triple qualities of their resulting equations.
//
// Subcommands: expand, series, hunt, verify, records. Machine output is
// line-delimited JSON with big integers as decimal strings; exit codes are
// 0 ok, 1 usage, 2 computation or I/O, 3 regression mismatch.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "abcroots/abc_model.hpp"
#include "abcroots/analysis.hpp"
#include "abcroots/cf_engine.hpp"
#include "abcroots/exact_arith.hpp"
#include "abcroots/format.hpp"
#include "abcroots/hunt.hpp"
#include "abcroots/records.hpp"
#include "abcroots/store.hpp"
#include "json.hpp"

namespace {

using namespace abcroots;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitRegression = 3;

struct Options {
    std::string format = "table";
    int depth = 10;
    unsigned long factor_effort = 300'000;
    unsigned long trial_bound = 1'000'000;
    std::vector<double> epsilons;
    std::string store_path;
    bool fixed_clock = false;

    // expand
    std::string k_str;
    unsigned long s = 2;
    int terms = 10;

    // hunt
    std::string k_min_str, k_max_str;
    unsigned long s_min = 2, s_max = 2;
    std::string kind = "q2";
    double min_quality = 1.0;
    unsigned workers = 1;

    // verify
    std::string a_str, b_str, c_str;

    // records
    std::string records_path = "data/records.ndjson";
    int link_depth = 50;

    bool ndjson() const { return format == "ndjson"; }

    FactorEffort effort() const {
        FactorEffort e;
        e.trial_bound = trial_bound;
        e.rho_iterations = factor_effort;
        return e;
    }
};

ordered_json k_needed_json(const std::vector<WneabcProbe>& probes) {
    ordered_json j = ordered_json::object();
    for (const auto& p : probes)
        j[fmt6(p.epsilon)] = fmt6(p.k_needed);
    return j;
}

int cmd_expand(const Options& opt) {
    RootTarget root{Bigint(opt.k_str), opt.s};
    if (opt.terms < 1)
        throw std::invalid_argument("expand: terms must be >= 1");
    const auto cs = expand(root, opt.terms);
    if (opt.ndjson()) {
        for (const auto& c : cs) {
            ordered_json j;
            j["n"] = c.n;
            j["b"] = dec(c.b);
            j["p"] = dec(c.p);
            j["q"] = dec(c.q);
            j["p_prev"] = dec(c.p_prev);
            j["q_prev"] = dec(c.q_prev);
            std::cout << j.dump() << '\n';
        }
        return kExitOk;
    }
    std::cout << "root: " << dec(root.k) << "^(1/" << root.s << ")\ncoefficients:";
    for (const auto& c : cs)
        std::cout << ' ' << dec(c.b);
    std::cout << "\n\n" << std::setw(4) << "n" << std::setw(12) << "b" << "  p/q\n";
    for (const auto& c : cs)
        std::cout << std::setw(4) << c.n << std::setw(12) << dec(c.b) << "  " << dec(c.p) << "/"
                  << dec(c.q) << '\n';
    return kExitOk;
}

void q1_into(ordered_json& j, const Quality1& q1) {
    j["q1_lo"] = fmt6(q1.lo);
    j["q1_hi"] = fmt6(q1.hi);
    j["q1_status"] = name_of(q1.status);
    j["hit_q1"] = name_of(q1.hit);
}

int cmd_series(const Options& opt) {
    RootTarget root{Bigint(opt.k_str), opt.s};
    const auto rep = quality_series(root, opt.depth, opt.epsilons, opt.effort());

    if (opt.ndjson()) {
        ordered_json head;
        head["root_k"] = dec(root.k);
        head["root_s"] = root.s;
        head["depth"] = rep.depth;
        std::cout << head.dump() << '\n';
        for (const auto& row : rep.rows) {
            ordered_json j;
            j["n"] = row.n;
            j["b_next"] = row.b_next ? ordered_json(dec(*row.b_next)) : ordered_json(nullptr);
            j["d_digits"] = row.d_digits;
            q1_into(j, row.q1);
            j["q2"] = fmt6(row.q2);
            j["hit_q2"] = row.hit_q2;
            j["q3"] = row.q3 ? ordered_json(fmt6(*row.q3)) : ordered_json(nullptr);
            j["k_needed"] = k_needed_json(row.probes);
            std::cout << j.dump() << '\n';
        }
        ordered_json s;
        s["max_q2"] = fmt6(rep.summary.max_q2);
        s["argmax_q2"] = rep.summary.argmax_q2;
        s["q2_final"] = fmt6(rep.summary.q2_final);
        s["max_coefficient"] = dec(rep.summary.max_coefficient);
        ordered_json sup = ordered_json::object();
        for (const auto& kn : rep.summary.sup_k_needed)
            sup[fmt6(kn.epsilon)] = ordered_json::array({fmt6(kn.sup), kn.argmax});
        s["sup_k_needed"] = sup;
        ordered_json out;
        out["summary"] = s;
        std::cout << out.dump() << '\n';
        return kExitOk;
    }

    std::cout << "series for " << dec(root.k) << "^(1/" << root.s << "), depth " << rep.depth
              << "\n\n" << std::setw(4) << "n" << std::setw(10) << "b_next" << std::setw(8)
              << "|d|dig" << "  " << std::setw(30) << std::left << "q1" << std::setw(10) << "q2"
              << std::right << '\n';
    for (const auto& row : rep.rows) {
        std::cout << std::setw(4) << row.n << std::setw(10)
                  << (row.b_next ? dec(*row.b_next) : "?") << std::setw(8) << row.d_digits
                  << "  ";
        std::string q1s;
        if (row.q1.status == Quality1Status::Exact)
            q1s = fmt6(row.q1.value()) + " (exact)";
        else
            q1s = "[" + fmt6(row.q1.lo) + ", " + fmt6(row.q1.hi) + "] (" +
                  name_of(row.q1.status) + ", hit " + name_of(row.q1.hit) + ")";
        std::cout << std::setw(30) << std::left << q1s << std::setw(9) << std::left
                  << (fmt6(row.q2) + (row.hit_q2 ? "*" : "")) << std::right;
        if (row.q3)
            std::cout << "  q3=" << fmt6(*row.q3);
        for (const auto& p : row.probes)
            std::cout << "  K(" << fmt6(p.epsilon) << ")=" << fmt6(p.k_needed);
        std::cout << '\n';
    }
    std::cout << "\nmax q2 " << fmt6(rep.summary.max_q2) << " at n=" << rep.summary.argmax_q2
              << ", final q2 " << fmt6(rep.summary.q2_final) << ", max coefficient "
              << dec(rep.summary.max_coefficient) << '\n';
    for (const auto& kn : rep.summary.sup_k_needed)
        std::cout << "sup K(" << fmt6(kn.epsilon) << ") = " << fmt6(kn.sup)
                  << " at n=" << kn.argmax << '\n';
    return kExitOk;
}

int cmd_hunt(const Options& opt) {
    if (opt.store_path.empty())
        throw std::invalid_argument("hunt: --store is required");
    HuntConfig cfg;
    cfg.k_min = Bigint(opt.k_min_str);
    cfg.k_max = Bigint(opt.k_max_str);
    cfg.s_min = opt.s_min;
    cfg.s_max = opt.s_max;
    cfg.depth = opt.depth;
    cfg.kind = opt.kind == "q1" ? QualityKind::Q1 : QualityKind::Q2;
    cfg.min_quality = opt.min_quality;
    cfg.effort = opt.effort();
    cfg.workers = opt.workers;

    const auto outcome = run_hunt(cfg, opt.fixed_clock);

    HitStore store(opt.store_path);
    size_t appended = 0, duplicates = 0;
    for (const auto& h : outcome.hits) {
        if (store.append(h))
            ++appended;
        else
            ++duplicates;
    }
    // Store delta varies between reruns; it goes to stderr so the machine
    // stream stays byte-identical for identical scans.
    std::cerr << "store " << opt.store_path << ": " << appended << " new, " << duplicates
              << " duplicates skipped\n";

    if (opt.ndjson()) {
        for (const auto& h : outcome.hits)
            std::cout << to_json(h).dump() << '\n';
        ordered_json s;
        s["roots_scanned"] = outcome.roots_scanned;
        s["roots_skipped"] = outcome.roots_skipped;
        s["equations"] = outcome.equations;
        s["hits"] = outcome.hits.size();
        ordered_json out;
        out["summary"] = s;
        std::cout << out.dump() << '\n';
        return kExitOk;
    }

    for (const auto& h : outcome.hits) {
        std::cout << "hit " << dec(h.k) << "^(1/" << h.s << ") n=" << h.n << "  " << dec(h.a)
                  << " + " << dec(h.b) << " = " << dec(h.c) << "  q2=" << fmt6(h.q2);
        if (h.q1.status == Quality1Status::Exact)
            std::cout << "  q1=" << fmt6(h.q1.value());
        else
            std::cout << "  q1=[" << fmt6(h.q1.lo) << ", " << fmt6(h.q1.hi) << "] hit "
                      << name_of(h.q1.hit);
        std::cout << '\n';
    }
    std::cout << "scanned " << outcome.roots_scanned << " roots (" << outcome.roots_skipped
              << " perfect powers skipped), " << outcome.equations << " equations, "
              << outcome.hits.size() << " hits; " << appended << " new, " << duplicates
              << " duplicates skipped\n";
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    const Bigint a(opt.a_str), b(opt.b_str), c(opt.c_str);
    if (a < 1 || b < 1 || c < 1)
        throw std::invalid_argument("verify: a, b, c must be positive");
    if (a + b != c) {
        std::cerr << "imbalance: " << dec(a) << " + " << dec(b) << " = " << dec(a + b)
                  << " != " << dec(c) << '\n';
        return kExitComputation;
    }
    const auto red = coprime_reduce(a, b, c);
    const auto q1 = quality1_triple(a, b, c, opt.effort());

    if (opt.ndjson()) {
        ordered_json j;
        j["a"] = dec(a);
        j["b"] = dec(b);
        j["c"] = dec(c);
        j["balanced"] = true;
        j["coprime"] = red.is_real_abc;
        j["rad_lower"] = dec(q1.rad_lower);
        j["rad_upper"] = dec(q1.rad_upper);
        q1_into(j, q1);
        std::cout << j.dump() << '\n';
        return kExitOk;
    }
    std::cout << dec(a) << " + " << dec(b) << " = " << dec(c) << '\n'
              << "coprime: " << (red.is_real_abc ? "yes" : "no") << '\n';
    if (q1.status == Quality1Status::Exact)
        std::cout << "rad(abc) = " << dec(q1.rad_lower) << "\nquality1 = " << fmt6(q1.value())
                  << " (exact)\n";
    else
        std::cout << "rad(abc) in [" << dec(q1.rad_lower) << ", " << dec(q1.rad_upper) << "]\n"
                  << "quality1 in [" << fmt6(q1.lo) << ", " << fmt6(q1.hi) << "] ("
                  << name_of(q1.status) << ")\n";
    std::cout << "abc hit: " << name_of(q1.hit) << '\n';
    return kExitOk;
}

int cmd_records(const Options& opt) {
    const auto table = load_record_table(opt.records_path);
    const auto entries = records_regression(table, opt.link_depth);
    bool ok = true;
    for (const auto& e : entries) {
        if (!e.gate_ok)
            ok = false;
        if (opt.ndjson()) {
            ordered_json j;
            j["label"] = e.spec.label;
            j["root_k"] = dec(e.spec.root_k);
            j["root_s"] = e.spec.root_s;
            j["a"] = dec(e.a);
            j["b"] = dec(e.b);
            j["c"] = dec(e.c);
            j["balance"] = e.balance == Balance::Verified ? "verified" : "mismatch";
            j["linked"] = e.linkage == Linkage::LinkedAtN;
            j["link_n"] = e.linkage == Linkage::LinkedAtN ? ordered_json(e.link_n)
                                                          : ordered_json(nullptr);
            j["asserted"] = e.spec.assert_balance || e.spec.assert_link_n.has_value();
            j["ok"] = e.gate_ok;
            std::cout << j.dump() << '\n';
        } else {
            std::cout << e.spec.label << ": root " << dec(e.spec.root_k) << "^(1/"
                      << e.spec.root_s << "), balance "
                      << (e.balance == Balance::Verified ? "verified" : "MISMATCH");
            if (e.linkage == Linkage::LinkedAtN)
                std::cout << ", linked at n=" << e.link_n;
            else
                std::cout << ", not linked within depth " << opt.link_depth;
            std::cout << (e.gate_ok ? "" : "  [REGRESSION]") << '\n';
        }
    }
    return ok ? kExitOk : kExitRegression;
}

}  // namespace

namespace {

// Layered configuration: command-line flags, then ABCROOTS_* environment
// variables, then the optional key=value config file, then defaults.
// CLI11's own config support applies files ahead of the environment, so the
// env and file layers are resolved here instead.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config file not readable: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

struct Layered {
    const std::map<std::string, std::string>& file;

    // applies env or file value when the flag was not given
    void resolve(const CLI::Option* opt, const char* env_name, const std::string& key,
                 const std::function<void(const std::string&)>& apply) const {
        if (opt->count() > 0)
            return;
        if (const char* v = std::getenv(env_name)) {
            apply(v);
            return;
        }
        if (const auto it = file.find(key); it != file.end())
            apply(it->second);
    }
};

long parse_long(const std::string& what, const std::string& v) {
    try {
        size_t pos = 0;
        const long r = std::stol(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not an integer: " + v);
    }
}

double parse_double(const std::string& what, const std::string& v) {
    try {
        size_t pos = 0;
        const double r = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a number: " + v);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact continued fractions of integer roots and ABC-triple qualities"};
    app.fallthrough();
    Options opt;
    std::string config_path;

    app.add_option("--config", config_path, "key=value configuration file");
    auto* o_format = app.add_option("--format", opt.format, "output format")
                         ->check(CLI::IsMember({"table", "ndjson"}))
                         ->capture_default_str();
    auto* o_depth =
        app.add_option("--depth", opt.depth, "convergents per root")->capture_default_str();
    auto* o_effort = app.add_option("--factor-effort", opt.factor_effort,
                                    "Pollard-rho iteration cap for factorizations")
                         ->capture_default_str();
    auto* o_trial = app.add_option("--trial-bound", opt.trial_bound, "trial division bound")
                        ->capture_default_str();
    auto* o_eps = app.add_option("--epsilon", opt.epsilons, "WNEABC epsilon (repeatable)");
    auto* o_store = app.add_option("--store", opt.store_path, "hit store path");
    app.add_flag("--fixed-clock", opt.fixed_clock, "freeze record timestamps at the epoch");

    auto* cmd_exp = app.add_subcommand("expand", "expand k^(1/s) and print the convergents");
    cmd_exp->add_option("-k,--k", opt.k_str, "radicand k >= 2")->required();
    cmd_exp->add_option("-s,--s", opt.s, "root degree s >= 2")->required();
    cmd_exp->add_option("--terms", opt.terms, "number of coefficients")->capture_default_str();

    auto* cmd_ser = app.add_subcommand("series", "per-convergent quality report for one root");
    cmd_ser->add_option("-k,--k", opt.k_str, "radicand k >= 2")->required();
    cmd_ser->add_option("-s,--s", opt.s, "root degree s >= 2")->required();

    auto* cmd_hnt = app.add_subcommand("hunt", "scan a (k, s) grid for quality hits");
    cmd_hnt->add_option("--k-min", opt.k_min_str)->required();
    cmd_hnt->add_option("--k-max", opt.k_max_str)->required();
    cmd_hnt->add_option("--s-min", opt.s_min)->required();
    cmd_hnt->add_option("--s-max", opt.s_max)->required();
    cmd_hnt->add_option("--kind", opt.kind, "quality the threshold applies to")
        ->check(CLI::IsMember({"q1", "q2"}))
        ->capture_default_str();
    cmd_hnt->add_option("--min", opt.min_quality, "minimum quality")->capture_default_str();
    auto* o_workers = cmd_hnt->add_option("--workers", opt.workers, "parallel root scanners")
                          ->capture_default_str();

    auto* cmd_ver = app.add_subcommand("verify", "check one a + b = c triple");
    cmd_ver->add_option("-a,--a", opt.a_str, "addend a")->required();
    cmd_ver->add_option("-b,--b", opt.b_str, "addend b")->required();
    cmd_ver->add_option("-c,--c", opt.c_str, "sum c")->required();

    auto* cmd_rec = app.add_subcommand("records", "regression against the bundled record table");
    auto* o_records = cmd_rec->add_option("--records", opt.records_path, "record table path")
                          ->capture_default_str();
    auto* o_link = cmd_rec->add_option("--link-depth", opt.link_depth, "linkage search depth")
                       ->capture_default_str();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (config_path.empty())
            if (const char* v = std::getenv("ABCROOTS_CONFIG"))
                config_path = v;
        std::map<std::string, std::string> file_cfg;
        if (!config_path.empty())
            file_cfg = read_config_file(config_path);
        const Layered layer{file_cfg};

        layer.resolve(o_format, "ABCROOTS_FORMAT", "format", [&](const std::string& v) {
            if (v != "table" && v != "ndjson")
                throw std::invalid_argument("format: must be table or ndjson, got " + v);
            opt.format = v;
        });
        layer.resolve(o_depth, "ABCROOTS_DEPTH", "depth", [&](const std::string& v) {
            opt.depth = static_cast<int>(parse_long("depth", v));
        });
        layer.resolve(o_effort, "ABCROOTS_FACTOR_EFFORT", "factor-effort",
                      [&](const std::string& v) {
                          opt.factor_effort =
                              static_cast<unsigned long>(parse_long("factor-effort", v));
                      });
        layer.resolve(o_trial, "ABCROOTS_TRIAL_BOUND", "trial-bound", [&](const std::string& v) {
            opt.trial_bound = static_cast<unsigned long>(parse_long("trial-bound", v));
        });
        layer.resolve(o_eps, "ABCROOTS_EPSILON", "epsilon", [&](const std::string& v) {
            opt.epsilons.clear();
            std::istringstream in(v);
            std::string part;
            while (std::getline(in, part, ','))
                opt.epsilons.push_back(parse_double("epsilon", part));
        });
        layer.resolve(o_store, "ABCROOTS_STORE", "store",
                      [&](const std::string& v) { opt.store_path = v; });
        layer.resolve(o_workers, "ABCROOTS_WORKERS", "workers", [&](const std::string& v) {
            opt.workers = static_cast<unsigned>(parse_long("workers", v));
        });
        layer.resolve(o_records, "ABCROOTS_RECORDS", "records",
                      [&](const std::string& v) { opt.records_path = v; });
        layer.resolve(o_link, "ABCROOTS_LINK_DEPTH", "link-depth", [&](const std::string& v) {
            opt.link_depth = static_cast<int>(parse_long("link-depth", v));
        });
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (cmd_exp->parsed())
            return cmd_expand(opt);
        if (cmd_ser->parsed())
            return cmd_series(opt);
        if (cmd_hnt->parsed())
            return cmd_hunt(opt);
        if (cmd_ver->parsed())
            return cmd_verify(opt);
        if (cmd_rec->parsed())
            return cmd_records(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}
