// manin: point counts, predicted constants and identity checks for the surfaces S_a.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 cross-method mismatch.

#include <omp.h>

#include <charconv>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "manin/constant.hpp"
#include "manin/counting.hpp"
#include "manin/eta.hpp"
#include "manin/records.hpp"
#include "manin/verify.hpp"

using namespace manin;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kUsage = 2, kMismatch = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12 significant digits, independent of the locale
std::string num(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
    return std::string(buf, r.ptr);
}

Rational parse_B(const std::string& s) {
    Rational B;
    if (s.empty() || B.set_str(s, 10) != 0 || B.get_den() == 0) throw UsageError("--B must be an integer or p/q, got '" + s + "'");
    B.canonicalize();
    return B;
}

void check_a(i64 a) {
    try {
        require_nonsquare(a);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
}

json estimate_json(const EulerEstimate& e) { return {{"value", e.value}, {"bound", e.bound}, {"cut", e.cut}}; }

json integral_json(const RegionIntegral& r) {
    json j = {{"method", to_string(r.method)}, {"value", r.value}, {"error_estimate", r.error_estimate}};
    if (r.method == IntegralMethod::montecarlo)
        j["samples"] = r.samples;
    else
        j["tolerance"] = r.tolerance;
    return j;
}

json breakdown_json(const ConstantBreakdown& b, std::uint64_t seed) {
    json local = json::array();
    for (const auto& d : b.bad_primes)
        local.push_back({{"p", d.p}, {"omega_p", d.value.get_str()}, {"value", d.value.get_d()}});
    json mc = integral_json(b.omega_inf_mc);
    mc["seed"] = seed;
    return {{"a", b.a},
            {"alpha", b.alpha.get_str()},
            {"field", {{"r1", b.field.r1}, {"r2", b.field.r2}, {"h", b.field.h}, {"R", b.field.R},
                       {"mu_order", b.field.mu_order}, {"disc", b.field.disc}, {"rho", b.field.rho()}}},
            {"field_factor", b.field_factor},
            {"omega_inf", integral_json(b.omega_inf)},
            {"omega_inf_chart", integral_json(b.omega_inf_chart)},
            {"omega_inf_mc", mc},
            {"omega_p_bad", local},
            {"L1_chi", estimate_json(b.L1_chi)},
            {"finite_product", estimate_json(b.finite_product)},
            {"c", b.c},
            {"c_bound", b.c_bound}};
}

struct Common {
    int jobs = 0;
    std::string format = "json";
    std::string cache_dir;
    bool no_cache = false;
};

struct ConstantFlags {
    i64 prime_cut = 1'000'000;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 1;
    double tolerance = 1e-10;
    ConstantOptions options() const { return {prime_cut, mc_samples, seed, tolerance}; }
    json params() const {
        return {{"prime_cut", prime_cut}, {"samples", mc_samples}, {"seed", seed}, {"tolerance", tolerance}};
    }
};

void add_common(CLI::App* sub, Common& c, bool with_cache) {
    sub->add_option("--jobs", c.jobs, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    if (with_cache) {
        sub->add_option("--cache-dir", c.cache_dir, "result cache directory (default $MANIN_CACHE_DIR or .manin-cache)");
        sub->add_flag("--no-cache", c.no_cache, "neither read nor write the cache");
    }
}

void add_constant(CLI::App* sub, ConstantFlags& f) {
    sub->add_option("--prime-cut", f.prime_cut, "primes used in the accelerated Euler product")->check(CLI::Range(i64{100}, i64{1'000'000'000}));
    sub->add_option("--mc-samples", f.mc_samples, "Monte Carlo samples for omega_inf")->check(CLI::PositiveNumber);
    sub->add_option("--seed", f.seed, "Monte Carlo seed");
    sub->add_option("--tolerance", f.tolerance, "quadrature and L(1, chi) tolerance")->check(CLI::PositiveNumber);
}

RunCache open_cache(const Common& c) { return RunCache(c.cache_dir.empty() ? RunCache::default_dir() : std::filesystem::path(c.cache_dir)); }

// Looks up (command, params) in the cache, else computes and stores.
json cached(const Common& c, const std::string& command, const json& params, const std::function<json()>& compute) {
    if (c.no_cache) return compute();
    RunCache cache = open_cache(c);
    if (auto hit = cache.lookup(command, params)) {
        std::cerr << "served from cache " << cache.file().string() << '\n';
        return hit->result;
    }
    RunRecord r;
    r.command = command;
    r.parameters = params;
    r.result = compute();
    r.timestamp = utc_timestamp();
    cache.store(r);
    return r.result;
}

int cmd_count(i64 a, const std::string& B_str, const std::string& method, const Common& c) {
    check_a(a);
    Rational B = parse_B(B_str);
    json params = {{"a", a}, {"B", B.get_str()}, {"method", method}};
    json res = cached(c, "count", params, [&] {
        json out = json::array();
        for (std::string m : {"direct", "torsor"}) {
            if (method != "both" && method != m) continue;
            CountResult r = m == "direct" ? direct_count(a, B) : torsor_count(a, B);
            out.push_back({{"method", m}, {"count", r.count}, {"elapsed", r.elapsed},
                           {"visited", r.stats.visited}, {"pruned", r.stats.pruned}});
        }
        return json{{"counts", out}};
    });
    const json& counts = res.at("counts");
    if (c.format == "csv") {
        std::cout << "a,B,method,count,elapsed\n";
        for (const auto& r : counts)
            std::cout << a << ',' << B.get_str() << ',' << r["method"].get<std::string>() << ',' << r["count"].get<i64>()
                      << ',' << num(r["elapsed"].get<double>()) << '\n';
    } else {
        std::cout << json{{"a", a}, {"B", B.get_str()}, {"counts", counts}}.dump(2) << '\n';
    }
    if (counts.size() == 2 && counts[0]["count"] != counts[1]["count"]) {
        std::cerr << "mismatch: direct " << counts[0]["count"] << " vs torsor " << counts[1]["count"] << '\n';
        return kMismatch;
    }
    return kOk;
}

int cmd_predict(i64 a, const ConstantFlags& f, const Common& c) {
    check_a(a);
    json params = f.params();
    params["a"] = a;
    json b = cached(c, "predict", params, [&] { return breakdown_json(predict_constant(a, f.options()), f.seed); });
    if (c.format == "csv") {
        std::cout << "factor,value,error\n";
        std::cout << "alpha," << b["alpha"].get<std::string>() << ",0\n";
        std::cout << "field_factor," << num(b["field_factor"].get<double>()) << ",0\n";
        for (std::string k : {"omega_inf", "omega_inf_chart", "omega_inf_mc"})
            std::cout << k << ',' << num(b[k]["value"].get<double>()) << ',' << num(b[k]["error_estimate"].get<double>()) << '\n';
        for (const auto& d : b["omega_p_bad"])
            std::cout << "omega_" << d["p"].get<i64>() << ',' << d["omega_p"].get<std::string>() << ",0\n";
        for (std::string k : {"L1_chi", "finite_product"})
            std::cout << k << ',' << num(b[k]["value"].get<double>()) << ',' << num(b[k]["bound"].get<double>()) << '\n';
        std::cout << "c," << num(b["c"].get<double>()) << ',' << num(b["c_bound"].get<double>()) << '\n';
    } else {
        std::cout << b.dump(2) << '\n';
    }
    return kOk;
}

int cmd_verify(const std::string& suite, bool quick, bool fault) {
    VerifyReport rep = verify(suite, {quick, fault});
    std::cout << rep.to_json().dump(2) << '\n';
    for (const auto& s : rep.suites)
        std::cerr << s.name << ": " << s.checks - static_cast<i64>(s.failures.size()) << '/' << s.checks << " passed in "
                  << num(s.elapsed) << " s\n";
    for (const auto& s : rep.suites)
        for (const auto& e : s.failures) std::cerr << "FAIL " << e.suite << ' ' << e.id << ": " << e.detail << '\n';
    return rep.ok() ? kOk : kVerifyFailed;
}

std::vector<i64> parse_B_list(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || p != item.data() + item.size() || v < 2 || v != static_cast<double>(static_cast<i64>(v)))
            throw UsageError("--B-list entries must be integers >= 2, got '" + item + "'");
        out.push_back(static_cast<i64>(v));
    }
    if (out.empty()) throw UsageError("--B-list is empty");
    return out;
}

int cmd_compare(i64 a, const std::string& B_list, const ConstantFlags& f, const Common& c) {
    check_a(a);
    std::vector<i64> Bs = parse_B_list(B_list);
    json params = f.params();
    params["a"] = a;
    params["B_list"] = Bs;
    json res = cached(c, "compare", params, [&] {
        ConstantBreakdown b = predict_constant(a, f.options());
        json rows = json::array();
        for (const auto& r : compare(a, Bs, b))
            rows.push_back({{"B", r.B}, {"count", r.count_direct}, {"count_direct", r.count_direct},
                            {"count_torsor", r.count_torsor}, {"prediction", r.prediction}, {"ratio", r.ratio}});
        return json{{"a", a}, {"c", b.c}, {"rows", rows}};
    });
    if (c.format == "csv") {
        std::cout << "B,count,prediction,ratio\n";
        for (const auto& r : res["rows"])
            std::cout << r["B"].get<i64>() << ',' << r["count"].get<i64>() << ',' << num(r["prediction"].get<double>())
                      << ',' << num(r["ratio"].get<double>()) << '\n';
    } else {
        std::cout << res.dump(2) << '\n';
    }
    for (const auto& r : res["rows"])
        if (r["count_direct"] != r["count_torsor"]) {
            std::cerr << "mismatch at B=" << r["B"] << '\n';
            return kMismatch;
        }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point counts and leading constants for the quartic del Pezzo surfaces S_a"};
    app.require_subcommand(1);

    i64 a = 0;
    std::string B = "100", method = "both", B_list = "100,1000,10000", suite = "all";
    bool quick = false, fault = false;
    Common common;
    ConstantFlags cf;

    auto* count = app.add_subcommand("count", "count points of height <= B on U");
    count->add_option("--a", a, "surface parameter (nonzero, not a square)")->required();
    count->add_option("--B", B, "height bound, integer or p/q");
    count->add_option("--method", method, "counter")->check(CLI::IsMember({"direct", "torsor", "both"}));
    add_common(count, common, true);

    auto* predict = app.add_subcommand("predict", "assemble the predicted leading constant");
    predict->add_option("--a", a, "surface parameter")->required();
    add_constant(predict, cf);
    add_common(predict, common, true);

    auto* ver = app.add_subcommand("verify", "run identity suites");
    ver->add_option("--suite", suite, "suite")->check(CLI::IsMember({"eta", "densities", "theta", "moebius", "torsor", "all"}));
    ver->add_flag("--quick", quick, "reduced grids");
    ver->add_flag("--inject-fault", fault, "corrupt one eta value (tests the failure path)")->group("Debug");
    add_common(ver, common, false);

    auto* cmp = app.add_subcommand("compare", "counts against c B (log B)^4");
    cmp->add_option("--a", a, "surface parameter")->required();
    cmp->add_option("--B-list", B_list, "comma-separated height bounds");
    add_constant(cmp, cf);
    add_common(cmp, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (common.jobs > 0) omp_set_num_threads(common.jobs);
    try {
        if (*count) return cmd_count(a, B, method, common);
        if (*predict) return cmd_predict(a, cf, common);
        if (*ver) return cmd_verify(suite, quick, fault);
        if (*cmp) return cmd_compare(a, B_list, cf, common);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
