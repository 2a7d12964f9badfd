// Command-line front end: resolves a config (defaults < --config file < flags), runs one
// experiment and emits {experiment, config, results, diagnostics, runtime_ms} as JSON.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "twosq/ap_sums.hpp"
#include "twosq/aux_sums.hpp"
#include "twosq/bins.hpp"
#include "twosq/constants.hpp"
#include "twosq/errors.hpp"
#include "twosq/functionals.hpp"
#include "twosq/quantum.hpp"
#include "twosq/report.hpp"
#include "twosq/sieve_sums.hpp"

using namespace twosq;

namespace {

enum class Type { u64, u64_list, i64_list, real, real_list, text, flag };

struct Param {
    std::string name;
    Type type;
    std::string fallback;
    std::string help;
};

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

// Accepts "1000000", "1e6", "2.5e3".
uint64_t parse_u64(const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        if (s.find_first_of(".eE") == std::string::npos) {
            const unsigned long long v = std::stoull(s, &used);
            require(used == s.size() && s[0] != '-', "not a nonnegative integer: '" + s + "'");
            return v;
        }
        x = std::stod(s, &used);
    } catch (const std::logic_error&) {
        throw ValidationError("not a number: '" + s + "'");
    }
    require(used == s.size(), "not a number: '" + s + "'");
    require(x >= 0 && x < 1.8e19 && std::floor(x) == x, "not a nonnegative integer: '" + s + "'");
    return uint64_t(x);
}

int64_t parse_i64(const std::string& s) {
    if (!s.empty() && s[0] == '-') return -int64_t(parse_u64(s.substr(1)));
    return int64_t(parse_u64(s));
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::logic_error&) {
        throw ValidationError("not a number: '" + s + "'");
    }
    require(used == s.size() && std::isfinite(x), "not a number: '" + s + "'");
    return x;
}

std::string json_to_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : ",") + json_to_text(e);
        return s;
    }
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw ValidationError("unsupported config value " + v.dump());
}

class Config {
public:
    Config(const std::vector<Param>& params, std::map<std::string, std::string> values)
        : params_(params), values_(std::move(values)) {}

    const std::string& text(const std::string& name) const { return values_.at(name); }
    uint64_t u64(const std::string& name) const { return parse_u64(text(name)); }
    double real(const std::string& name) const { return parse_real(text(name)); }
    bool flag(const std::string& name) const { return text(name) == "true" || text(name) == "1"; }
    std::vector<uint64_t> u64_list(const std::string& name) const {
        std::vector<uint64_t> out;
        for (const auto& s : split(text(name))) out.push_back(parse_u64(s));
        return out;
    }
    std::vector<int64_t> i64_list(const std::string& name) const {
        std::vector<int64_t> out;
        for (const auto& s : split(text(name))) out.push_back(parse_i64(s));
        return out;
    }
    std::vector<double> real_list(const std::string& name) const {
        std::vector<double> out;
        for (const auto& s : split(text(name))) out.push_back(parse_real(s));
        return out;
    }

    // Typed view with defaults materialized; also validates every value parses.
    json resolved() const {
        json j = json::object();
        for (const auto& p : params_) {
            const std::string& n = p.name;
            switch (p.type) {
                case Type::u64: j[n] = text(n).empty() ? json(nullptr) : json(u64(n)); break;
                case Type::u64_list: j[n] = u64_list(n); break;
                case Type::i64_list: j[n] = i64_list(n); break;
                case Type::real: j[n] = real(n); break;
                case Type::real_list: j[n] = real_list(n); break;
                case Type::text: j[n] = text(n); break;
                case Type::flag: j[n] = flag(n); break;
            }
        }
        return j;
    }

private:
    const std::vector<Param>& params_;
    std::map<std::string, std::string> values_;
};

struct Report {
    json results = json::array();
    json diagnostics = json::array();
    std::vector<std::string> csv;
};

using Handler = std::function<void(const Config&, Report&)>;

struct Command {
    std::string name;
    std::string help;
    std::vector<Param> params;
    Handler run;
};

// bin_index:size pairs, e.g. "1:1,2:2"
BinPartition parse_bins(const std::string& spec, std::size_t k) {
    if (spec.empty()) return BinPartition::from_sizes({k});
    std::map<std::size_t, std::size_t> by_index;
    for (const auto& item : split(spec)) {
        const auto parts = split(item, ':');
        require(parts.size() == 2, "bins entry '" + item + "' is not index:size");
        const auto idx = parse_u64(parts[0]);
        require(idx >= 1, "bin indices start at 1");
        require(by_index.emplace(idx, parse_u64(parts[1])).second, "bin index repeated");
    }
    std::vector<std::size_t> sizes;
    std::size_t expect = 1;
    for (const auto& [idx, size] : by_index) {
        require(idx == expect++, "bin indices must be consecutive from 1");
        sizes.push_back(size);
    }
    return BinPartition::from_sizes(sizes);
}

uint64_t table_limit_guard(uint64_t limit) {
    if (limit > 400'000'000) throw ResourceGuardError("factor table limit above 4e8 refused by the CLI", double(limit) * 4.0);
    return limit;
}

json report_row(const CorrelationReport& r) { return to_json(r); }

void add_trend(Report& rep, const std::vector<double>& errs, const std::string& label) {
    if (errs.size() < 2) return;
    rep.diagnostics.push_back({{"trend", label}, {"rel_errors", errs}, {"inversions", count_inversions(errs)}});
}

// ---- handlers ----

void cmd_build_table(const Config& c, Report& rep) {
    const uint64_t limit = table_limit_guard(c.u64("limit"));
    require(limit >= 2, "limit must be >= 2");
    FactorTable t(limit);
    rep.results.push_back({{"limit", limit},
                           {"primes", t.primes().size()},
                           {"largest_prime", t.primes().empty() ? 0 : t.primes().back()}});
    if (!c.text("csv").empty()) {
        require(limit <= 10'000'000, "CSV export of the table is limited to 1e7 rows");
        rep.csv.push_back("n,smallest_prime_factor");
        for (uint64_t n = 2; n <= limit; ++n) rep.csv.push_back(std::to_string(n) + "," + std::to_string(t.smallest_prime_factor(n)));
    }
}

void cmd_ap_sums(const Config& c, Report& rep) {
    const std::string sum = c.text("sum");
    APSum kind;
    if (sum == "r") kind = APSum::r;
    else if (sum == "rr") kind = APSum::rr;
    else if (sum == "r2") kind = APSum::r2;
    else throw ValidationError("--sum must be r, rr or r2");
    const auto Ns = c.u64_list("N");
    require(!Ns.empty(), "--N is required");
    APQuery base;
    base.q = c.u64("q");
    base.a = c.u64("a");
    base.d = c.u64("d");
    base.d1 = c.u64("d1");
    base.d2 = c.u64("d2");
    base.h = c.u64("h");
    validate(base, kind);
    uint64_t top = 0;
    for (auto N : Ns) top = std::max(top, N);
    FactorTable table(table_limit_guard(std::max<uint64_t>(top + base.h, 2)));
    std::vector<double> errs;
    for (auto N : Ns) {
        APQuery q = base;
        q.N = N;
        const auto r = correlate(table, q, kind);
        errs.push_back(r.rel_error);
        rep.results.push_back(report_row(r));
        rep.csv.push_back(std::to_string(N) + "," + std::to_string(r.empirical) + "," + std::to_string(r.predicted_main) +
                          "," + std::to_string(r.rel_error));
    }
    rep.csv.insert(rep.csv.begin(), "N,empirical,predicted,rel_error");
    add_trend(rep, errs, to_string(kind));
    if (kind == APSum::rr)
        rep.diagnostics.push_back(
            {{"gamma_singular_series", gamma_singular_series(base.d1, base.d2, base.q, c.u64("prime-bound")).value}});
}

void cmd_aux_sums(const Config& c, Report& rep) {
    const std::string which = c.text("sum");
    std::vector<AuxSum> sums;
    if (which == "all") sums = {AuxSum::x, AuxSum::y, AuxSum::z1, AuxSum::z2};
    else if (which == "x") sums = {AuxSum::x};
    else if (which == "y") sums = {AuxSum::y};
    else if (which == "z1") sums = {AuxSum::z1};
    else if (which == "z2") sums = {AuxSum::z2};
    else throw ValidationError("--sum must be x, y, z1, z2 or all");
    rep.csv.push_back("sum,v,empirical,predicted,rel_error");
    for (auto s : sums) {
        std::vector<double> errs;
        for (auto v : c.u64_list("v")) {
            const auto r = aux_report(make_aux_params(v, c.u64("W")), s);
            errs.push_back(r.rel_error);
            rep.results.push_back(report_row(r));
            rep.csv.push_back(std::string(to_string(s)) + "," + std::to_string(v) + "," + std::to_string(r.empirical) +
                              "," + std::to_string(r.predicted_main) + "," + std::to_string(r.rel_error));
        }
        add_trend(rep, errs, to_string(s));
    }
}

void cmd_functionals(const Config& c, Report& rep) {
    const std::size_t k = c.u64("k");
    const double beta = c.real("beta");
    const auto spec = c.text("bins").empty() ? TestFunctionSpec::single(k, beta) : [&] {
        std::vector<Bin> bins;
        for (const auto& item : split(c.text("bins"))) {
            const auto parts = split(item, ':');
            require(parts.size() == 2, "functional bins are size:beta pairs");
            bins.push_back({std::size_t(parse_u64(parts[0])), parse_real(parts[1])});
        }
        return TestFunctionSpec(bins);
    }();
    const bool check = c.text("check") == "closed-vs-quadrature";
    require(check || c.text("check") == "none", "--check must be closed-vs-quadrature or none");
    const std::size_t m = c.u64("m"), l = c.u64("l");
    for (auto kind : {FunctionalKind::L, FunctionalKind::L_m, FunctionalKind::L_ml}) {
        if (kind == FunctionalKind::L_ml && spec.k() < 2) continue;
        const auto closed = functional_value(spec, kind, FunctionalMethod::closed_form, m, l);
        json row = {{"functional", to_string(kind)}, {"closed_form", closed.value}};
        if (check) {
            const auto quad = functional_value(spec, kind, FunctionalMethod::quadrature, m, l);
            row["quadrature"] = quad.value;
            row["abs_diff"] = std::abs(closed.value - quad.value);
        }
        rep.results.push_back(row);
    }
    if (spec.bins().size() == 1) {
        rep.diagnostics.push_back({{"ratio_m_closed", ratio_m_closed(spec.k(), spec.bins()[0].beta)},
                                   {"ratio_ml_closed", ratio_ml_closed(spec.k(), spec.bins()[0].beta)}});
    }
}

void cmd_sieve_run(const Config& c, Report& rep) {
    const AdmissibleTuple tuple(c.i64_list("tuple"));
    const auto spec = TestFunctionSpec::single(tuple.size(), c.real("beta"));
    std::vector<SieveSum> sums;
    for (const auto& s : split(c.text("sums"))) {
        if (s == "S1") sums.push_back(SieveSum::S1);
        else if (s == "S2") sums.push_back(SieveSum::S2);
        else if (s == "S3") sums.push_back(SieveSum::S3);
        else if (s == "S4") sums.push_back(SieveSum::S4);
        else throw ValidationError("unknown sum '" + s + "'");
    }
    const auto Ns = c.u64_list("N");
    require(!Ns.empty(), "--N is required");
    uint64_t top = 0;
    for (auto N : Ns) top = std::max(top, N);
    const int64_t hmax = std::max<int64_t>(tuple.max(), 0);
    FactorTable factors(table_limit_guard(2 * top + uint64_t(hmax)));
    const std::size_t m = c.u64("m"), l = c.u64("l");
    rep.csv.push_back("N,sum,direct,predicted,ratio");
    for (auto sum : sums) {
        std::vector<double> errs;
        for (auto N : Ns) {
            const auto p = make_sieve_params(N, c.real("theta1"), c.real("theta2"), c.u64("D0"), c.flag("relaxed"));
            const auto table = WeightTable<double>::from_F(p, spec);
            const auto direct = s_direct(sum, p, tuple, table, factors, m, l);
            const double pred = s_predicted(sum, p, spec, m, l);
            const double ratio = pred == 0 ? 0.0 : direct.value / pred;
            errs.push_back(std::abs(ratio - 1));
            rep.results.push_back({{"N", N}, {"sum", to_string(sum)}, {"direct", direct.value}, {"predicted", pred},
                                   {"ratio", ratio}, {"R", p.R}, {"v", p.v}, {"W", p.W}, {"weights", table.size()},
                                   {"terms", direct.terms}, {"negative_rho", direct.negative_rho}});
            rep.csv.push_back(std::to_string(N) + "," + to_string(sum) + "," + std::to_string(direct.value) + "," +
                              std::to_string(pred) + "," + std::to_string(ratio));
            if (p.theta_constraint_relaxed && sum == sums.front())
                rep.diagnostics.push_back({{"N", N}, {"warning", "theta1 + theta2 >= 1/18 accepted under --relaxed"}});
        }
        add_trend(rep, errs, std::string(to_string(sum)) + " |ratio - 1|");
    }
    rep.diagnostics.push_back({{"caveat", "the o(1) rate of the S-sum asymptotics is unquantified; ratios are trend data"}});
}

PrimeDoubleRule prime_rule(const std::string& name) {
    if (name == "inv_p") return [](uint64_t p) { return 1.0 / double(p); };
    if (name == "inv_p2") return [](uint64_t p) { return 1.0 / (double(p) * double(p)); };
    if (name == "zero") return [](uint64_t) { return 0.0; };
    throw ValidationError("unknown prime rule '" + name + "' (inv_p, inv_p2, zero)");
}

void cmd_tech_sum(const Config& c, Report& rep) {
    const std::string g = c.text("G");
    RealRule G;
    if (g == "one") G = [](double) { return 1.0; };
    else if (g == "linear") G = [](double x) { return 1 - x; };
    else if (g == "square") G = [](double x) { return (1 - x) * (1 - x); };
    else throw ValidationError("--G must be one, linear or square");
    const auto f = prime_rule(c.text("f"));
    std::vector<double> errs;
    for (auto R : c.u64_list("R")) {
        const auto r = tech_sum_check(R, c.u64("D0"), f, G, "tech_sum");
        errs.push_back(r.rel_error);
        rep.results.push_back(report_row(r));
    }
    add_trend(rep, errs, "tech_sum");
}

void cmd_c_gamma(const Config& c, Report& rep) {
    for (auto bound : c.u64_list("prime-bound")) {
        const auto r = c_gamma_check(c.u64("D0"), prime_rule(c.text("alpha")), bound);
        rep.results.push_back({{"prime_bound", r.prime_bound}, {"truncated", r.truncated}, {"accelerated", r.accelerated},
                               {"closed_form", r.closed_form}, {"alpha_correction", r.alpha_correction},
                               {"rel_gap", r.rel_gap}, {"slack", r.slack}});
    }
}

void cmd_certificate(const Config& c, Report& rep) {
    rep.csv.push_back("n,sum_of_two_squares,x,y");
    for (auto n : c.u64_list("n")) {
        const auto f = trial_factorize(n == 0 ? 1 : n);
        const bool in = n == 0 || is_sum_of_two_squares(f);
        json row = {{"n", n}, {"sum_of_two_squares", in}};
        json fac = json::array();
        if (n > 0)
            for (const auto& pp : f.factors) fac.push_back({pp.prime, pp.exponent});
        row["factorization"] = fac;
        const auto cert = two_square_certificate(n);
        ensure(cert.has_value() == in, "criterion and certificate search disagree");
        if (cert) {
            row["x"] = cert->first;
            row["y"] = cert->second;
            row["r2"] = n == 0 ? 1 : r2(f);
        }
        rep.results.push_back(row);
        rep.csv.push_back(std::to_string(n) + "," + (in ? "1" : "0") + "," + (cert ? std::to_string(cert->first) : "") +
                          "," + (cert ? std::to_string(cert->second) : ""));
    }
}

std::vector<WitnessRecord> run_witness(const Config& c, const std::vector<int64_t>& h, const BinPartition& part,
                                       std::size_t max_records) {
    require(!h.empty(), "--tuple is required");
    AdmissibleTuple checked(h);
    WitnessQuery q;
    q.N = c.u64("N");
    q.n_limit = c.u64("n-limit");
    q.W = c.u64("W");
    q.max_records = max_records;
    const uint64_t top = (q.n_limit ? q.n_limit : 2 * q.N) + uint64_t(std::max<int64_t>(checked.max(), 0));
    FactorTable factors(table_limit_guard(std::max<uint64_t>(top, 2)));
    return witness_search(q, h, part, factors);
}

void cmd_witness_search(const Config& c, Report& rep) {
    const auto h = c.i64_list("tuple");
    const auto part = parse_bins(c.text("bins"), h.size());
    const auto recs = run_witness(c, h, part, c.u64("max-records"));
    std::size_t verified = 0;
    for (const auto& r : recs) {
        const bool ok = verify_witness(r, h, part);
        verified += ok;
        json certs = json::array();
        for (const auto& [x, y] : r.certificates) certs.push_back({x, y});
        rep.results.push_back({{"n", r.n}, {"accepted", r.accepted}, {"chosen", r.chosen}, {"certificates", certs},
                               {"verified", ok}});
    }
    rep.csv.push_back("n,bin,h,x,y");
    for (auto& row : witness_csv(recs)) rep.csv.push_back(std::move(row));
    rep.diagnostics.push_back({{"records", recs.size()}, {"verified", verified}});
    ensure(verified == recs.size(), "a witness failed re-verification");
}

void cmd_pigeonhole(const Config& c, Report& rep) {
    const auto h = c.i64_list("tuple");
    const auto part = parse_bins(c.text("bins"), h.size());
    std::vector<PigeonholeRow> rows;
    for (std::size_t M = 1; M <= part.bins(); ++M) {
        const auto sub = part.truncated(M);
        const auto recs = run_witness(c, h, sub, c.u64("rows-per-M"));
        for (const auto& r : recs) {
            ensure(verify_witness(r, h, sub), "a witness failed re-verification");
            rows.push_back({r.n, r.chosen});
        }
        rep.diagnostics.push_back({{"M", M}, {"rows", recs.size()}});
    }
    const auto ext = pigeonhole_extract(rows);
    rep.results.push_back({{"a", ext.a}, {"n", ext.n}, {"depth", ext.depth}});
    if (ext.depth < part.bins())
        rep.diagnostics.push_back({{"warning", "extraction stopped before the last bin"}, {"depth", ext.depth}});
}

FamilyInputs family_inputs(const Config& c) {
    FamilyInputs in;
    in.rule = parse_family_rule(c.text("rule"));
    in.a = c.u64_list("a");
    in.M = c.u64_list("M");
    in.d = int(c.u64("d"));
    in.pad = int(c.u64("pad"));
    return in;
}

void cmd_quantum(const Config& c, Report& rep) {
    const std::string mode = c.text("mode");
    if (mode == "shell") {
        const auto s = enumerate_shell(c.u64("n"), int(c.u64("d")));
        rep.results.push_back({{"n", s.n}, {"d", s.d}, {"points", s.points.size()}});
        for (const auto& p : s.points) rep.csv.push_back(point_key(p));
        return;
    }
    const auto in = family_inputs(c);
    const int k = int(c.u64("k"));
    if (mode == "family") {
        const auto f = build_family(in, k);
        rep.results.push_back({{"rule", family_rule_name(f.rule)}, {"k", f.k}, {"dim", f.dim}, {"M", f.M},
                               {"points", f.points.size()}, {"block_count", f.block_count}, {"bc", f.bc},
                               {"normalized", true}});
        rep.csv.push_back("j,coordinates...,weight_num,weight_den");
        for (auto& row : family_csv(f)) rep.csv.push_back(std::move(row));
        const auto pc = prefix_clauses(std::vector<uint64_t>(in.a.begin(), in.a.begin() + k));
        rep.diagnostics.push_back({{"r2_increasing", pc.r2_increasing},
                                   {"r_square_dominates", pc.r_square_dominates},
                                   {"max_even_exponent", pc.max_even_exponent}});
        return;
    }
    if (mode == "btau") {
        const auto f = build_family(in, k);
        const auto tau = c.i64_list("tau");
        if (tau.empty()) {
            rep.results.push_back({{"b_tau", btau_json(all_b_tau(f))}});
        } else {
            const auto b = b_tau(f, tau);
            json row = {{"tau", tau}, {"value", b.value}};
            if (b.exact) row["exact"] = b.exact->get_str();
            rep.results.push_back(row);
        }
        return;
    }
    if (mode == "limits") {
        const auto tau = c.i64_list("tau");
        if (!tau.empty()) {
            const auto lim = ctau_limit(in, tau, int(c.u64("k-max")));
            json row = {{"tau", tau}, {"k_max", c.u64("k-max")}, {"value", lim.value}, {"delta", lim.delta}};
            if (lim.exact) row["exact"] = lim.exact->get_str();
            rep.results.push_back(row);
        }
        if (in.rule != FamilyRule::main) {
            const auto f = build_family(in, k);
            for (const auto& b : lower_bound_checks(f, c.real("epsilon")))
                rep.results.push_back({{"i", b.i}, {"computed", b.computed}, {"bound", b.bound}, {"holds", b.holds}});
            const double rho = c.real("rho");
            if (rho > 0) {
                rep.diagnostics.push_back({{"sigma_rho", sigma_rho(f, rho)}, {"rho", rho}});
                rep.diagnostics.push_back({{"lp_partial_sum", lp_partial_sum(f, c.real("epsilon"), rho)}, {"radius", rho}});
            }
        }
        return;
    }
    throw ValidationError("--mode must be shell, family, btau or limits");
}

void cmd_constants(const Config& c, Report& rep) {
    const auto& s = special_constants();
    auto est = [](const ConstantEstimate& e) {
        return json{{"value", e.value}, {"error_bound", e.error_bound}, {"truncation_point", e.truncation_point},
                    {"method", e.method}};
    };
    rep.results.push_back({{"L1_chi4", est(s.L1_chi4)},
                           {"euler_gamma", est(s.euler_gamma)},
                           {"zeta_prime_ratio_2", est(s.zeta_prime_ratio_2)},
                           {"L_prime_ratio_1", est(s.L_prime_ratio_1)},
                           {"A2", est(s.A2)}});
    for (auto b : c.u64_list("prime-bound")) rep.results.push_back({{"landau_ramanujan_A", est(landau_ramanujan_A(b))}});
}

std::vector<Command> commands() {
    const Param N{"N", Type::u64_list, "", "range top; comma list for sweeps (accepts 1e6)"};
    const Param tuple{"tuple", Type::i64_list, "0,4", "admissible shifts, comma separated"};
    const Param bins{"bins", Type::text, "", "bin_index:size pairs, e.g. 1:1,2:2 (default one bin)"};
    const Param W{"W", Type::u64, "1", "modulus for the residue restriction"};
    const Param nlimit{"n-limit", Type::u64, "0", "exclusive upper end of n (0 means 2N)"};
    const Param family[] = {{"rule", Type::text, "main", "main, ql_i or ql_ii"},
                            {"a", Type::u64_list, "", "distinct a_j >= 1"},
                            {"M", Type::u64_list, "", "shell M_k per stage, or one value for all"},
                            {"k", Type::u64, "1", "stage k"},
                            {"d", Type::u64, "0", "dimension (ql_ii needs >= 5)"},
                            {"pad", Type::u64, "0", "extra zero coordinates"}};
    return {
        {"build-table", "smallest-prime-factor table", {{"limit", Type::u64, "1000000", "table limit"}}, cmd_build_table},
        {"ap-sums",
         "sums of r, r(n)r(n+h), r^2 over progressions against predicted main terms",
         {{"sum", Type::text, "r", "r, rr or r2"},
          N,
          {"q", Type::u64, "1", "modulus"},
          {"a", Type::u64, "1", "residue mod q"},
          {"d", Type::u64, "1", "divisibility modulus"},
          {"d1", Type::u64, "1", "divisibility modulus of n (pair sum)"},
          {"d2", Type::u64, "1", "divisibility modulus of n+h (pair sum)"},
          {"h", Type::u64, "4", "shift (pair sum)"},
          {"prime-bound", Type::u64, "1000000", "Euler product truncation"}},
         cmd_ap_sums},
        {"aux-sums",
         "auxiliary sums X, Y, Z1, Z2 against their leading terms",
         {{"sum", Type::text, "x", "x, y, z1, z2 or all"}, {"v", Type::u64_list, "10000", "bounds v"}, W},
         cmd_aux_sums},
        {"functionals",
         "sieve functionals L, L_m, L_ml for the product test function",
         {{"k", Type::u64, "2", "dimension"},
          {"beta", Type::real, "1", "sieve power of the single bin"},
          {"bins", Type::text, "", "size:beta pairs overriding --k/--beta"},
          {"m", Type::u64, "0", "coordinate m (0-based)"},
          {"l", Type::u64, "1", "coordinate l (0-based)"},
          {"check", Type::text, "none", "closed-vs-quadrature or none"}},
         cmd_functionals},
        {"sieve-run",
         "S1..S4 direct against predicted",
         {N,
          tuple,
          {"theta1", Type::real, "0.1", "v = N^theta1"},
          {"theta2", Type::real, "0.6", "R = N^(theta2/2)"},
          {"D0", Type::u64, "10", "W = product of odd primes <= D0"},
          {"beta", Type::real, "1", "sieve power"},
          {"relaxed", Type::flag, "false", "accept theta1 + theta2 >= 1/18"},
          {"sums", Type::text, "S1", "comma list of S1,S2,S3,S4"},
          {"m", Type::u64, "0", "slot m"},
          {"l", Type::u64, "1", "slot l"}},
         cmd_sieve_run},
        {"tech-sum",
         "restricted squarefree sums against B times the integral of G",
         {{"R", Type::u64_list, "1000,10000,100000", "sieve levels"},
          {"D0", Type::u64, "10", "W parameter"},
          {"f", Type::text, "inv_p", "inv_p, inv_p2 or zero"},
          {"G", Type::text, "linear", "one, linear or square"}},
         cmd_tech_sum},
        {"c-gamma",
         "singular-series constant against its closed form",
         {{"D0", Type::u64, "10", "W parameter"},
          {"alpha", Type::text, "zero", "inv_p, inv_p2 or zero"},
          {"prime-bound", Type::u64_list, "100000,1000000", "truncation points"}},
         cmd_c_gamma},
        {"certificate", "sum-of-two-squares membership with explicit x^2 + y^2",
         {{"n", Type::u64_list, "", "integers to certify"}}, cmd_certificate},
        {"witness-search",
         "n with a sum of two squares in every bin",
         {tuple, bins, {"N", Type::u64, "10000", "window start"}, nlimit, W,
          {"max-records", Type::u64, "0", "stop after this many (0 = all)"}},
         cmd_witness_search},
        {"pigeonhole",
         "nested sequence extraction from witnesses for M = 1..bins",
         {tuple, bins, {"N", Type::u64, "10000", "window start"}, nlimit, W,
          {"rows-per-M", Type::u64, "1", "witness rows taken for each M"}},
         cmd_pigeonhole},
        {"quantum",
         "sphere shells, coefficient families, b_tau and limit quantities",
         {{"mode", Type::text, "family", "shell, family, btau or limits"},
          {"n", Type::u64, "5", "shell radius squared"},
          family[0], family[1], family[2], family[3], family[4], family[5],
          {"tau", Type::i64_list, "", "frequency vector (empty: all)"},
          {"k-max", Type::u64, "20", "last stage for limits"},
          {"epsilon", Type::real, "0.5", "exponent slack"},
          {"rho", Type::real, "0", "radius for Sigma(rho) (0: skip)"}},
         cmd_quantum},
        {"constants", "special constants and Landau-Ramanujan truncations",
         {{"prime-bound", Type::u64_list, "1000000", "truncation points"}}, cmd_constants},
    };
}

int emit_error(const char* kind, const std::string& message, int code, double cost = -1) {
    json e = {{"error", kind}, {"message", message}, {"exit_code", code}};
    if (cost >= 0) e["estimated_cost"] = cost;
    std::cerr << e.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twosq: experiments on sums of two squares in admissible tuples"};
    app.require_subcommand(1);
    std::string config_path, out_path, csv_path;
    std::string threads = "1", seed = "0";
    app.add_option("--config", config_path, "JSON config; flags override it");
    app.add_option("--out", out_path, "write the JSON report here instead of stdout");
    app.add_option("--csv", csv_path, "write CSV rows here when the experiment has any");
    app.add_option("--threads", threads, "thread count (runs are single-threaded and deterministic)");
    app.add_option("--seed", seed, "seed for randomized sweep ordering (no current sweep is randomized)");

    const auto cmds = commands();
    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, std::map<std::string, CLI::Option*>> opts;
    std::map<std::string, CLI::App*> subs;
    for (const auto& cmd : cmds) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        sub->set_help_flag("--help", "print this help");
        sub->fallthrough();
        subs[cmd.name] = sub;
        for (const auto& p : cmd.params) {
            auto& slot = raw[cmd.name][p.name];
            if (p.type == Type::flag)
                opts[cmd.name][p.name] = sub->add_flag("--" + p.name, p.help);
            else
                opts[cmd.name][p.name] = sub->add_option("--" + p.name, slot, p.help + " [default: " + p.fallback + "]");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return emit_error("validation", e.what(), 2);
    }

    try {
        const Command* cmd = nullptr;
        for (const auto& c : cmds)
            if (subs[c.name]->parsed()) cmd = &c;
        ensure(cmd != nullptr, "no subcommand dispatched");

        json file = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            require(bool(in), "cannot read config '" + config_path + "'");
            try {
                file = json::parse(in);
            } catch (const json::exception& e) {
                throw ValidationError(std::string("config is not valid JSON: ") + e.what());
            }
            require(file.is_object(), "config must be a JSON object");
            for (const auto& [key, _] : file.items()) {
                bool known = key == "command" || key == "threads" || key == "seed";
                for (const auto& p : cmd->params) known = known || p.name == key;
                require(known, "unknown config key '" + key + "' for " + cmd->name);
            }
            if (file.contains("command") && file["command"] != cmd->name)
                throw ValidationError("config is for command '" + json_to_text(file["command"]) + "'");
            if (file.contains("threads") && !app.get_option("--threads")->count()) threads = json_to_text(file["threads"]);
            if (file.contains("seed") && !app.get_option("--seed")->count()) seed = json_to_text(file["seed"]);
        }
        std::map<std::string, std::string> values;
        for (const auto& p : cmd->params) {
            std::string v = p.fallback;
            if (file.contains(p.name)) v = json_to_text(file[p.name]);
            auto* o = opts.at(cmd->name).at(p.name);
            if (o->count()) v = p.type == Type::flag ? "true" : raw.at(cmd->name).at(p.name);
            values[p.name] = v;
        }
        values["csv"] = csv_path;
        const Config config(cmd->params, values);
        json resolved = config.resolved();
        resolved["threads"] = parse_u64(threads);
        resolved["seed"] = parse_u64(seed);
        require(resolved["threads"].get<uint64_t>() >= 1, "threads must be >= 1");

        Stopwatch sw;
        Report rep;
        cmd->run(config, rep);
        const double runtime = sw.elapsed_ms();

        json out = {{"experiment", cmd->name},
                    {"config", resolved},
                    {"results", round_numbers(rep.results)},
                    {"diagnostics", round_numbers(rep.diagnostics)},
                    {"runtime_ms", std::round(runtime * 1000) / 1000}};
        const std::string text = out.dump(2) + "\n";
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            require(bool(f), "cannot write '" + out_path + "'");
            f << text;
        }
        if (!csv_path.empty() && !rep.csv.empty()) {
            std::ofstream f(csv_path);
            require(bool(f), "cannot write '" + csv_path + "'");
            for (const auto& row : rep.csv) f << row << "\n";
        }
        return 0;
    } catch (const ValidationError& e) {
        return emit_error("validation", e.what(), 2);
    } catch (const ResourceGuardError& e) {
        return emit_error("resource_guard", e.what(), 3, e.estimated_cost());
    } catch (const InternalError& e) {
        return emit_error("internal", e.what(), 4);
    } catch (const std::bad_alloc&) {
        return emit_error("resource_guard", "out of memory", 3);
    } catch (const std::exception& e) {
        return emit_error("internal", e.what(), 4);
    }
}
