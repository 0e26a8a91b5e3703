// Command-line front end: every library operation behind one binary with
// machine-readable output. JSON payloads keep exact values as rational
// strings and floats at 17 significant digits so golden files round-trip.

#include <hvstab/combinatorics.hpp>
#include <hvstab/ddo.hpp>
#include <hvstab/hweno.hpp>
#include <hvstab/orderstar.hpp>
#include <hvstab/simulator.hpp>
#include <hvstab/stability.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

using json = nlohmann::json;
using namespace hvstab;

namespace {

constexpr const char* kArtifactVersion = "1.0";

std::string rat_str(const Rational& r) { return r.get_str(); }

std::string flt_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Relative output paths land in HVSTAB_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    const char* dir = std::getenv("HVSTAB_OUT_DIR");
    if (dir == nullptr || *dir == '\0' || path.empty() || path.front() == '/') return path;
    std::string d(dir);
    if (d.back() != '/') d += '/';
    return d + path;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::domain_error("cannot open output file '" + path + "'");
    return f;
}

std::vector<long> parse_longs(const std::string& text, std::size_t count, const char* what) {
    std::vector<long> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(piece, &used);
        } catch (const std::exception&) {
            throw std::domain_error(std::string("malformed ") + what + " '" + text + "'");
        }
        if (used != piece.size()) throw std::domain_error(std::string("malformed ") + what + " '" + text + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != count)
        throw std::domain_error(std::string(what) + " '" + text + "' needs exactly " +
                                std::to_string(count) + " comma-separated integers");
    return out;
}

std::vector<double> parse_doubles(const std::string& text, std::size_t count, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string piece = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(piece, &used);
        } catch (const std::exception&) {
            throw std::domain_error(std::string("malformed ") + what + " '" + text + "'");
        }
        if (used != piece.size()) throw std::domain_error(std::string("malformed ") + what + " '" + text + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != count)
        throw std::domain_error(std::string(what) + " '" + text + "' needs exactly " +
                                std::to_string(count) + " comma-separated numbers");
    return out;
}

// Either the canonical (L, R) split or an explicit four-index stencil.
Stencil parse_stencil(const std::string& lr, const std::string& indices) {
    if (!lr.empty() && !indices.empty())
        throw std::domain_error("--stencil and --indices are mutually exclusive");
    if (!indices.empty()) {
        const auto v = parse_longs(indices, 4, "--indices");
        return stencil_from_indices(v[0], v[1], v[2], v[3]);
    }
    if (lr.empty()) throw std::domain_error("a stencil is required (--stencil L,R)");
    const auto v = parse_longs(lr, 2, "--stencil");
    return stencil_from_LR(v[0], v[1]);
}

json stencil_json(const Stencil& s) {
    return {{"L", s.L},        {"R", s.R},
            {"l", s.l},        {"r", s.r},
            {"l_prime", s.l_prime}, {"r_prime", s.r_prime}};
}

json poly_json(const Poly& p) {
    json arr = json::array();
    for (const auto& c : p.c) arr.push_back(rat_str(c));
    return arr;
}

const char* status_name(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::Stable: return "Stable";
        case StabilityStatus::UnstableTracePositive: return "UnstableTracePositive";
        case StabilityStatus::UnstableTraceViolated: return "UnstableTraceViolated";
    }
    return "?";
}

const char* status_mark(StabilityStatus s) {
    switch (s) {
        case StabilityStatus::Stable: return "ok";
        case StabilityStatus::UnstableTracePositive: return "hc";
        case StabilityStatus::UnstableTraceViolated: return "x";
    }
    return "?";
}

json verdict_json(const StabilityVerdict& v) {
    json out;
    out["status"] = status_name(v.status);
    if (v.witness_theta)
        out["witness_cos_theta"] = rat_str(*v.witness_theta);
    else
        out["witness_cos_theta"] = nullptr;
    out["witness_kind"] = v.witness_kind == WitnessKind::SignChange ? "sign_change" : "touch_zero";
    out["conditions"] = {{"P_H", poly_json(v.conditions.P_H)},
                         {"mult_H", v.conditions.mult_H},
                         {"P_S", poly_json(v.conditions.P_S)},
                         {"mult_S", v.conditions.mult_S}};
    return out;
}

int emit(const std::string& command, const json& params, const json& results) {
    json env;
    env["command"] = command;
    env["parameters"] = params;
    env["results"] = results;
    env["artifact_version"] = kArtifactVersion;
    std::cout << env.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------- coeffs --

int run_coeffs(const std::string& lr, const std::string& indices, const std::string& format) {
    const Stencil s = parse_stencil(lr, indices);
    const DDOCoefficients d = build_ddo(s);
    const TruncationReport tr = truncation_order(d);

    if (format == "json") {
        json res;
        res["stencil"] = stencil_json(s);
        res["order"] = tr.order;
        res["leading_error_coefficient"] = rat_str(tr.c_p);
        json alpha = json::array(), beta = json::array();
        for (const auto& [k, v] : d.alpha) alpha.push_back({{"k", k}, {"value", rat_str(v)}});
        for (const auto& [k, v] : d.beta) beta.push_back({{"k", k}, {"value", rat_str(v)}});
        res["alpha"] = alpha;
        res["beta"] = beta;
        json params;
        params["stencil"] = lr.empty() ? json(nullptr) : json(lr);
        params["indices"] = indices.empty() ? json(nullptr) : json(indices);
        return emit("coeffs", params, res);
    }
    if (format == "csv") {
        std::printf("kind,k,value\n");
        for (const auto& [k, v] : d.alpha) std::printf("alpha,%ld,%s\n", k, rat_str(v).c_str());
        for (const auto& [k, v] : d.beta) std::printf("beta,%ld,%s\n", k, rat_str(v).c_str());
        std::printf("order,,%ld\n", tr.order);
        return 0;
    }
    std::printf("stencil (L, R) = (%ld, %ld), split (l, r, l', r') = (%ld, %ld, %ld, %ld)\n",
                s.L, s.R, s.l, s.r, s.l_prime, s.r_prime);
    std::printf("order %ld, leading error coefficient %s\n", tr.order, rat_str(tr.c_p).c_str());
    std::printf("alpha (cell weights):\n");
    for (const auto& [k, v] : d.alpha) std::printf("  k = %3ld   %s\n", k, rat_str(v).c_str());
    std::printf("beta (node weights):\n");
    for (const auto& [k, v] : d.beta) std::printf("  k = %3ld   %s\n", k, rat_str(v).c_str());
    return 0;
}

// -------------------------------------------------------------- classify --

int run_classify(const std::string& lr, const std::string& indices, const std::string& format) {
    const Stencil s = parse_stencil(lr, indices);
    const StabilityVerdict v = classify(s);
    if (format == "pretty") {
        std::printf("stencil (L, R) = (%ld, %ld): %s\n", s.L, s.R, status_name(v.status));
        if (v.witness_theta)
            std::printf("witness cos(theta) = %s (%s)\n", rat_str(*v.witness_theta).c_str(),
                        v.witness_kind == WitnessKind::SignChange ? "sign change" : "touches zero");
        std::printf("trace condition: degree %ld, (1-x) multiplicity %d\n",
                    v.conditions.P_H.degree(), v.conditions.mult_H);
        std::printf("second condition: degree %ld, (1-x) multiplicity %d\n",
                    v.conditions.P_S.degree(), v.conditions.mult_S);
        return 0;
    }
    json res = verdict_json(v);
    res["stencil"] = stencil_json(s);
    json params;
    params["stencil"] = lr.empty() ? json(nullptr) : json(lr);
    params["indices"] = indices.empty() ? json(nullptr) : json(indices);
    return emit("classify", params, res);
}

// ----------------------------------------------------------------- table --

int run_table(long max_L, const std::string& format) {
    const std::vector<TableEntry> rows = stability_table(max_L);
    if (format == "csv") {
        std::printf("L,R,status\n");
        for (const auto& e : rows) std::printf("%ld,%ld,%s\n", e.L, e.R, status_name(e.verdict.status));
        return 0;
    }
    if (format == "json") {
        json arr = json::array();
        for (const auto& e : rows) {
            json row;
            row["L"] = e.L;
            row["R"] = e.R;
            row["status"] = status_name(e.verdict.status);
            if (e.verdict.witness_theta)
                row["witness_cos_theta"] = rat_str(*e.verdict.witness_theta);
            else
                row["witness_cos_theta"] = nullptr;
            arr.push_back(row);
        }
        return emit("table", {{"max_L", max_L}}, {{"entries", arr}});
    }
    // Grid layout, one row per L, columns R = 0..L-1.
    std::printf(" L\\R");
    for (long r = 0; r < max_L; ++r) std::printf(" %3ld", r);
    std::printf("\n");
    std::size_t i = 0;
    for (long L = 1; L <= max_L; ++L) {
        std::printf(" %3ld", L);
        for (long R = 0; R < L; ++R) std::printf(" %3s", status_mark(rows[i++].verdict.status));
        std::printf("\n");
    }
    return 0;
}

// --------------------------------------------------------------- barrier --

int run_barrier(long max_R, const std::string& format) {
    if (max_R < 0) throw std::domain_error("--max-R must be non-negative");
    std::vector<BarrierBound> rows;
    for (long R = 0; R <= max_R; ++R) rows.push_back(barrier_bound(R));
    if (format == "csv") {
        std::printf("R,linear,max_admissible_gap,binding\n");
        for (const auto& b : rows)
            std::printf("%ld,%ld,%ld,%s\n", b.R, b.linear, b.max_admissible_gap,
                        b.linear_branch_binding ? "linear" : "sqrt");
        return 0;
    }
    if (format == "json") {
        json arr = json::array();
        for (const auto& b : rows)
            arr.push_back({{"R", b.R},
                           {"linear", b.linear},
                           {"max_admissible_gap", b.max_admissible_gap},
                           {"binding", b.linear_branch_binding ? "linear" : "sqrt"}});
        return emit("barrier", {{"max_R", max_R}}, {{"bounds", arr}});
    }
    std::printf("  R   2R+7   max L-R   binding\n");
    for (const auto& b : rows)
        std::printf("%3ld   %4ld   %7ld   %s\n", b.R, b.linear, b.max_admissible_gap,
                    b.linear_branch_binding ? "linear" : "sqrt");
    return 0;
}

// ----------------------------------------------------------------- rehpi --

int run_rehpi(const std::string& lr, const std::string& indices, int item, long t,
              const std::string& format) {
    const bool item_mode = item != 0;
    if (item_mode && (!lr.empty() || !indices.empty()))
        throw std::domain_error("--item excludes --stencil/--indices");

    json res;
    std::string pretty;
    if (item_mode) {
        const Stencil s = item_stencil(item, t);
        const Rational closed = reh_pi_closed(item, t);
        const Rational direct = reh_pi(s);
        res["item"] = item;
        res["t"] = t;
        res["stencil"] = stencil_json(s);
        res["closed_form"] = rat_str(closed);
        res["direct"] = rat_str(direct);
        res["match"] = closed == direct;
        pretty = "item " + std::to_string(item) + ", t = " + std::to_string(t) +
                 ": closed form " + rat_str(closed) + ", direct " + rat_str(direct) +
                 (closed == direct ? " (match)" : " (MISMATCH)");
    } else {
        const Stencil s = parse_stencil(lr, indices);
        const Rational v = reh_pi(s);
        res["stencil"] = stencil_json(s);
        res["value"] = rat_str(v);
        pretty = "ReH(pi) = " + rat_str(v);
    }
    if (format == "pretty") {
        std::printf("%s\n", pretty.c_str());
        return 0;
    }
    json params;
    params["stencil"] = lr.empty() ? json(nullptr) : json(lr);
    params["indices"] = indices.empty() ? json(nullptr) : json(indices);
    params["item"] = item_mode ? json(item) : json(nullptr);
    params["t"] = item_mode ? json(t) : json(nullptr);
    return emit("rehpi", params, res);
}

// ------------------------------------------------------------ identities --

json run_suite(const std::string& suite, long range) {
    json cases = json::array();
    auto add = [&](json params, bool pass) {
        params["pass"] = pass;
        cases.push_back(std::move(params));
    };

    if (suite == "cpi") {
        // The second-derivative construction self-verifies against the
        // termwise derivative and throws on mismatch.
        const long top = range > 0 ? range : 12;
        for (long m = 1; m <= top; ++m)
            for (long n = 1; n <= m; ++n) {
                bool pass = true;
                try {
                    (void)cfun_second_derivative(m, n);
                } catch (const std::logic_error&) {
                    pass = false;
                }
                add({{"m", m}, {"n", n}}, pass);
            }
    } else if (suite == "alt-form") {
        const long top = range > 0 ? range : 8;
        const std::vector<double> samples = {0.37, 1.13, 2.41};
        for (long m = 0; m <= top; ++m)
            for (long n = 0; n <= m; ++n) add({{"m", m}, {"n", n}}, cfun_alt_check(m, n, samples));
    } else if (suite == "derivative") {
        const long top = range > 0 ? range : 6;
        for (long m1 = 0; m1 <= top; ++m1)
            for (long m2 = 0; m2 <= top; ++m2)
                for (long n = 0; n <= top; ++n)
                    add({{"m1", m1}, {"m2", m2}, {"n", n}}, cfun3_derivative_check(m1, m2, n));
    } else if (suite == "representation") {
        const long top = range > 0 ? range : 6;
        const std::pair<QFamily, const char*> fams[] = {{QFamily::Sym, "sym"},
                                                        {QFamily::Check, "check"},
                                                        {QFamily::Hat, "hat"},
                                                        {QFamily::Tilde, "tilde"}};
        for (const auto& [fam, name] : fams)
            for (long t = 0; t <= top; ++t)
                for (long m = 1; m <= 4; ++m)
                    add({{"family", name}, {"t", t}, {"m", m}}, representation_check(fam, t, m));
    } else if (suite == "zrec") {
        const long top = range > 0 ? range : 12;
        for (long n = 0; n <= top; ++n) {
            bool pass = true;
            for (long j = 0; j <= 7; ++j)
                for (long k = 0; k <= j + 1; ++k) {
                    const Rational lhs = zfun(j + 1 - k, k, n);
                    const Rational rhs = zfun(j - k, k, n) +
                                         Rational((n - j - 1 + k) * (n - j - 1 + k)) *
                                             zfun(j + 1 - k, k - 1, n);
                    pass = pass && lhs == rhs;
                }
            add({{"n", n}}, pass);
        }
    } else if (suite == "harmonic") {
        const long top = range > 0 ? range : 50;
        for (long n = 0; n <= top; ++n) add({{"n", n}}, identity_check(n));
    } else if (suite == "recurrence") {
        const long top = range > 0 ? range : 40;
        for (long n = 0; n <= top; ++n) add({{"n", n}}, recurrence_check(n));
    } else if (suite == "asymptotic") {
        // Sign pattern of ReH(pi) on the balanced families at moderate t,
        // then the ratio against the predicted leading term at large t.
        for (long m : {3L, 5L, 7L})
            for (long t = 50; t <= 60; ++t) {
                const Rational v = reh_pi(stencil_from_indices(t + m, t, t + m, t));
                const bool want_negative = m % 4 == 3;
                add({{"m", m}, {"t", t}}, want_negative ? v < 0 : v > 0);
            }
        const long t_ratio = range > 0 ? range : 200;
        const Rational ratio = asymptotic_ratio(3, t_ratio);
        const double rd = ratio.get_d();
        json c;
        c["m"] = 3;
        c["t"] = t_ratio;
        c["ratio"] = flt_str(rd);
        add(std::move(c), rd > 0.9 && rd < 1.1);
    } else {
        throw std::domain_error("unknown suite '" + suite + "'");
    }
    return cases;
}

int run_identities(const std::string& suite, long range, const std::string& format) {
    const json cases = run_suite(suite, range);
    bool all = true;
    for (const auto& c : cases) all = all && c.at("pass").get<bool>();
    if (format == "pretty") {
        std::printf("suite %s: %zu cases, %s\n", suite.c_str(), cases.size(),
                    all ? "all pass" : "FAILURES");
        for (const auto& c : cases)
            if (!c.at("pass").get<bool>()) std::printf("  fail: %s\n", c.dump().c_str());
        return 0;
    }
    json res;
    res["suite"] = suite;
    res["count"] = cases.size();
    res["all_pass"] = all;
    res["cases"] = cases;
    return emit("identities", {{"suite", suite}, {"range", range}}, res);
}

// ----------------------------------------------------------------- hweno --

int run_hweno_classify(long l, long r, const std::string& format) {
    const HwenoVerdict v = hweno_classify(l, r);
    const char* name = v.status == HwenoStatus::Unstable ? "Unstable" : "NecessaryConditionHolds";
    if (format == "pretty") {
        std::printf("(l, r) = (%ld, %ld): %s\n", l, r, name);
        if (v.witness_x) std::printf("witness cos(theta) = %s\n", rat_str(*v.witness_x).c_str());
        return 0;
    }
    json res;
    res["l"] = l;
    res["r"] = r;
    res["status"] = name;
    res["witness_cos_theta"] = v.witness_x ? json(rat_str(*v.witness_x)) : json(nullptr);
    return emit("hweno classify", {{"l", l}, {"r", r}}, res);
}

int run_hweno_trace(long l, long r, const std::string& at, const std::string& format) {
    if (at != "pi") throw std::domain_error("only --at pi is supported");
    const Rational v = eval_at_pi(hweno_trace(l, r));
    if (format == "pretty") {
        std::printf("Re trace at pi for (l, r) = (%ld, %ld): %s\n", l, r, rat_str(v).c_str());
        return 0;
    }
    json res;
    res["l"] = l;
    res["r"] = r;
    res["at"] = "pi";
    res["value"] = rat_str(v);
    return emit("hweno trace", {{"l", l}, {"r", r}, {"at", at}}, res);
}

// ------------------------------------------------------------- orderstar --

std::string sidecar_path(const std::string& csv) {
    const std::string suffix = ".csv";
    if (csv.size() > suffix.size() && csv.compare(csv.size() - suffix.size(), suffix.size(), suffix) == 0)
        return csv.substr(0, csv.size() - suffix.size()) + ".branch.json";
    return csv + ".branch.json";
}

int run_orderstar(const std::string& scheme, const std::string& lr, const std::string& window,
                  const std::string& res_text, const std::string& out) {
    const auto st = parse_longs(lr, 2, "--stencil");
    const auto win = parse_doubles(window, 2, "--window");
    const auto res = parse_longs(res_text, 2, "--res");
    const GridSpec spec = make_grid(win[0], win[1], res[0], res[1]);

    OrderStarGrid grid;
    bool axis_clear = false;
    if (scheme == "fdm") {
        const auto weights = fdm_weights(st[0], st[1]);
        grid = fdm_orderstar(weights, spec);
        axis_clear = fdm_axis_clear(prepare_fdm(weights), spec.ny);
    } else if (scheme == "hv") {
        const SchemeSymbols sym = symbols(build_ddo(stencil_from_LR(st[0], st[1])));
        grid = hv_orderstar(sym, spec);
        axis_clear = hv_axis_clear(prepare_hv(sym), spec.ny);
    } else {
        throw std::domain_error("--scheme must be hv or fdm");
    }

    const std::string csv_path = resolve_out(out);
    {
        std::ofstream f = open_out(csv_path);
        f << "x,y,sheet,shaded\n";
        char buf[96];
        for (std::size_t sheet = 0; sheet < grid.sheets.size(); ++sheet) {
            for (long iy = 0; iy < spec.ny; ++iy)
                for (long ix = 0; ix < spec.nx; ++ix) {
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%d\n", spec.x(ix), spec.y(iy),
                                  sheet + 1, grid.shaded(sheet, ix, iy) ? 1 : 0);
                    f << buf;
                }
        }
    }
    const std::string branch_path = sidecar_path(csv_path);
    {
        json side;
        json pts = json::array();
        for (const auto& z : grid.branch_points)
            pts.push_back({{"re", flt_str(z.real())}, {"im", flt_str(z.imag())}});
        side["branch_points"] = pts;
        std::ofstream f = open_out(branch_path);
        f << side.dump(2) << "\n";
    }

    json summary;
    summary["csv"] = csv_path;
    summary["branch_json"] = branch_path;
    summary["sheet_count"] = grid.sheets.size();
    json shaded = json::array();
    for (const auto& sheet : grid.sheets) {
        long count = 0;
        for (auto v : sheet) count += v;
        shaded.push_back(count);
    }
    summary["shaded_count"] = shaded;
    summary["axis_clear"] = axis_clear;
    summary["branch_point_count"] = grid.branch_points.size();
    json params;
    params["scheme"] = scheme;
    params["stencil"] = lr;
    params["window"] = window;
    params["res"] = res_text;
    params["out"] = out;
    return emit("orderstar", params, summary);
}

// -------------------------------------------------------------- simulate --

InitialCondition parse_ic(const std::string& text) {
    const std::size_t colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    InitialCondition ic;
    if (name == "sine") {
        ic.kind = InitialCondition::Kind::Sine;
        ic.wavenumber = parse_longs(args, 1, "--ic sine")[0];
    } else if (name == "gaussian") {
        ic.kind = InitialCondition::Kind::Gaussian;
        ic.width = parse_doubles(args, 1, "--ic gaussian")[0];
    } else if (name == "packet") {
        ic.kind = InitialCondition::Kind::Packet;
        const auto parts = parse_doubles(args, 2, "--ic packet");
        ic.wavenumber = static_cast<long>(parts[0]);
        ic.width = parts[1];
    } else {
        throw std::domain_error("unknown initial condition '" + text +
                                "' (use sine:K, gaussian:W, or packet:K,W)");
    }
    return ic;
}

int run_simulate(const std::string& scheme, const std::string& lr, long N, double cfl,
                 double tfinal, const std::string& ic_text, const std::string& out) {
    SimConfig cfg;
    if (scheme == "hv")
        cfg.scheme = SchemeKind::HV;
    else if (scheme == "hweno")
        cfg.scheme = SchemeKind::HWENO;
    else
        throw std::domain_error("--scheme must be hv or hweno");
    const auto st = parse_longs(lr, 2, "--stencil");
    cfg.left = st[0];
    cfg.right = st[1];
    cfg.N = N;
    cfg.cfl = cfl;
    cfg.t_final = tfinal;
    cfg.ic = parse_ic(ic_text);

    const SimResult result = simulate(cfg);

    const std::string csv_path = resolve_out(out);
    {
        std::ofstream f = open_out(csv_path);
        f << "t,l2_norm\n";
        char buf[80];
        for (std::size_t i = 0; i < result.times.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", result.times[i], result.l2_norm[i]);
            f << buf;
        }
    }

    json summary;
    summary["csv"] = csv_path;
    summary["steps"] = result.times.size() - 1;
    summary["realized_tfinal"] = flt_str(result.times.back());
    summary["growth_rate"] = flt_str(result.growth_rate);
    summary["final_error"] = flt_str(result.final_error);
    summary["l2_norm_final"] = flt_str(result.l2_norm.back());
    json params;
    params["scheme"] = scheme;
    params["stencil"] = lr;
    params["N"] = N;
    params["cfl"] = cfl;
    params["tfinal"] = tfinal;
    params["ic"] = ic_text;
    params["out"] = out;
    return emit("simulate", params, summary);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite-type discretizations of 1D advection: exact coefficients, "
                 "stability verdicts, identity suites, order stars, and a simulator"};
    app.require_subcommand(1);

    int rc = 0;

    // coeffs
    std::string co_lr, co_idx, co_fmt = "pretty";
    auto* coeffs = app.add_subcommand("coeffs", "DDO weights and verified order for a stencil");
    coeffs->add_option("--stencil", co_lr, "stencil as L,R");
    coeffs->add_option("--indices", co_idx, "explicit four-index stencil l,r,l',r'");
    coeffs->add_option("--format", co_fmt)->check(CLI::IsMember({"json", "csv", "pretty"}));
    coeffs->callback([&] { rc = run_coeffs(co_lr, co_idx, co_fmt); });

    // classify
    std::string cl_lr, cl_idx, cl_fmt = "json";
    auto* classify_cmd = app.add_subcommand("classify", "exact stability verdict for a stencil");
    classify_cmd->add_option("--stencil", cl_lr, "stencil as L,R");
    classify_cmd->add_option("--indices", cl_idx, "explicit four-index stencil l,r,l',r'");
    classify_cmd->add_option("--format", cl_fmt)->check(CLI::IsMember({"json", "pretty"}));
    classify_cmd->callback([&] { rc = run_classify(cl_lr, cl_idx, cl_fmt); });

    // table
    long tb_max = 8;
    std::string tb_fmt = "pretty";
    auto* table = app.add_subcommand("table", "stability verdicts for all 0 <= R < L <= max-L");
    table->add_option("--max-L", tb_max, "largest upwind count")->required();
    table->add_option("--format", tb_fmt)->check(CLI::IsMember({"json", "csv", "pretty"}));
    table->callback([&] { rc = run_table(tb_max, tb_fmt); });

    // barrier
    long br_max = 8;
    std::string br_fmt = "pretty";
    auto* barrier = app.add_subcommand("barrier", "admissible bias bound per downwind count");
    barrier->add_option("--max-R", br_max, "largest downwind count")->required();
    barrier->add_option("--format", br_fmt)->check(CLI::IsMember({"json", "csv", "pretty"}));
    barrier->callback([&] { rc = run_barrier(br_max, br_fmt); });

    // rehpi
    std::string rp_lr, rp_idx, rp_fmt = "json";
    int rp_item = 0;
    long rp_t = 0;
    auto* rehpi = app.add_subcommand("rehpi", "exact ReH(pi), direct or from a closed-form item");
    rehpi->add_option("--stencil", rp_lr, "stencil as L,R");
    rehpi->add_option("--indices", rp_idx, "explicit four-index stencil l,r,l',r'");
    rehpi->add_option("--item", rp_item, "closed-form item 1..8")->check(CLI::Range(1, 8));
    rehpi->add_option("--t", rp_t, "family parameter for --item");
    rehpi->add_option("--format", rp_fmt)->check(CLI::IsMember({"json", "pretty"}));
    rehpi->callback([&] { rc = run_rehpi(rp_lr, rp_idx, rp_item, rp_t, rp_fmt); });

    // identities
    std::string id_suite, id_fmt = "json";
    long id_range = 0;
    auto* identities = app.add_subcommand("identities", "combinatoric identity sweeps");
    identities->add_option("--suite", id_suite, "one of cpi, alt-form, derivative, representation, zrec, harmonic, recurrence, asymptotic")
        ->required()
        ->check(CLI::IsMember({"cpi", "alt-form", "derivative", "representation", "zrec",
                               "harmonic", "recurrence", "asymptotic"}));
    identities->add_option("--range", id_range, "override the suite's default parameter bound");
    identities->add_option("--format", id_fmt)->check(CLI::IsMember({"json", "pretty"}));
    identities->callback([&] { rc = run_identities(id_suite, id_range, id_fmt); });

    // hweno
    auto* hweno = app.add_subcommand("hweno", "two-moment flux-reconstruction analysis");
    hweno->require_subcommand(1);
    long hw_l = 0, hw_r = 0;
    std::string hw_fmt = "json", hw_at = "pi";
    auto* hwc = hweno->add_subcommand("classify", "necessary-condition verdict");
    hwc->add_option("--l", hw_l, "left cell count")->required();
    hwc->add_option("--r", hw_r, "right cell count")->required();
    hwc->add_option("--format", hw_fmt)->check(CLI::IsMember({"json", "pretty"}));
    hwc->callback([&] { rc = run_hweno_classify(hw_l, hw_r, hw_fmt); });
    auto* hwt = hweno->add_subcommand("trace", "exact symbol trace");
    hwt->add_option("--l", hw_l, "left cell count")->required();
    hwt->add_option("--r", hw_r, "right cell count")->required();
    hwt->add_option("--at", hw_at, "evaluation point (pi)");
    hwt->add_option("--format", hw_fmt)->check(CLI::IsMember({"json", "pretty"}));
    hwt->callback([&] { rc = run_hweno_trace(hw_l, hw_r, hw_at, hw_fmt); });

    // orderstar
    std::string os_scheme, os_lr, os_window = "-4,4", os_res = "400,400", os_out;
    auto* orderstar = app.add_subcommand("orderstar", "scan the order star onto a CSV grid");
    orderstar->add_option("--scheme", os_scheme, "hv or fdm")->required();
    orderstar->add_option("--stencil", os_lr, "stencil as L,R")->required();
    orderstar->add_option("--window", os_window, "real-axis window x0,x1");
    orderstar->add_option("--res", os_res, "grid resolution NX,NY");
    orderstar->add_option("--out", os_out, "CSV path (branch points go to a .branch.json sidecar)")
        ->required();
    orderstar->callback([&] { rc = run_orderstar(os_scheme, os_lr, os_window, os_res, os_out); });

    // simulate
    std::string sm_scheme, sm_lr, sm_ic = "sine:1", sm_out;
    long sm_N = 64;
    double sm_cfl = 0.4, sm_tfinal = 1.0;
    auto* simulate_cmd = app.add_subcommand("simulate", "periodic advection run with norm history");
    simulate_cmd->add_option("--scheme", sm_scheme, "hv or hweno")->required();
    simulate_cmd->add_option("--stencil", sm_lr, "stencil as L,R")->required();
    simulate_cmd->add_option("--N", sm_N, "number of cells");
    simulate_cmd->add_option("--cfl", sm_cfl, "time step over spacing");
    simulate_cmd->add_option("--tfinal", sm_tfinal, "integration time");
    simulate_cmd->add_option("--ic", sm_ic, "initial profile: sine:K, gaussian:W, packet:K,W");
    simulate_cmd->add_option("--out", sm_out, "CSV path for the norm history")->required();
    simulate_cmd->callback(
        [&] { rc = run_simulate(sm_scheme, sm_lr, sm_N, sm_cfl, sm_tfinal, sm_ic, sm_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
