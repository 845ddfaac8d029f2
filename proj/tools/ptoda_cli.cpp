// Command-line front end; talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptoda/ptoda.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheckFailed = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
    int status;
    ApiError(int s, const std::string& what) : std::runtime_error(what), status(s) {}
};

int exit_code_for(int status) {
    switch (status) {
        case PTODA_INVALID_ARGUMENT:
        case PTODA_CONSTRAINT_VIOLATED:
        case PTODA_ZERO_A:
        case PTODA_WRONG_COMPONENT:
        case PTODA_ZERO_B:
            return kExitUsage;
        default:
            return kExitNumerical;
    }
}

void check(int status) {
    if (status != PTODA_OK)
        throw ApiError(status, std::string(ptoda_status_name(status)) + ": " + ptoda_last_error());
}

// Integer, decimal, or p/q. A quotient of exactly representable integers is rounded once.
double parse_number(const std::string& text) {
    const auto slash = text.find('/');
    auto whole = [&](const std::string& t) {
        double v = 0.0;
        const char* b = t.data();
        const char* e = b + t.size();
        if (!t.empty() && *b == '+') ++b;
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e || t.empty()) throw UsageError("not a number: '" + text + "'");
        return v;
    };
    if (slash == std::string::npos) return whole(text);
    const double p = whole(text.substr(0, slash));
    const double q = whole(text.substr(slash + 1));
    if (q == 0.0) throw UsageError("zero denominator in '" + text + "'");
    return p / q;
}

std::vector<double> parse_all(const std::vector<std::string>& v) {
    std::vector<double> out;
    for (const auto& t : v) out.push_back(parse_number(t));
    return out;
}

struct PointDeleter {
    void operator()(ptoda_point* p) const { ptoda_point_destroy(p); }
};
using PointPtr = std::unique_ptr<ptoda_point, PointDeleter>;

struct TrajDeleter {
    void operator()(ptoda_trajectory* t) const { ptoda_trajectory_destroy(t); }
};

struct PointArgs {
    std::vector<std::string> point, chart_sy, chart_spsi;
    std::string tol = "0";
};

void add_point_options(CLI::App* sub, PointArgs& a) {
    auto* g = sub->add_option_group("point", "monodromy point");
    g->add_option("--point", a.point, "quadruple A s x y")->expected(4)->allow_extra_args(false);
    g->add_option("--chart-sy", a.chart_sy, "chart coordinates s y")->expected(2)->allow_extra_args(false);
    g->add_option("--chart-spsi", a.chart_spsi, "chart coordinates s psi")->expected(2)->allow_extra_args(false);
    g->require_option(1);
    sub->add_option("--tol", a.tol, "constraint tolerance for --point (0 selects the default)");
}

const char* component_label(int c) { return c == PTODA_PARTNER ? "Partner" : "RadialToda"; }

PointPtr make_point(const PointArgs& a) {
    ptoda_point* raw = nullptr;
    if (!a.point.empty()) {
        const auto v = parse_all(a.point);
        const int st = ptoda_point_create(v[0], v[1], v[2], v[3], parse_number(a.tol), &raw);
        if (st == PTODA_CONSTRAINT_VIOLATED || st == PTODA_ZERO_A) {
            double r[2] = {0.0, 0.0};
            ptoda_constraint_residuals(v[0], v[1], v[2], v[3], r);
            json rep = {{"schema", "ptoda.error/1"},
                        {"status", ptoda_status_name(st)},
                        {"message", ptoda_last_error()},
                        {"residuals", {{"first", r[0]}, {"second", r[1]}}}};
            std::cerr << rep.dump() << "\n";
        }
        check(st);
    } else if (!a.chart_sy.empty()) {
        const auto v = parse_all(a.chart_sy);
        check(ptoda_point_from_chart_sy(v[0], v[1], &raw));
    } else {
        const auto v = parse_all(a.chart_spsi);
        check(ptoda_point_from_chart_spsi(v[0], v[1], &raw));
    }
    return PointPtr(raw);
}

json point_json(const ptoda_point* p) {
    double q[4], r[2];
    int comp = 0;
    check(ptoda_point_get(p, q));
    check(ptoda_point_residuals(p, r));
    check(ptoda_point_component(p, &comp));
    return {{"A", q[0]},
            {"s", q[1]},
            {"x", q[2]},
            {"y", q[3]},
            {"component", component_label(comp)},
            {"residuals", {{"first", r[0]}, {"second", r[1]}}}};
}

// Output goes to --out when given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::pair<double, double> parse_range(const std::vector<std::string>& r, double a, double b) {
    if (r.empty()) return {a, b};
    const auto v = parse_all(r);
    if (!(v[1] > v[0])) throw UsageError("--range needs a < b");
    return {v[0], v[1]};
}

int cmd_manifold(const PointArgs& pa, const std::string& out) {
    const PointPtr p = make_point(pa);
    json j = {{"schema", "ptoda.manifold/1"}};
    j["point"] = point_json(p.get());
    double c[2];
    if (ptoda_point_to_chart_sy(p.get(), c) == PTODA_OK) j["chart_sy"] = {{"s", c[0]}, {"y", c[1]}};
    if (ptoda_point_to_chart_spsi(p.get(), c) == PTODA_OK) j["chart_spsi"] = {{"s", c[0]}, {"psi", c[1]}};
    Sink sink(out);
    sink.os() << j.dump() << "\n";
    return 0;
}

int cmd_asymptotics(const PointArgs& pa, const std::vector<std::string>& range, const std::string& step,
                    const std::string& out) {
    const PointPtr p = make_point(pa);
    const auto [a, b] = parse_range(range, 20.0, 80.0);
    const double h = parse_number(step);
    if (!(h > 0.0)) throw UsageError("--step must be positive");
    Sink sink(out);
    auto& os = sink.os();
    os << "x,theta,v0_asym\n";
    const long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
    long skipped = 0;
    for (long i = 0; i <= n; ++i) {
        const double x = a + static_cast<double>(i) * h;
        double th = 0.0, phi = 0.0, v = 0.0, dv = 0.0;
        check(ptoda_theta(p.get(), x, &th, &phi));
        const int st = ptoda_v0_asym(p.get(), x, &v, &dv);
        if (st == PTODA_AT_SINGULARITY) {
            ++skipped;
            continue;
        }
        check(st);
        os << fmt(x) << "," << fmt(th) << "," << fmt(v) << "\n";
    }
    if (skipped) std::cerr << skipped << " grid points skipped at singularities\n";
    return 0;
}

int cmd_singularities(const PointArgs& pa, const std::vector<std::string>& range, const std::string& out) {
    const PointPtr p = make_point(pa);
    const auto [a, b] = parse_range(range, 5.0, 50.0);
    size_t count = 0;
    int st = ptoda_singularities(p.get(), a, b, nullptr, 0, &count);
    if (st != PTODA_BUFFER_TOO_SMALL) check(st);
    std::vector<ptoda_singularity> buf(count);
    check(ptoda_singularities(p.get(), a, b, buf.data(), buf.size(), &count));
    Sink sink(out);
    auto& os = sink.os();
    os << "n,x_exact,x_asym\n";
    double prev = INFINITY;
    bool monotone = true;
    for (const auto& s : buf) {
        os << s.n << "," << fmt(s.x_exact) << "," << fmt(s.x_asym) << "\n";
        const double gap = std::abs(s.x_exact - s.x_asym);
        // gaps at round-off level (zero drift) count as equal
        monotone = monotone && gap <= prev + 1e-12 * s.x_exact;
        prev = gap;
    }
    std::cerr << count << " singularities; gap |x_exact - x_asym| " << (monotone ? "non-increasing" : "not monotone")
              << " in n\n";
    return 0;
}

int parse_kind(const std::string& k) {
    if (k == "partner") return PTODA_ODE_PARTNER;
    if (k == "radial") return PTODA_ODE_RADIAL;
    if (k == "piii") return PTODA_ODE_PIII_D7;
    throw UsageError("--kind must be partner, radial or piii");
}

int cmd_integrate(const PointArgs& pa, bool have_point, const std::vector<std::string>& range,
                  const std::vector<std::string>& initial, const std::string& kind, const std::string& tol,
                  const std::string& eps, bool restart, const std::string& poles_path, const std::string& out) {
    const auto [a, b] = parse_range(range, 40.0, 60.0);
    const double t = parse_number(tol);
    ptoda_trajectory* raw = nullptr;
    if (!initial.empty()) {
        if (have_point) throw UsageError("--initial and a point are mutually exclusive");
        if (restart) throw UsageError("--restart needs asymptotic seeding from a point");
        const auto v = parse_all(initial);
        check(ptoda_integrate(parse_kind(kind), a, v[0], v[1], b, t, &raw));
    } else {
        if (!have_point) throw UsageError("integrate needs a point or --initial v dv");
        const PointPtr p = make_point(pa);
        if (restart)
            check(ptoda_integrate_restarts(p.get(), a, b, parse_number(eps), t, &raw));
        else
            check(ptoda_integrate_asymptotic(p.get(), a, b, t, &raw));
    }
    std::unique_ptr<ptoda_trajectory, TrajDeleter> traj(raw);
    Sink sink(out);
    auto& os = sink.os();
    os << "x,value,derivative\n";
    const size_t n = ptoda_trajectory_size(raw);
    for (size_t i = 0; i < n; ++i) {
        double s[3];
        check(ptoda_trajectory_sample(raw, i, s));
        os << fmt(s[0]) << "," << fmt(s[1]) << "," << fmt(s[2]) << "\n";
    }
    std::ofstream pfile;
    std::ostream* pos = &os;
    if (!poles_path.empty()) {
        pfile.open(poles_path);
        if (!pfile) throw UsageError("cannot open " + poles_path);
        pos = &pfile;
    } else {
        os << "\n";
    }
    *pos << "x_pole,bracket_width\n";
    const size_t np = ptoda_trajectory_pole_count(raw);
    for (size_t i = 0; i < np; ++i) {
        double x = 0.0, lo = 0.0, hi = 0.0;
        check(ptoda_trajectory_pole(raw, i, &x, &lo, &hi));
        *pos << fmt(x) << "," << fmt(hi - lo) << "\n";
    }
    double res = 0.0;
    check(ptoda_trajectory_residual(raw, &res));
    std::cerr << n << " samples, " << np << " poles, ODE residual " << res << "\n";
    return 0;
}

int cmd_monodromy(const std::string& form, const std::string& xs, const std::string& v0s, const std::string& v0xs,
                  const std::string& out) {
    int f = 0;
    if (form == "partner")
        f = PTODA_FORM_PARTNER;
    else if (form == "radial")
        f = PTODA_FORM_RADIAL;
    else
        throw UsageError("--form must be partner or radial");
    const double x = parse_number(xs), v0 = parse_number(v0s), v0x = parse_number(v0xs);
    ptoda_monodromy_result r{};
    check(ptoda_monodromy(f, x, v0, v0x, &r));
    json e_re = json::array(), e_im = json::array();
    for (int i = 0; i < 3; ++i) {
        e_re.push_back({r.E_re[3 * i], r.E_re[3 * i + 1], r.E_re[3 * i + 2]});
        e_im.push_back({r.E_im[3 * i], r.E_im[3 * i + 1], r.E_im[3 * i + 2]});
    }
    json j = {{"schema", "ptoda.monodromy/1"},
              {"input", {{"form", form}, {"x", x}, {"v0", v0}, {"v0x", v0x}}},
              {"point",
               {{"A", r.A}, {"s", r.s}, {"x", r.x}, {"y", r.y}, {"component", component_label(r.component)}}},
              {"residuals",
               {{"constraint_first", r.residual1},
                {"constraint_second", r.residual2},
                {"s_fit", r.s_fit_residual},
                {"pattern", r.pattern_residual},
                {"det", r.det_residual},
                {"symmetry", r.symmetry_residual},
                {"truncation", r.truncation}}},
              {"E1", {{"re", e_re}, {"im", e_im}}}};
    Sink sink(out);
    sink.os() << j.dump() << "\n";
    return 0;
}

int cmd_roundtrip(const PointArgs& pa, const std::string& x0s, bool no_recenter, const std::string& out) {
    const PointPtr p = make_point(pa);
    ptoda_roundtrip_result r{};
    check(ptoda_roundtrip(p.get(), parse_number(x0s), no_recenter ? 0 : 1, &r));
    json j = {{"schema", "ptoda.roundtrip/1"},
              {"input", point_json(p.get())},
              {"x0_requested", r.x0_requested},
              {"x0_used", r.x0_used},
              {"v0", r.v0},
              {"v0x", r.v0x},
              {"recovered",
               {{"A", r.recovered[0]},
                {"s", r.recovered[1]},
                {"x", r.recovered[2]},
                {"y", r.recovered[3]},
                {"component", component_label(r.component)}}},
              {"error", {{"A", r.error[0]}, {"s", r.error[1]}, {"x", r.error[2]}, {"y", r.error[3]}}},
              {"max_error", r.max_error}};
    Sink sink(out);
    sink.os() << j.dump() << "\n";
    return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& out) {
    ptoda_report* raw = nullptr;
    check(ptoda_identity_suite(seed, &raw));
    std::unique_ptr<ptoda_report, void (*)(ptoda_report*)> rep(raw, ptoda_report_destroy);
    json checks = json::array();
    const size_t n = ptoda_report_size(raw);
    for (size_t i = 0; i < n; ++i) {
        const char *name = nullptr, *note = nullptr;
        double res = 0.0, thr = 0.0;
        int pass = 0, info = 0;
        check(ptoda_report_entry(raw, i, &name, &note, &res, &thr, &pass, &info));
        json c = {{"name", name}, {"residual", res}, {"threshold", thr}, {"pass", pass != 0}};
        if (info) c["informational"] = true;
        if (note && *note) c["note"] = note;
        checks.push_back(std::move(c));
        if (!pass) std::cerr << "FAIL " << name << " residual " << res << " > " << thr << "\n";
    }
    const bool ok = ptoda_report_all_pass(raw) != 0;
    json j = {{"schema", "ptoda.identities/1"}, {"seed", seed}, {"all_pass", ok}, {"checks", checks}};
    Sink sink(out);
    sink.os() << j.dump() << "\n";
    std::cerr << n << " identities, " << (ok ? "all pass" : "failures present") << "\n";
    return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monodromy, asymptotics and singularities of the partner radial Toda equation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ptoda_version());

    std::string out;
    PointArgs pa;
    std::vector<std::string> range, initial;
    std::string step = "0.1", tol = "1e-10", eps = "0.1", kind = "partner", poles_path, x0 = "40";
    std::string form = "partner", xs, v0s, v0xs;
    std::uint64_t seed = 7;
    bool restart = false, no_recenter = false;

    auto add_out = [&](CLI::App* s) { s->add_option("--out", out, "output path (default stdout)"); };
    auto add_range = [&](CLI::App* s, const char* what) {
        s->add_option("--range", range, what)->expected(2)->allow_extra_args(false);
    };

    auto* man = app.add_subcommand("manifold", "validate a point and print it as JSON");
    add_point_options(man, pa);
    add_out(man);

    auto* asy = app.add_subcommand("asymptotics", "CSV of theta and the leading asymptotics on a grid");
    add_point_options(asy, pa);
    add_range(asy, "x interval a b (default 20 80)");
    asy->add_option("--step", step, "grid step (default 0.1)");
    add_out(asy);

    auto* sing = app.add_subcommand("singularities", "CSV of exact and asymptotic singularity locations");
    add_point_options(sing, pa);
    add_range(sing, "x interval a b (default 5 50)");
    add_out(sing);

    auto* integ = app.add_subcommand("integrate", "integrate the ODE; CSV trajectory and pole table");
    auto* ig = integ->add_option_group("point", "asymptotic seed");
    ig->add_option("--point", pa.point, "quadruple A s x y")->expected(4)->allow_extra_args(false);
    ig->add_option("--chart-sy", pa.chart_sy, "chart coordinates s y")->expected(2)->allow_extra_args(false);
    ig->add_option("--chart-spsi", pa.chart_spsi, "chart coordinates s psi")->expected(2)->allow_extra_args(false);
    ig->require_option(0, 1);
    add_range(integ, "x interval x0 x1 (default 40 60); x1 < x0 is not accepted");
    integ->add_option("--initial", initial, "explicit initial value and derivative")->expected(2)->allow_extra_args(false);
    integ->add_option("--kind", kind, "partner, radial or piii (with --initial)");
    integ->add_option("--tol", tol, "relative tolerance in [1e-12, 1e-6] (default 1e-10)");
    integ->add_option("--eps", eps, "exclusion half-width used on restart (default 0.1)");
    integ->add_flag("--restart", restart, "restart past each pole from fresh asymptotic data");
    integ->add_option("--poles", poles_path, "write the pole table to this path");
    add_out(integ);

    auto* mono = app.add_subcommand("monodromy", "monodromy data of the zeta-equation at given Cauchy data");
    mono->add_option("--form", form, "partner or radial (default partner)");
    mono->add_option("--x", xs, "x > 0")->required();
    mono->add_option("--v0", v0s, "value")->required();
    mono->add_option("--v0x", v0xs, "derivative")->required();
    add_out(mono);

    auto* rt = app.add_subcommand("roundtrip", "point -> asymptotic data -> monodromy recovery");
    add_point_options(rt, pa);
    rt->add_option("--x0", x0, "matching point (default 40)");
    rt->add_flag("--no-recenter", no_recenter, "use x0 exactly instead of the nearest maximum of sin(theta)");
    add_out(rt);

    auto* ver = app.add_subcommand("verify-identities", "run the identity suite; JSON report");
    ver->add_option("--seed", seed, "random seed (default 7)");
    add_out(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*man) return cmd_manifold(pa, out);
        if (*asy) return cmd_asymptotics(pa, range, step, out);
        if (*sing) return cmd_singularities(pa, range, out);
        if (*integ) {
            const bool have_point = !pa.point.empty() || !pa.chart_sy.empty() || !pa.chart_spsi.empty();
            return cmd_integrate(pa, have_point, range, initial, kind, tol, eps, restart, poles_path, out);
        }
        if (*mono) return cmd_monodromy(form, xs, v0s, v0xs, out);
        if (*rt) return cmd_roundtrip(pa, x0, no_recenter, out);
        if (*ver) return cmd_verify(seed, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ApiError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.status);
    }
    return kExitUsage;
}
