// cone_index: stability verdicts, index counts, and densities at infinity
// for free-boundary minimal cones in higher-dimensional Schwarzschild
// geometries. Batch front end over the coneindex library.
//
// Commands:
//   spectrum   link Jacobi levels
//   stability  margin test per link
//   index      per-(n, link, R) index counts
//   density    density reports against a reference cone
//   verify     analytic identity battery; nonzero exit on any failure
//
// A flat JSON config may supply any flag; explicit flags win. Reports
// embed the resolved config and tool version. Exit codes: 0 ok,
// 1 verification failure, 2 bad config, 3 numeric failure.

#include "coneindex/density.hpp"
#include "coneindex/errors.hpp"
#include "coneindex/index_forms.hpp"
#include "coneindex/quadrature.hpp"
#include "coneindex/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

using nlohmann::json;
using namespace coneindex;

namespace {

constexpr double kPi = std::numbers::pi;

struct RunConfig {
    std::string command;
    std::vector<int> n_list{4};
    double m = 2.0;
    std::vector<std::string> link_specs{"equator"};
    std::string reference = "equator";
    std::vector<double> R_list{10.0, 100.0};
    int k_max = 12;
    int grid = 1000;
    double tol = 1e-9;
    std::string out;
    std::string format = "csv";

    // Provenance copy of the resolved inputs; the output destination is
    // not part of the computation.
    json to_json() const {
        return json{{"command", command}, {"n", n_list},
                    {"m", m},             {"links", link_specs},
                    {"reference", reference}, {"R", R_list},
                    {"kmax", k_max},      {"grid", grid},
                    {"tol", tol},         {"format", format}};
    }
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename T>
void read_key(const json& j, const char* key, T& into) {
    if (j.contains(key)) into = j.at(key).get<T>();
}

void apply_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    static const std::vector<std::string> known{
        "command", "n", "m", "links", "reference", "R",
        "kmax",    "grid", "tol", "out", "format"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key: \"" + key + "\"");
    }
    try {
        read_key(j, "command", cfg.command);
        read_key(j, "n", cfg.n_list);
        read_key(j, "m", cfg.m);
        read_key(j, "links", cfg.link_specs);
        read_key(j, "reference", cfg.reference);
        read_key(j, "R", cfg.R_list);
        read_key(j, "kmax", cfg.k_max);
        read_key(j, "grid", cfg.grid);
        read_key(j, "tol", cfg.tol);
        read_key(j, "out", cfg.out);
        read_key(j, "format", cfg.format);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field type error: ") + e.what());
    }
}

MinimalLink parse_link(const std::string& spec, int n) {
    if (spec == "equator") return equator(n);
    if (spec.rfind("clifford:", 0) == 0) {
        try {
            return clifford(n, std::stoi(spec.substr(9)));
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad clifford factor in link spec \"" + spec + "\"");
        }
    }
    if (spec.rfind("raw:", 0) == 0) {
        const std::string path = spec.substr(4);
        std::ifstream in(path);
        if (!in) throw ConfigError("raw link file not readable: " + path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("raw link parse error in " + path + ": " + e.what());
        }
        try {
            std::vector<std::pair<double, int>> levels;
            for (const auto& pair : j.at("eigenvalues"))
                levels.push_back({pair.at(0).get<double>(), pair.at(1).get<int>()});
            return raw_link(j.at("ambient_n").get<int>(),
                            j.at("volume").get<double>(),
                            j.at("shape_norm_sq").get<double>(), std::move(levels),
                            j.value("label", std::string("raw")));
        } catch (const json::exception& e) {
            throw ConfigError("raw link field error in " + path + ": " + e.what());
        }
    }
    throw ConfigError("unknown link spec \"" + spec +
                      "\" (expected equator | clifford:p | raw:path)");
}

// ---------------------------------------------------------------------
// bounded worker pool over an indexed task list
// ---------------------------------------------------------------------
void run_parallel(size_t count, const std::function<void(size_t)>& task) {
    size_t threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("CONE_INDEX_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) threads = static_cast<size_t>(cap);
    }
    threads = std::max<size_t>(1, std::min(threads, count));
    if (threads <= 1) {
        for (size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void emit(const RunConfig& cfg, const std::string& header,
          const std::vector<std::string>& csv_rows,
          const std::vector<json>& json_rows) {
    std::ostringstream body;
    if (cfg.format == "json") {
        const json doc{{"tool", "cone_index"},
                       {"version", kVersion},
                       {"schema_version", kReportSchemaVersion},
                       {"config", cfg.to_json()},
                       {"rows", json_rows}};
        body << doc.dump(2) << "\n";
    } else {
        body << "# cone_index " << kVersion << "\n";
        body << "# config: " << cfg.to_json().dump() << "\n";
        body << header << "\n";
        for (const auto& row : csv_rows) body << row << "\n";
    }
    if (cfg.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(cfg.out);
        if (!out) throw ConfigError("output path not writable: " + cfg.out);
        out << body.str();
    }
}

// ---------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------
int cmd_spectrum(const RunConfig& cfg) {
    std::vector<std::string> rows;
    std::vector<json> jrows;
    for (int n : cfg.n_list) {
        for (const auto& spec : cfg.link_specs) {
            const MinimalLink link = parse_link(spec, n);
            const auto s = jacobi_spectrum(link, cfg.k_max);
            for (int k = 0; k < s.count; ++k) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "%d,%s,%d,%.12g,%d", n,
                              link.label.c_str(), k, s.eigenvalues[k],
                              s.multiplicities[k]);
                rows.push_back(buf);
                jrows.push_back({{"n", n},
                                 {"link", link.label},
                                 {"level", k},
                                 {"eigenvalue", s.eigenvalues[k]},
                                 {"multiplicity", s.multiplicities[k]}});
            }
        }
    }
    emit(cfg, "n,link,level,eigenvalue,multiplicity", rows, jrows);
    return 0;
}

int cmd_stability(const RunConfig& cfg) {
    std::vector<std::string> rows;
    std::vector<json> jrows;
    for (int n : cfg.n_list) {
        for (const auto& spec : cfg.link_specs) {
            const MinimalLink link = parse_link(spec, n);
            const double margin = stability_margin(link);
            const char* verdict = margin >= 0.0 ? "Stable" : "Inconclusive";
            char buf[160];
            std::snprintf(buf, sizeof buf, "%d,%.12g,%s,%.12g,%.12g,%s", n, cfg.m,
                          link.label.c_str(), link_lambda1(link), margin, verdict);
            rows.push_back(buf);
            json row{{"n", n},
                     {"m", cfg.m},
                     {"link", link.label},
                     {"lambda1", link_lambda1(link)},
                     {"margin", margin},
                     {"verdict", verdict}};
            if (link.kind == LinkKind::Raw)
                row["notes"] = "first Jacobi eigenvalue supplied by the user, "
                               "minimality not verified";
            jrows.push_back(row);
        }
    }
    emit(cfg, "n,m,link,lambda1,margin,verdict", rows, jrows);
    return 0;
}

int cmd_index(const RunConfig& cfg) {
    struct Cell {
        int n;
        std::string link_spec;
        double R_mult;
    };
    std::vector<Cell> cells;
    std::vector<int> ns = cfg.n_list;
    std::sort(ns.begin(), ns.end());
    std::vector<std::string> links = cfg.link_specs;
    std::sort(links.begin(), links.end());
    std::vector<double> Rs = cfg.R_list;
    std::sort(Rs.begin(), Rs.end());
    for (int n : ns)
        for (const auto& l : links)
            for (double R : Rs) cells.push_back({n, l, R});

    std::vector<IndexReport> reports(cells.size());
    run_parallel(cells.size(), [&](size_t i) {
        const auto& c = cells[i];
        const auto space = make_space(c.n, cfg.m);
        const MinimalLink link = parse_link(c.link_spec, c.n);
        reports[i] = index_report(space, link, c.R_mult * space.R0, cfg.k_max,
                                  cfg.grid);
    });

    std::vector<std::string> rows;
    std::vector<json> jrows;
    for (const auto& rep : reports) {
        rows.push_back(index_csv_row(rep));
        jrows.push_back(to_json(rep));
    }
    emit(cfg, index_csv_header(), rows, jrows);
    return 0;
}

int cmd_density(const RunConfig& cfg) {
    struct Cell {
        int n;
        std::string link_spec;
    };
    std::vector<Cell> cells;
    std::vector<int> ns = cfg.n_list;
    std::sort(ns.begin(), ns.end());
    std::vector<std::string> links = cfg.link_specs;
    std::sort(links.begin(), links.end());
    for (int n : ns)
        for (const auto& l : links) cells.push_back({n, l});

    std::vector<double> ladder = cfg.R_list;
    std::sort(ladder.begin(), ladder.end());

    std::vector<DensityReport> reports(cells.size());
    run_parallel(cells.size(), [&](size_t i) {
        const auto& c = cells[i];
        const auto space = make_space(c.n, cfg.m);
        const MinimalLink subject = parse_link(c.link_spec, c.n);
        const MinimalLink reference = parse_link(cfg.reference, c.n);
        std::vector<double> rho;
        for (double mult : ladder) rho.push_back(mult * space.R0);
        const double r_max = std::max(1000.0 * space.R0, 1.05 * rho.back());
        const auto profile = areal_profile(space, r_max, cfg.tol);
        reports[i] = density_report(space, subject, reference, profile, rho);
    });

    std::vector<std::string> rows;
    std::vector<json> jrows;
    for (const auto& rep : reports) {
        rows.push_back(density_csv_row(rep));
        jrows.push_back(to_json(rep));
    }
    emit(cfg, density_csv_header(), rows, jrows);
    return 0;
}

// ---------------------------------------------------------------------
// verify: analytic identity battery
// ---------------------------------------------------------------------
struct Check {
    std::string name;
    std::optional<std::string> failure; // empty = pass
};

void check(std::vector<Check>& out, const std::string& name, bool ok,
           const std::string& detail = "") {
    out.push_back({name, ok ? std::nullopt : std::optional<std::string>(detail)});
}

std::vector<Check> verify_battery(int n, double m, double tol,
                                  const std::string& dump_dir) {
    std::vector<Check> checks;
    const auto s = make_space(n, m);
    char detail[160];

    // horizon radii and the cross-chart identity
    check(checks, "horizon radii", std::abs(2.0 * std::pow(s.R0, n - 2) - m) < 1e-12 * m &&
                                       std::abs(std::pow(s.s0, n - 2) - 2 * m) < 1e-12 * m);
    check(checks, "cross-chart horizon identity",
          std::abs(s.R0 * isotropic_factor(s, s.R0) - s.s0) < 1e-12 * s.s0);

    // exponent algebra between the two conformal factors
    {
        double worst = 0.0;
        for (int i = 0; i <= 60; ++i) {
            const double r = s.R0 * std::pow(1000.0, i / 60.0);
            worst = std::max(worst,
                             std::abs(isotropic_factor(s, r) -
                                      std::pow(cone_factor(s, r), 2.0 / (s.N - 2))));
        }
        std::snprintf(detail, sizeof detail, "max defect %.3e", worst);
        check(checks, "conformal exponent algebra", worst < 1e-12, detail);
    }

    // Robin coefficient from the factor derivative
    {
        const double got = cone_factor_deriv(s, s.R0) / cone_factor(s, s.R0);
        const double want = -(n - 3.0) / (2.0 * s.R0);
        std::snprintf(detail, sizeof detail, "got %.15g want %.15g", got, want);
        check(checks, "horizon Robin coefficient",
              std::abs(got - want) < 1e-12 * std::max(1.0, std::abs(want)), detail);
    }

    // sphere curvature function
    check(checks, "sphere curvature vanishes on the horizon",
          std::abs(umbilicity(s, s.R0)) < 1e-13);
    {
        bool pos = true;
        for (int i = 1; i <= 40; ++i)
            pos = pos && umbilicity(s, s.R0 * std::pow(2000.0, i / 40.0)) > 0.0;
        check(checks, "sphere curvature positive outside", pos);
        check(checks, "sphere curvature decays", umbilicity(s, 1e5 * s.R0) < 1e-4);
    }

    // potential bound and decay
    {
        bool ok = true;
        for (int i = 0; i <= 60; ++i) {
            const double r = s.R0 * std::pow(1000.0, i / 60.0);
            const double V = radial_potential(s, r);
            ok = ok && V > 0.0 && V * std::pow(r, n) <= 2.0 * m * (n - 1) * (1 + 1e-12);
        }
        check(checks, "potential positivity and r^n bound", ok);
    }

    // kernel identity
    {
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double r = s.R0 * std::pow(1000.0, i / 1000.0);
            const double vv = radial_potential(s, r) * closed_form_v(s, r);
            worst = std::max(worst,
                             std::abs(closed_form_v_second_deriv(s, r) + vv) /
                                 std::abs(vv));
        }
        std::snprintf(detail, sizeof detail, "max relative residual %.3e", worst);
        check(checks, "kernel identity v'' + V v = 0", worst <= 1e-10, detail);
    }

    // supersolution data
    {
        const auto fc0 = fc_candidate(s, s.R0);
        check(checks, "supersolution horizon derivative",
              std::abs(fc0.dpsi_dr) < 1e-12 && fc0.psi > 0.0);
        double worst = 0.0;
        for (int i = 0; i <= 50; ++i) {
            const double r = s.R0 * std::pow(200.0, i / 50.0);
            const double route = closed_form_v(s, r) * std::pow(r, -0.5 * (s.N - 1)) /
                                 cone_factor(s, r);
            worst = std::max(worst, std::abs(fc_candidate(s, r).psi - route) / route);
        }
        check(checks, "supersolution factorization", worst < 1e-12);
    }

    // closed-form Dirichlet modes
    {
        bool ok = true;
        double worst = 0.0;
        for (double T : {1.5, 5.0}) {
            const double R = s.R0 * std::exp(T);
            for (int j = 1; j <= 5; ++j) {
                const auto g = ivp_mode(s, R, j);
                const double want = std::pow(0.5 * (n - 3), 2) +
                                    std::pow(j * kPi / T, 2);
                ok = ok && std::abs(g.beta - want) < 1e-12 * want;
                for (int i = 1; i < 30; ++i) {
                    const double r = s.R0 * std::exp(T * i / 30.0);
                    const double lhs = -r * r * g.second_deriv(r) -
                                       (n - 2.0) * r * g.deriv(r);
                    const double rel = std::abs(lhs - g.beta * g.value(r)) /
                                       std::max(1e-3, std::abs(g.beta * g.value(r)));
                    worst = std::max(worst, rel);
                }
            }
        }
        std::snprintf(detail, sizeof detail, "max mode residual %.3e", worst);
        check(checks, "closed-form mode identities", ok && worst <= 1e-9, detail);
    }

    // conformal two-route agreement on random smooth profiles
    if (n >= 4) {
        const auto eq = equator(n);
        const double R = 30.0 * s.R0;
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            const double c0 = coef(rng), c1 = coef(rng), c2 = coef(rng);
            SeparatedTestFunction psi;
            psi.link_level = 0;
            psi.boundary_class = BoundaryClass::VanishBoth;
            const double sc = 1.0 / (R - s.R0);
            psi.value = [=, R0 = s.R0](double r) {
                const double x = (r - R0) * sc;
                return (r - R0) * (R - r) * sc * sc * (c0 + x * (c1 + x * c2));
            };
            psi.deriv = [=, R0 = s.R0](double r) {
                const double x = (r - R0) * sc;
                const double poly = c0 + x * (c1 + x * c2);
                const double dpoly = (c1 + 2 * x * c2) * sc;
                return ((R + R0 - 2 * r) * poly + (r - R0) * (R - r) * dpoly) * sc * sc;
            };
            worst = std::max(worst, conformal_residual(s, eq, psi, R));
        }
        std::snprintf(detail, sizeof detail, "max residual %.3e", worst);
        check(checks, "conformal route agreement", worst <= 1e-6, detail);

        // flat-form quadrature vs the eigenvalue sum
        auto psi = ivp_test_function(s, eq, 0, R, 2);
        const double exact = q_delta(s, eq, psi, R);
        psi.ivp_j.reset();
        const double quad = q_delta(s, eq, psi, R);
        std::snprintf(detail, sizeof detail, "defect %.3e", std::abs(quad - exact));
        check(checks, "flat form quadrature", std::abs(quad - exact) <= 1e-8, detail);
    }

    // boundary eigenvalue shooting against the closed form of the
    // margin-zero mode, where available
    if ((n == 4) || (n == 8)) {
        const MinimalLink link = (n == 4) ? equator(4) : clifford(8, 3);
        const auto pb = make_mode_problem(s, link, 0, 50.0 * s.R0,
                                          InnerBC::SchwarzschildNeumann,
                                          OuterBC::Steklov);
        const auto st = steklov_value(pb);
        const double want = -0.5 * (n - 2);
        std::snprintf(detail, sizeof detail, "got %.12g want %.12g", st.value, want);
        check(checks, "boundary eigenvalue closed form",
              !st.degenerate && st.two_integrator_ok &&
                  std::abs(st.value - want) < 1e-8,
              detail);
    }

    // profile and content identities
    {
        const auto profile = areal_profile(s, 200.0 * s.R0, tol);
        double worst = 0.0;
        for (size_t i = 0; i + 1 < profile.grid.size(); i += 7) {
            const double rm = 0.5 * (profile.grid[i] + profile.grid[i + 1]);
            const double rhs =
                std::sqrt(1.0 - 2.0 * m * std::pow(profile.h(rm), 2 - n));
            worst = std::max(worst, std::abs(profile.hprime(rm) - rhs));
        }
        std::snprintf(detail, sizeof detail, "max midpoint residual %.3e", worst);
        check(checks, "profile flow residual", worst <= 10.0 * tol, detail);

        const auto eq = equator(n);
        double mu_defect = 0.0;
        for (double rho : {3.0 * s.R0, 50.0 * s.R0, 150.0 * s.R0}) {
            const double quad = mu_volume(s, eq, profile, rho);
            const double closed =
                eq.volume *
                (std::pow(profile.h(rho), n - 1) - std::pow(s.s0, n - 1)) / (n - 1);
            mu_defect = std::max(mu_defect, std::abs(quad - closed) /
                                                std::max(1.0, std::abs(closed)));
        }
        std::snprintf(detail, sizeof detail, "max relative defect %.3e", mu_defect);
        check(checks, "weighted content closed form", mu_defect <= 1e-9, detail);

        check(checks, "content identity between radii",
              monotonicity_residual(s, eq, profile, 2.0 * s.R0, 120.0 * s.R0) <= 1e-8);

        check(checks, "boundary content route agreement",
              std::abs(boundary_area(s, eq) - boundary_area_isotropic_route(s, eq)) <
                  1e-12 * boundary_area(s, eq));

        if (!dump_dir.empty()) {
            std::ofstream csv(dump_dir + "/profile_n" + std::to_string(n) + ".csv");
            if (csv) profile.write_csv(csv);
        }
    }

    // spectrum enumeration stability
    if (n >= 4) {
        bool stable = true;
        for (const auto& link : {equator(n), clifford(n, 1)}) {
            const auto a = jacobi_spectrum(link, 10, 20);
            const auto b = jacobi_spectrum(link, 10, 40);
            stable = stable && a.eigenvalues == b.eigenvalues &&
                     a.multiplicities == b.multiplicities;
        }
        check(checks, "spectrum cutoff stability", stable);
    }

    return checks;
}

int cmd_verify(const RunConfig& cfg) {
    bool all_ok = true;
    for (int n : cfg.n_list) {
        const auto checks = verify_battery(n, cfg.m, cfg.tol, cfg.out);
        for (const auto& c : checks) {
            if (c.failure) {
                all_ok = false;
                std::cout << "FAIL [n=" << n << "] " << c.name;
                if (!c.failure->empty()) std::cout << " (" << *c.failure << ")";
                std::cout << "\n";
            } else {
                std::cout << "ok   [n=" << n << "] " << c.name << "\n";
            }
        }
    }
    std::cout << (all_ok ? "verify: all checks passed\n"
                         : "verify: FAILURES present\n");
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"free-boundary minimal cone stability and density toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::vector<std::string> link_flags;
    std::vector<int> n_flags;
    std::vector<double> R_flags;
    bool m_set = false, kmax_set = false, grid_set = false, tol_set = false;
    double m_flag = 0.0;
    int kmax_flag = 0, grid_flag = 0;
    double tol_flag = 0.0;
    std::string out_flag, format_flag, reference_flag;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat JSON config; flags override");
        sub->add_option("--n", n_flags, "dimensions (comma list)")->delimiter(',');
        sub->add_option("--m", m_flag, "mass")->each([&](const std::string&) { m_set = true; });
        sub->add_option("--link", link_flags,
                        "links: equator | clifford:p | raw:path (repeat or comma list)")
            ->delimiter(',');
        sub->add_option("--reference", reference_flag, "density reference link");
        sub->add_option("--R", R_flags, "outer radii as multiples of R0")->delimiter(',');
        sub->add_option("--kmax", kmax_flag, "link levels per report")
            ->each([&](const std::string&) { kmax_set = true; });
        sub->add_option("--grid", grid_flag, "radial grid nodes")
            ->each([&](const std::string&) { grid_set = true; });
        sub->add_option("--tol", tol_flag, "profile tolerance")
            ->each([&](const std::string&) { tol_set = true; });
        sub->add_option("--out", out_flag, "output path (default stdout)");
        sub->add_option("--format", format_flag, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    for (const char* name : {"spectrum", "stability", "index", "density", "verify"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) apply_config_file(config_path, cfg);
        // explicit flags override the file
        if (!n_flags.empty()) cfg.n_list = n_flags;
        if (m_set) cfg.m = m_flag;
        if (!link_flags.empty()) cfg.link_specs = link_flags;
        if (!reference_flag.empty()) cfg.reference = reference_flag;
        if (!R_flags.empty()) cfg.R_list = R_flags;
        if (kmax_set) cfg.k_max = kmax_flag;
        if (grid_set) cfg.grid = grid_flag;
        if (tol_set) cfg.tol = tol_flag;
        if (!out_flag.empty()) cfg.out = out_flag;
        if (!format_flag.empty()) cfg.format = format_flag;

        // validate against the operation preconditions
        if (cfg.n_list.empty()) throw ConfigError("field \"n\": at least one dimension");
        for (int n : cfg.n_list)
            if (n < 3) throw ConfigError("field \"n\": dimensions must be >= 3");
        if (!(cfg.m > 0.0)) throw ConfigError("field \"m\": mass must be positive");
        if (cfg.k_max < 1) throw ConfigError("field \"kmax\": must be >= 1");
        if (cfg.grid < 16) throw ConfigError("field \"grid\": must be >= 16");
        if (!(cfg.tol > 0.0)) throw ConfigError("field \"tol\": must be positive");
        for (double R : cfg.R_list)
            if (!(R > 1.0) && cfg.command == "index")
                throw ConfigError("field \"R\": multiples must exceed 1");
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("field \"format\": csv or json");

        if (cfg.command == "spectrum") return cmd_spectrum(cfg);
        if (cfg.command == "stability") return cmd_stability(cfg);
        if (cfg.command == "index") return cmd_index(cfg);
        if (cfg.command == "density") return cmd_density(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        throw ConfigError("unknown command \"" + cfg.command + "\"");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error in " << e.operation() << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
}
