// Command-line front end: enumeration, equidistribution tables, section
// verification, operator spectra and counting comparisons.

#include "farey/counting.hpp"
#include "farey/errors.hpp"
#include "farey/geoflow.hpp"
#include "farey/measures.hpp"
#include "farey/periodic.hpp"
#include "farey/transfer.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace farey;
using nlohmann::json;

namespace {

enum Exit : int {
    kOk = 0,
    kInternal = 1,
    kInvalid = 2,
    kResource = 3,
    kVerification = 4,
    kConvergence = 5,
};

struct Common {
    unsigned threads = 1;
    std::size_t max_points = 5'000'000;
    std::string format = "csv";
    std::string output;
};

// Writes to --output, else to $FAREY_OUTPUT_DIR/<stem>.<format>, else stdout.
void emit(const Common& c, const std::string& stem, const std::string& body) {
    std::filesystem::path path;
    if (!c.output.empty()) {
        path = c.output;
        if (path.is_relative()) {
            if (const char* dir = std::getenv("FAREY_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
        }
    } else if (const char* dir = std::getenv("FAREY_OUTPUT_DIR"); dir && *dir) {
        path = std::filesystem::path(dir) / (stem + "." + c.format);
    }
    if (path.empty()) {
        std::cout << body;
        return;
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << body;
    std::cerr << "wrote " << path.string() << '\n';
}

// Splits one CSV line, honoring double quotes.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        else if (ch == ',' && !quoted) out.emplace_back();
        else out.back().push_back(ch);
    }
    return out;
}

// JSON array of objects with the CSV header as keys; values stay strings so
// the 30-digit decimals survive unchanged.
std::string csv_to_json(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    const auto header = split_csv(line);
    json rows = json::array();
    while (std::getline(in, line)) {
        const auto cells = split_csv(line);
        json row = json::object();
        for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

EnumerationOptions enum_options(const Common& c) { return {c.threads, c.max_points}; }

int cmd_enumerate(const Common& c, const std::string& map, double T) {
    const auto points = map == "gauss" ? enumerate_gauss(T, enum_options(c)) : enumerate_farey(T, enum_options(c));
    std::ostringstream csv;
    write_points_csv(csv, points);
    emit(c, "enumerate", c.format == "json" ? csv_to_json(csv.str()) : csv.str());
    std::cerr << points.size() << " points\n";
    return kOk;
}

struct Named1D {
    std::string key;
    TestFunction1D f;
};
struct Named2D {
    std::string key;
    TestFunction2D f;
};

int cmd_equidist(const Common& c, const std::vector<double>& Ts, const std::vector<std::string>& functions) {
    const std::vector<Named1D> all1 = {{"one", TestFunction1D::one()},
                                       {"x", TestFunction1D::identity()},
                                       {"x2", TestFunction1D::square()},
                                       {"one-minus-log", TestFunction1D::one_minus_log()}};
    const std::vector<Named2D> all2 = {{"pair-one", TestFunction2D::one()},
                                       {"box-quarter", TestFunction2D::upper_box(0.25, 0.25)},
                                       {"box-half-quarter", TestFunction2D::upper_box(0.5, 0.25)},
                                       {"box-half", TestFunction2D::upper_box(0.5, 0.5)}};
    auto wanted = [&](const std::string& key) {
        return functions.empty() || std::find(functions.begin(), functions.end(), key) != functions.end();
    };
    for (const auto& f : functions) {
        bool known = f == "cdf";
        for (const auto& g : all1) known |= g.key == f;
        for (const auto& g : all2) known |= g.key == f;
        if (!known) throw InvalidArgument("unknown function " + f);
    }
    std::vector<EquidistRow> rows;
    for (double T : Ts) {
        const auto points = enumerate_farey(T, enum_options(c));
        std::cerr << "T=" << T << ": " << points.size() << " points\n";
        if (points.empty()) throw InvalidArgument("no periodic points at this length");
        const auto m1 = EmpiricalMeasure1D::farey_weighted(points, c.threads);
        for (const auto& g : all1) {
            if (wanted(g.key)) rows.push_back(equidist_row(T, m1, g.f));
        }
        if (wanted("cdf")) {
            const double d = cdf_distance(m1, ReferenceMeasure::lebesgue());
            rows.push_back({T, "cdf_distance", d, 0.0, d});
        }
        bool any2 = false;
        for (const auto& g : all2) any2 |= wanted(g.key);
        if (!any2) continue;
        const auto m2 = EmpiricalMeasure2D::farey_pairs(points, c.threads);
        for (const auto& g : all2) {
            if (wanted(g.key)) rows.push_back(equidist_row(T, m2, g.f));
        }
    }
    std::ostringstream os;
    if (c.format == "json") write_equidist_json(os, rows);
    else write_equidist_csv(os, rows);
    emit(c, "equidist", os.str());
    return kOk;
}

SectionPoint parse_point(const std::string& text) {
    const auto parts = split_csv(text);
    if (parts.size() != 3) throw InvalidArgument("point must be U,W,eps");
    SectionPoint s;
    try {
        s.U = std::stold(parts[0]);
        s.W = std::stold(parts[1]);
        s.eps = std::stoi(parts[2]);
    } catch (const std::logic_error&) {
        throw InvalidArgument("point must be U,W,eps");
    }
    s.validate();
    return s;
}

int cmd_verify(const Common& c, std::size_t samples, std::uint64_t seed, double tol, const std::string& point) {
    GeoflowReport r;
    json extra = json::object();
    if (!point.empty()) {
        const SectionPoint s = parse_point(point);
        const SectionPoint pts[] = {s};
        r = verify_points(pts);
        const auto ret = first_return(s);
        extra = {{"return_time", static_cast<double>(ret.time)},
                 {"return_time_formula", static_cast<double>(return_time_formula(s.U, s.W))},
                 {"return_point",
                  {{"U", static_cast<double>(ret.point.U)}, {"W", static_cast<double>(ret.point.W)}, {"eps", ret.point.eps}}}};
    } else {
        if (samples < 1) throw InvalidArgument("need at least one sample");
        r = verify_section(samples, seed);
    }
    std::ostringstream js;
    write_report_json(js, r, tol);
    json j = json::parse(js.str());
    j.update(extra);
    std::string body;
    if (c.format == "json") {
        body = j.dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << std::setprecision(17) << "key,value\n";
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) {
                for (auto jt = it->begin(); jt != it->end(); ++jt) os << it.key() << '.' << jt.key() << ',' << jt->dump() << '\n';
            } else {
                os << it.key() << ',' << it->dump() << '\n';
            }
        }
        body = os.str();
    }
    emit(c, "verify", body);
    if (!r.passed(tol)) {
        std::cerr << "verification failed: coordinate error " << r.max_coordinate_error << ", time error "
                  << r.max_time_error << '\n';
        return kVerification;
    }
    return kOk;
}

int cmd_spectrum(const Common& c, std::size_t rank, double s, double omega, double trace_s, const std::string& weight) {
    OperatorConfig cfg;
    cfg.rank = rank;
    cfg.s = s;
    cfg.omega = omega;
    cfg.weight = weight == "one" ? WeightFunction::one() : WeightFunction::one_minus_log();
    const auto rep = spectrum_report(cfg, trace_s);
    std::ostringstream os;
    if (c.format == "json") {
        write_spectrum_json(os, rep);
    } else {
        os << std::setprecision(17) << "index,real,imag,modulus\n";
        for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i) {
            const auto& z = rep.eigenvalues[i];
            os << i << ',' << z.real() << ',' << z.imag() << ',' << std::abs(z) << '\n';
        }
    }
    emit(c, "spectrum", os.str());
    return kOk;
}

struct CountArgs {
    std::string mode;
    std::int64_t N = 2000;
    double T = 12.0;
    double alpha = 1.0, beta = 1.0;
    double x = 0.25, y = 0.25;
    double floor_delta = -1.0;
};

int cmd_count(const Common& c, const CountArgs& a) {
    CountOptions opt;
    opt.threads = c.threads;
    opt.max_points = c.max_points;
    CountReport r;
    if (a.mode == "psi-ev") {
        r = count_psi_even(a.alpha, a.beta, a.N, opt);
    } else if (a.mode == "s-odd") {
        if (a.floor_delta >= 0) opt.region_floor = small_region_floor(static_cast<double>(a.N), a.floor_delta);
        r = count_s_odd(a.alpha, a.beta, a.N, opt);
    } else if (a.mode == "qf") {
        r = count_qf(a.T, opt);
    } else {
        if (a.floor_delta >= 0) opt.region_floor = small_region_floor(std::exp(a.T / 2), a.floor_delta);
        r = count_qf_tilde(a.x, a.y, a.T, opt);
    }
    const CountReport rows[] = {r};
    std::ostringstream os;
    if (c.format == "json") write_counts_json(os, rows);
    else write_counts_csv(os, rows);
    emit(c, "count", os.str());
    return kOk;
}

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--max-points", c.max_points, "abort enumerations beyond this many points (0 disables)");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", c.output, "output file; relative paths resolve against FAREY_OUTPUT_DIR");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic points of the Gauss and Farey maps: enumeration and checks"};
    app.require_subcommand(1);
    Common common;

    auto* en = app.add_subcommand("enumerate", "list periodic points up to a length");
    std::string map = "gauss";
    double en_T = 0;
    en->add_option("--map", map)->check(CLI::IsMember({"gauss", "farey"}));
    en->add_option("--T", en_T, "length bound")->required();
    add_common(en, common);

    auto* eq = app.add_subcommand("equidist", "empirical against target integrals");
    std::vector<double> Ts{6, 8, 10, 12};
    std::vector<std::string> functions;
    eq->add_option("--T", Ts, "length bounds")->delimiter(',');
    eq->add_option("--functions", functions,
                   "subset of one,x,x2,one-minus-log,cdf,pair-one,box-quarter,box-half-quarter,box-half")
        ->delimiter(',');
    add_common(eq, common);

    auto* ve = app.add_subcommand("verify", "check the section return map against the flow");
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
    double tol = 1e-8;
    std::string point;
    ve->add_option("--samples", samples);
    ve->add_option("--seed", seed);
    ve->add_option("--tol", tol);
    ve->add_option("--point", point, "single point U,W,eps instead of random samples");
    add_common(ve, common);

    auto* sp = app.add_subcommand("spectrum", "transfer operator eigenvalues and checks");
    std::size_t rank = 30;
    double s = 1.0, omega = 0.0, trace_s = 1.5;
    std::string weight = "one-minus-log";
    sp->add_option("--rank", rank);
    sp->add_option("--s", s);
    sp->add_option("--omega", omega);
    sp->add_option("--trace-s", trace_s);
    sp->add_option("--weight", weight)->check(CLI::IsMember({"one", "one-minus-log"}));
    add_common(sp, common);

    auto* co = app.add_subcommand("count", "exact counts against main terms");
    CountArgs ca;
    co->add_option("--mode", ca.mode)->required()->check(CLI::IsMember({"qf", "qf-tilde", "psi-ev", "s-odd"}));
    co->add_option("--N", ca.N);
    co->add_option("--T", ca.T);
    co->add_option("--alpha", ca.alpha);
    co->add_option("--beta", ca.beta);
    co->add_option("--x", ca.x);
    co->add_option("--y", ca.y);
    co->add_option("--floor-delta", ca.floor_delta, "reject regions below size^(-1/3 + delta)");
    add_common(co, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*en) return cmd_enumerate(common, map, en_T);
        if (*eq) return cmd_equidist(common, Ts, functions);
        if (*ve) return cmd_verify(common, samples, seed, tol, point);
        if (*sp) return cmd_spectrum(common, rank, s, omega, trace_s, weight);
        if (*co) return cmd_count(common, ca);
    } catch (const ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kResource;
    } catch (const ConvergenceError& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return kConvergence;
    } catch (const NoDominantEigen& e) {
        std::cerr << "no convergence: " << e.what() << '\n';
        return kConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid: " << e.what() << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
