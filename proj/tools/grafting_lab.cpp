// grafting-lab: length estimates, ray sweeps, boundary detection and the
// bounded-distance certificate from the command line.
//
// Exit codes: 0 success, 1 error, 2 inconclusive (no limit detected, or a
// certificate whose bound is not met).

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grafting_lab/boundary.hpp"
#include "grafting_lab/broken_arc.hpp"
#include "grafting_lab/family.hpp"
#include "grafting_lab/graft_ray.hpp"
#include "grafting_lab/io.hpp"
#include "grafting_lab/teich_ray.hpp"

using namespace grafting_lab;

namespace {

constexpr const char* kSchema = "grafting-lab/1";

struct Config {
    std::string surface_path;
    std::string catalog_path;
    std::string lam;
    double t_min = 100.0;
    double t_max = 1e6;
    int steps = 60;
    std::string out;
    std::string format = "csv";
    std::optional<double> theta0;
    double eps0 = 0.1;
    double t0 = 1.0;
    double slack = 1.0;
    double bound = 10.0;
    double compact_m = 10.0;
    double compact_t = 10.0;
    double calib_m = 4.0;
    double kappa = 4.0;
    std::string k0 = "1";
};

/// Evaluates f(0..n-1) on a small worker pool; results land in index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
    std::vector<std::optional<T>> slots(n);
    std::vector<std::string> errors(n);
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) {
                try {
                    slots[i].emplace(f(i));
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!slots[i]) throw std::runtime_error(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) : path_(path) {}
    std::ostream& stream() { return buf_; }
    void commit() {
        if (path_.empty()) {
            std::cout << buf_.str();
            return;
        }
        std::ofstream f(path_, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path_);
        f << buf_.str();
    }

private:
    std::string path_;
    std::ostringstream buf_;
};

std::string fmt(double x) { return format_double(x); }

json interval_json(const CertifiedInterval& x) { return json::array({x.lo(), x.hi()}); }

/// nlohmann writes doubles with enough digits to round-trip; that is the
/// shortest form rather than 17 digits, so numbers are re-rendered here.
void dump_json(std::ostream& os, const json& j, int indent = 0) {
    const std::string pad(indent, ' ');
    const std::string pad2(indent + 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) os << ",\n";
            first = false;
            os << pad2 << json(it.key()).dump() << ": ";
            dump_json(os, it.value(), indent + 2);
        }
        os << "\n" << pad << "}";
    } else if (j.is_array()) {
        const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
        if (flat) {
            os << "[";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k) os << ", ";
                dump_json(os, j[k], indent);
            }
            os << "]";
            return;
        }
        os << "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k) os << ",\n";
            os << pad2;
            dump_json(os, j[k], indent + 2);
        }
        os << "\n" << pad << "]";
    } else if (j.is_number_float()) {
        os << fmt(j.get<double>());
    } else {
        os << j.dump();
    }
}

PantsSurface load_surface(const Config& c) {
    if (c.surface_path.empty()) throw std::runtime_error("--surface is required");
    return surface_from_json(read_json_file(c.surface_path));
}

std::vector<CurveClass> load_catalog(const Config& c, const PantsDecomposition& d) {
    if (c.catalog_path.empty()) throw std::runtime_error("--catalog is required");
    return catalog_from_json(d, read_json_file(c.catalog_path));
}

WeightedMulticurve load_lambda(const Config& c, const PantsDecomposition& d) {
    if (c.lam.empty()) throw std::runtime_error("--lam is required");
    return parse_multicurve(d, c.lam);
}

CalibrationOptions calibration(const Config& c) {
    CalibrationOptions o;
    o.max_length = c.calib_m;
    return o;
}

GraftRay make_graft(const Config& c, const PantsSurface& s, const WeightedMulticurve& lam) {
    GraftOptions o;
    o.theta0 = c.theta0;
    o.t0 = c.t0;
    o.calibration = calibration(c);
    return GraftRay(s, lam, o);
}

TeichRay make_teich(const Config& c, const PantsSurface& s, const WeightedMulticurve& lam, const GraftRay& g) {
    TeichOptions o;
    o.kappa = c.kappa;
    if (c.k0 == "matched") {
        o.k0 = matched_k0(g, g.c_max());
    } else {
        std::size_t used = 0;
        try {
            o.k0 = std::stod(c.k0, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != c.k0.size()) throw std::runtime_error("--k0 must be a number or 'matched'");
    }
    return TeichRay(s, lam, o);
}

std::vector<double> grid(const Config& c) { return log_grid(c.t_min, c.t_max, c.steps); }

// ---------------------------------------------------------------------------

int run_length(const Config& c) {
    const PantsSurface s = load_surface(c);
    const std::vector<CurveClass> cat = load_catalog(c, s.topology());
    struct Row {
        std::string id;
        double exact;
        BrokenArcEstimate est;
        std::vector<int> iv;
    };
    const auto rows = parallel_map<Row>(cat.size(), [&](std::size_t k) {
        const BrokenArcCalibration cal = calibrate_broken_arc(s.topology(), cat[k], calibration(c));
        return Row{cat[k].id, geodesic_length(s, cat[k]), broken_arc_estimate(s, cat[k], cal),
                   intersection_vector(s.topology(), cat[k])};
    });
    Output out(c.out);
    if (c.format == "json") {
        json doc;
        doc["schema"] = kSchema;
        doc["command"] = "length";
        doc["curves"] = json::array();
        for (const Row& r : rows)
            doc["curves"].push_back({{"id", r.id},
                                     {"intersections", r.iv},
                                     {"exact", r.exact},
                                     {"central", r.est.central},
                                     {"estimate", interval_json(r.est.interval)},
                                     {"pants_curve", r.est.pants_curve},
                                     {"contains", r.est.interval.contains(r.exact)}});
        dump_json(out.stream(), doc);
        out.stream() << "\n";
    } else {
        out.stream() << "curve_id,exact,central,estimate_lo,estimate_hi,contains\n";
        for (const Row& r : rows)
            out.stream() << r.id << ',' << fmt(r.exact) << ',' << fmt(r.est.central) << ',' << fmt(r.est.interval.lo())
                         << ',' << fmt(r.est.interval.hi()) << ',' << (r.est.interval.contains(r.exact) ? "true" : "false")
                         << '\n';
    }
    out.commit();
    return 0;
}

void write_sweep(const Config& c, const PantsDecomposition& d, const std::vector<FamilySnapshot>& snaps,
                 const char* command) {
    Output out(c.out);
    if (c.format == "json") {
        json doc;
        doc["schema"] = kSchema;
        doc["command"] = command;
        doc["rows"] = json::array();
        for (const FamilySnapshot& s : snaps)
            for (int j = 0; j < d.num_curves(); ++j)
                doc["rows"].push_back({{"t", s.t},
                                       {"curve_id", d.curve(j).id},
                                       {"len_lo", s.lengths[j].lo()},
                                       {"len_hi", s.lengths[j].hi()},
                                       {"twistbudget_hi", s.twist_products[j].hi()},
                                       {"dist_lo", s.dist_to_base.lo()},
                                       {"dist_hi", s.dist_to_base.hi()}});
        dump_json(out.stream(), doc);
        out.stream() << "\n";
    } else {
        out.stream() << "t,curve_id,len_lo,len_hi,twistbudget_hi,dist_lo,dist_hi\n";
        for (const FamilySnapshot& s : snaps)
            for (int j = 0; j < d.num_curves(); ++j)
                out.stream() << fmt(s.t) << ',' << d.curve(j).id << ',' << fmt(s.lengths[j].lo()) << ','
                             << fmt(s.lengths[j].hi()) << ',' << fmt(s.twist_products[j].hi()) << ','
                             << fmt(s.dist_to_base.lo()) << ',' << fmt(s.dist_to_base.hi()) << '\n';
    }
    out.commit();
}

int run_graft_ray(const Config& c) {
    const PantsSurface s = load_surface(c);
    const GraftRay g = make_graft(c, s, load_lambda(c, s.topology()));
    const std::vector<double> ts = grid(c);
    const auto snaps = parallel_map<FamilySnapshot>(ts.size(), [&](std::size_t k) { return g.snapshot(ts[k]); });
    write_sweep(c, s.topology(), snaps, "graft-ray");
    return 0;
}

int run_teich_ray(const Config& c) {
    const PantsSurface s = load_surface(c);
    const WeightedMulticurve lam = load_lambda(c, s.topology());
    const GraftRay g = make_graft(c, s, lam);
    const TeichRay m = make_teich(c, s, lam, g);
    const std::vector<double> ts = grid(c);
    const auto snaps = parallel_map<FamilySnapshot>(ts.size(), [&](std::size_t k) { return m.snapshot(ts[k]); });
    write_sweep(c, s.topology(), snaps, "teich-ray");
    return 0;
}

int run_converge(const Config& c) {
    const PantsSurface s = load_surface(c);
    const PantsDecomposition& d = s.topology();
    const std::vector<CurveClass> curves = load_catalog(c, d);
    const GraftRay g = make_graft(c, s, load_lambda(c, d));
    const auto cat = parallel_map<CatalogCurve>(
        curves.size(), [&](std::size_t k) { return prepare_catalog_curve(s, curves[k], calibration(c)); });
    const std::vector<double> ts = grid(c);
    const auto limits = parallel_map<ProjectiveLimit>(ts.size(), [&](std::size_t k) {
        return thurston_limit(ts[k], catalog_lengths(g, ts[k], cat), cat, d.num_curves());
    });
    const ProjectiveLimit& last = limits.back();
    Output out(c.out);
    if (c.format == "json") {
        json doc;
        doc["schema"] = kSchema;
        doc["command"] = "converge";
        doc["rows"] = json::array();
        for (const ProjectiveLimit& p : limits)
            for (std::size_t k = 0; k < p.curve_ids.size(); ++k)
                doc["rows"].push_back({{"t", p.t},
                                       {"curve_id", p.curve_ids[k]},
                                       {"per_log_t", interval_json(p.per_log_t[k])},
                                       {"normalized", interval_json(p.normalized[k])}});
        doc["t"] = last.t;
        doc["detected"] = last.detected;
        doc["consistent_candidates"] = last.consistent_candidates;
        json w = json::object();
        for (std::size_t j = 0; j < last.weights.size(); ++j) w[d.curve(static_cast<int>(j)).id] = last.weights[j];
        doc["limit"] = last.detected ? w : json(nullptr);
        dump_json(out.stream(), doc);
        out.stream() << "\n";
    } else {
        out.stream() << "t,curve_id,per_log_t_lo,per_log_t_hi,normalized_lo,normalized_hi\n";
        for (const ProjectiveLimit& p : limits)
            for (std::size_t k = 0; k < p.curve_ids.size(); ++k)
                out.stream() << fmt(p.t) << ',' << p.curve_ids[k] << ',' << fmt(p.per_log_t[k].lo()) << ','
                             << fmt(p.per_log_t[k].hi()) << ',' << fmt(p.normalized[k].lo()) << ','
                             << fmt(p.normalized[k].hi()) << '\n';
    }
    out.commit();
    if (!last.detected) {
        std::cerr << "inconclusive: " << last.consistent_candidates << " candidate limits consistent at t = "
                  << fmt(last.t) << "\n";
        return 2;
    }
    return 0;
}

int run_distance(const Config& c) {
    const PantsSurface s = load_surface(c);
    const WeightedMulticurve lam = load_lambda(c, s.topology());
    const GraftRay g = make_graft(c, s, lam);
    const TeichRay m = make_teich(c, s, lam, g);
    const std::vector<double> ts = grid(c);
    const auto dists = parallel_map<MinskyDistance>(ts.size(), [&](std::size_t k) {
        return minsky_distance_detail(product_region_image(g.snapshot(ts[k]), c.eps0),
                                      product_region_image(m.snapshot(ts[k]), c.eps0), c.slack);
    });
    Output out(c.out);
    if (c.format == "json") {
        json doc;
        doc["schema"] = kSchema;
        doc["command"] = "distance";
        doc["rows"] = json::array();
        for (std::size_t k = 0; k < ts.size(); ++k)
            doc["rows"].push_back(
                {{"t", ts[k]}, {"distance", interval_json(dists[k].distance)}, {"pi0", interval_json(dists[k].pi0)}});
        dump_json(out.stream(), doc);
        out.stream() << "\n";
    } else {
        out.stream() << "t,distance_lo,distance_hi,pi0_lo,pi0_hi\n";
        for (std::size_t k = 0; k < ts.size(); ++k)
            out.stream() << fmt(ts[k]) << ',' << fmt(dists[k].distance.lo()) << ',' << fmt(dists[k].distance.hi())
                         << ',' << fmt(dists[k].pi0.lo()) << ',' << fmt(dists[k].pi0.hi()) << '\n';
    }
    out.commit();
    return 0;
}

int run_certify(const Config& c) {
    const PantsSurface s = load_surface(c);
    const WeightedMulticurve lam = load_lambda(c, s.topology());
    const GraftRay g = make_graft(c, s, lam);
    const TeichRay m = make_teich(c, s, lam, g);
    const std::vector<double> ts = grid(c);
    CertificateOptions opt;
    opt.epsilon0 = c.eps0;
    opt.slack = c.slack;
    opt.bound = c.bound;
    const QuasiGeodesicCertificate cert = quasi_geodesic_certificate(g, m, ts, opt);
    std::vector<ProductRegionImage> family;
    for (double t : ts) family.push_back(product_region_image(g.snapshot(t), c.eps0));
    const CompactnessResult compact = pi0_compactness_check(family, c.compact_m, c.compact_t);

    json doc;
    doc["schema"] = kSchema;
    doc["command"] = "certify";
    doc["sup_distance"] = interval_json(cert.sup_distance);
    doc["bound"] = cert.bound;
    doc["pass"] = cert.pass;
    doc["theta0"] = g.theta0();
    doc["k0"] = m.options().k0;
    doc["per_t"] = json::array();
    for (const CertificatePoint& p : cert.per_t) {
        json row{{"t", p.t}, {"distance", interval_json(p.distance.distance)}, {"pi0", interval_json(p.distance.pi0)}};
        json per = json::array();
        for (const CertifiedInterval& x : p.distance.per_curve) per.push_back(interval_json(x));
        row["thin_components"] = per;
        doc["per_t"].push_back(row);
    }
    json logr = json::object();
    for (int j : lam.curves)
        logr[s.topology().curve(j).id] = {{"at_t_max", interval_json(core_log_ratio(g, m, ts.back(), j))},
                                          {"predicted", interval_json(predicted_core_log_ratio(g, m, j))}};
    doc["core_log_ratio"] = logr;
    doc["compactness"] = {{"pass", compact.pass},
                          {"min_length", compact.min_length},
                          {"max_length", compact.max_length},
                          {"max_abs_twist", compact.max_abs_twist},
                          {"witness", compact.witness}};
    Output out(c.out);
    if (c.format == "csv") {
        out.stream() << "t,distance_lo,distance_hi\n";
        for (const CertificatePoint& p : cert.per_t)
            out.stream() << fmt(p.t) << ',' << fmt(p.distance.distance.lo()) << ',' << fmt(p.distance.distance.hi())
                         << '\n';
    } else {
        dump_json(out.stream(), doc);
        out.stream() << "\n";
    }
    out.commit();
    return cert.pass ? 0 : 2;
}

void add_common(CLI::App* sub, Config& c, bool catalog, bool lam, bool sweep) {
    sub->add_option("--surface", c.surface_path, "surface JSON")->required();
    if (catalog) sub->add_option("--catalog", c.catalog_path, "curve catalog JSON")->required();
    if (lam) sub->add_option("--lam", c.lam, "weighted multicurve, e.g. g1:1,g2:0.5")->required();
    if (sweep) {
        sub->add_option("--t-min", c.t_min, "smallest t of the log grid")->check(CLI::PositiveNumber);
        sub->add_option("--t-max", c.t_max, "largest t of the log grid")->check(CLI::PositiveNumber);
        sub->add_option("--steps", c.steps, "grid points")->check(CLI::Range(2, 1000000));
        sub->add_option("--theta0", c.theta0, "sector half-angle (default from the collar)");
        sub->add_option("--t0", c.t0, "flat segment length in the twist budget");
        sub->add_option("--kappa", c.kappa, "order constant of the Teichmueller model");
        sub->add_option("--k0", c.k0, "modulus normalization K0, or 'matched'");
        sub->add_option("--eps0", c.eps0, "thinness threshold");
        sub->add_option("--slack", c.slack, "additive slack of the product-region estimate");
        sub->add_option("--bound", c.bound, "certificate bound D");
        sub->add_option("--M", c.compact_m, "compactness length bound");
        sub->add_option("--T", c.compact_t, "compactness twist bound");
    }
    sub->add_option("--calib-M", c.calib_m, "length bound M for the broken-arc calibration");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grafting-lab: hyperbolic surfaces, grafting rays and Teichmueller rays"};
    app.require_subcommand(1);
    Config c;
    add_common(app.add_subcommand("length", "exact and broken-arc lengths of catalog curves"), c, true, false, false);
    add_common(app.add_subcommand("graft-ray", "grafting ray sweep"), c, false, true, true);
    add_common(app.add_subcommand("teich-ray", "Teichmueller ray model sweep"), c, false, true, true);
    add_common(app.add_subcommand("converge", "Thurston boundary detection along the grafting ray"), c, true, true, true);
    add_common(app.add_subcommand("distance", "product-region distance between the two rays"), c, false, true, true);
    auto* cert = app.add_subcommand("certify", "bounded-distance certificate");
    add_common(cert, c, false, true, true);
    CLI11_PARSE(app, argc, argv);
    if (cert->parsed() && cert->count("--format") == 0) c.format = "json";
    try {
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "length") return run_length(c);
        if (cmd == "graft-ray") return run_graft_ray(c);
        if (cmd == "teich-ray") return run_teich_ray(c);
        if (cmd == "converge") return run_converge(c);
        if (cmd == "distance") return run_distance(c);
        if (cmd == "certify") return run_certify(c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
