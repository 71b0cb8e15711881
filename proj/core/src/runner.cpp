#include "forge/runner.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace forge {

namespace {

using nlohmann::json;

json verdict_json(const DivergenceVerdict& v) {
    json j;
    j["divergent"] = v.divergent;
    j["model"] = growth_model_name(v.model);
    j["log_power"] = v.log_power;
    j["log_coeff"] = v.log_coeff;
    j["power_exponent"] = v.power_exponent;
    j["finite_value"] = v.finite_value;
    j["error_estimate"] = v.error_estimate;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

json classifier_json(const SingularityVerdict& v) {
    json j;
    switch (v.kind) {
        case SingularityVerdict::Kind::Removable: j["kind"] = "removable"; break;
        case SingularityVerdict::Kind::Pole: j["kind"] = "pole"; break;
        case SingularityVerdict::Kind::Essential: j["kind"] = "essential"; break;
        case SingularityVerdict::Kind::Inconclusive:
            j["kind"] = "inconclusive";
            break;
    }
    j["pole_order"] = v.pole_order;
    j["fitted_slope"] = v.fitted_slope;
    j["fit_residual"] = v.fit_residual;
    return j;
}

std::string csv_of(const DivergenceVerdict& v) {
    std::ostringstream out;
    out << "ray_angle,epsilon,partial_length\n";
    out.precision(17);
    for (const auto& row : v.table)
        out << row.ray_angle << "," << row.epsilon << "," << row.partial_length
            << "\n";
    return out.str();
}

}  // namespace

RunOutcome run_scenario(const Scenario& sc) {
    RunOutcome out;
    out.report = end_report(sc.model, sc.cfg);
    out.consistency = theorem_consistency(out.report);

    json j;
    j["id"] = sc.id;
    j["class"] = surface_class_name(sc.model.cls);
    j["end"] = out.report.end_id;
    j["config"] = {{"rays", sc.cfg.n_rays},
                   {"r0", sc.cfg.r0},
                   {"grid", sc.cfg.grid_n},
                   {"tol", sc.cfg.length.tol}};
    j["weak_metric"] = out.report.weak_metric_name;
    j["weak"] = verdict_json(out.report.weak);
    j["first_form"] = verdict_json(out.report.first);
    j["weakly_complete"] = out.report.weakly_complete;
    j["complete"] = out.report.complete;
    j["singular_set_compact"] = out.report.singular_compact;
    j["singular_components"] = out.report.singular_curve.polylines.size();
    j["end_punctured_type"] = out.report.end_punctured_type;
    j["equivalence_exempt"] = out.report.exempt_from_equivalence;
    j["consistency"] = {{"pass", out.consistency.pass},
                        {"explanation", out.consistency.explanation}};
    for (const auto& [name, v] : out.report.pole_orders)
        j["classifiers"][name] = classifier_json(v);
    for (const auto& [name, v] : out.report.fitted_constants)
        j["fitted_constants"][name] = v;
    if (!out.report.evidence_note.empty())
        j["evidence_note"] = out.report.evidence_note;
    out.json = j.dump(2);
    out.csv = csv_of(out.report.first);

    std::ostringstream sum;
    sum << sc.id << " [" << surface_class_name(sc.model.cls) << "] "
        << "weakly_complete=" << (out.report.weakly_complete ? "yes" : "no")
        << " complete=" << (out.report.complete ? "yes" : "no")
        << " singular_compact=" << (out.report.singular_compact ? "yes" : "no")
        << " consistency=" << (out.consistency.pass ? "pass" : "FAIL");
    out.summary = sum.str();
    return out;
}

namespace {

void write_obj_grid(std::ostream& out, int nu, int nv,
                    const std::function<std::array<double, 3>(int, int)>& at,
                    const std::string& note) {
    out << "# surface mesh\n";
    if (!note.empty()) out << "# " << note << "\n";
    out.precision(12);
    for (int i = 0; i <= nu; ++i)
        for (int j = 0; j <= nv; ++j) {
            auto p = at(i, j);
            out << "v " << p[0] << " " << p[1] << " " << p[2] << "\n";
        }
    auto idx = [nv](int i, int j) { return i * (nv + 1) + j + 1; };
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) {
            out << "f " << idx(i, j) << " " << idx(i + 1, j) << " "
                << idx(i + 1, j + 1) << "\n";
            out << "f " << idx(i, j) << " " << idx(i + 1, j + 1) << " "
                << idx(i, j + 1) << "\n";
        }
}

}  // namespace

void write_obj(const Scenario& sc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'", 0, 0);

    const int n_r = 48, n_th = 96;
    double r_out = sc.cfg.r0, r_in = sc.cfg.r0 / 50.0;
    auto annulus_pt = [&](int i, int j) {
        double r = r_in * std::pow(r_out / r_in, static_cast<double>(i) / n_r);
        double th = -M_PI + 2.0 * M_PI * (j + 0.5) / (n_th + 1);
        return std::polar(r, th);
    };

    switch (sc.model.cls) {
        case SurfaceClass::ImproperAffine: {
            AffineSurface s = build_improper_affine(*sc.model.affine);
            write_obj_grid(out, n_r, n_th,
                           [&](int i, int j) { return s.eval(annulus_pt(i, j)); },
                           "graph over a log-spaced annulus, slit avoided");
            break;
        }
        case SurfaceClass::Maxface: {
            MaxfaceSurface s = build_maxface(*sc.model.maxface);
            write_obj_grid(out, n_r, n_th,
                           [&](int i, int j) { return s.eval(annulus_pt(i, j)); },
                           "graph over a log-spaced annulus, slit avoided");
            break;
        }
        case SurfaceClass::FlatS3: {
            double a = sc.cfg.rect_half;
            FlatS3IntegrateOptions io;
            io.step = 2.0 * a / 160;
            SurfaceMesh m = flat_s3_integrate(*sc.model.flat_s3, -a, a, -a, a, io);
            write_obj_grid(
                out, m.nu, m.nv,
                [&](int i, int j) -> std::array<double, 3> {
                    const auto& f = m.at(i, j);
                    double d = 1.0 + f[0];
                    return {f[1] / d, f[2] / d, f[3] / d};
                },
                "stereographic projection of S^3 from (-1,0,0,0)");
            break;
        }
        default:
            throw ConfigError(
                "mesh export is only available for classes with an ambient "
                "immersion (affine, maxface, flat-s3)",
                0, 0);
    }
}

RunOutcome reproduce(const std::string& id) {
    std::string text;
    if (id == "s3-counterexample") {
        text =
            "id = s3-counterexample\n"
            "class = flat-s3\n"
            "profile = counterexample\n";
    } else if (id == "affine-claim") {
        text =
            "id = affine-claim\n"
            "class = affine\n"
            "F = 1/z\n"
            "G = z\n"
            "r0 = 0.5\n";
    } else if (id == "parabolic-end") {
        text =
            "id = parabolic-end\n"
            "class = cmc1-parabolic\n"
            "h = 0\n"
            "epsilon = 1\n";
    } else if (id == "completeness-lemma-demo") {
        text =
            "id = completeness-lemma-demo\n"
            "class = maxface\n"
            "F1 = (z + 1/z)/2\n"
            "F2 = (z - 1/z)/2i\n"
            "F3 = log(z)\n"
            "g = z\n"
            "omega = 1/z^2\n"
            "r0 = 0.5\n";
    } else {
        throw ConfigError("unknown preset '" + id + "'", 0, 0);
    }
    return run_scenario(parse_scenario(text));
}

int exit_code_for(const std::exception& e) {
    // 2: bad input; 3: the numerics could not reach a verdict (validation or
    // quadrature trouble); 4 is reserved for consistency failures.
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    return 3;
}

}  // namespace forge
