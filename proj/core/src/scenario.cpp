#include "forge/scenario.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace forge {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

SurfaceClass class_from(const std::string& v, int line) {
    if (v == "affine" || v == "improper-affine") return SurfaceClass::ImproperAffine;
    if (v == "maxface") return SurfaceClass::Maxface;
    if (v == "cmc1" || v == "cmc1-elliptic") return SurfaceClass::Cmc1Elliptic;
    if (v == "cmc1-parabolic") return SurfaceClass::Cmc1Parabolic;
    if (v == "flat-front") return SurfaceClass::FlatFront;
    if (v == "flat-s3") return SurfaceClass::FlatS3;
    throw ConfigError("unknown class '" + v + "'", line, 1);
}

double num(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("expected a number, got '" + v + "'", line, 1);
    }
}

ExprPtr expr(const std::string& v, int line) {
    try {
        return parse_expr(v);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (line " +
                              std::to_string(line) + ")",
                          line, e.column);
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario sc;
    std::map<std::string, std::pair<std::string, int>> kv;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool have_class = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", line, 1);
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("empty key or value", line, 1);
        if (kv.count(key))
            throw ConfigError("duplicate key '" + key + "'", line, 1);
        kv[key] = {val, line};
        if (key == "class") have_class = true;
    }
    if (!have_class) throw ConfigError("missing 'class' key", line, 1);

    auto take = [&kv](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) return std::pair<std::string, int>{"", 0};
        auto r = it->second;
        kv.erase(it);
        return r;
    };
    auto need = [&take](const std::string& k, int) {
        auto r = take(k);
        if (r.first.empty())
            throw ConfigError("missing required key '" + k + "'", 0, 1);
        return r;
    };

    sc.model.cls = class_from(take("class").first, kv.count("class") ? 0 : 1);
    auto idkv = take("id");
    sc.id = idkv.first.empty() ? "unnamed" : idkv.first;

    switch (sc.model.cls) {
        case SurfaceClass::ImproperAffine: {
            ImproperAffineData d;
            auto f = need("F", 0);
            auto g = need("G", 0);
            d.F = expr(f.first, f.second);
            d.G = expr(g.first, g.second);
            auto z0 = take("z0");
            if (!z0.first.empty()) {
                cplx c;
                if (!is_constant(expr(z0.first, z0.second), &c))
                    throw ConfigError("z0 must be constant", z0.second, 1);
                d.z0 = c;
            }
            sc.model.affine = d;
            break;
        }
        case SurfaceClass::Maxface: {
            MaxfaceData d;
            auto f1 = need("F1", 0), f2 = need("F2", 0), f3 = need("F3", 0);
            d.F1 = expr(f1.first, f1.second);
            d.F2 = expr(f2.first, f2.second);
            d.F3 = expr(f3.first, f3.second);
            auto g = take("g"), w = take("omega");
            if (g.first.empty() || w.first.empty())
                throw ConfigError("maxface scenarios need g and omega", 0, 1);
            d.g = expr(g.first, g.second);
            d.omega_core = expr(w.first, w.second);
            sc.model.maxface = d;
            break;
        }
        case SurfaceClass::Cmc1Elliptic: {
            Cmc1Data d;
            auto g = need("g", 0), w = need("omega", 0), G = need("Ghyp", 0);
            d.g = expr(g.first, g.second);
            d.omega_core = expr(w.first, w.second);
            d.G_hyp = expr(G.first, G.second);
            auto q = take("Q");
            if (!q.first.empty()) d.Q_core = expr(q.first, q.second);
            sc.model.cmc1 = d;
            break;
        }
        case SurfaceClass::Cmc1Parabolic: {
            auto h = need("h", 0);
            sc.model.parabolic_h = expr(h.first, h.second);
            auto e = take("epsilon");
            if (!e.first.empty()) {
                double ev = num(e.first, e.second);
                if (ev != 1.0 && ev != -1.0)
                    throw ConfigError("epsilon must be +1 or -1", e.second, 1);
                sc.model.parabolic_epsilon = static_cast<int>(ev);
            }
            auto G = take("Ghyp");
            if (!G.first.empty())
                sc.model.parabolic_G_hyp = expr(G.first, G.second);
            break;
        }
        case SurfaceClass::FlatFront: {
            FlatFrontData d;
            auto w = need("omega_hat", 0), r = need("rho_hat", 0);
            d.omega_hat = expr(w.first, w.second);
            d.rho_hat = expr(r.first, r.second);
            auto mu = take("mu"), nu = take("nu");
            if (!mu.first.empty()) d.mu = num(mu.first, mu.second);
            if (!nu.first.empty()) d.nu = num(nu.first, nu.second);
            sc.model.flat_front = d;
            break;
        }
        case SurfaceClass::FlatS3: {
            auto p = need("profile", 0);
            if (p.first == "counterexample") {
                sc.model.flat_s3 = flat_s3_counterexample();
            } else if (p.first.rfind("constant:", 0) == 0) {
                double w0 = num(p.first.substr(9), p.second);
                if (!(w0 > 0.0 && w0 < M_PI))
                    throw ConfigError("constant profile needs omega in (0,pi)",
                                      p.second, 1);
                sc.model.flat_s3 = flat_s3_constant(w0);
            } else {
                throw ConfigError("profile must be 'counterexample' or "
                                  "'constant:<omega>'",
                                  p.second, 1);
            }
            auto rh = take("rect_half");
            if (!rh.first.empty()) sc.cfg.rect_half = num(rh.first, rh.second);
            break;
        }
    }

    auto r0 = take("r0");
    if (!r0.first.empty()) sc.cfg.r0 = num(r0.first, r0.second);
    auto rays = take("rays");
    if (!rays.first.empty())
        sc.cfg.n_rays = static_cast<int>(num(rays.first, rays.second));
    auto grid = take("grid");
    if (!grid.first.empty())
        sc.cfg.grid_n = static_cast<int>(num(grid.first, grid.second));
    auto tol = take("tol");
    if (!tol.first.empty()) sc.cfg.length.tol = num(tol.first, tol.second);
    auto rc = take("r_check");
    if (!rc.first.empty()) sc.cfg.r_check = num(rc.first, rc.second);
    auto pt = take("punctured");
    if (!pt.first.empty()) {
        if (pt.first != "true" && pt.first != "false")
            throw ConfigError("punctured must be true or false", pt.second, 1);
        sc.model.end_punctured_type = pt.first == "true";
    }

    if (!kv.empty()) {
        auto it = kv.begin();
        throw ConfigError("unknown key '" + it->first + "'", it->second.second, 1);
    }
    if (sc.cfg.r0 <= 0 || sc.cfg.n_rays < 1 || sc.cfg.grid_n < 8 ||
        sc.cfg.length.tol <= 0)
        throw ConfigError("r0, rays, grid, tol must be positive", 0, 1);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'", 0, 1);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void apply_overrides(Scenario& sc, const ScenarioOverrides& ov) {
    if (ov.rays > 0) sc.cfg.n_rays = ov.rays;
    if (ov.r0 > 0) sc.cfg.r0 = ov.r0;
    if (ov.grid > 0) sc.cfg.grid_n = ov.grid;
    if (ov.tol > 0) sc.cfg.length.tol = ov.tol;
}

}  // namespace forge
