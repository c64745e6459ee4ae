#include "nvtflow/config.hpp"

#include "nvtflow/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nvt {

using nlohmann::json;

namespace {

constexpr double kBar = 1e5;       // Pa
constexpr double kKmolPerM3 = 1e3; // mol/m^3
constexpr double kGramPerMol = 1e-3;
constexpr double kNano = 1e-9;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ConfigError("config: unknown key '" + path + item.key() + "'");
    }
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw ConfigError("config: missing '" + path + key + "'");
    if (!obj[key].is_number()) throw ConfigError("config: '" + path + key + "' must be a number");
    return obj[key].get<double>();
}

std::vector<double> number_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError("config: '" + path + "' must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError("config: '" + path + "' must contain numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<double> number_matrix(const json& v, int m, const std::string& path) {
    if (!v.is_array() || static_cast<int>(v.size()) != m)
        throw ConfigError("config: '" + path + "' must be an " + std::to_string(m) + "x" +
                          std::to_string(m) + " matrix");
    std::vector<double> out;
    for (const auto& row : v) {
        const std::vector<double> r = number_list(row, path);
        if (static_cast<int>(r.size()) != m)
            throw ConfigError("config: '" + path + "' rows must have " + std::to_string(m) + " entries");
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

ComponentSpec parse_component(const json& v, const std::string& path) {
    if (v.is_string()) {
        ComponentSpec c = find_component(v.get<std::string>());
        return c;
    }
    if (!v.is_object()) throw ConfigError("config: '" + path + "' must be a name or an object");
    check_keys(v, {"name", "p_crit_bar", "t_crit_K", "acentric", "molar_weight_gmol"}, path + ".");
    ComponentSpec c;
    if (!v.contains("name") || !v["name"].is_string())
        throw ConfigError("config: '" + path + ".name' must be a string");
    c.name = v["name"].get<std::string>();
    c.p_crit = require_number(v, "p_crit_bar", path + ".") * kBar;
    c.t_crit = require_number(v, "t_crit_K", path + ".");
    c.acentric = require_number(v, "acentric", path + ".");
    c.molar_weight = require_number(v, "molar_weight_gmol", path + ".") * kGramPerMol;
    return c;
}

} // namespace

SchemeConfig RunConfig::scheme_config() const {
    SchemeConfig sc;
    sc.dt = dt;
    sc.c_t = c_t;
    sc.mobility = mobility;
    sc.xi = xi;
    sc.eta = eta;
    sc.solver = solver;
    return sc;
}

void RunConfig::validate() const {
    mixture.validate();
    const int m = mixture.count();
    if (static_cast<int>(beta.size()) != m * m) throw ConfigError("config: beta_ij must be MxM");
    scheme_config().validate(m);
    if (scheme == SchemeKind::Componentwise && mobility.kind != MobilityKind::Diagonal)
        throw ConfigError("config: the componentwise scheme requires the diagonal mobility model");
    if (nx < 2 || ny < 2) throw ConfigError("config: grid.nx and grid.ny must be at least 2");
    if (!(lx > 0.0) || !(ly > 0.0)) throw ConfigError("config: domain lengths must be positive");
    if (steps < 0) throw ConfigError("config: time.steps must be non-negative");
    if (static_cast<int>(initial.background.size()) != m)
        throw ConfigError("config: initial.background needs one density per component");
    for (double v : initial.background)
        if (!(v > 0.0)) throw ConfigError("config: background densities must be positive");
    for (const DropletSpec& d : initial.droplets) {
        if (static_cast<int>(d.density.size()) != m)
            throw ConfigError("config: droplet density needs one entry per component");
        for (double v : d.density)
            if (!(v > 0.0)) throw ConfigError("config: droplet densities must be positive");
        if (!(d.sx > 0.0) || !(d.sy > 0.0)) throw ConfigError("config: droplet sides must be positive");
        if (d.cx - 0.5 * d.sx < 0.0 || d.cx + 0.5 * d.sx > lx || d.cy - 0.5 * d.sy < 0.0 ||
            d.cy + 0.5 * d.sy > ly)
            throw ConfigError("config: droplet extends outside the domain");
    }
    for (size_t a = 0; a < initial.droplets.size(); ++a) {
        for (size_t b = a + 1; b < initial.droplets.size(); ++b) {
            const DropletSpec& p = initial.droplets[a];
            const DropletSpec& q = initial.droplets[b];
            const bool apart = p.cx + 0.5 * p.sx <= q.cx - 0.5 * q.sx ||
                               q.cx + 0.5 * q.sx <= p.cx - 0.5 * p.sx ||
                               p.cy + 0.5 * p.sy <= q.cy - 0.5 * q.sy ||
                               q.cy + 0.5 * q.sy <= p.cy - 0.5 * p.sy;
            if (!apart) throw ConfigError("config: droplets overlap");
        }
    }
    if (output.snapshot_every < 0 || output.energy_every < 1)
        throw ConfigError("config: output intervals invalid");
    if (!(solver.tol > 0.0)) throw ConfigError("config: solver.tol must be positive");
}

RunConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(doc,
               {"mixture", "mobility", "scheme", "grid", "time", "c_t_Jmol", "viscosity", "initial",
                "output", "solver"},
               "");

    RunConfig cfg;

    if (!doc.contains("mixture")) throw ConfigError("config: missing 'mixture'");
    {
        const json& mx = doc["mixture"];
        check_keys(mx, {"components", "temperature_K", "k_ij", "beta_ij"}, "mixture.");
        if (!mx.contains("components") || !mx["components"].is_array() || mx["components"].empty())
            throw ConfigError("config: 'mixture.components' must be a non-empty array");
        int idx = 0;
        for (const auto& c : mx["components"])
            cfg.mixture.components.push_back(
                parse_component(c, "mixture.components[" + std::to_string(idx++) + "]"));
        const int m = cfg.mixture.count();
        cfg.mixture.temperature = require_number(mx, "temperature_K", "mixture.");
        if (mx.contains("k_ij"))
            cfg.mixture.k_ij = number_matrix(mx["k_ij"], m, "mixture.k_ij");
        else
            cfg.mixture.k_ij.assign(static_cast<size_t>(m) * m, 0.0);
        if (mx.contains("beta_ij")) {
            cfg.beta = number_matrix(mx["beta_ij"], m, "mixture.beta_ij");
        } else {
            cfg.beta.assign(static_cast<size_t>(m) * m, 0.5);
            for (int i = 0; i < m; ++i) cfg.beta[static_cast<size_t>(i) * m + i] = 0.0;
        }
    }
    const int m = cfg.mixture.count();

    if (!doc.contains("mobility")) throw ConfigError("config: missing 'mobility'");
    {
        const json& mb = doc["mobility"];
        check_keys(mb, {"kind", "D_i_m2s", "D_ij_m2s"}, "mobility.");
        if (!mb.contains("kind") || !mb["kind"].is_string())
            throw ConfigError("config: 'mobility.kind' must be a string");
        const std::string kind = mb["kind"].get<std::string>();
        if (kind == "diagonal") {
            cfg.mobility.kind = MobilityKind::Diagonal;
            if (!mb.contains("D_i_m2s")) throw ConfigError("config: diagonal mobility needs 'D_i_m2s'");
            cfg.mobility.d_i = number_list(mb["D_i_m2s"], "mobility.D_i_m2s");
        } else if (kind == "molar_average" || kind == "mass_average") {
            cfg.mobility.kind =
                kind == "molar_average" ? MobilityKind::MolarAverage : MobilityKind::MassAverage;
            if (!mb.contains("D_ij_m2s"))
                throw ConfigError("config: full mobility needs 'D_ij_m2s'");
            cfg.mobility.d_ij = number_matrix(mb["D_ij_m2s"], m, "mobility.D_ij_m2s");
        } else {
            throw ConfigError("config: unknown mobility kind '" + kind + "'");
        }
    }

    if (!doc.contains("scheme") || !doc["scheme"].is_string())
        throw ConfigError("config: 'scheme' must be \"coupled\" or \"componentwise\"");
    {
        const std::string s = doc["scheme"].get<std::string>();
        if (s == "coupled")
            cfg.scheme = SchemeKind::Coupled;
        else if (s == "componentwise")
            cfg.scheme = SchemeKind::Componentwise;
        else
            throw ConfigError("config: unknown scheme '" + s + "'");
    }

    if (!doc.contains("grid")) throw ConfigError("config: missing 'grid'");
    {
        const json& gr = doc["grid"];
        check_keys(gr, {"nx", "ny", "lx_nm", "ly_nm", "bc"}, "grid.");
        cfg.nx = static_cast<int>(require_number(gr, "nx", "grid."));
        cfg.ny = static_cast<int>(require_number(gr, "ny", "grid."));
        cfg.lx = require_number(gr, "lx_nm", "grid.") * kNano;
        cfg.ly = require_number(gr, "ly_nm", "grid.") * kNano;
        if (gr.contains("bc")) {
            const std::string b = gr["bc"].get<std::string>();
            if (b == "no_flux_no_slip")
                cfg.bc = BoundaryMode::NoFluxNoSlip;
            else if (b == "periodic")
                cfg.bc = BoundaryMode::Periodic;
            else
                throw ConfigError("config: unknown bc '" + b + "'");
        }
    }

    if (!doc.contains("time")) throw ConfigError("config: missing 'time'");
    {
        const json& t = doc["time"];
        check_keys(t, {"dt_s", "steps"}, "time.");
        cfg.dt = require_number(t, "dt_s", "time.");
        cfg.steps = static_cast<long>(require_number(t, "steps", "time."));
    }

    if (doc.contains("c_t_Jmol"))
        cfg.c_t = number_list(doc["c_t_Jmol"], "c_t_Jmol");
    else
        cfg.c_t.assign(m, 0.0);

    if (!doc.contains("viscosity")) throw ConfigError("config: missing 'viscosity'");
    {
        const json& v = doc["viscosity"];
        check_keys(v, {"xi_Pas", "eta_Pas"}, "viscosity.");
        cfg.xi = require_number(v, "xi_Pas", "viscosity.");
        cfg.eta = require_number(v, "eta_Pas", "viscosity.");
    }

    if (!doc.contains("initial")) throw ConfigError("config: missing 'initial'");
    {
        const json& ini = doc["initial"];
        check_keys(ini, {"background_kmolm3", "droplets"}, "initial.");
        if (!ini.contains("background_kmolm3"))
            throw ConfigError("config: missing 'initial.background_kmolm3'");
        cfg.initial.background = number_list(ini["background_kmolm3"], "initial.background_kmolm3");
        for (double& v : cfg.initial.background) v *= kKmolPerM3;
        if (ini.contains("droplets")) {
            if (!ini["droplets"].is_array())
                throw ConfigError("config: 'initial.droplets' must be an array");
            for (const auto& d : ini["droplets"]) {
                check_keys(d, {"center_nm", "size_nm", "density_kmolm3"}, "initial.droplets[].");
                DropletSpec ds;
                const std::vector<double> ctr = number_list(d["center_nm"], "droplets.center_nm");
                const std::vector<double> sz = number_list(d["size_nm"], "droplets.size_nm");
                if (ctr.size() != 2 || sz.size() != 2)
                    throw ConfigError("config: droplet center/size need two entries");
                ds.cx = ctr[0] * kNano;
                ds.cy = ctr[1] * kNano;
                ds.sx = sz[0] * kNano;
                ds.sy = sz[1] * kNano;
                ds.density = number_list(d["density_kmolm3"], "droplets.density_kmolm3");
                for (double& v : ds.density) v *= kKmolPerM3;
                cfg.initial.droplets.push_back(std::move(ds));
            }
        }
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        check_keys(o, {"dir", "snapshot_every", "energy_every"}, "output.");
        if (o.contains("dir")) cfg.output.dir = o["dir"].get<std::string>();
        if (o.contains("snapshot_every"))
            cfg.output.snapshot_every = static_cast<long>(require_number(o, "snapshot_every", "output."));
        if (o.contains("energy_every"))
            cfg.output.energy_every = static_cast<long>(require_number(o, "energy_every", "output."));
    }

    if (doc.contains("solver")) {
        const json& s = doc["solver"];
        check_keys(s, {"tol", "max_iter"}, "solver.");
        if (s.contains("tol")) cfg.solver.tol = require_number(s, "tol", "solver.");
        if (s.contains("max_iter")) cfg.solver.max_iter = static_cast<int>(require_number(s, "max_iter", "solver."));
    }

    cfg.validate();
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::vector<std::string> preset_names() { return {"binary_c1c5_310K", "ternary_c1c5c10_323K"}; }

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.nx = 40;
    cfg.ny = 40;
    cfg.lx = 20e-9;
    cfg.ly = 20e-9;
    cfg.bc = BoundaryMode::NoFluxNoSlip;
    cfg.dt = 1e-12;
    cfg.xi = 1e-4;
    cfg.eta = 1e-4;
    cfg.solver.tol = 1e-12;
    cfg.output.energy_every = 1;
    cfg.output.snapshot_every = 40;

    if (name == "binary_c1c5_310K") {
        cfg.mixture.components = {find_component("methane"), find_component("pentane")};
        cfg.mixture.temperature = 310.0;
        cfg.mixture.k_ij.assign(4, 0.0);
        cfg.beta = {0.0, 0.5, 0.5, 0.0};
        cfg.scheme = SchemeKind::Coupled;
        cfg.mobility.kind = MobilityKind::MolarAverage;
        cfg.mobility.d_ij = {0.0, 1e-8, 1e-8, 0.0};
        cfg.steps = 200;
        cfg.c_t.assign(2, 0.0);
        cfg.initial.background = {7430.2, 673.6};
        DropletSpec d;
        d.cx = 10e-9;
        d.cy = 10e-9;
        d.sx = 10e-9;
        d.sy = 10e-9;
        d.density = {6866.3, 4791.5};
        cfg.initial.droplets = {d};
        return cfg;
    }
    if (name == "ternary_c1c5c10_323K") {
        cfg.mixture.components = {find_component("methane"), find_component("pentane"),
                                  find_component("decane")};
        cfg.mixture.temperature = 323.0;
        cfg.mixture.k_ij.assign(9, 0.0);
        cfg.beta.assign(9, 0.5);
        for (int i = 0; i < 3; ++i) cfg.beta[static_cast<size_t>(i) * 3 + i] = 0.0;
        cfg.scheme = SchemeKind::Componentwise;
        cfg.mobility.kind = MobilityKind::Diagonal;
        cfg.mobility.d_i = {3e-8, 3e-8, 3e-8};
        cfg.steps = 1000;
        cfg.c_t.assign(3, 0.0);
        cfg.initial.background = {10516.0, 770.0, 184.0};
        DropletSpec a, b;
        a.cx = 6.5e-9;
        a.cy = 10e-9;
        a.sx = 6e-9;
        a.sy = 6e-9;
        a.density = {7841.2, 1992.5, 1433.0};
        b = a;
        b.cx = 13.5e-9;
        cfg.initial.droplets = {a, b};
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

FieldState build_initial_state(const RunConfig& config, const StaggeredGrid& g) {
    config.validate();
    const int m = config.mixture.count();
    FieldState state;
    state.n.assign(m, make_cell_field(g));
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < g.cells(); ++c) state.n[i][c] = config.initial.background[i];
    for (const DropletSpec& d : config.initial.droplets) {
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const double x = g.xc(i);
                const double y = g.yc(j);
                if (x >= d.cx - 0.5 * d.sx && x <= d.cx + 0.5 * d.sx && y >= d.cy - 0.5 * d.sy &&
                    y <= d.cy + 0.5 * d.sy) {
                    for (int k = 0; k < m; ++k) state.n[k][g.cell(i, j)] = d.density[k];
                }
            }
        }
    }
    state.u = make_face_field(g);
    state.time = 0.0;

    const EosCoeffs eos = EosCoeffs::from(config.mixture);
    std::vector<double> point(m);
    double fb = 0.0;
    for (int c = 0; c < g.cells(); ++c) {
        for (int i = 0; i < m; ++i) point[i] = state.n[i][c];
        fb += helmholtz_bulk(eos, point);
    }
    double radicand = fb * g.cell_volume();
    for (int i = 0; i < m; ++i) radicand += config.c_t[i] * cell_sum(state.n[i], g);
    if (!(radicand >= 0.0))
        throw DomainError("initial state: F_b + sum C_T N is negative; raise C_T");
    state.sav = std::sqrt(radicand);
    return state;
}

} // namespace nvt
