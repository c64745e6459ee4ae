#include "nvtflow/thermo.hpp"

#include "nvtflow/error.hpp"

#include <cmath>
#include <limits>

namespace nvt {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

// Largest admissible covolume packing: f_b is evaluated only for bn below
// this bound, violating states abort with a diagnostic instead of NaN.
constexpr double kCovolumeGuard = 1.0 - 1e-12;

void check_positive_composition(std::span<const double> n) {
    for (size_t i = 0; i < n.size(); ++i) {
        if (!(n[i] > 0.0)) {
            throw DomainError("bulk EOS: molar density of component " + std::to_string(i) +
                              " is not positive (" + std::to_string(n[i]) + " mol/m^3)");
        }
    }
}

} // namespace

void ComponentSpec::validate() const {
    if (!(p_crit > 0.0)) throw ConfigError("component '" + name + "': critical pressure must be positive");
    if (!(t_crit > 0.0)) throw ConfigError("component '" + name + "': critical temperature must be positive");
    if (!(molar_weight > 0.0)) throw ConfigError("component '" + name + "': molar weight must be positive");
}

void MixtureSpec::validate() const {
    const size_t m = components.size();
    if (m < 1) throw ConfigError("mixture: at least one component required");
    if (!(temperature > 0.0)) throw ConfigError("mixture: temperature must be positive");
    for (const auto& c : components) c.validate();
    if (k_ij.size() != m * m) throw ConfigError("mixture: k_ij must be an MxM matrix");
    for (size_t i = 0; i < m; ++i) {
        if (k_ij[i * m + i] != 0.0)
            throw ConfigError("mixture: k_ij diagonal must be zero");
        for (size_t j = 0; j < i; ++j) {
            if (k_ij[i * m + j] != k_ij[j * m + i])
                throw ConfigError("mixture: k_ij must be symmetric");
        }
    }
}

PureParams pure_params(const ComponentSpec& c, double temperature) {
    if (!(temperature > 0.0)) throw DomainError("pure_params: temperature must be positive");
    c.validate();
    const double w = c.acentric;
    // Quadratic correlation up to omega = 0.49, cubic above.
    double m;
    if (w <= 0.49) {
        m = 0.37464 + 1.54226 * w - 0.26992 * w * w;
    } else {
        m = 0.379642 + 1.485030 * w - 0.164423 * w * w + 0.016666 * w * w * w;
    }
    const double tr = temperature / c.t_crit;
    const double bracket = 1.0 + m * (1.0 - std::sqrt(tr));
    const double a = 0.45724 * kGasConstant * kGasConstant * c.t_crit * c.t_crit / c.p_crit * bracket * bracket;
    const double b = 0.07780 * kGasConstant * c.t_crit / c.p_crit;
    return {a, b, m};
}

EosCoeffs EosCoeffs::from(const MixtureSpec& spec) {
    spec.validate();
    const int m = spec.count();
    EosCoeffs eos;
    eos.rt = kGasConstant * spec.temperature;
    eos.ai.resize(m);
    eos.bi.resize(m);
    eos.a_ij.resize(static_cast<size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        const PureParams p = pure_params(spec.components[i], spec.temperature);
        eos.ai[i] = p.a;
        eos.bi[i] = p.b;
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            eos.a_ij[static_cast<size_t>(i) * m + j] =
                std::sqrt(eos.ai[i] * eos.ai[j]) * (1.0 - spec.kij(i, j));
    return eos;
}

MixtureParams mixture_params(const MixtureSpec& spec, std::span<const double> n) {
    const EosCoeffs eos = EosCoeffs::from(spec);
    const int m = eos.count();
    if (static_cast<int>(n.size()) != m) throw ConfigError("mixture_params: composition size mismatch");
    double ntot = 0.0;
    for (int i = 0; i < m; ++i) {
        if (n[i] < 0.0) throw DomainError("mixture_params: negative molar density");
        ntot += n[i];
    }
    if (!(ntot > 0.0)) throw DomainError("mixture_params: all-zero composition, mole fractions undefined");
    double a = 0.0, b = 0.0;
    for (int i = 0; i < m; ++i) {
        const double yi = n[i] / ntot;
        b += yi * eos.bi[i];
        for (int j = 0; j < m; ++j) {
            a += yi * (n[j] / ntot) * eos.aij(i, j);
        }
    }
    return {a, b};
}

namespace {

// Shared intermediates of one bulk evaluation at composition n:
//   ntot = sum n_i,  B = b n = sum n_i b_i,  A2 = a n^2 = sum_ij n_i n_j a_ij,
//   g = ln[(1+(1-s2)B)/(1+(1+s2)B)].
struct BulkIntermediates {
    double ntot;
    double B;
    double A2;
    double g;
    std::vector<double> arow; // sum_j n_j a_ij per component
};

BulkIntermediates bulk_intermediates(const EosCoeffs& eos, std::span<const double> n) {
    const int m = eos.count();
    if (static_cast<int>(n.size()) != m) throw ConfigError("bulk EOS: composition size mismatch");
    check_positive_composition(n);
    BulkIntermediates mid;
    mid.ntot = 0.0;
    mid.B = 0.0;
    mid.arow.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        mid.ntot += n[i];
        mid.B += n[i] * eos.bi[i];
    }
    mid.A2 = 0.0;
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += n[j] * eos.aij(i, j);
        mid.arow[i] = s;
        mid.A2 += n[i] * s;
    }
    if (mid.B >= kCovolumeGuard) {
        throw DomainError("bulk EOS: covolume violation, b*n = " + std::to_string(mid.B) +
                          " exceeds the packing limit");
    }
    mid.g = std::log((1.0 + (1.0 - kSqrt2) * mid.B) / (1.0 + (1.0 + kSqrt2) * mid.B));
    return mid;
}

double fb_from(const EosCoeffs& eos, std::span<const double> n, const BulkIntermediates& mid) {
    double ideal = 0.0;
    for (size_t i = 0; i < n.size(); ++i) ideal += n[i] * (std::log(n[i]) - 1.0);
    ideal *= eos.rt;
    const double repulsion = -mid.ntot * eos.rt * std::log(1.0 - mid.B);
    // a n / (2 sqrt2 b) = A2 / (2 sqrt2 B); finite limit 0 as B -> 0.
    const double attraction = (mid.B > 0.0) ? mid.A2 / (2.0 * kSqrt2 * mid.B) * mid.g : 0.0;
    return ideal + repulsion + attraction;
}

void mu_from(const EosCoeffs& eos, std::span<const double> n, const BulkIntermediates& mid,
             std::span<double> mu) {
    const int m = eos.count();
    const double B = mid.B;
    const double denom_q = 1.0 + 2.0 * B - B * B;
    for (int i = 0; i < m; ++i) {
        double v = eos.rt * std::log(n[i]);
        v += -eos.rt * std::log(1.0 - B) + mid.ntot * eos.rt * eos.bi[i] / (1.0 - B);
        if (B > 0.0) {
            v += mid.g / (kSqrt2 * B) * mid.arow[i];
            v -= mid.A2 * eos.bi[i] / (B * denom_q);
            v -= mid.A2 * eos.bi[i] * mid.g / (2.0 * kSqrt2 * B * B);
        }
        mu[i] = v;
    }
}

} // namespace

double helmholtz_bulk(const EosCoeffs& eos, std::span<const double> n) {
    return fb_from(eos, n, bulk_intermediates(eos, n));
}

double helmholtz_bulk(const MixtureSpec& spec, std::span<const double> n) {
    return helmholtz_bulk(EosCoeffs::from(spec), n);
}

void chemical_potential_bulk(const EosCoeffs& eos, std::span<const double> n, std::span<double> mu_out) {
    mu_from(eos, n, bulk_intermediates(eos, n), mu_out);
}

std::vector<double> chemical_potential_bulk(const MixtureSpec& spec, std::span<const double> n) {
    std::vector<double> mu(n.size());
    chemical_potential_bulk(EosCoeffs::from(spec), n, mu);
    return mu;
}

double pressure_bulk(const EosCoeffs& eos, std::span<const double> n) {
    const BulkIntermediates mid = bulk_intermediates(eos, n);
    std::vector<double> mu(n.size());
    mu_from(eos, n, mid, mu);
    double p = -fb_from(eos, n, mid);
    for (size_t i = 0; i < n.size(); ++i) p += n[i] * mu[i];
    return p;
}

double pressure_bulk(const MixtureSpec& spec, std::span<const double> n) {
    return pressure_bulk(EosCoeffs::from(spec), n);
}

double pressure_peng_robinson(const MixtureSpec& spec, std::span<const double> n) {
    const MixtureParams mp = mixture_params(spec, n);
    double ntot = 0.0;
    for (double v : n) ntot += v;
    const double bn = mp.b * ntot;
    if (bn >= kCovolumeGuard) throw DomainError("pressure: covolume violation");
    const double rt = kGasConstant * spec.temperature;
    return ntot * rt / (1.0 - bn) - mp.a * ntot * ntot / (1.0 + 2.0 * bn - bn * bn);
}

BulkEosEval evaluate_bulk(const EosCoeffs& eos, std::span<const double> n) {
    const BulkIntermediates mid = bulk_intermediates(eos, n);
    BulkEosEval out;
    out.f_b = fb_from(eos, n, mid);
    out.mu_b.resize(n.size());
    mu_from(eos, n, mid, out.mu_b);
    out.p_b = -out.f_b;
    for (size_t i = 0; i < n.size(); ++i) out.p_b += n[i] * out.mu_b[i];
    return out;
}

const std::vector<ComponentSpec>& builtin_components() {
    static const std::vector<ComponentSpec> table = {
        {"methane", 45.99e5, 190.56, 0.011, 16.04e-3},
        {"pentane", 33.70e5, 469.7, 0.251, 72.15e-3},
        {"decane", 21.1e5, 617.7, 0.489, 142.28e-3},
    };
    return table;
}

const ComponentSpec& find_component(std::string_view name) {
    for (const auto& c : builtin_components()) {
        if (c.name == name) return c;
    }
    throw ConfigError("unknown component '" + std::string(name) + "'");
}

} // namespace nvt
