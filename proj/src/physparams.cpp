#include "fourwell/physparams.hpp"

#include "fourwell/analytic.hpp"
#include "fourwell/constants.hpp"
#include "fourwell/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fourwell {

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian_orbital(double eta, const Eigen::Vector3d& site, double x, double y, double z) {
    const double dx = x - site.x(), dy = y - site.y(), dz = z - site.z();
    return std::pow(2.0 * eta / kPi, 0.75) * std::exp(-eta * (dx * dx + dy * dy + dz * dz));
}

}  // namespace

LatticeGeometry make_lattice(double lambda, double v0, double v1) {
    if (lambda <= 0.0) throw std::invalid_argument("make_lattice: lambda must be positive");
    LatticeGeometry g;
    g.lambda = lambda;
    g.site_spacing = lambda / 2.0;
    g.v0 = v0;
    g.v1 = v1;
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    g.beams = {Eigen::Vector3d(1 / s2, 1 / s6, 1 / s3), Eigen::Vector3d(-1 / s2, 1 / s6, 1 / s3),
               Eigen::Vector3d(0.0, -std::sqrt(2.0 / 3.0), 1 / s3)};
    g.phases = {kPi / 6.0, kPi / 6.0, 7.0 * kPi / 6.0};
    const double l = g.site_spacing;
    g.sites = {Eigen::Vector3d(-l / s2, -l / s6, 0.0), Eigen::Vector3d(l / s2, -l / s6, 0.0),
               Eigen::Vector3d(0.0, l * std::sqrt(2.0 / 3.0), 0.0),
               Eigen::Vector3d(0.0, 0.0, l / s3)};
    return g;
}

double lattice_potential(const LatticeGeometry& geom, const Eigen::Vector3d& r) {
    const double k = 2.0 * kPi / geom.lambda;
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double c = std::cos(k * r.dot(geom.beams[i]) + geom.phases[i]);
        v += c * c;
    }
    return geom.v0 * v;
}

double beta(double q) {
    if (q <= 0.0) throw std::invalid_argument("beta: q must be positive");
    return (3.0 * std::sqrt(kPi) / (4.0 * q * q * q)) * std::erf(q) -
           std::exp(-q * q) * (2.0 * q * q + 3.0) / (2.0 * q * q);
}

double integrable_scattering_length(const AtomSpec& atom, double q) {
    return atom.dipolar_length * beta(q);
}

DerivedParams trap_constants(const LatticeGeometry& geom, const AtomSpec& atom) {
    if (geom.v0 <= 0.0) throw std::invalid_argument("trap_constants: V0 must be positive");
    DerivedParams d;
    const double l = geom.site_spacing;
    d.omega = (kPi / l) * std::sqrt(2.0 * geom.v0 / atom.mass);
    d.eta = atom.mass * d.omega / (2.0 * si::kHbar);
    d.q = l * std::sqrt(2.0 * d.eta);
    d.recoil = si::kPlanck * si::kPlanck / (2.0 * atom.mass * geom.lambda * geom.lambda);
    return d;
}

double lattice_depth_for_q(double q, double lambda, const AtomSpec& atom) {
    // q^2 = l^2 m omega / hbar with omega = (pi/l) sqrt(2 V0/m)
    const double l = lambda / 2.0;
    const double omega = q * q * si::kHbar / (atom.mass * l * l);
    const double root = omega * l / kPi;  // sqrt(2 V0 / m)
    return 0.5 * atom.mass * root * root;
}

double onsite_energy(const AtomSpec& atom, double scattering_length, const DerivedParams& d) {
    const double g = 4.0 * kPi * si::kHbar * si::kHbar * scattering_length / atom.mass;
    return g * std::pow(d.eta / kPi, 1.5) / si::kPlanck;
}

double hopping_closed_form(const LatticeGeometry& geom, const AtomSpec& atom,
                           const DerivedParams& d) {
    const double l = geom.site_spacing;
    const double eta = d.eta;
    const double k = 2.0 * kPi / geom.lambda;
    const Eigen::Vector3d r1 = geom.sites[0], r4 = geom.sites[3];
    const Eigen::Vector3d mid = 0.5 * (r1 + r4);
    const double overlap = std::exp(-0.5 * eta * l * l);
    // kinetic: <1| -hbar^2/(2m) lap |4> = (hbar^2 eta / 2m) S (3 - eta l^2)
    const double kinetic =
        (si::kHbar * si::kHbar * eta / (2.0 * atom.mass)) * overlap * (3.0 - eta * l * l);
    // potential: Gaussian-smeared cos^2 terms at the bond midpoint
    const double smear = std::exp(-k * k / (2.0 * eta));
    double pot = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double phase = 2.0 * (k * mid.dot(geom.beams[i]) + geom.phases[i]);
        pot += 0.5 * (1.0 + smear * std::cos(phase));
    }
    pot *= geom.v0 * overlap;
    return -(kinetic + pot) / si::kPlanck;
}

double hopping_quadrature(const LatticeGeometry& geom, const AtomSpec& atom,
                          const DerivedParams& d) {
    const double eta = d.eta;
    const Eigen::Vector3d r1 = geom.sites[0], r4 = geom.sites[3];
    const Eigen::Vector3d mid = 0.5 * (r1 + r4);
    const double half = 4.0 / std::sqrt(eta) + 0.5 * (r4 - r1).norm();
    const double kin_scale = si::kHbar * si::kHbar / (2.0 * atom.mass);
    auto integrand = [&](double x, double y, double z) {
        const Eigen::Vector3d r(x, y, z);
        const double p1 = gaussian_orbital(eta, r1, x, y, z);
        const double p4 = gaussian_orbital(eta, r4, x, y, z);
        const double dr2 = (r - r4).squaredNorm();
        const double lap = (4.0 * eta * eta * dr2 - 6.0 * eta) * p4;
        return p1 * (-kin_scale * lap + lattice_potential(geom, r) * p4);
    };
    return -integrate_box(integrand, mid, half) / si::kPlanck;
}

double hopping_integral(const LatticeGeometry& geom, const AtomSpec& atom,
                        const DerivedParams& d) {
    const double closed = hopping_closed_form(geom, atom, d);
    const double quad = hopping_quadrature(geom, atom, d);
    if (std::abs(quad - closed) > 1e-6 * std::abs(closed))
        throw std::runtime_error("hopping_integral: quadrature and closed form disagree");
    return closed;
}

double rotation_coupling(const LatticeGeometry& geom, const DerivedParams& d) {
    const double x = d.eta * geom.site_spacing * geom.site_spacing;  // = q^2/2
    return x * std::exp(-x);
}

double rotation_coupling_quadrature(const LatticeGeometry& geom, const DerivedParams& d) {
    // <phi_2| L_z |phi_1> = -i hbar I with I = int phi_2 (x d_y - y d_x) phi_1;
    // the current normalization 1/sqrt(3) gives W = -sqrt(3) I.
    const double eta = d.eta;
    const Eigen::Vector3d r1 = geom.sites[0], r2 = geom.sites[1];
    const Eigen::Vector3d mid = 0.5 * (r1 + r2);
    const double half = 4.0 / std::sqrt(eta) + 0.5 * (r2 - r1).norm();
    auto integrand = [&](double x, double y, double z) {
        const double p1 = gaussian_orbital(eta, r1, x, y, z);
        const double p2 = gaussian_orbital(eta, r2, x, y, z);
        const double dpy = -2.0 * eta * (y - r1.y()) * p1;
        const double dpx = -2.0 * eta * (x - r1.x()) * p1;
        return p2 * (x * dpy - y * dpx);
    };
    return -std::sqrt(3.0) * integrate_box(integrand, mid, half);
}

double harmonic_offset_quadrature(const LatticeGeometry& geom, const DerivedParams& d,
                                  int site) {
    if (site < 0 || site > 3) throw std::invalid_argument("harmonic_offset_quadrature: bad site");
    const double eta = d.eta;
    const Eigen::Vector3d c = geom.sites[static_cast<size_t>(site)];
    const double half = 5.0 / std::sqrt(eta);
    auto integrand = [&](double x, double y, double z) {
        const double p = gaussian_orbital(eta, c, x, y, z);
        return p * p * geom.v1 * (x * x + y * y + 2.0 * z * z);
    };
    return integrate_box(integrand, c, half);
}

double zeta_for_rotation(const DerivedParams& d, double omega_rotation) {
    return d.w * omega_rotation / (2.0 * kPi);  // hbar W Omega / h
}

double rotation_for_zeta(const DerivedParams& d, double zeta_hz) {
    return 2.0 * kPi * zeta_hz / d.w;
}

ModelParams to_model_params(const DerivedParams& d, double j_hz, int total_n,
                            double omega_rotation) {
    return {d.u, j_hz, zeta_for_rotation(d, omega_rotation), total_n};
}

Dy164Preset preset_dy164() {
    Dy164Preset preset;
    preset.atom = {163.929181 * si::kAtomicMassUnit, 131.97 * si::kBohrRadius, "164Dy"};

    const double lambda = 532e-9;
    const double v0_over_er =
        0.72;  // published depth, in recoil units E_r = h^2/(2 m lambda^2)
    const double recoil =
        si::kPlanck * si::kPlanck / (2.0 * preset.atom.mass * lambda * lambda);
    preset.lattice = make_lattice(lambda, v0_over_er * recoil);

    DerivedParams d = trap_constants(preset.lattice, preset.atom);
    d.scattering_length = integrable_scattering_length(preset.atom, d.q);
    d.contact_g =
        4.0 * kPi * si::kHbar * si::kHbar * d.scattering_length / preset.atom.mass;
    d.u0 = onsite_energy(preset.atom, d.scattering_length, d);
    d.u = d.u0 / 4.0;
    d.j = hopping_integral(preset.lattice, preset.atom, d);
    d.w = rotation_coupling(preset.lattice, d);

    // Reference operating point: N = 16 with the published couplings.
    const double u_ref = 6.01, j_ref = 8.19;
    const ResonantConstants rc = resonant_constants({u_ref, j_ref, 0.0, 16});
    d.xi = rc.xi;
    d.tau = rc.tau;
    d.omega_max = rotation_for_zeta(d, rc.zeta_max);
    preset.derived = d;

    const double a0 = si::kBohrRadius;
    auto row = [](std::string name, std::string symbol, std::string unit, double computed,
                  double reference, double tolerance) {
        ParamRow r{std::move(name), std::move(symbol), std::move(unit), computed, reference, 0.0,
                   tolerance};
        r.rel_dev = reference != 0.0 ? std::abs(computed - reference) / std::abs(reference) : 0.0;
        return r;
    };
    preset.table = {
        row("scattering_length", "a", "a0", d.scattering_length / a0, 7.23, 0.005),
        row("wavelength", "lambda", "nm", lambda * 1e9, 532.0, 0.0),
        row("dipolar_length", "a_dd", "a0", preset.atom.dipolar_length / a0, 131.97, 0.0),
        row("lattice_depth", "V0", "E_r", preset.lattice.v0 / recoil, 0.72, 0.0),
        row("interaction", "U/h", "Hz", d.u, 6.01, 0.01),
        row("onsite_energy", "U0/h", "Hz", d.u0, 24.04, 0.01),
        row("hopping", "J/h", "Hz", d.j, 8.19, 0.10),
        row("trap_frequency", "omega/2pi", "kHz", d.omega / (2.0 * kPi) / 1e3, 7.25, 0.01),
        row("max_rotation", "Omega_max/2pi", "Hz", d.omega_max / (2.0 * kPi), 2.87, 0.03),
    };
    return preset;
}

}  // namespace fourwell
