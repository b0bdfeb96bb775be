#pragma once

#include "fourwell/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace fourwell {

/// Species inputs. The dipole moment enters only through the dipolar length.
struct AtomSpec {
    double mass = 0.0;            // kg
    double dipolar_length = 0.0;  // m
    std::string name;
};

/// Four-well trapping geometry carved out of a cubic optical lattice built
/// from three orthonormal standing waves. Site spacing l = lambda/2; the
/// outer-apex bonds have length l and the outer-outer bonds l*sqrt(2).
struct LatticeGeometry {
    double lambda = 0.0;        // m
    double site_spacing = 0.0;  // l = lambda/2
    double v0 = 0.0;            // lattice depth, J
    double v1 = 0.0;            // external harmonic strength, J/m^2 (constant offset only)
    std::array<Eigen::Vector3d, 3> beams;
    std::array<double, 3> phases;
    std::array<Eigen::Vector3d, 4> sites;  // outer 1..3, apex 4
};

LatticeGeometry make_lattice(double lambda, double v0, double v1 = 0.0);

/// Lattice potential V0 * sum_i cos^2(k r.u_i + phi_i) at a point.
double lattice_potential(const LatticeGeometry& geom, const Eigen::Vector3d& r);

/// Parameters derived from the species and geometry. Frequencies u0, u, j, xi
/// are E/h in Hz; omega and omega_max are angular (rad/s).
struct DerivedParams {
    double q = 0.0;                  // l sqrt(2 eta)
    double eta = 0.0;                // m omega / (2 hbar), 1/m^2
    double omega = 0.0;              // trap frequency, rad/s
    double recoil = 0.0;             // E_r = h^2/(2 m lambda^2), J
    double scattering_length = 0.0;  // m
    double contact_g = 0.0;          // 4 pi hbar^2 a / m
    double u0 = 0.0;                 // on-site U0/h
    double u = 0.0;                  // U0/(4h)
    double j = 0.0;                  // Gaussian-orbital hopping J/h (signed)
    double w = 0.0;                  // dimensionless rotation coupling
    double omega_max = 0.0;          // rad/s, at the reference operating point
    double xi = 0.0;                 // Hz, at the reference operating point
    double tau = 0.0;                // s
};

/// beta(q) = (3 sqrt(pi)/(4 q^3)) erf(q) - exp(-q^2)(2q^2+3)/(2q^2).
double beta(double q);

/// Scattering length enforcing U12 = U0: a = a_dd * beta(q).
double integrable_scattering_length(const AtomSpec& atom, double q);

/// omega = (pi/l) sqrt(2 V0/m), eta, q and the recoil energy.
DerivedParams trap_constants(const LatticeGeometry& geom, const AtomSpec& atom);

/// Lattice depth that reproduces a given q (inverse of trap_constants).
double lattice_depth_for_q(double q, double lambda, const AtomSpec& atom);

/// U0/h = g (eta/pi)^(3/2) / h with g = 4 pi hbar^2 a / m.
double onsite_energy(const AtomSpec& atom, double scattering_length, const DerivedParams& d);

/// Gaussian-orbital outer-apex hopping, J = -<phi_1|T + V_lat|phi_4>, returned
/// as J/h. Evaluated by closed-form Gaussian-cosine integrals and checked
/// against 3D quadrature to 1e-6 relative.
double hopping_integral(const LatticeGeometry& geom, const AtomSpec& atom,
                        const DerivedParams& d);

/// Closed form only (used as the quadrature cross-check and the V0 -> 0
/// kinetic-limit oracle).
double hopping_closed_form(const LatticeGeometry& geom, const AtomSpec& atom,
                           const DerivedParams& d);
double hopping_quadrature(const LatticeGeometry& geom, const AtomSpec& atom,
                          const DerivedParams& d);

/// W = eta l^2 exp(-eta l^2) = (q^2/2) exp(-q^2/2), from the angular-momentum
/// matrix element between adjacent outer sites; validated against quadrature.
double rotation_coupling(const LatticeGeometry& geom, const DerivedParams& d);
double rotation_coupling_quadrature(const LatticeGeometry& geom, const DerivedParams& d);

/// Harmonic-confinement site offset nu_i = int |phi_i|^2 V_harm by quadrature,
/// V_harm = V1 (x^2 + y^2 + 2 z^2). Equal for all four sites of the stored
/// geometry.
double harmonic_offset_quadrature(const LatticeGeometry& geom, const DerivedParams& d,
                                  int site);

/// zeta/h in Hz for a physical rotation rate Omega (rad/s): zeta = hbar W Omega.
double zeta_for_rotation(const DerivedParams& d, double omega_rotation);
/// Inverse map, Omega = zeta/(hbar W).
double rotation_for_zeta(const DerivedParams& d, double zeta_hz);

/// Model couplings at filling N for a rotation rate Omega, using the derived
/// interaction and the supplied hopping (Hz).
ModelParams to_model_params(const DerivedParams& d, double j_hz, int total_n,
                            double omega_rotation);

struct ParamRow {
    std::string name;
    std::string symbol;
    std::string unit;
    double computed = 0.0;
    double reference = 0.0;  // published table value
    double rel_dev = 0.0;
    double tolerance = 0.0;  // relative; 0 = untracked echo row
};

struct Dy164Preset {
    AtomSpec atom;
    LatticeGeometry lattice;
    DerivedParams derived;
    std::vector<ParamRow> table;
};

/// Full 164Dy pipeline at lambda = 532 nm, V0 = 0.72 E_r, with the published
/// table values alongside the computed ones. The reference operating point for
/// xi, tau and Omega_max is N = 16 with the published couplings U/h = 6.01 Hz,
/// J/h = 8.19 Hz.
Dy164Preset preset_dy164();

}  // namespace fourwell
