#pragma once

#include <string>
#include <vector>

#include "soliton/invariant.hpp"
#include "soliton/profile.hpp"

namespace soliton {

// ---------------------------------------------------------------------------
// Power-law family (unit direction, steady, Ricci-flat fiber).
//
// With N = -k +- sqrt(m + (n-1) k^2) and w = N xi + b > 0:
//   phi = c2 w^(-k/N),  f = c1 w^(-1/N),
//   h   = -[(m - (n-2)k + N) / N] ln w.
// The triple lives on the half-line where w > 0.

enum class Branch { plus, minus };

struct PowerLawParams {
    double k = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
    double b = 0.0;
    Branch branch = Branch::plus;
};

/// N for the given branch; the positive branch root is > 0, the negative < 0.
double branch_root(double k, int n, int m, Branch branch);

ProfileTriple build_power_law(const SolitonConfig& config, const PowerLawParams& p);

// ---------------------------------------------------------------------------
// Phase-flow family: z integrated from its defining first-order equation,
// x recovered algebraically, then f, phi, h by integrating
//   f'/f = x,  phi'/phi = k x,  h' = [z + m - k(n-2)] x.
//
// Admissible initial values keep both factors z - N+ and z - N- positive,
// i.e. z0 > N+ (other regions raise UnsupportedError; the two roots
// themselves are equilibria and are rejected).

struct PhaseFlowParams {
    double k = 1.0;
    double c3 = 1.0;
    double z0 = 2.5;
    double xi0 = 0.0;
    double f0 = 1.0;    // f(xi0)
    double phi0 = 1.0;  // phi(xi0)
    double h0 = 0.0;    // h(xi0)
    double rel_tol = 1e-9;
    double abs_tol = 1e-9;
    /// Experimental: integrate the mirrored trajectory (xi -> 2 xi0 - xi).
    bool reverse_orientation = false;
};

struct PhaseFlowResult {
    ProfileTriple triple;
    bool truncated_lo = false;
    bool truncated_hi = false;
    std::string note;
};

PhaseFlowResult build_phase_flow(const SolitonConfig& config, const PhaseFlowParams& p,
                                 Interval span);

// ---------------------------------------------------------------------------
// Null-direction family: for any positive phi(xi), f(xi) the potential is
// recovered by nested quadrature,
//   h(xi) = c5 + int_a^xi phi^-2(s) [ c4 + int_a^s G ] ds,
//   G = m (f''/f) phi^2 + 2 m phi phi' (f'/f) - (n-2) phi phi'',
// with both integrals anchored at `anchor`. h' and h'' are algebraic in the
// inner integral, so the defining equation is satisfied by construction;
// quadrature accuracy only affects the h value channel.

struct NullFamilyParams {
    ScalarProfile phi;
    ScalarProfile f;
    double c4 = 0.0;
    double c5 = 0.0;
    double anchor = 0.0;
    Interval domain{-3.0, 3.0};
    double inner_tol = 1e-10;
    double outer_tol = 1e-9;
};

ProfileTriple build_null_family(const SolitonConfig& config, const NullFamilyParams& p);

/// Config-expressible profile shapes for the null family.
struct NullShapeSpec {
    enum class Pair { exp_exp, gauss_exp, const_const };
    Pair pair = Pair::exp_exp;
    double scale = 1.0;  // amplitude of the exponential pair
    double rate = 1.0;   // exponent rate A
    double c4 = 0.0;
    double c5 = 0.0;
    double anchor = 0.0;
    Interval domain{-3.0, 3.0};
};

std::string to_string(NullShapeSpec::Pair p);
NullShapeSpec::Pair null_pair_from_string(const std::string& s);

ProfileTriple build_null_shape(const SolitonConfig& config, const NullShapeSpec& s);

/// scale * e^(rate xi) with closed-form derivatives.
ScalarProfile exp_profile(double scale, double rate, Interval domain);
/// e^(-xi^2) with closed-form derivatives.
ScalarProfile gaussian_profile(Interval domain);

// ---------------------------------------------------------------------------
// Defect injection: controlled departures from an exact triple, used to
// confirm that the residual systems actually detect failures.

struct DefectSpec {
    enum class Target { none, phi, f, h };
    enum class Mode { zero, scale_bump, add_quadratic };
    Target target = Target::none;
    Mode mode = Mode::scale_bump;
    double amplitude = 0.01;
};

std::string to_string(DefectSpec::Target t);
std::string to_string(DefectSpec::Mode m);

ProfileTriple inject_defect(const ProfileTriple& t, const DefectSpec& defect);

// ---------------------------------------------------------------------------
// Family dispatch and presets.

enum class FamilyKind { power_law, phase_flow, null_quadrature, external_profile, preset };

/// External interface family ids: "thm14", "thm15", "thm17",
/// "external-profile", "preset:<name>".
std::string family_id(FamilyKind k);

struct FamilySpec {
    FamilyKind kind = FamilyKind::power_law;
    PowerLawParams power_law;
    PhaseFlowParams phase_flow;
    NullShapeSpec null_shape;
    std::string preset_name;    // kind == preset
    std::string external_path;  // kind == external_profile
};

/// Build the triple for a spec (external-profile and preset kinds are
/// resolved by the run layer, not here).
ProfileTriple build_family(const SolitonConfig& config, const FamilySpec& spec,
                           Interval span);

struct Preset {
    std::string name;
    std::string description;
    SolitonConfig config;
    Vector alpha;
    FamilySpec family;
    Interval default_span;
    int default_samples = 200;
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

} // namespace soliton
