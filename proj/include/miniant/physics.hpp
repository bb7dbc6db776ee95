#ifndef MINIANT_PHYSICS_HPP
#define MINIANT_PHYSICS_HPP

#include <cmath>
#include <stdexcept>

namespace miniant {

// Physical constants and the reference design the loop loading is measured
// against: a half-wavelength slot resonating at 2.27 GHz.
inline constexpr double kSpeedOfLight = 2.99792458e8; // m/s
inline constexpr double kReferenceFrequencyGhz = 2.27;

// Closed-form surrogate for the loop-loaded slot antenna. All lengths are
// carried in millimetres and converted to metres only inside the frequency
// formula; frequencies are in GHz throughout.

template <typename Scalar>
struct BasicSubstrate {
    Scalar relative_permittivity; // dimensionless, > 1 for a physical dielectric
    Scalar height_mm;
    Scalar reference_width_mm;    // width entering the quasi-TEM fill-factor term
    Scalar loss_tangent = Scalar(0); // carried for dataset completeness, unused here

    void validate() const {
        if (!(relative_permittivity > Scalar(1)) || !std::isfinite(double(relative_permittivity)))
            throw std::domain_error("substrate: relative_permittivity must be finite and > 1");
        if (!(height_mm > Scalar(0)) || !std::isfinite(double(height_mm)))
            throw std::domain_error("substrate: height_mm must be finite and > 0");
        if (!(reference_width_mm > Scalar(0)) || !std::isfinite(double(reference_width_mm)))
            throw std::domain_error("substrate: reference_width_mm must be finite and > 0");
    }
};
using SubstrateProperties = BasicSubstrate<double>;

template <typename Scalar>
struct BasicGeometry {
    Scalar slot_length_mm;
    Scalar slot_width_mm;
    Scalar d_inner_mm; // inner loop diameter, the two free design variables
    Scalar d_outer_mm;
    BasicSubstrate<Scalar> substrate;
};
using AntennaGeometry = BasicGeometry<double>;

struct FrequencyResult {
    double f_r_ghz;
    double miniaturization_percent;
    double reference_ghz = kReferenceFrequencyGhz;
};

// Box the loop diameters must live in: d_inner strictly above the slot width,
// d_outer capped by the slot length budget, and a minimum annulus width so the
// loop stays manufacturable. Boundary semantics: only outer_max is inclusive.
struct FeasibleRegion {
    double inner_min_mm = 1.2;
    double outer_max_mm = 12.0;
    double min_gap_mm = 0.8;

    bool contains(double d_inner_mm, double d_outer_mm) const {
        return d_inner_mm > inner_min_mm && d_inner_mm < d_outer_mm &&
               d_outer_mm <= outer_max_mm && d_outer_mm - d_inner_mm > min_gap_mm;
    }
};

// Quasi-TEM effective permittivity of the substrate/air half-spaces.
// Lies strictly between 1 and eps_r whenever eps_r > 1.
template <typename Scalar>
Scalar effective_permittivity(Scalar eps_r, Scalar height_mm, Scalar width_mm) {
    if (!std::isfinite(double(eps_r)) || !std::isfinite(double(height_mm)) ||
        !std::isfinite(double(width_mm)))
        throw std::domain_error("effective_permittivity: non-finite input");
    if (!(eps_r >= Scalar(1)) || !(height_mm > Scalar(0)) || !(width_mm > Scalar(0)))
        throw std::domain_error("effective_permittivity: requires eps_r >= 1, h > 0, W > 0");
    const Scalar fill = std::pow(Scalar(1) + Scalar(12) * height_mm / width_mm, Scalar(-0.5));
    return (eps_r + Scalar(1)) / Scalar(2) + (eps_r - Scalar(1)) / Scalar(2) * fill;
}

template <typename Scalar>
Scalar effective_permittivity(const BasicSubstrate<Scalar>& sub) {
    return effective_permittivity(sub.relative_permittivity, sub.height_mm,
                                  sub.reference_width_mm);
}

// Resonant frequency of the loop-loaded slot in GHz. The electrical length is
// the slot length plus one outer loop diameter; d_inner does not enter.
template <typename Scalar>
Scalar resonant_frequency_ghz(Scalar slot_length_mm, Scalar d_outer_mm,
                              const BasicSubstrate<Scalar>& sub) {
    if (!std::isfinite(double(slot_length_mm)) || !std::isfinite(double(d_outer_mm)))
        throw std::domain_error("resonant_frequency: non-finite length");
    if (!(slot_length_mm > Scalar(0)) || !(d_outer_mm > Scalar(0)))
        throw std::domain_error("resonant_frequency: lengths must be > 0");
    const Scalar eps_eff = effective_permittivity(sub);
    const Scalar electrical_m = (slot_length_mm + d_outer_mm) * Scalar(1e-3);
    const Scalar f_hz = Scalar(kSpeedOfLight) / (Scalar(2) * electrical_m * std::sqrt(eps_eff));
    return f_hz * Scalar(1e-9);
}

template <typename Scalar>
Scalar resonant_frequency_ghz(const BasicGeometry<Scalar>& geo) {
    return resonant_frequency_ghz(geo.slot_length_mm, geo.d_outer_mm, geo.substrate);
}

// Frequency reduction relative to the reference slot, in percent.
inline double miniaturization_percent(double f_r_ghz, double f_ref_ghz) {
    if (!(f_ref_ghz > 0.0) || !std::isfinite(f_ref_ghz))
        throw std::domain_error("miniaturization_percent: reference frequency must be > 0");
    return 100.0 * (f_ref_ghz - f_r_ghz) / f_ref_ghz;
}

inline bool is_feasible(double d_inner_mm, double d_outer_mm) {
    return FeasibleRegion{}.contains(d_inner_mm, d_outer_mm);
}

inline FrequencyResult evaluate_geometry(const AntennaGeometry& geo,
                                         double f_ref_ghz = kReferenceFrequencyGhz) {
    const double f = resonant_frequency_ghz(geo);
    return FrequencyResult{f, miniaturization_percent(f, f_ref_ghz), f_ref_ghz};
}

// RT Duroid 6010LM stack-up and slot dimensions used by the reference design.
inline SubstrateProperties reference_substrate() {
    return SubstrateProperties{10.2, 2.54, 1.2, 0.0023};
}

inline AntennaGeometry reference_geometry(double d_inner_mm, double d_outer_mm) {
    return AntennaGeometry{30.0, 1.2, d_inner_mm, d_outer_mm, reference_substrate()};
}

} // namespace miniant

#endif
