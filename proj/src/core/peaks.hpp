#ifndef POLARDQC_PEAKS_HPP
#define POLARDQC_PEAKS_HPP

#include <string>
#include <vector>

#include "polariton.hpp"
#include "signal.hpp"

namespace polardqc {

struct Peak {
    double w3 = 0.0, w2 = 0.0; // sub-grid refined position, cm^-1
    double height = 0.0;       // |S| at the grid maximum
    // assignment (empty until assign_peaks): nearest theoretical crossings;
    // more than one entry when a single maximum sits within tolerance of
    // several crossings (merged peak)
    struct Assignment {
        std::string w3_line; // "e1" or "f1e2"
        std::string w2_line; // "f1"
        double residual = 0.0;
    };
    std::vector<Assignment> assignments;
    std::string label() const; // "e1@f1" or merged "e1@f1+f2e1@f1"; "unassigned"
    double residual() const;   // smallest assignment distance, -1 when unassigned
};

// Strict local maxima (8-neighborhood) of |S_component| above
// threshold_fraction * max|S_component|, refined to sub-grid positions by a
// per-axis quadratic fit. With min_separation > 0, maxima closer than that to
// a stronger kept maximum are dropped (FWHM-scale merging: two bumps inside
// one linewidth are one peak). Returns strongest-first.
std::vector<Peak> find_peaks(const SpectrumGrid& grid, Component component, double threshold_fraction,
                             double min_separation = 0.0);

// Matches each peak to the nearest theoretical resonance crossing for the
// component: w2 lines at Omega_fg, w3 lines at Omega_eg (pathway i) resp.
// Omega_fe of the same f row (pathway ii); the total signal carries both
// line families. Peaks farther than tolerance from every crossing stay
// unassigned. tolerance <= 0 selects the default, max gamma_ab.
void assign_peaks(std::vector<Peak>& peaks, const TransitionTable& table, Component component,
                  double tolerance = 0.0);

enum class Axis { W2, W3 };

// Signed distance along the axis between the strongest peak whose assignment
// matches line_b and the strongest matching line_a. Throws Error(NotFound)
// when a selector matches nothing.
double measure_splitting(const std::vector<Peak>& peaks, Axis axis, const std::string& line_a,
                         const std::string& line_b);

// Resonance count along one axis: local maxima of the other-axis maximum
// projection ("skyline") above threshold_fraction of its top. This is how the
// per-axis peak counts of 2D maps are usually quoted.
int count_axis_resonances(const SpectrumGrid& grid, Component component, Axis axis,
                          double threshold_fraction);

// Number of distinct resonance assignments among the found peaks (merged
// assignments contribute all their lines).
int count_distinct_assignments(const std::vector<Peak>& peaks);

} // namespace polardqc

#endif
