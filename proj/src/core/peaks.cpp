#include "peaks.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace polardqc {

std::string Peak::label() const {
    if (assignments.empty()) return "unassigned";
    std::string out;
    for (size_t k = 0; k < assignments.size(); ++k) {
        if (k) out += '+';
        out += assignments[k].w3_line + "@" + assignments[k].w2_line;
    }
    return out;
}

double Peak::residual() const {
    if (assignments.empty()) return -1.0;
    double r = assignments[0].residual;
    for (const auto& a : assignments) r = std::min(r, a.residual);
    return r;
}

namespace {

double quad_offset(double hm, double h0, double hp) {
    const double den = hm - 2.0 * h0 + hp;
    if (den == 0.0) return 0.0;
    const double d = 0.5 * (hm - hp) / den;
    return std::clamp(d, -0.5, 0.5);
}

} // namespace

std::vector<Peak> find_peaks(const SpectrumGrid& grid, Component component, double threshold_fraction,
                             double min_separation) {
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        fail(ErrorCode::Validate, "find_peaks: threshold fraction must lie in (0, 1)");
    const int n2 = grid.grid.n2(), n3 = grid.grid.n3();
    const double top = grid.max_abs(component);
    std::vector<Peak> found;
    if (top == 0.0) return found; // dark signal: no peaks, not an error
    if (component == Component::Total) {
        // interference-cancelled (harmonic) signal: the total is rounding
        // noise relative to the pathways, and noise has no peaks
        const double ref = std::max(grid.max_abs(Component::PathwayI),
                                    grid.max_abs(Component::PathwayII));
        if (top <= 1e-10 * ref) return found;
    }

    auto mag = [&](int i2, int i3) { return std::abs(grid.at(component, i2, i3)); };
    const double thr = threshold_fraction * top;

    for (int i2 = 1; i2 < n2 - 1; ++i2) {
        for (int i3 = 1; i3 < n3 - 1; ++i3) {
            const double v = mag(i2, i3);
            if (v < thr) continue;
            bool is_max = true;
            for (int a = -1; a <= 1 && is_max; ++a)
                for (int b = -1; b <= 1; ++b) {
                    if (a == 0 && b == 0) continue;
                    if (mag(i2 + a, i3 + b) >= v) {
                        is_max = false;
                        break;
                    }
                }
            if (!is_max) continue;
            Peak p;
            p.height = v;
            p.w2 = grid.grid.w2(i2) +
                   quad_offset(mag(i2 - 1, i3), v, mag(i2 + 1, i3)) * grid.grid.w2_step;
            p.w3 = grid.grid.w3(i3) +
                   quad_offset(mag(i2, i3 - 1), v, mag(i2, i3 + 1)) * grid.grid.w3_step;
            found.push_back(p);
        }
    }

    std::sort(found.begin(), found.end(), [](const Peak& a, const Peak& b) {
        if (a.height != b.height) return a.height > b.height;
        if (a.w2 != b.w2) return a.w2 < b.w2;
        return a.w3 < b.w3;
    });
    if (min_separation <= 0.0) return found;

    std::vector<Peak> kept;
    for (const auto& p : found) {
        bool close = false;
        for (const auto& q : kept)
            if (std::hypot(p.w2 - q.w2, p.w3 - q.w3) <= min_separation) {
                close = true;
                break;
            }
        if (!close) kept.push_back(p);
    }
    return kept;
}

void assign_peaks(std::vector<Peak>& peaks, const TransitionTable& table, Component component,
                  double tolerance) {
    const double tol = tolerance > 0.0 ? tolerance : table.max_gamma();
    if (!(tol > 0.0)) fail(ErrorCode::Validate, "assign_peaks: tolerance must be > 0");
    const int d1 = static_cast<int>(table.mu_eg.size());
    const int d2 = table.mu_fe.rows();

    struct Line {
        double w3, w2;
        std::string l3, l2;
    };
    std::vector<Line> crossings;
    for (int f = 0; f < d2; ++f) {
        const std::string lf = "f" + std::to_string(f + 1);
        for (int e = 0; e < d1; ++e) {
            const std::string le = "e" + std::to_string(e + 1);
            if (component != Component::PathwayII)
                crossings.push_back({table.omega_eg[e], table.omega_fg[f], le, lf});
            if (component != Component::PathwayI)
                crossings.push_back({table.omega_fe(f, e), table.omega_fg[f], lf + le, lf});
        }
    }

    for (auto& p : peaks) {
        p.assignments.clear();
        for (const auto& c : crossings) {
            const double d = std::hypot(p.w3 - c.w3, p.w2 - c.w2);
            if (d <= tol) p.assignments.push_back({c.l3, c.l2, d});
        }
        std::sort(p.assignments.begin(), p.assignments.end(),
                  [](const Peak::Assignment& a, const Peak::Assignment& b) { return a.residual < b.residual; });
    }
}

double measure_splitting(const std::vector<Peak>& peaks, Axis axis, const std::string& line_a,
                         const std::string& line_b) {
    auto strongest = [&](const std::string& sel) -> const Peak* {
        const Peak* best = nullptr;
        for (const auto& p : peaks)
            for (const auto& a : p.assignments) {
                const std::string& line = (axis == Axis::W3) ? a.w3_line : a.w2_line;
                if (line == sel && (!best || p.height > best->height)) best = &p;
            }
        return best;
    };
    const Peak* pa = strongest(line_a);
    const Peak* pb = strongest(line_b);
    if (!pa) fail(ErrorCode::NotFound, "measure_splitting: no assigned peak matches '" + line_a + "'");
    if (!pb) fail(ErrorCode::NotFound, "measure_splitting: no assigned peak matches '" + line_b + "'");
    return (axis == Axis::W3) ? pb->w3 - pa->w3 : pb->w2 - pa->w2;
}

int count_axis_resonances(const SpectrumGrid& grid, Component component, Axis axis,
                          double threshold_fraction) {
    const int n2 = grid.grid.n2(), n3 = grid.grid.n3();
    const int n = (axis == Axis::W2) ? n2 : n3;
    std::vector<double> sky(n, 0.0);
    for (int i2 = 0; i2 < n2; ++i2)
        for (int i3 = 0; i3 < n3; ++i3) {
            const double v = std::abs(grid.at(component, i2, i3));
            const int k = (axis == Axis::W2) ? i2 : i3;
            sky[k] = std::max(sky[k], v);
        }
    const double top = *std::max_element(sky.begin(), sky.end());
    if (top == 0.0) return 0;
    int count = 0;
    for (int k = 1; k + 1 < n; ++k)
        if (sky[k] >= threshold_fraction * top && sky[k] > sky[k - 1] && sky[k] > sky[k + 1]) ++count;
    return count;
}

int count_distinct_assignments(const std::vector<Peak>& peaks) {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& p : peaks)
        for (const auto& a : p.assignments) seen.insert({a.w3_line, a.w2_line});
    return static_cast<int>(seen.size());
}

} // namespace polardqc
