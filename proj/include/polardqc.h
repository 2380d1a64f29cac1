/* polardqc — cavity vibrational-polariton double-quantum-coherence simulator.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed here; every fallible call returns a pdq_status, with a
 * thread-local human-readable message available from pdq_last_error().
 * Energies, frequencies and linewidths are in cm^-1, dipoles in Debye,
 * delays in femtoseconds.
 */
#ifndef POLARDQC_H
#define POLARDQC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdq_status {
    PDQ_OK = 0,
    PDQ_E_ARGUMENT = 1,      /* null handle / out-of-range argument */
    PDQ_E_PARSE = 2,         /* malformed config text */
    PDQ_E_VALIDATE = 3,      /* parameter violates a model invariant */
    PDQ_E_DOMAIN = 4,        /* formula undefined (e.g. evanescent angle) */
    PDQ_E_WEAK_COUPLING = 5, /* no real polariton splitting */
    PDQ_E_NOT_FOUND = 6,     /* unknown preset / unmatched peak selector */
    PDQ_E_IO = 7,
    PDQ_E_INTERNAL = 8
} pdq_status;

const char* pdq_status_name(pdq_status s);
/* message for the most recent failure on this thread */
const char* pdq_last_error(void);
const char* pdq_version(void);
void pdq_string_free(char* s);

typedef struct pdq_config pdq_config;     /* run parameters */
typedef struct pdq_system pdq_system;     /* diagonalized polariton system */
typedef struct pdq_spectrum pdq_spectrum; /* computed 2D signal */
typedef struct pdq_peaks pdq_peaks;       /* picked and assigned peaks */

/* ---- configuration ------------------------------------------------- */

pdq_status pdq_config_from_file(const char* path, pdq_config** out);
/* bundled parameter sets: "amide-I", "amide-I+II" */
pdq_status pdq_config_from_preset(const char* name, pdq_config** out);
/* key uses the config-file vocabulary as "section.key", e.g. "signal.t1",
 * "signal.sweep" (space-separated list), "signal.grid"
 * ("lo2:hi2:step2,lo3:hi3:step3"), "analysis.threshold", "cavity.theta". */
pdq_status pdq_config_set(pdq_config* cfg, const char* key, const char* value);
/* current value of one field, same key vocabulary as pdq_config_set */
pdq_status pdq_config_get(const pdq_config* cfg, const char* key, char* buf, size_t cap);
/* canonical serialization; free with pdq_string_free */
pdq_status pdq_config_text(const pdq_config* cfg, char** out_text);
int pdq_config_mode_count(const pdq_config* cfg);
pdq_status pdq_config_sweep(const pdq_config* cfg, double* values, int cap, int* count);
void pdq_config_free(pdq_config* cfg);

/* ---- polariton system ---------------------------------------------- */

/* gt_i = gt_scale * base_i (the sweep knob applied at one value) */
pdq_status pdq_system_build(const pdq_config* cfg, double gt_scale, pdq_system** out);
/* manifold n = 0, 1, 2; returns 0 for a bad handle */
int pdq_system_manifold_dim(const pdq_system* sys, int n);
pdq_status pdq_system_energies(const pdq_system* sys, int n, double* out, int cap);
pdq_status pdq_system_linewidths(const pdq_system* sys, int n, double* out, int cap);
pdq_status pdq_system_dipoles_eg(const pdq_system* sys, double* out, int cap);
/* row-major d2 x d1 */
pdq_status pdq_system_dipoles_fe(const pdq_system* sys, double* out, int cap);
pdq_status pdq_system_cavity_frequency(const pdq_system* sys, double* out);
void pdq_system_free(pdq_system* sys);

/* ---- spectra -------------------------------------------------------- */

typedef struct pdq_grid {
    double w2_lo, w2_hi, w2_step;
    double w3_lo, w3_hi, w3_step;
} pdq_grid;

/* component selector used throughout */
enum { PDQ_PATHWAY_I = 0, PDQ_PATHWAY_II = 1, PDQ_TOTAL = 2 };

/* threads = 0 picks the hardware concurrency; output is identical for any
 * thread count */
pdq_status pdq_spectrum_compute(const pdq_system* sys, const pdq_grid* grid, double t1_fs,
                                int threads, pdq_spectrum** out);
int pdq_spectrum_n2(const pdq_spectrum* sp);
int pdq_spectrum_n3(const pdq_spectrum* sp);
/* interleaved re,im pairs, w2-major; needs cap >= 2*n2*n3 doubles */
pdq_status pdq_spectrum_copy(const pdq_spectrum* sp, int component, double* out, size_t cap);
pdq_status pdq_spectrum_write_csv(const pdq_spectrum* sp, const char* path);
/* single-point evaluations */
pdq_status pdq_signal_at(const pdq_system* sys, double w3, double w2, double t1_fs,
                         double s_i[2], double s_ii[2]);
pdq_status pdq_time_signal(const pdq_system* sys, double t3_fs, double t2_fs, double t1_fs,
                           double out[2]);
void pdq_spectrum_free(pdq_spectrum* sp);

/* ---- peak analysis --------------------------------------------------- */

typedef struct pdq_peak_info {
    double w3, w2;   /* refined position, cm^-1 */
    double height;   /* |S| at the maximum */
    double residual; /* distance to the assigned crossing, -1 if unassigned */
    char label[128]; /* e.g. "e1@f2", "f1e1@f1", merged "a@b+c@d", "unassigned" */
} pdq_peak_info;

/* min_separation <= 0 keeps all strict maxima; assign_tolerance <= 0 uses
 * the default (largest coherence dephasing) */
pdq_status pdq_peaks_find(const pdq_spectrum* sp, const pdq_system* sys, int component,
                          double threshold, double min_separation, double assign_tolerance,
                          pdq_peaks** out);
int pdq_peaks_count(const pdq_peaks* pk);
pdq_status pdq_peaks_get(const pdq_peaks* pk, int index, pdq_peak_info* out);
pdq_status pdq_peaks_write_csv(const pdq_peaks* pk, const char* path);
/* axis: 2 or 3; signed position of line_b minus line_a between the strongest
 * peaks assigned to each selector ("e1", "f3", "f1e2") */
pdq_status pdq_peaks_splitting(const pdq_peaks* pk, int axis, const char* line_a,
                               const char* line_b, double* out);
/* local maxima of the skyline projection onto one axis (resonance count) */
pdq_status pdq_spectrum_axis_resonances(const pdq_spectrum* sp, int component, int axis,
                                        double threshold, int* out);
void pdq_peaks_free(pdq_peaks* pk);

/* ---- file-producing runs -------------------------------------------- */

/* one spectrum CSV + metadata sidecar + peak table per sweep point; nothing
 * is written unless the whole run succeeds */
pdq_status pdq_run_spectrum(const pdq_config* cfg, const char* outdir, int threads);
/* energy/transition/anharmonicity tables per sweep point */
pdq_status pdq_run_levels(const pdq_config* cfg, const char* outdir);

/* ---- selfcheck -------------------------------------------------------- */

#define PDQ_SELFCHECK_INJECT_KAPPA_SIGN_BUG 1u

/* Runs the invariant suite (hermiticity, excitation conservation, Rabi
 * splitting, harmonic null, Fourier consistency, effective-coupling algebra).
 * Returns PDQ_OK when everything passes, PDQ_E_INTERNAL otherwise;
 * *n_failed gets the failure count and *report (optional) a text summary
 * to free with pdq_string_free. */
pdq_status pdq_selfcheck(unsigned flags, int threads, char** report, int* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* POLARDQC_H */
