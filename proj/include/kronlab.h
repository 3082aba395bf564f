/* kronlab C API: frequency systems, spectral counting, saddle-point
 * asymptotics and the experiment runner behind a stable extern "C" surface.
 *
 * Conventions: every function returns a kron_status; results go through out
 * parameters. Handles are opaque and freed with their matching _free call.
 * Strings returned through char** are owned by the caller and released with
 * kron_string_free. kron_last_error() describes the most recent failure on
 * the calling thread.
 */
#ifndef KRONLAB_H
#define KRONLAB_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define KRON_API __declspec(dllexport)
#else
#define KRON_API __attribute__((visibility("default")))
#endif

typedef enum kron_status {
    KRON_OK = 0,
    KRON_ERR_INVALID_ARGUMENT = 1,
    KRON_ERR_UNSUPPORTED = 2,
    KRON_ERR_PREFIX_TOO_SHORT = 3,
    KRON_ERR_CAP_EXCEEDED = 4,
    KRON_ERR_DIVERGENT = 5,
    KRON_ERR_NO_BRACKET = 6,
    KRON_ERR_IO = 7,
    KRON_ERR_INTERNAL = 8
} kron_status;

typedef struct kron_system kron_system;

/* descriptor examples: "powerlaw:A=1,alpha=1.5", "primelog",
 * "dispersion:m=3.14159", "explicit:1,2.5,3.7" */
KRON_API kron_status kron_system_create(const char* descriptor, int count, kron_system** out);
KRON_API void kron_system_free(kron_system* sys);
KRON_API int kron_system_count(const kron_system* sys);
KRON_API kron_status kron_system_omega(const kron_system* sys, int index, double* out);
KRON_API kron_status kron_system_to_json(const kron_system* sys, char** out_json);
KRON_API kron_status kron_system_from_json(const char* json_text, kron_system** out);
/* {"positivity":b, "strictly_increasing":b, "divergent_on_prefix":b,
 *  "independence":"not-checkable", "pass":b} */
KRON_API kron_status kron_system_axiom_report(const kron_system* sys, char** out_json);

/* exact eigenvalue counting N(E); cap <= 0 uses the default 1e8 */
KRON_API kron_status kron_count_states(const kron_system* sys, double energy, long long cap,
                                       double* n_out);
/* (N(E) - N(E-delta)) / N(E) */
KRON_API kron_status kron_window_ratio(const kron_system* sys, double energy, double delta,
                                       double* out);

KRON_API kron_status kron_theta(const kron_system* sys, double s, double* out);
/* out[0..3] = phi, phi', phi'', phi''' */
KRON_API kron_status kron_phi(const kron_system* sys, double s, double out[4]);
KRON_API kron_status kron_im_phi_prime(const kron_system* sys, double sigma, double x,
                                       double* out);

typedef struct kron_saddle {
    double energy;
    double sigma;
    double phi, phi1, phi2, phi3;
    double log_n_tilde;
    double n_tilde;
} kron_saddle;

KRON_API kron_status kron_solve_saddle(const kron_system* sys, double energy, kron_saddle* out);

KRON_API kron_status kron_gamma_zeta(double beta, double* gamma_out, double* zeta_out);

/* Runs one experiment from flat key=value configuration text ([section]
 * headers; see the README for keys). out_dir overrides run.out when not
 * NULL/empty. exit_code: 0 all checks passed, 2 a check failed. Configuration
 * or usage problems come back as KRON_ERR_* (conventionally exit 1). */
KRON_API kron_status kron_run_experiment(const char* config_text, const char* out_dir,
                                         char** summary_json, int* exit_code);

KRON_API void kron_string_free(char* s);
KRON_API const char* kron_status_name(kron_status status);
KRON_API const char* kron_last_error(void);
KRON_API const char* kron_version(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KRONLAB_H */
