#include "kronlab.h"

#include <cstring>
#include <new>
#include <string>

#include "json.hpp"

#include "kronlab/counting.hpp"
#include "kronlab/error.hpp"
#include "kronlab/experiments.hpp"
#include "kronlab/frequencies.hpp"
#include "kronlab/saddle.hpp"

struct kron_system {
    kron::FrequencySystem sys;
};

namespace {

thread_local std::string g_last_error;

kron_status to_status(const kron::Error& e) {
    switch (e.code()) {
        case kron::ErrorCode::InvalidArgument: return KRON_ERR_INVALID_ARGUMENT;
        case kron::ErrorCode::Unsupported: return KRON_ERR_UNSUPPORTED;
        case kron::ErrorCode::PrefixTooShort: return KRON_ERR_PREFIX_TOO_SHORT;
        case kron::ErrorCode::CapExceeded: return KRON_ERR_CAP_EXCEEDED;
        case kron::ErrorCode::Divergent: return KRON_ERR_DIVERGENT;
        case kron::ErrorCode::NoBracket: return KRON_ERR_NO_BRACKET;
        case kron::ErrorCode::Io: return KRON_ERR_IO;
        case kron::ErrorCode::Internal: return KRON_ERR_INTERNAL;
    }
    return KRON_ERR_INTERNAL;
}

template <typename Fn>
kron_status guarded(Fn&& fn) {
    try {
        fn();
        return KRON_OK;
    } catch (const kron::Error& e) {
        g_last_error = e.what();
        return to_status(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return KRON_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return KRON_ERR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

kron_status require(bool ok, const char* what) {
    if (!ok) {
        g_last_error = what;
        return KRON_ERR_INVALID_ARGUMENT;
    }
    return KRON_OK;
}

} // namespace

extern "C" {

kron_status kron_system_create(const char* descriptor, int count, kron_system** out) {
    if (auto st = require(descriptor && out, "null argument"); st != KRON_OK) return st;
    *out = nullptr;
    return guarded([&] {
        *out = new kron_system{kron::FrequencySystem::parse_descriptor(descriptor, count)};
    });
}

void kron_system_free(kron_system* sys) { delete sys; }

int kron_system_count(const kron_system* sys) { return sys ? sys->sys.count() : 0; }

kron_status kron_system_omega(const kron_system* sys, int index, double* out) {
    if (auto st = require(sys && out, "null argument"); st != KRON_OK) return st;
    return guarded([&] {
        if (index < 0 || index >= sys->sys.count())
            kron::fail(kron::ErrorCode::InvalidArgument, "frequency index out of range");
        *out = sys->sys.omega(index);
    });
}

kron_status kron_system_to_json(const kron_system* sys, char** out_json) {
    if (auto st = require(sys && out_json, "null argument"); st != KRON_OK) return st;
    return guarded([&] { *out_json = copy_string(sys->sys.to_json()); });
}

kron_status kron_system_from_json(const char* json_text, kron_system** out) {
    if (auto st = require(json_text && out, "null argument"); st != KRON_OK) return st;
    *out = nullptr;
    return guarded([&] {
        *out = new kron_system{kron::FrequencySystem::from_json(json_text)};
    });
}

kron_status kron_system_axiom_report(const kron_system* sys, char** out_json) {
    if (auto st = require(sys && out_json, "null argument"); st != KRON_OK) return st;
    return guarded([&] {
        const kron::AxiomReport r = sys->sys.check_axioms();
        nlohmann::json j = {{"positivity", r.positivity},
                            {"strictly_increasing", r.strictly_increasing},
                            {"divergent_on_prefix", r.divergent_on_prefix},
                            {"independence", r.independence},
                            {"detail", r.detail},
                            {"pass", r.testable_pass()}};
        *out_json = copy_string(j.dump());
    });
}

kron_status kron_count_states(const kron_system* sys, double energy, long long cap,
                              double* n_out) {
    if (auto st = require(sys && n_out, "null argument"); st != KRON_OK) return st;
    return guarded([&] {
        kron::CountOptions opt;
        if (cap > 0) opt.cap = static_cast<std::uint64_t>(cap);
        *n_out = static_cast<double>(kron::count_states(sys->sys, energy, opt).N);
    });
}

kron_status kron_window_ratio(const kron_system* sys, double energy, double delta, double* out) {
    if (auto st = require(sys && out, "null argument"); st != KRON_OK) return st;
    return guarded([&] { *out = kron::window_ratio(sys->sys, energy, delta); });
}

kron_status kron_theta(const kron_system* sys, double s, double* out) {
    if (auto st = require(sys && out, "null argument"); st != KRON_OK) return st;
    return guarded([&] { *out = kron::PhiEvaluator(sys->sys).theta(s); });
}

kron_status kron_phi(const kron_system* sys, double s, double out[4]) {
    if (auto st = require(sys && out, "null argument"); st != KRON_OK) return st;
    return guarded([&] {
        const kron::PhiDerivatives d = kron::PhiEvaluator(sys->sys).phi(s);
        out[0] = d.phi; out[1] = d.phi1; out[2] = d.phi2; out[3] = d.phi3;
    });
}

kron_status kron_im_phi_prime(const kron_system* sys, double sigma, double x, double* out) {
    if (auto st = require(sys && out, "null argument"); st != KRON_OK) return st;
    return guarded([&] { *out = kron::PhiEvaluator(sys->sys).im_phi_prime(sigma, x); });
}

kron_status kron_solve_saddle(const kron_system* sys, double energy, kron_saddle* out) {
    if (auto st = require(sys && out, "null argument"); st != KRON_OK) return st;
    return guarded([&] {
        const kron::SaddleResult r = kron::PhiEvaluator(sys->sys).solve_saddle(energy);
        out->energy = r.E;
        out->sigma = r.sigma;
        out->phi = r.phi; out->phi1 = r.phi1; out->phi2 = r.phi2; out->phi3 = r.phi3;
        out->log_n_tilde = r.log_n_tilde;
        out->n_tilde = r.n_tilde;
    });
}

kron_status kron_gamma_zeta(double beta, double* gamma_out, double* zeta_out) {
    if (auto st = require(gamma_out && zeta_out, "null argument"); st != KRON_OK) return st;
    return guarded([&] {
        if (!(beta > 1.0))
            kron::fail(kron::ErrorCode::InvalidArgument, "gamma/zeta pair requires beta > 1");
        *gamma_out = kron::gamma_function(beta);
        *zeta_out = kron::zeta_function(beta);
    });
}

kron_status kron_run_experiment(const char* config_text, const char* out_dir,
                                char** summary_json, int* exit_code) {
    if (auto st = require(config_text && exit_code, "null argument"); st != KRON_OK) return st;
    *exit_code = 1;
    return guarded([&] {
        const kron::Config cfg = kron::Config::parse(config_text);
        const kron::ExperimentResult res =
            kron::run_experiment(cfg, out_dir ? std::string(out_dir) : std::string());
        *exit_code = res.exit_code;
        if (summary_json) *summary_json = copy_string(res.summary_json);
    });
}

void kron_string_free(char* s) { delete[] s; }

const char* kron_status_name(kron_status status) {
    switch (status) {
        case KRON_OK: return "ok";
        case KRON_ERR_INVALID_ARGUMENT: return "invalid argument";
        case KRON_ERR_UNSUPPORTED: return "unsupported";
        case KRON_ERR_PREFIX_TOO_SHORT: return "frequency prefix too short";
        case KRON_ERR_CAP_EXCEEDED: return "cap exceeded";
        case KRON_ERR_DIVERGENT: return "divergent series";
        case KRON_ERR_NO_BRACKET: return "bracket not found";
        case KRON_ERR_IO: return "io error";
        case KRON_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* kron_last_error(void) { return g_last_error.c_str(); }

const char* kron_version(void) { return "1.0.0"; }

} // extern "C"
