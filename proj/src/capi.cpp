#include "ptoda/ptoda.h"

#include <string>

#include "ptoda/direct_monodromy.hpp"
#include "ptoda/identities.hpp"
#include "ptoda/ode.hpp"
#include "ptoda/rh_leading.hpp"

struct ptoda_point {
    ptoda::MonodromyPoint m;
};

struct ptoda_trajectory {
    ptoda::Trajectory t;
};

struct ptoda_report {
    ptoda::IdentityReport r;
};

namespace {

thread_local std::string g_last_error;

template <class F>
int guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return PTODA_OK;
    } catch (const ptoda::Error& e) {
        g_last_error = e.what();
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PTODA_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return PTODA_INTERNAL;
    }
}

int null_arg(const char* what) {
    g_last_error = std::string(what) + " must not be null";
    return PTODA_INVALID_ARGUMENT;
}

void copy_matrix(const ptoda::Mat3& m, double* re, double* im) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            re[3 * i + j] = m(i, j).real();
            im[3 * i + j] = m(i, j).imag();
        }
}

int make_point(const ptoda::MonodromyPoint& m, ptoda_point** out) {
    *out = new ptoda_point{m};
    return PTODA_OK;
}

}  // namespace

extern "C" {

const char* ptoda_status_name(int status) {
    switch (status) {
        case PTODA_OK: return "Ok";
        case PTODA_BUFFER_TOO_SMALL: return "BufferTooSmall";
        case PTODA_INTERNAL: return "Internal";
        default:
            if (status >= 1 && status <= PTODA_OVERFLOW) return ptoda::error_name(static_cast<ptoda::ErrorCode>(status));
            return "Unknown";
    }
}

const char* ptoda_last_error(void) { return g_last_error.c_str(); }

const char* ptoda_version(void) { return "1.0.0"; }

int ptoda_constraint_residuals(double A, double s, double x, double y, double out[2]) {
    if (!out) return null_arg("out");
    const ptoda::MonodromyPoint m{A, s, x, y};
    out[0] = m.residual1();
    out[1] = m.residual2();
    return PTODA_OK;
}

int ptoda_point_create(double A, double s, double x, double y, double tol, ptoda_point** out) {
    if (!out) return null_arg("out");
    return guarded([&] {
        const double t = tol > 0.0 ? tol : ptoda::kConstraintTol;
        make_point(ptoda::validate_point(A, s, x, y, t), out);
    });
}

int ptoda_point_from_chart_sy(double s, double y, ptoda_point** out) {
    if (!out) return null_arg("out");
    return guarded([&] { make_point(ptoda::from_chart_sy({s, y}), out); });
}

int ptoda_point_from_chart_spsi(double s, double psi, ptoda_point** out) {
    if (!out) return null_arg("out");
    return guarded([&] { make_point(ptoda::from_chart_spsi({s, psi}), out); });
}

void ptoda_point_destroy(ptoda_point* p) { delete p; }

int ptoda_point_get(const ptoda_point* p, double out[4]) {
    if (!p || !out) return null_arg("point and out");
    out[0] = p->m.A;
    out[1] = p->m.s;
    out[2] = p->m.xr;
    out[3] = p->m.yr;
    return PTODA_OK;
}

int ptoda_point_component(const ptoda_point* p, int* out) {
    if (!p || !out) return null_arg("point and out");
    *out = p->m.component() == ptoda::Component::Partner ? PTODA_PARTNER : PTODA_RADIAL_TODA;
    return PTODA_OK;
}

int ptoda_point_residuals(const ptoda_point* p, double out[2]) {
    if (!p || !out) return null_arg("point and out");
    out[0] = p->m.residual1();
    out[1] = p->m.residual2();
    return PTODA_OK;
}

int ptoda_point_to_chart_sy(const ptoda_point* p, double out[2]) {
    if (!p || !out) return null_arg("point and out");
    return guarded([&] {
        const auto c = ptoda::to_chart_sy(p->m);
        out[0] = c.s;
        out[1] = c.y;
    });
}

int ptoda_point_to_chart_spsi(const ptoda_point* p, double out[2]) {
    if (!p || !out) return null_arg("point and out");
    return guarded([&] {
        const auto c = ptoda::to_chart_spsi(p->m);
        out[0] = c.s;
        out[1] = c.psi;
    });
}

int ptoda_point_E1(const ptoda_point* p, double re[9], double im[9]) {
    if (!p || !re || !im) return null_arg("point and buffers");
    return guarded([&] { copy_matrix(ptoda::connection_E1(p->m), re, im); });
}

int ptoda_asymptotic_params(const ptoda_point* p, ptoda_asymptotics* out) {
    if (!p || !out) return null_arg("point and out");
    return guarded([&] {
        const auto a = ptoda::params_from_point(p->m);
        out->nu_re = a.nu.real();
        out->nu_im = a.nu.imag();
        out->nu0_im = a.nu0.imag();
        out->s1_re = a.s1.real();
        out->s1_im = a.s1.imag();
        out->sigma_re = a.sigma.real();
        out->sigma_im = a.sigma.imag();
        out->psi = a.psi;
        out->arg_gamma = a.arg_gamma;
    });
}

int ptoda_theta(const ptoda_point* p, double x, double* theta, double* phi) {
    if (!p || !theta || !phi) return null_arg("point and outputs");
    return guarded([&] {
        const auto e = ptoda::theta_of_x(ptoda::params_from_point(p->m), x);
        *theta = e.theta;
        *phi = e.phi;
    });
}

int ptoda_v0_asym(const ptoda_point* p, double x, double* v0, double* dv0) {
    if (!p || !v0) return null_arg("point and v0");
    return guarded([&] {
        const auto a = ptoda::params_from_point(p->m);
        *v0 = ptoda::v0_asym(a, x);
        if (dv0) *dv0 = ptoda::v0_asym_derivative(a, x);
    });
}

int ptoda_singularities(const ptoda_point* p, double xmin, double xmax, ptoda_singularity* buf, size_t capacity,
                        size_t* count) {
    if (!p || !count) return null_arg("point and count");
    int status = PTODA_OK;
    const int rc = guarded([&] {
        const auto set = ptoda::singularities(ptoda::params_from_point(p->m), xmin, xmax);
        *count = set.roots.size();
        if (!buf || capacity < set.roots.size()) {
            status = PTODA_BUFFER_TOO_SMALL;
            return;
        }
        for (size_t i = 0; i < set.roots.size(); ++i)
            buf[i] = {set.roots[i].n, set.roots[i].x_exact, set.roots[i].x_asym, set.roots[i].x_printed};
    });
    if (rc == PTODA_OK && status != PTODA_OK) g_last_error = "buffer too small";
    return rc != PTODA_OK ? rc : status;
}

int ptoda_piii_map(double v0, double x, double* s, double* wtilde) {
    if (!s || !wtilde) return null_arg("outputs");
    return guarded([&] {
        const auto r = ptoda::piii_map(v0, x);
        *s = r.s;
        *wtilde = r.wtilde;
    });
}

int ptoda_leading_data(const ptoda_point* p, double x, ptoda_leading* out) {
    if (!p || !out) return null_arg("point and out");
    return guarded([&] {
        const auto d = ptoda::leading_data(ptoda::params_from_point(p->m), x);
        out->alpha_hat_re = d.alpha_hat.real();
        out->alpha_hat_im = d.alpha_hat.imag();
        out->beta_hat_re = d.beta_hat.real();
        out->beta_hat_im = d.beta_hat.imag();
        out->phi = d.phi;
        out->X = d.X;
        out->exp_m2v_main = ptoda::main_system_exp_m2v(d.alpha_hat);
        out->exp_m2v_cramer = ptoda::cramer_exp_m2v(d.alpha_hat);
        out->exp_m2v_closed = ptoda::closed_form_exp_m2v(d.phi);
    });
}

int ptoda_integrate(int kind, double x0, double y0, double dy0, double x1, double tol, ptoda_trajectory** out) {
    if (!out) return null_arg("out");
    if (kind < PTODA_ODE_PARTNER || kind > PTODA_ODE_PIII_D7) {
        g_last_error = "unknown ODE kind";
        return PTODA_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new ptoda_trajectory{ptoda::integrate(static_cast<ptoda::OdeKind>(kind), x0, y0, dy0, x1, tol)};
    });
}

int ptoda_integrate_asymptotic(const ptoda_point* p, double x0, double x1, double tol, ptoda_trajectory** out) {
    if (!p || !out) return null_arg("point and out");
    return guarded([&] {
        *out = new ptoda_trajectory{ptoda::integrate_from_asymptotics(ptoda::params_from_point(p->m), x0, x1, tol)};
    });
}

int ptoda_integrate_restarts(const ptoda_point* p, double x0, double x1, double eps, double tol,
                             ptoda_trajectory** out) {
    if (!p || !out) return null_arg("point and out");
    return guarded([&] {
        auto run = ptoda::integrate_with_restarts(ptoda::params_from_point(p->m), x0, x1, eps, tol);
        ptoda::Trajectory merged;
        for (auto& seg : run.segments) {
            merged.samples.insert(merged.samples.end(), seg.samples.begin(), seg.samples.end());
            merged.steps.insert(merged.steps.end(), seg.steps.begin(), seg.steps.end());
            merged.reached_end = seg.reached_end;
        }
        merged.poles = std::move(run.poles);
        *out = new ptoda_trajectory{std::move(merged)};
    });
}

void ptoda_trajectory_destroy(ptoda_trajectory* t) { delete t; }

size_t ptoda_trajectory_size(const ptoda_trajectory* t) { return t ? t->t.samples.size() : 0; }

int ptoda_trajectory_sample(const ptoda_trajectory* t, size_t i, double out[3]) {
    if (!t || !out) return null_arg("trajectory and out");
    if (i >= t->t.samples.size()) {
        g_last_error = "sample index out of range";
        return PTODA_INVALID_ARGUMENT;
    }
    const auto& s = t->t.samples[i];
    out[0] = s.x;
    out[1] = s.value;
    out[2] = s.derivative;
    return PTODA_OK;
}

size_t ptoda_trajectory_pole_count(const ptoda_trajectory* t) { return t ? t->t.poles.size() : 0; }

int ptoda_trajectory_pole(const ptoda_trajectory* t, size_t i, double* x_pole, double* lo, double* hi) {
    if (!t || !x_pole) return null_arg("trajectory and x_pole");
    if (i >= t->t.poles.size()) {
        g_last_error = "pole index out of range";
        return PTODA_INVALID_ARGUMENT;
    }
    const auto& p = t->t.poles[i];
    *x_pole = p.x_pole;
    if (lo) *lo = p.bracket_lo;
    if (hi) *hi = p.bracket_hi;
    return PTODA_OK;
}

int ptoda_trajectory_residual(const ptoda_trajectory* t, double* out) {
    if (!t || !out) return null_arg("trajectory and out");
    return guarded([&] { *out = ptoda::residual(t->t); });
}

int ptoda_trajectory_piii_residual(const ptoda_trajectory* t, double* out) {
    if (!t || !out) return null_arg("trajectory and out");
    return guarded([&] { *out = ptoda::piii_transform_residual(t->t); });
}

int ptoda_monodromy(int form, double x, double v0, double v0x, ptoda_monodromy_result* out) {
    if (!out) return null_arg("out");
    if (form != PTODA_FORM_PARTNER && form != PTODA_FORM_RADIAL) {
        g_last_error = "unknown form";
        return PTODA_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const ptoda::ZetaSystem sys{form == PTODA_FORM_PARTNER ? ptoda::Form::PartnerForm : ptoda::Form::RadialForm,
                                    x, v0, v0x};
        const auto c = ptoda::connection_matrix(sys);
        copy_matrix(c.E1, out->E_re, out->E_im);
        out->det_residual = c.det_residual;
        out->symmetry_residual = c.symmetry_residual;
        out->truncation = c.truncation;
        const auto e = ptoda::extract_point(c.E1);
        out->A = e.point.A;
        out->s = e.point.s;
        out->x = e.point.xr;
        out->y = e.point.yr;
        out->component = e.point.component() == ptoda::Component::Partner ? PTODA_PARTNER : PTODA_RADIAL_TODA;
        out->residual1 = e.residual1;
        out->residual2 = e.residual2;
        out->s_fit_residual = e.s_fit_residual;
        out->pattern_residual = e.pattern_residual;
    });
}

int ptoda_roundtrip(const ptoda_point* p, double x0, int recenter, ptoda_roundtrip_result* out) {
    if (!p || !out) return null_arg("point and out");
    return guarded([&] {
        const auto r = ptoda::roundtrip(p->m, x0, recenter != 0);
        out->x0_requested = r.x0_requested;
        out->x0_used = r.x0_used;
        out->v0 = r.v0;
        out->v0x = r.v0x;
        out->recovered[0] = r.recovered.A;
        out->recovered[1] = r.recovered.s;
        out->recovered[2] = r.recovered.xr;
        out->recovered[3] = r.recovered.yr;
        for (int i = 0; i < 4; ++i) out->error[i] = r.error[i];
        out->max_error = r.max_error;
        out->component = r.component == ptoda::Component::Partner ? PTODA_PARTNER : PTODA_RADIAL_TODA;
    });
}

int ptoda_identity_suite(uint64_t seed, ptoda_report** out) {
    if (!out) return null_arg("out");
    return guarded([&] { *out = new ptoda_report{ptoda::run_identity_suite(seed)}; });
}

void ptoda_report_destroy(ptoda_report* r) { delete r; }

size_t ptoda_report_size(const ptoda_report* r) { return r ? r->r.checks.size() : 0; }

int ptoda_report_entry(const ptoda_report* r, size_t i, const char** name, const char** note, double* residual,
                       double* threshold, int* pass, int* informational) {
    if (!r) return null_arg("report");
    if (i >= r->r.checks.size()) {
        g_last_error = "entry index out of range";
        return PTODA_INVALID_ARGUMENT;
    }
    const auto& c = r->r.checks[i];
    if (name) *name = c.name.c_str();
    if (note) *note = c.note.c_str();
    if (residual) *residual = c.residual;
    if (threshold) *threshold = c.threshold;
    if (pass) *pass = c.pass ? 1 : 0;
    if (informational) *informational = c.informational ? 1 : 0;
    return PTODA_OK;
}

int ptoda_report_all_pass(const ptoda_report* r) { return r && r->r.all_pass() ? 1 : 0; }

}  // extern "C"
