"""Registry of uncertainty inequalities and their numerical certification.

Each check returns an AuditEntry.  Three ratio conventions are used:

- "ge":       LHS >= RHS, ratio = LHS / RHS
- "le":       LHS <= RHS, ratio = RHS / LHS
- "additive": LHS >= RHS where either side may be negative or zero;
              ratio = 1 + (LHS - RHS) / ||f||^2

An entry passes when ratio >= 1 - tolerance.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, PreconditionError
from ..hankel import get_plan
from ..radial import lp_norm_radial, weighted_moment
from ..wavelet import hwt_forward
from .constants import (
    Region, digamma_heisenberg_constant, entropy_constants, entropy_radial,
    log_constant_hankel, log_constant_hwt, mellin_of_wavelet, pitt_constant_hankel, pitt_constant_hwt,
    region_energy, scalar_entropy_lemma_grid, shannon_entropy_ss, wavelet_log_mean,
)
from .report import STATUS_FAIL, STATUS_INFO, STATUS_PASS, STATUS_REFUSED, AuditEntry

HANKEL_IDS = (
    "HEIS_HANKEL_SUM", "HEIS_HANKEL_PROD", "LOG_HANKEL", "HEIS_HANKEL_DIGAMMA",
    "ENTROPY_HANKEL", "PITT_HANKEL",
)
HWT_IDS = (
    "HEIS_MIXED_SUM", "HEIS_MIXED_PROD", "PITT_HWT", "LOG_HWT", "HEIS_HWT_LOG", "ENTROPY_HWT",
    "HEIS_HWT_SUM", "HEIS_HWT_PROD", "HEIS_HWT_MELLIN", "LINF_BOUND", "LIEB_LP", "DONOHO_STARK",
    "LIEB_SUPPORT", "ANNIHILATION",
)
GLOBAL_IDS = ("SCALAR_ENTROPY_LEMMA",)
ALL_IDS = HANKEL_IDS + HWT_IDS + GLOBAL_IDS

# ids whose hypotheses assume a rapidly decaying smooth transform
SCHWARTZ_IDS = {"LOG_HANKEL", "HEIS_HANKEL_DIGAMMA", "PITT_HANKEL", "PITT_HWT", "LOG_HWT", "HEIS_HWT_LOG"}

MIN_NORM = 1e-12


@dataclass(frozen=True)
class InequalitySpec:
    """An inequality id with its parameters (beta, s, p, region)."""

    id: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.id not in ALL_IDS:
            raise DomainError(f"unknown inequality id {self.id!r}")
        p = self.params
        if "p" in p and not float(p["p"]) > 2:
            raise DomainError(f"{self.id} requires p > 2, got {p['p']}")
        if "beta" in p and float(p["beta"]) < 0:
            raise DomainError(f"{self.id} requires beta >= 0")

    def validate_alpha(self, alpha):
        if self.id in ("PITT_HANKEL", "PITT_HWT"):
            beta = float(self.params.get("beta", 0.0))
            if not beta < alpha + 1:
                raise DomainError(
                    f"{self.id}: beta = {beta} violates the Pitt bound 0 <= beta < alpha+1 = {alpha + 1}"
                )


class FunctionContext:
    """Per-(alpha, f) quantities shared by all checks."""

    def __init__(self, f, descriptor=None, schwartz=None):
        norm_sq = lp_norm_radial(f, 2) ** 2
        if not norm_sq > MIN_NORM ** 2:
            raise DomainError("||f|| is below 1e-12; every inequality would be vacuous")
        self.f = f
        self.alpha = f.alpha
        self.descriptor = descriptor or f.label or "sampled"
        self.schwartz = bool(schwartz) if schwartz is not None else False
        self.norm_sq = norm_sq
        self.hf = f.with_samples(get_plan(f.grid).apply(f.samples))
        self._cache = {}

    def memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def x_moment(self, s):
        return self.memo(("x", s), lambda: weighted_moment(self.f, "x^s", 2 * s))

    def xi_moment(self, s):
        return self.memo(("xi", s), lambda: weighted_moment(self.hf, "xi^s", 2 * s))


class PairContext:
    """Per-(alpha, wavelet, f) data: the transform on the scale-space grid."""

    def __init__(self, fctx, w, grid, W=None):
        if w.alpha != fctx.alpha:
            raise DomainError("wavelet and function alpha differ")
        self.fctx = fctx
        self.w = w
        self.grid = grid
        self.W = W if W is not None else hwt_forward(fctx.f, w, grid)
        self._cache = {}
        self.box_energy = self.memo("energy", lambda: weighted_moment(self.W, "a^s", 0.0))
        self.leakage = 1.0 - self.box_energy / fctx.norm_sq

    def memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    def a_moment(self, s):
        return self.memo(("a", s), lambda: weighted_moment(self.W, "a^s", 2 * s))

    def x_moment(self, s):
        return self.memo(("x", s), lambda: weighted_moment(self.W, "x^s", 2 * s))

    def log_a(self):
        return self.memo("ln a", lambda: weighted_moment(self.W, "ln a"))

    def log_x(self):
        return self.memo("ln x", lambda: weighted_moment(self.W, "ln x"))

    def region(self, region):
        key = ("region", region.rectangles)
        return self.memo(key, lambda: region_energy(self.W, region))


def _ratio(lhs, rhs, orientation, norm_sq):
    if orientation == "ge":
        return lhs / rhs if rhs > 0 else math.inf
    if orientation == "le":
        return rhs / lhs if lhs > 0 else math.inf
    return 1.0 + (lhs - rhs) / norm_sq


def _entry(spec, alpha, wlabel, flabel, lhs, rhs, orientation, tol, norm_sq, diagnostics=None,
           note="", status=None):
    ratio = _ratio(lhs, rhs, orientation, norm_sq)
    if status is None:
        status = STATUS_PASS if ratio >= 1.0 - tol else STATUS_FAIL
    return AuditEntry(spec.id, alpha, wlabel, flabel, dict(spec.params), lhs, rhs, ratio, status, tol,
                      orientation, diagnostics or {}, note)


def _refusal(spec, alpha, wlabel, flabel, tol, reason):
    return AuditEntry(spec.id, alpha, wlabel, flabel, dict(spec.params), math.nan, math.nan, math.nan,
                      STATUS_REFUSED, tol, "-", {}, reason)


def check_hankel(spec, fctx, tol_mu):
    """Inequalities involving only f and its Hankel transform."""
    alpha = fctx.alpha
    nf = fctx.norm_sq
    x2, xi2 = fctx.x_moment(1.0), fctx.xi_moment(1.0)
    diag = {}
    if spec.id in SCHWARTZ_IDS and not fctx.schwartz:
        diag["schwartz_assumption_unchecked"] = True
    args = (spec, alpha, "-", fctx.descriptor)
    sid = spec.id
    if sid == "HEIS_HANKEL_SUM":
        return _entry(*args, x2 + xi2, (2 * alpha + 2) * nf, "ge", tol_mu, nf, diag)
    if sid == "HEIS_HANKEL_PROD":
        return _entry(*args, math.sqrt(x2 * xi2), (alpha + 1) * nf, "ge", tol_mu, nf, diag)
    if sid == "HEIS_HANKEL_DIGAMMA":
        return _entry(*args, math.sqrt(x2 * xi2), digamma_heisenberg_constant(alpha) * nf, "ge", tol_mu, nf, diag)
    if sid == "LOG_HANKEL":
        lhs = weighted_moment(fctx.f, "ln x") + weighted_moment(fctx.hf, "ln xi")
        return _entry(*args, lhs, log_constant_hankel(alpha) * nf, "additive", tol_mu, nf, diag)
    if sid == "ENTROPY_HANKEL":
        lhs = entropy_radial(fctx.f.samples, fctx.f.grid) + entropy_radial(fctx.hf.samples, fctx.hf.grid)
        rhs = ((2 * alpha + 2) * math.log(math.e / 2.0) - 2.0 * math.log(nf)) * nf
        return _entry(*args, lhs, rhs, "additive", tol_mu, nf, diag)
    if sid == "PITT_HANKEL":
        beta = float(spec.params["beta"])
        spec.validate_alpha(alpha)
        lhs = math.sqrt(fctx.xi_moment(-beta))
        rhs = pitt_constant_hankel(alpha, beta) * math.sqrt(fctx.x_moment(beta))
        return _entry(*args, lhs, rhs, "le", tol_mu, nf, diag)
    raise DomainError(f"{sid} is not a Hankel-transform inequality")


def _mellin_finite(w, z):
    cf = w.closed_form
    return cf is None or z < 2 * cf.k


def check_hwt(spec, pctx, tol_nu):
    """Inequalities involving the wavelet transform."""
    fctx, w = pctx.fctx, pctx.w
    alpha, nf = fctx.alpha, fctx.norm_sq
    sid = spec.id
    args = (spec, alpha, w.label, fctx.descriptor)
    diag = {"leakage": pctx.leakage}
    if sid in SCHWARTZ_IDS and not fctx.schwartz:
        diag["schwartz_assumption_unchecked"] = True

    if sid == "HEIS_MIXED_SUM":
        lhs = pctx.x_moment(1.0) + fctx.xi_moment(1.0)
        return _entry(*args, lhs, (2 * alpha + 2) * nf, "ge", tol_nu, nf, diag)
    if sid == "HEIS_MIXED_PROD":
        lhs = math.sqrt(pctx.x_moment(1.0) * fctx.xi_moment(1.0))
        return _entry(*args, lhs, (alpha + 1) * nf, "ge", tol_nu, nf, diag)
    if sid == "PITT_HWT":
        beta = float(spec.params["beta"])
        spec.validate_alpha(alpha)
        if not _mellin_finite(w, -2 * beta):
            return _refusal(*args, tol_nu, "Mellin transform diverges at -2 beta")
        lhs = math.sqrt(pctx.a_moment(-beta))
        rhs = pitt_constant_hwt(w, beta) * math.sqrt(pctx.x_moment(beta))
        return _entry(*args, lhs, rhs, "le", tol_nu, nf, diag)
    if sid == "LOG_HWT":
        log_a, log_x = pctx.log_a(), pctx.log_x()
        c_log = log_constant_hwt(w)
        # the scale log-moment equals the frequency log-moment shifted by C_psi
        transported = weighted_moment(fctx.hf, "ln xi") - wavelet_log_mean(w) * nf
        diag["log_scale_transport_gap"] = (log_a - transported) / nf
        return _entry(*args, log_a + log_x, c_log * nf, "additive", tol_nu, nf, diag)
    if sid == "HEIS_HWT_LOG":
        if not _mellin_finite(w, 2.0):
            diag["lhs_grows_with_band"] = True
        lhs = math.sqrt(pctx.a_moment(1.0) * pctx.x_moment(1.0))
        return _entry(*args, lhs, math.exp(log_constant_hwt(w)) * nf, "ge", tol_nu, nf, diag)
    if sid == "ENTROPY_HWT":
        if not w.entropy_precondition:
            return _refusal(*args, tol_nu, f"||psi||^2 = {w.l2_norm_sq:.6g} > c_psi = {w.c_admissible:.6g}")
        lhs = shannon_entropy_ss(pctx.W)
        rhs = nf * math.log(w.contrast / nf)
        return _entry(*args, lhs, rhs, "additive", tol_nu, nf, diag)
    if sid in ("HEIS_HWT_SUM", "HEIS_HWT_PROD"):
        s, beta = float(spec.params["s"]), float(spec.params["beta"])
        try:
            c_sum, c_prod = entropy_constants(s, alpha, beta, w)
        except PreconditionError as exc:
            return _refusal(*args, tol_nu, str(exc))
        if not _mellin_finite(w, 2 * s):
            diag["lhs_grows_with_band"] = True
        a2, x2 = pctx.a_moment(s), pctx.x_moment(beta)
        if sid == "HEIS_HWT_SUM":
            return _entry(*args, a2 + x2, c_sum * nf, "ge", tol_nu, nf, diag)
        lhs = a2 ** (0.5 * beta) * x2 ** (0.5 * s)
        return _entry(*args, lhs, c_prod * nf ** (0.5 * (s + beta)), "ge", tol_nu, nf, diag)
    if sid == "HEIS_HWT_MELLIN":
        s, beta = float(spec.params.get("s", 1.0)), float(spec.params.get("beta", 1.0))
        if not _mellin_finite(w, 2 * s):
            return _refusal(*args, tol_nu, f"Mellin transform of |H psi|^2 diverges at z = {2 * s:g} (k <= s)")
        m = mellin_of_wavelet(w, 2 * s)
        if s == 1.0 and beta == 1.0:
            lhs = math.sqrt(pctx.a_moment(1.0) * pctx.x_moment(1.0))
            rhs = math.sqrt(m / w.c_admissible) * (alpha + 1) * nf
            return _entry(*args, lhs, rhs, "ge", tol_nu, nf, diag)
        lhs = pctx.a_moment(s) ** (0.5 * beta) * pctx.x_moment(beta) ** (0.5 * s)
        rhs = (m / w.c_admissible) ** (0.5 * beta) * nf ** (0.5 * (s + beta))
        return _entry(*args, lhs, rhs, "ge", tol_nu, nf, diag,
                      note="general (s, beta) form: Hankel constant unspecified, reported without verdict",
                      status=STATUS_INFO)
    if sid == "LINF_BOUND":
        lhs = float(np.max(np.abs(pctx.W.samples)))
        rhs = math.sqrt(nf * w.l2_norm_sq / w.c_admissible)
        return _entry(*args, lhs, rhs, "le", tol_nu, nf, diag)
    if sid == "LIEB_LP":
        p = float(spec.params["p"])
        lhs = _lp_power(pctx, p)
        rhs = (w.l2_norm_sq / w.c_admissible) ** (0.5 * p - 1.0) * nf ** (0.5 * p)
        return _entry(*args, lhs, rhs, "le", tol_nu, nf, diag)
    if sid in ("DONOHO_STARK", "LIEB_SUPPORT", "ANNIHILATION"):
        region = Region(tuple(tuple(r) for r in spec.params["region"]))
        if not region.fits(pctx.grid):
            raise DomainError(f"region {region.rectangles} leaves the scale-position grid box")
        measure = region.measure(alpha)
        diag["region_measure"] = measure
        if sid == "ANNIHILATION":
            if not measure < w.contrast:
                return _refusal(*args, tol_nu,
                                f"nu(Sigma) = {measure:.6g} is not below c_psi/||psi||^2 = {w.contrast:.6g}")
            outside = nf - pctx.region(region)
            return _entry(*args, outside, (1.0 - measure / w.contrast) * nf, "ge", tol_nu, nf, diag)
        eps, raw = concentration_epsilon_cached(pctx, region)
        diag["epsilon"] = eps
        if raw < -1e-6 or raw > 1 + 1e-6:
            diag["epsilon_clamped_from"] = raw
        if sid == "DONOHO_STARK":
            return _entry(*args, measure, w.contrast * (1.0 - eps), "ge", tol_nu, nf, diag)
        p = float(spec.params["p"])
        return _entry(*args, measure, w.contrast * (1.0 - eps) ** (p / (p - 2.0)), "ge", tol_nu, nf, diag)
    raise DomainError(f"{sid} is not a wavelet-transform inequality")


def concentration_epsilon_cached(pctx, region):
    inside = pctx.region(region)
    raw = (pctx.fctx.norm_sq - inside) / pctx.fctx.norm_sq
    return min(1.0, max(0.0, raw)), raw


def _lp_power(pctx, p):
    from ..radial import integrate_scale_space

    return integrate_scale_space(np.abs(pctx.W.samples) ** p, pctx.grid)


def check_scalar_lemma(n=100):
    """0 <= (x^2 - x^p)/(p-2) <= -x^2 ln x on the standard 100 x 100 grid, exactly."""
    X, P, middle, upper = scalar_entropy_lemma_grid(n)
    lower_ok = middle >= 0.0
    upper_ok = middle <= upper
    violations = int(np.count_nonzero(~(lower_ok & upper_ok)))
    spec = InequalitySpec("SCALAR_ENTROPY_LEMMA", {"points": n * n})
    status = STATUS_PASS if violations == 0 else STATUS_FAIL
    return AuditEntry(
        spec.id, math.nan, "-", "-", dict(spec.params), float(np.max(middle - upper)), 0.0,
        1.0 if violations == 0 else 0.0, status, 0.0, "exact",
        {"violations": violations, "min_middle": float(np.min(middle))},
    )


def check_inequality(spec, f, w=None, grid=None, tol_mu=1e-6, tol_nu=1e-3, schwartz=None):
    """Evaluate one inequality for f (and w on grid when the id needs the wavelet transform)."""
    if spec.id == "SCALAR_ENTROPY_LEMMA":
        return check_scalar_lemma()
    fctx = FunctionContext(f, schwartz=schwartz)
    if spec.id in HANKEL_IDS:
        return check_hankel(spec, fctx, tol_mu)
    if w is None or grid is None:
        raise DomainError(f"{spec.id} needs a wavelet and a scale-space grid")
    return check_hwt(spec, PairContext(fctx, w, grid), tol_nu)
