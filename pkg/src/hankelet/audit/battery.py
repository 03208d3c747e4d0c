"""Run the inequality checks over the Cartesian product of a configuration."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..radial import RadialGrid, ScaleSpaceGrid
from ..wavelet import hwt_forward, make_bessel_hat, worker_count
from .inequalities import (
    HANKEL_IDS, HWT_IDS, FunctionContext, InequalitySpec, PairContext, check_hankel, check_hwt,
    check_scalar_lemma,
)
from .report import AuditReport


@dataclass
class Scalogram:
    """|W| on the scale-space grid for one (alpha, wavelet, function) pair."""

    alpha: float
    wavelet: str
    function: str
    scales: object
    positions: object
    values: object


@dataclass
class BatteryResult:
    report: AuditReport
    scalograms: list = field(default_factory=list)


def _param_sets(sid, cfg):
    if sid in ("PITT_HANKEL", "PITT_HWT"):
        return [{"beta": b} for b in cfg.pitt_beta]
    if sid in ("HEIS_HWT_SUM", "HEIS_HWT_PROD"):
        return [{"s": s, "beta": b} for s, b in cfg.s_beta]
    if sid == "HEIS_HWT_MELLIN":
        extra = [{"s": s, "beta": b} for s, b in cfg.mellin_s_beta if (s, b) != (1.0, 1.0)]
        return [{"s": 1.0, "beta": 1.0}] + extra
    if sid == "LIEB_LP":
        return [{"p": p} for p in cfg.lieb_p]
    if sid == "DONOHO_STARK":
        return [{"region": r} for r in cfg.regions]
    if sid == "LIEB_SUPPORT":
        return [{"p": p, "region": r} for p in cfg.support_p for r in cfg.regions]
    if sid == "ANNIHILATION":
        return [{"region": r} for r in cfg.annihilation_regions]
    return [{}]


def build_grids(alpha, grid_params):
    g = grid_params
    position = RadialGrid.graded(
        alpha, core_radius=g["core_radius"], core_panels=g["core_panels"], nodes_per_panel=g["nodes_per_panel"],
        radius=g["radius"], tail_growth=g["tail_growth"], tail_nodes=g["tail_nodes"],
        origin_levels=g["origin_levels"], origin_nodes=g["origin_nodes"],
    )
    return position, ScaleSpaceGrid.build(position, g["a_min"], g["a_max"], g["nodes_per_octave"])


def run_battery(cfg, keep_scalograms=True):
    """Audit every (alpha, wavelet, function) combination named by the config.

    Hankel-only ids run once per (alpha, function); the scalar lemma runs once.
    Entries are appended in config order regardless of worker count.
    """
    hankel_ids = [i for i in cfg.inequalities if i in HANKEL_IDS]
    hwt_ids = [i for i in cfg.inequalities if i in HWT_IDS]
    report = AuditReport(settings=cfg.settings())
    result = BatteryResult(report)
    specs_h = [InequalitySpec(i, p) for i in hankel_ids for p in _param_sets(i, cfg)]
    specs_w = [InequalitySpec(i, p) for i in hwt_ids for p in _param_sets(i, cfg)]

    if (specs_h or specs_w) and cfg.functions:
        for alpha in cfg.alphas:
            position, scale_space = build_grids(alpha, cfg.grid)
            fctxs = [FunctionContext(fs.sample(position), fs.label, schwartz=True) for fs in cfg.functions]
            for fctx in fctxs:
                report.entries += [check_hankel(s, fctx, cfg.tol_mu) for s in specs_h]
            if not (specs_w and cfg.wavelets):
                continue
            wavelets = [make_bessel_hat(alpha, k, sigma) for k, sigma in cfg.wavelets]
            jobs = [(w, fctx) for w in wavelets for fctx in fctxs]

            def run_pair(job):
                w, fctx = job
                W = hwt_forward(fctx.f, w, scale_space, workers=1)
                pctx = PairContext(fctx, w, scale_space, W)
                return [check_hwt(s, pctx, cfg.tol_nu) for s in specs_w], W

            workers = min(worker_count(), len(jobs))
            if workers > 1:
                with ThreadPoolExecutor(workers) as pool:
                    outputs = list(pool.map(run_pair, jobs))
            else:
                outputs = [run_pair(j) for j in jobs]
            for entries, _ in outputs:
                report.entries += entries
            if keep_scalograms and outputs:
                (w, fctx), (_, W) = jobs[0], outputs[0]
                result.scalograms.append(Scalogram(alpha, w.label, fctx.descriptor, scale_space.scales,
                                                   position.nodes, abs(W.samples)))

    if "SCALAR_ENTROPY_LEMMA" in cfg.inequalities:
        report.entries.append(check_scalar_lemma())
    return result
