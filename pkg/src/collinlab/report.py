"""Combined report of a fit, its diagnostics, replication and perturbation.

JSON layout (top-level keys; optional sections are omitted when empty)::

    header        options used to produce the report
    fit           names, beta, se, t, stars, r2, r2_adj, sigma2_hat,
                  f_stat, df = [df_model, df_resid], n, k
    diagnostics   names, vif, cn, cn_scaling, corr_det, verdicts{cn, vif,
                  vif_above_4}, var_decomp[]
    augmentation  h, plan{alpha, t_critical_approx, bounds, h_required,
                  selected}, predicted{...}, refit{...}, deviations{...}
    perturbation  pct, trials, seed, noise, h, failed, mean, sd, min, max
    york          m, eigenvalues, cn

Floats are written with Python's shortest round-trip repr; NaN and
infinities become ``null``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .augmentation import AugmentationPlan, IdentityCheck
from .diagnostics import DiagnosticsReport
from .perturbation import PerturbationSummary
from .regression import FitResult, SignificanceConfig, stars_from_t

FORMATS = ("json", "markdown")


@dataclass
class Report:
    fit: FitResult | None = None
    diagnostics: DiagnosticsReport | None = None
    augmentation: IdentityCheck | None = None
    plan: AugmentationPlan | None = None
    perturbation: PerturbationSummary | None = None
    perturbation_h: int = 1
    york: dict | None = None
    header: dict = field(default_factory=dict)
    significance: SignificanceConfig = field(default_factory=SignificanceConfig)


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _nums(a):
    return None if a is None else [_num(v) for v in np.asarray(a, dtype=float).ravel()]


def _fit_section(stats, names, cfg, df_model, df_resid) -> dict:
    return {
        "names": list(names),
        "beta": _nums(stats.beta),
        "se": _nums(stats.se),
        "t": _nums(stats.t_stats),
        "stars": stars_from_t(stats.t_stats, df_resid, cfg),
        "r2": _num(stats.r2),
        "r2_adj": _num(stats.r2_adj),
        "sigma2_hat": _num(stats.sigma2_hat),
        "f_stat": _num(stats.f_stat),
        "df": [df_model, df_resid],
    }


def report_to_dict(report: Report) -> dict:
    out: dict = {}
    if report.header:
        out["header"] = dict(report.header)
    cfg = report.significance
    fit = report.fit
    if fit is not None:
        sec = _fit_section(fit, fit.names, cfg, fit.df_model, fit.df_resid)
        sec.update(n=fit.n, k=fit.k)
        out["fit"] = sec
    d = report.diagnostics
    if d is not None:
        verdict = d.verdict
        out["diagnostics"] = {
            "names": list(d.names),
            "vif": _nums(d.vifs),
            "cn": _num(d.cn),
            "cn_scaling": d.cn_scaling,
            "corr_det": _num(d.corr_det),
            "verdicts": {
                "cn": verdict.cn,
                "vif": list(verdict.vif),
                "vif_above_4": list(verdict.vif_above_4),
            }
            if verdict is not None
            else {},
            "var_decomp": [
                {
                    "name": v.name,
                    "sigma2_hat": _num(v.sigma2_hat),
                    "n": v.n,
                    "var_Xj": _num(v.var_Xj),
                    "one_minus_R2j": _num(v.one_minus_R2j),
                    "variance": _num(v.variance),
                }
                for v in d.var_decomp
            ],
        }
    a = report.augmentation
    if a is not None:
        p = a.predicted
        sec = {
            "h": a.h,
            "predicted": _fit_section(p, fit.names if fit else (), cfg, a.refit.df_model, p.df_resid),
            "refit": _fit_section(a.refit, a.refit.names, cfg, a.refit.df_model, a.refit.df_resid),
            "deviations": {key: _num(v) for key, v in a.deviations.items()},
        }
        if report.plan is not None:
            plan = report.plan
            sec["plan"] = {
                "alpha": plan.alpha,
                "t_critical_approx": plan.t_critical_approx,
                "bounds": _nums(plan.bounds),
                "h_required": plan.h_required,
                "selected": list(plan.selected),
                "exact": plan.exact,
            }
        out["augmentation"] = sec
    s = report.perturbation
    if s is not None:
        c = s.config
        out["perturbation"] = {
            "pct": c.pct,
            "trials": c.trials,
            "seed": c.seed,
            "noise": c.noise,
            "h": report.perturbation_h,
            "failed": s.failed,
            "mean": _num(s.mean),
            "sd": _num(s.sd),
            "min": _num(s.min),
            "max": _num(s.max),
        }
    if report.york is not None:
        out["york"] = {
            "m": report.york["m"],
            "eigenvalues": _nums(report.york["eigenvalues"]),
            "cn": _num(report.york["cn"]),
        }
    return out


def _g(x, digits=6) -> str:
    if x is None:
        return "n/a"
    return f"{x:.{digits}g}"


def _model_table(models: list[tuple[str, dict]]) -> list[str]:
    names = models[0][1]["names"]
    lines = ["| Variable | " + " | ".join(title for title, _ in models) + " |"]
    lines.append("|---" * (len(models) + 1) + "|")
    for i, name in enumerate(names):
        cells = [f"{_g(sec['beta'][i])}{sec['stars'][i]}" for _, sec in models]
        lines.append(f"| {name} | " + " | ".join(cells) + " |")
        cells = [f"({_g(sec['se'][i])})" for _, sec in models]
        lines.append("|  | " + " | ".join(cells) + " |")
    lines.append("| R² | " + " | ".join(_g(sec["r2"]) for _, sec in models) + " |")
    lines.append("| σ̂² | " + " | ".join(_g(sec["sigma2_hat"]) for _, sec in models) + " |")
    lines.append(
        "| F | " + " | ".join(f"{_g(sec['f_stat'])} (F_{{{sec['df'][0]},{sec['df'][1]}}})" for _, sec in models) + " |"
    )
    return lines


def to_markdown(d: dict) -> str:
    lines: list[str] = []
    if "header" in d:
        lines.append("# Collinearity report")
        lines.append("")
        for key, value in d["header"].items():
            lines.append(f"- {key}: {value}")
        lines.append("")
    models = []
    if "fit" in d:
        models.append(("Model 1", d["fit"]))
    if "augmentation" in d:
        h = d["augmentation"]["h"]
        models.append((f"Replicated h={h} (predicted)", d["augmentation"]["predicted"]))
        models.append((f"Replicated h={h} (refit)", d["augmentation"]["refit"]))
    if models:
        lines.append("## Estimates")
        lines.append("")
        lines.extend(_model_table(models))
        lines.append("")
        lines.append("Standard errors in parentheses. *** 99%, ** 95%, * 90% confidence.")
        lines.append("")
    if "diagnostics" in d:
        diag = d["diagnostics"]
        lines.append("## Diagnostics")
        lines.append("")
        v = diag.get("verdicts", {})
        lines.append(f"- condition number ({diag['cn_scaling']}): {_g(diag['cn'], 7)} [{v.get('cn', '')}]")
        if diag["vif"] is not None:
            for name, value, label in zip(diag["names"], diag["vif"], v.get("vif", [])):
                lines.append(f"- VIF {name}: {_g(value, 8)} [{label}]")
        if diag["corr_det"] is not None:
            lines.append(f"- correlation determinant: {_g(diag['corr_det'], 7)}")
        lines.append("")
    if "augmentation" in d:
        aug = d["augmentation"]
        lines.append("## Replication")
        lines.append("")
        if "plan" in aug:
            plan = aug["plan"]
            bounds = ", ".join(_g(b) for b in plan["bounds"])
            lines.append(f"- bounds (critical {plan['t_critical_approx']:.6g}): {bounds}")
            lines.append(f"- copies required: {plan['h_required']}")
        lines.append(f"- copies used: {aug['h']}")
        worst = max((v for v in aug["deviations"].values() if v is not None), default=0.0)
        lines.append(f"- largest deviation between closed form and refit: {worst:.3g}")
        lines.append("")
    if "perturbation" in d:
        p = d["perturbation"]
        lines.append("## Perturbation")
        lines.append("")
        lines.append(
            f"- {p['trials']} trials at {100 * p['pct']:g}% ({p['noise']} noise, seed {p['seed']}, h={p['h']}), "
            f"{p['failed']} failed"
        )
        lines.append(
            f"- coefficient shift: mean {_g(p['mean'], 7)}%, sd {_g(p['sd'], 7)}%, "
            f"range [{_g(p['min'], 7)}%, {_g(p['max'], 7)}%]"
        )
        lines.append("")
    if "york" in d:
        y = d["york"]
        lines.append(f"## York design (m={y['m']})")
        lines.append("")
        lines.append("- eigenvalues: " + ", ".join(f"{e:.7f}" for e in y["eigenvalues"]))
        lines.append(f"- condition number: {y['cn']:.5f}")
        lines.append("")
    return "\n".join(lines)


def export_report(report: Report | dict, format: str = "json") -> bytes:
    if format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {format!r}")
    d = report if isinstance(report, dict) else report_to_dict(report)
    if format == "json":
        return (json.dumps(d, indent=2, allow_nan=False) + "\n").encode()
    return to_markdown(d).encode()


def load_report(raw: bytes | str) -> dict:
    return json.loads(raw)
