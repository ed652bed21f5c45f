"""Grid classification of quaternionic functions into nested classes.

Per grid node the probe takes one central (or Richardson) stencil along
each of t, x, y, z, r, alpha, beta and derives every residual from those
shared samples:

* Class I   : |d/dt f + iota d/dr f|
* Class II  : |fueter_left f + 2 v / r|
* Class III : max of |du/da|, |du/db|, |dv/da|, |dv/db|
              (verdict additionally requires the Class I pass)
* regular   : |fueter_left f|

A class passes when at least 99.9% of nodes sit below the pointwise
tolerance tol_abs + tol_rel * scale (scale = max |f| over the node's
stencil samples) and no node exceeds 100x its tolerance.  Verdicts must
respect the inclusion chain Class III < Class II < Class I; the report
carries an explicit consistency flag.

The left/right agreement check (centrality) and the Jacobian-determinant
factorization check for Class II functions live here too.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .diffops import DiffConfig, POLE_SIN_BETA_FLOOR
from .function_model import DEFAULT_GRID, QFunction, SampleGrid
from .quaternion_core import (
    DomainError,
    Quaternion,
    SphericalPoint,
    iota,
)

PASS_FRACTION = 0.999
HARD_FAIL_FACTOR = 100.0

I_UNIT = Quaternion(0, 1, 0, 0)
J_UNIT = Quaternion(0, 0, 1, 0)
K_UNIT = Quaternion(0, 0, 0, 1)


@dataclass(frozen=True)
class ClassStats:
    """Aggregate residuals and verdict for one class on one grid."""

    max: Optional[float]
    mean: Optional[float]
    verdict: str  # pass | fail | not-CE | singular

    def to_dict(self) -> dict:
        return {"max": self.max, "mean": self.mean, "verdict": self.verdict}


@dataclass(frozen=True)
class CentralityStats:
    """Left/right Fueter agreement on one grid."""

    max: Optional[float]
    mean: Optional[float]
    verdict: str  # central | not-central | singular

    def to_dict(self) -> dict:
        return {"max": self.max, "mean": self.mean, "verdict": self.verdict}


@dataclass(frozen=True)
class ClassificationReport:
    function: str
    grid: SampleGrid
    config: DiffConfig
    class_I: ClassStats
    class_II: ClassStats
    class_III: ClassStats
    regular: ClassStats
    centrality: CentralityStats
    inclusion_consistent: bool

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "grid": self.grid.to_dict(),
            "config": {"h": self.config.h, "scheme": self.config.scheme,
                       "tol_abs": self.config.tol_abs, "tol_rel": self.config.tol_rel},
            "class_I": self.class_I.to_dict(),
            "class_II": self.class_II.to_dict(),
            "class_III": self.class_III.to_dict(),
            "regular": self.regular.to_dict(),
            "centrality": self.centrality.to_dict(),
            "inclusion_consistent": self.inclusion_consistent,
        }

    def passes(self, key: str) -> bool:
        stats = getattr(self, key)
        return stats.verdict == "pass"


def resolve_threads(threads: Optional[int] = None) -> int:
    """Worker count for grid sweeps; FUETERLAB_THREADS acts as a hard cap."""
    cap = os.environ.get("FUETERLAB_THREADS")
    cap = int(cap) if cap else None
    if threads is None:
        threads = cap if cap is not None else 1
    if cap is not None:
        threads = min(threads, cap)
    return max(1, threads)


def _offsets(cfg: DiffConfig) -> tuple:
    if cfg.scheme == "richardson":
        return (cfg.h, -cfg.h, cfg.h / 2.0, -cfg.h / 2.0)
    return (cfg.h, -cfg.h)


def _diff(samples: dict, cfg: DiffConfig, extract):
    """Finish a stencil: samples maps offset -> raw value."""
    h = cfg.h
    d1 = (extract(h, samples[h]) - extract(-h, samples[-h])) / (2.0 * h)
    if cfg.scheme == "central":
        return d1
    d2 = (extract(h / 2.0, samples[h / 2.0]) - extract(-h / 2.0, samples[-h / 2.0])) / h
    return (d2 * 4.0 - d1) / 3.0


class _NodeProbe:
    """Shared stencil samples and derived residuals at one grid node."""

    def __init__(self, f: QFunction, s: SphericalPoint, cfg: DiffConfig):
        self.s = s
        self.cfg = cfg
        p = s.to_quaternion()
        self.center = f.at_spherical(s)
        self.scale = abs(self.center)

        def cart(axis):
            out = {}
            for d in _offsets(cfg):
                q = Quaternion(p.t + (d if axis == 0 else 0.0),
                               p.x + (d if axis == 1 else 0.0),
                               p.y + (d if axis == 2 else 0.0),
                               p.z + (d if axis == 3 else 0.0))
                val = f(q)
                self.scale = max(self.scale, abs(val))
                out[d] = val
            return out

        def chart(axis):
            out = {}
            for d in _offsets(cfg):
                val = f.at_spherical(replace(s, **{axis: getattr(s, axis) + d}))
                self.scale = max(self.scale, abs(val))
                out[d] = val
            return out

        take = lambda d, v: v
        self.d_t = _diff(cart(0), cfg, take)
        self.d_x = _diff(cart(1), cfg, take)
        self.d_y = _diff(cart(2), cfg, take)
        self.d_z = _diff(cart(3), cfg, take)
        self.d_r = _diff(chart("r"), cfg, take)

        alpha_samples = chart("alpha")
        beta_samples = chart("beta")
        self.d_alpha = _diff(alpha_samples, cfg, take)
        self.d_beta = _diff(beta_samples, cfg, take)

        # scalar u, v stencils reuse the same chart samples; v must be
        # extracted against the iota of the shifted angles
        def u_of(_d, val):
            return val.t

        def v_alpha(d, val):
            io = iota(s.alpha + d, s.beta)
            return val.x * io.x + val.y * io.y + val.z * io.z

        def v_beta(d, val):
            io = iota(s.alpha, s.beta + d)
            return val.x * io.x + val.y * io.y + val.z * io.z

        self.du_da = _diff(alpha_samples, cfg, u_of)
        self.du_db = _diff(beta_samples, cfg, u_of)
        self.dv_da = _diff(alpha_samples, cfg, v_alpha)
        self.dv_db = _diff(beta_samples, cfg, v_beta)

        io = iota(s.alpha, s.beta)
        self.u = self.center.t
        self.v = (self.center.x * io.x + self.center.y * io.y + self.center.z * io.z)
        self.fueter_left = self.d_t + I_UNIT * self.d_x + J_UNIT * self.d_y + K_UNIT * self.d_z
        self.fueter_right = self.d_t + self.d_x * I_UNIT + self.d_y * J_UNIT + self.d_z * K_UNIT
        self.iota = io

    def residual_class1(self) -> float:
        return abs(self.d_t + self.iota * self.d_r)

    def residual_class2(self) -> float:
        return abs(self.fueter_left + 2.0 * self.v / self.s.r)

    def residual_class3_angular(self) -> float:
        return max(abs(self.du_da), abs(self.du_db), abs(self.dv_da), abs(self.dv_db))

    def residual_regular(self) -> float:
        return abs(self.fueter_left)

    def residual_centrality(self) -> float:
        return abs(self.fueter_left - self.fueter_right)


def _chart_ok(s: SphericalPoint, cfg: DiffConfig) -> bool:
    return (s.r - cfg.h > 0.0 and s.beta - cfg.h > 0.0
            and s.beta + cfg.h < math.pi
            and math.sin(s.beta) > POLE_SIN_BETA_FLOOR)


def _verdict(residuals, tolerances, pass_word="pass", fail_word="fail") -> str:
    n = len(residuals)
    below = sum(1 for r, tol in zip(residuals, tolerances) if r <= tol)
    hard = all(r <= HARD_FAIL_FACTOR * tol for r, tol in zip(residuals, tolerances))
    return pass_word if (below >= PASS_FRACTION * n and hard) else fail_word


def _stats(residuals, tolerances, pass_word="pass", fail_word="fail"):
    if not residuals:
        return None, None, "singular"
    return (max(residuals), sum(residuals) / len(residuals),
            _verdict(residuals, tolerances, pass_word, fail_word))


def classify(f: QFunction, grid: Optional[SampleGrid] = None,
             cfg: DiffConfig = DiffConfig(),
             threads: Optional[int] = None) -> ClassificationReport:
    """Classify f on the grid and return the full report.

    Raw-kind functions get "not-CE" verdicts for Class II and Class III,
    whose residuals need the u/v split.  Nodes where evaluation leaves the
    function's domain mark the report "singular".
    """
    grid = grid or f.domain or DEFAULT_GRID
    points = [s for s in grid.points() if _chart_ok(s, cfg)]
    n_workers = resolve_threads(threads)

    def probe(s: SphericalPoint):
        try:
            return _NodeProbe(f, s, cfg)
        except DomainError:
            return None

    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            probes = list(pool.map(probe, points))
    else:
        probes = [probe(s) for s in points]

    singular = any(pr is None for pr in probes) or len(probes) < grid.size
    probes = [pr for pr in probes if pr is not None]

    tolerances = [cfg.point_tolerance(pr.scale) for pr in probes]

    def build(values, verdict_override=None):
        mx, mean, verdict = _stats(values, tolerances)
        if singular:
            verdict = "singular"
        if verdict_override is not None:
            verdict = verdict_override
        return ClassStats(mx, mean, verdict)

    res1 = [pr.residual_class1() for pr in probes]
    class_I = build(res1)
    regular = build([pr.residual_regular() for pr in probes])

    if f.is_ce:
        class_II = build([pr.residual_class2() for pr in probes])
        angular = build([pr.residual_class3_angular() for pr in probes])
        class3_verdict = angular.verdict
        if class3_verdict == "pass" and class_I.verdict != "pass":
            class3_verdict = "fail"
        class_III = ClassStats(angular.max, angular.mean, class3_verdict)
    else:
        class_II = ClassStats(None, None, "not-CE")
        class_III = ClassStats(None, None, "not-CE")

    cent = [pr.residual_centrality() for pr in probes]
    cmax, cmean, cverdict = _stats(cent, tolerances, "central", "not-central")
    if singular:
        cverdict = "singular"
    centrality = CentralityStats(cmax, cmean, cverdict)

    ok = True
    if class_III.verdict == "pass" and class_II.verdict == "fail":
        ok = False
    if class_II.verdict == "pass" and class_I.verdict == "fail":
        ok = False

    return ClassificationReport(
        function=f.name, grid=grid, config=cfg,
        class_I=class_I, class_II=class_II, class_III=class_III,
        regular=regular, centrality=centrality, inclusion_consistent=ok)


def centrality_check(f: QFunction, grid: Optional[SampleGrid] = None,
                     cfg: DiffConfig = DiffConfig(),
                     threads: Optional[int] = None) -> CentralityStats:
    """Left/right Fueter agreement on the grid (central iff Class III)."""
    return classify(f, grid, cfg, threads).centrality


@dataclass(frozen=True)
class JacobianResult:
    """Numeric 4x4 Jacobian determinant vs the Class II factorization.

    The factorization det = ((du/dt)^2 + (dv/dt)^2) * v^2 / r^2 only holds
    for Class II inputs; advisory=True flags a comparison made without that
    guarantee.
    """

    det_numeric: float
    det_formula: float
    advisory: bool

    def __iter__(self):
        return iter((self.det_numeric, self.det_formula))


def jacobian_check(f: QFunction, p: Quaternion, cfg: DiffConfig = DiffConfig()) -> JacobianResult:
    """Compare the finite-difference Jacobian determinant of f: R^4 -> R^4
    against the scalar factorization available for Class II functions."""
    r = p.vector_norm()
    if r == 0.0:
        raise DomainError("Jacobian factorization undefined on the real axis")

    jac = np.empty((4, 4))
    for axis in range(4):
        def sample(delta):
            q = Quaternion(p.t + (delta if axis == 0 else 0.0),
                           p.x + (delta if axis == 1 else 0.0),
                           p.y + (delta if axis == 2 else 0.0),
                           p.z + (delta if axis == 3 else 0.0))
            return f(q)

        h = cfg.h
        d1 = (sample(h) - sample(-h)) / (2.0 * h)
        if cfg.scheme == "richardson":
            d2 = (sample(h / 2.0) - sample(-h / 2.0)) / h
            d1 = (d2 * 4.0 - d1) / 3.0
        jac[:, axis] = (d1.t, d1.x, d1.y, d1.z)
    det_numeric = float(np.linalg.det(jac))

    io_vec = (p.x / r, p.y / r, p.z / r)

    def uv(delta):
        val = f(Quaternion(p.t + delta, p.x, p.y, p.z))
        return (val.t, val.x * io_vec[0] + val.y * io_vec[1] + val.z * io_vec[2])

    h = cfg.h
    up, vp = uv(h)
    um, vm = uv(-h)
    du_dt = (up - um) / (2.0 * h)
    dv_dt = (vp - vm) / (2.0 * h)
    _, v = uv(0.0)
    det_formula = (du_dt ** 2 + dv_dt ** 2) * v * v / (r * r)

    advisory = not (f.classes or {}).get("class_II", False)
    return JacobianResult(det_numeric, det_formula, advisory)
