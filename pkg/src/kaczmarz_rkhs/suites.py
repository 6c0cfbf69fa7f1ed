"""Named verification suites and the report they produce.

Each suite returns a list of :class:`CheckRecord`.  A record compares a
measured ``error`` with a ``bound``; most checks pass when ``error <
bound``, a few (coverage fractions, contrast witnesses) when ``error >
bound``.  Random points come from a PCG64 generator seeded with
``(seed, suite index)`` so a suite gives the same numbers whether it runs
alone or inside ``all``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .clark import clark_family, expsum_sides, verify_affine, verify_expsum
from .config import SUITES, SuiteConfig
from .duals import (
    analysis_energy,
    dual_kernel,
    frame_bounds_empirical,
    mixture_dual,
    reconstruction_residuals,
    shift_identity,
    weighted_dual,
)
from .kaczmarz import alpha, expand, g_from_alpha, g_recursive
from .kernels import (
    ClosedDBR,
    GramSeries,
    Layered,
    Projected,
    Szego,
    psd_check,
    reproduce_check,
)
from .measures import Atomic, BoundaryFunction, atoms, cantor, delta, fourier, fourier_table, sample_exponential
from .series import PowerSeries
from .transforms import InnerSeries, inner_from_measure, measure_from_inner
from .wold import wold_layers, wold_reconstruct

COMPARISONS = {"lt": np.less, "le": np.less_equal, "gt": np.greater}


@dataclass
class CheckRecord:
    name: str
    error: float
    bound: float
    passed: bool
    seconds: float = 0.0
    note: str = ""

    def as_row(self) -> dict:
        return {
            "check": self.name,
            "error": self.error,
            "bound": self.bound,
            "pass": self.passed,
            "seconds": self.seconds,
        }


@dataclass
class VerificationReport:
    records: list
    seed: int
    suites: tuple = ()

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list:
        return [r for r in self.records if not r.passed]

    def by_name(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)


class _Recorder:
    """Collects records for one suite, applying tolerance overrides and scaling."""

    def __init__(self, suite: str, cfg: SuiteConfig):
        self.suite = suite
        self.cfg = cfg
        self.records: list[CheckRecord] = []
        self._t = time.perf_counter()

    def tol(self, key: str, default: float) -> float:
        return float(self.cfg.tolerances.get(key, self.cfg.tolerances.get(self.suite, default)))

    def add(self, name: str, error: float, bound: float, cmp: str = "lt", note: str = "", scale: bool = True):
        full = f"{self.suite}/{name}"
        bound = self.tol(full, bound)
        if scale and cmp != "gt":
            bound *= self.cfg.tol_scale
        error = float(error)
        passed = bool(COMPARISONS[cmp](error, bound)) and np.isfinite(error)
        now = time.perf_counter()
        self.records.append(CheckRecord(full, error, bound, passed, now - self._t, note))
        self._t = now


def _order(cfg: SuiteConfig, default: int) -> int:
    return cfg.order if cfg.order is not None else default


def _depth(cfg: SuiteConfig, default: int) -> int:
    return cfg.depth if cfg.depth is not None else default


def disc_samples(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    """Uniform samples from the disc ``|z| <= radius``."""
    r = radius * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))


def kernel_grid(radius: float = 0.7, size: int = 5) -> list[complex]:
    """``size`` points spread over radii up to ``radius`` and several angles."""
    radii = np.linspace(0.0, radius, size)
    return [complex(r * np.exp(2j * np.pi * 0.37 * k)) for k, r in enumerate(radii)]


REPRO_POINTS = (0.0, 0.3, 0.5j, -0.4 + 0.2j, 0.6)
ANCHORS = (0.0, 0.3, 0.5j)


def _anchors_for(b: InnerSeries) -> tuple:
    """Anchors whose span in H(b) is well conditioned; fewer for small spaces."""
    for k in range(len(ANCHORS), 0, -1):
        try:
            Projected(ClosedDBR(b), ANCHORS[:k])
            return ANCHORS[:k]
        except ArithmeticError:
            continue
    return ANCHORS[:1]


# --------------------------------------------------------------------------
# suites, one per acceptance criterion


def suite_two_path(cfg, rng, rec):
    N = _order(cfg, 128)
    for name, spec in cfg.measures.items():
        table = fourier_table(spec, N)
        a = alpha(table)
        diff = np.max(np.abs(g_recursive(table).rows - g_from_alpha(a).rows))
        rec.add(f"{name}/rows", diff, 1e-10)
        rec.add(f"{name}/convolution", a.convolution_residual(table), 1e-12)


def suite_kernel_equality(cfg, rng, rec):
    N = _order(cfg, 512)
    grid = kernel_grid(0.7)
    for name, spec in cfg.measures.items():
        table = fourier_table(spec, N)
        h = GramSeries.canonical(table)
        k = ClosedDBR(inner_from_measure(table))
        diff = max(abs(h(z, w) - k(z, w)) for z in grid for w in grid)
        rec.add(f"{name}/gram-vs-closed", diff, 1e-7)
    h = GramSeries.canonical(fourier_table(Atomic(((0.0, 0.5), (0.5, 0.5))), N))
    exact = max(abs(h(z, w) - (1 + np.conj(z) * w)) for z in grid for w in grid)
    rec.add("two-atom/exact", exact, 1e-12)


def _repro_handles(spec, N, depth):
    table = fourier_table(spec, N)
    b = inner_from_measure(table)
    kb = ClosedDBR(b)
    anchors = _anchors_for(b)
    proj = Projected(kb, anchors)
    layered = Layered(b, (proj, Projected(kb, anchors, complement=True)))
    dual = dual_kernel(mixture_dual(spec, singular_partner(spec, depth), 0.5, N, depth=depth))
    return {"kb": kb, "projected": proj, "layered": layered, "mixture-dual": dual}


def singular_partner(spec, depth: int = 12) -> Atomic:
    """A point mass off the atoms of ``spec`` and off its quadrature nodes.

    Any point mass outside the atoms is singular to ``spec``.
    """
    nodes = atoms(spec, depth).nodes
    for x in (0.5, 0.3, 0.7, 0.1):
        if not np.any(np.abs(nodes - x) < 1e-9):
            return delta(x)
    raise ValueError("no free point found for a singular partner")


def suite_reproducing(cfg, rng, rec):
    depth = _depth(cfg, 12)
    N = _order(cfg, 256)
    for name, spec in cfg.measures.items():
        exact = isinstance(spec, Atomic)
        rule = atoms(spec, depth)
        tol = 1e-10 if exact else 1e-5
        for label, h in _repro_handles(spec, N, depth).items():
            rec.add(f"{name}/{label}", reproduce_check(h, rule, REPRO_POINTS), tol,
                    note="exact rule" if exact else f"depth {depth}")


def suite_parseval(cfg, rng, rec):
    two = Atomic(((0.0, 0.5), (0.5, 0.5)))
    rule = atoms(two)
    table = fourier_table(two, _order(cfg, 16))
    g = g_from_alpha(alpha(table))
    f = BoundaryFunction(rule, rng.standard_normal(2) + 1j * rng.standard_normal(2))
    e = expand(f, g, table)
    rec.add("two-atom/n=1", abs(e.parseval[1] - e.norm_sq), 1e-12)

    N = _order(cfg, 128)
    for eta in (0.25, 0.5, 0.75):
        fam = mixture_dual(delta(0.0), delta(0.5), eta, N)
        f = BoundaryFunction(fam.mu_rule, rng.standard_normal(1) + 1j * rng.standard_normal(1))
        norm_sq = f.norm() ** 2
        energy = analysis_energy(f, fam)[-1]
        rec.add(f"tight/eta={eta}", abs(energy - eta * norm_sq) / norm_sq, 1e-10)

    mu3 = cantor(3)
    N = _order(cfg, 512)
    depth = _depth(cfg, 12)
    table = fourier_table(mu3, N)
    g = g_from_alpha(alpha(table))
    rule = atoms(mu3, depth, anchor="barycenter")
    e = expand(sample_exponential(0, rule), g, table)
    frac = e.parseval[-1] / e.norm_sq
    e1 = expand(sample_exponential(1, rule), g, table)
    note = f"f=e0 fraction {frac:.15f}; f=e1 fraction {e1.parseval[-1] / e1.norm_sq:.6f}"
    rec.add("mu3/monotone", max(0.0, float(np.max(-np.diff(e.parseval)))), 0.0, cmp="le")
    rec.add("mu3/bounded", max(frac - 1.0, 0.0), 1e-10)
    rec.add("mu3/fraction", frac, 0.99, cmp="gt", note=note)


def suite_herglotz(cfg, rng, rec):
    N = _order(cfg, 256)
    for name, spec in cfg.measures.items():
        table = fourier_table(spec, N)
        back = measure_from_inner(inner_from_measure(table))
        rec.add(name, np.max(np.abs(back.values - table.values)), 1e-12)


def suite_expsum(cfg, rng, rec):
    b = inner_from_measure(fourier_table(cantor(3), _order(cfg, 512)))
    samples = disc_samples(rng, 100, 0.7)
    worst = max(verify_expsum(b, n, samples) for n in range(1, 9))
    rec.add("mu3/n<=8", worst, 1e-10)
    z1 = InnerSeries.monomial(1, 8)
    lhs, rhs = expsum_sides(z1(0.5), 2)
    rec.add("rational", max(abs(lhs - 5 / 3), abs(rhs - 5 / 3)), 1e-15)


def suite_clark(cfg, rng, rec):
    K = 64
    order = max(_order(cfg, 256), K)
    cases = {
        "z": InnerSeries.monomial(1, order),
        "z^2": InnerSeries.monomial(2, order),
        "mu3": inner_from_measure(fourier_table(cantor(3), order)),
    }
    for label, b in cases.items():
        for n in range(1, 5):
            rec.add(f"{label}/n={n}", clark_family(b, n).decomposition_residual(K), 1e-10)
        for m, q in ((1, 2), (2, 2)):
            rec.add(f"{label}/affine(m={m},q={q})", verify_affine(b, m, q, K).residual, 1e-9)


def suite_weighted_dual(cfg, rng, rec):
    mu = Atomic(((0.0, 0.75), (0.5, 0.25)))
    lam = Atomic(((0.0, 0.5), (0.5, 0.5)))
    fam = weighted_dual(mu, lam, _order(cfg, 16))
    A, B = fam.scaling.lower, fam.scaling.upper
    lo, hi = frame_bounds_empirical(fam)
    note = f"estimates ({lo:.12g}, {hi:.12g}) vs [{1 / B:.12g}, {1 / A:.12g}]"
    rec.add("frame-lower", max(1 / B - lo, 0.0), 1e-9, note=note)
    rec.add("frame-upper", max(hi - 1 / A, 0.0), 1e-9, note=note)
    f1 = sample_exponential(1, fam.mu_rule)
    rec.add("reconstruction/e1", reconstruction_residuals(f1, fam)[-1], 1e-10)
    s = shift_identity(sample_exponential(0, fam.mu_rule), fam)
    rec.add("backward-shift/e0", s.error, 1e-10, note=f"off-support norm {s.outside_norm:.6g}")


def suite_wold(cfg, rng, rec):
    c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    f = PowerSeries(c)
    w = wold_layers(f, InnerSeries.monomial(2, 5), M=2)
    expected = [c[2 * n : 2 * n + 2] for n in range(3)]
    err = max(np.max(np.abs(p.coeffs[:2] - e)) for p, e in zip(w.layers, expected))
    err = max(err, max(float(np.max(np.abs(p.coeffs[2:]), initial=0.0)) for p in w.layers))
    rec.add("interleave/layers", err, 1e-15, cmp="le")
    rec.add("interleave/reconstruction", np.max(np.abs(wold_reconstruct(w).coeffs - c)), 1e-15, cmp="le")

    N = _order(cfg, 512)
    b = inner_from_measure(fourier_table(cantor(3), N))
    f = PowerSeries(0.4 ** np.arange(N + 1))
    w = wold_layers(f, b, M=8)
    fn2 = f.norm() ** 2
    note = f"truncated b has 1 - sum|b_k|^2 = {w.b_tail_energy():.3e}"
    rec.add("mu3/reconstruction", np.max(np.abs(wold_reconstruct(w).coeffs - f.coeffs)), 1e-10)
    rec.add("mu3/pythagoras", w.pythagoras_gap() / fn2, 1e-10, note=note)
    rec.add("mu3/membership", np.max(w.membership_errors()), 1e-9, note=note)


def _psd_handles(cfg):
    N = _order(cfg, 256)
    handles = {"szego": Szego()}
    for name, spec in cfg.measures.items():
        table = fourier_table(spec, N)
        handles[f"{name}/kb"] = ClosedDBR(inner_from_measure(table))
        handles[f"{name}/gram"] = GramSeries.canonical(table)
    b = inner_from_measure(fourier_table(cantor(3), N))
    kb = ClosedDBR(b)
    proj = Projected(kb, ANCHORS)
    handles["mu3/projected"] = proj
    handles["mu3/layered"] = Layered(b, (proj, Projected(kb, ANCHORS, complement=True)))
    handles["mu3/mixture-dual"] = dual_kernel(mixture_dual(cantor(3), delta(0.5), 0.5, N, depth=_depth(cfg, 12)))
    mu = Atomic(((0.0, 0.75), (0.5, 0.25)))
    lam = Atomic(((0.0, 0.5), (0.5, 0.5)))
    handles["weighted-dual"] = dual_kernel(weighted_dual(mu, lam, N))
    return handles


def suite_psd(cfg, rng, rec):
    points = disc_samples(rng, 20, 0.9)
    for label, h in _psd_handles(cfg).items():
        r = psd_check(h, points)
        rec.add(label, max(-r.min_eigenvalue / max(r.trace, 1e-300), 0.0), 1e-9, cmp="le",
                note=f"min eigenvalue {r.min_eigenvalue:.3e}, trace {r.trace:.3e}")


def quaternary_spectrum(count: int = 16) -> np.ndarray:
    """The ``count`` smallest integers whose base-4 digits are all 0 or 1."""
    k = np.arange(count)
    bits = (k[:, None] >> np.arange(int(count).bit_length())) & 1
    return (bits * 4 ** np.arange(bits.shape[1])).sum(axis=1)


def suite_spectrality(cfg, rng, rec):
    gamma = quaternary_spectrum(16)
    diffs = (gamma[:, None] - gamma[None, :])[~np.eye(gamma.size, dtype=bool)]
    rec.add("mu4/orthogonality", np.max(np.abs(fourier(cantor(4), diffs))), 1e-8)
    contrast = np.max(np.abs(fourier(cantor(3), np.arange(1, 65))))
    rec.add("mu3/contrast", contrast, 0.01, cmp="gt", note=f"max |mu3_hat(k)|, 0<k<=64 = {contrast:.6f}")


SUITE_FUNCS: dict[str, Callable] = {
    "kaczmarz-two-path": suite_two_path,
    "kernel-equality": suite_kernel_equality,
    "reproducing": suite_reproducing,
    "parseval": suite_parseval,
    "herglotz-roundtrip": suite_herglotz,
    "expsum": suite_expsum,
    "clark": suite_clark,
    "weighted-dual": suite_weighted_dual,
    "wold": suite_wold,
    "psd": suite_psd,
    "spectrality": suite_spectrality,
}
assert tuple(SUITE_FUNCS) == SUITES


def run_suite(config: SuiteConfig) -> VerificationReport:
    """Run the selected suites; numerical failures become failing records."""
    records = []
    for name in config.suites:
        rng = np.random.default_rng([config.seed, SUITES.index(name)])
        rec = _Recorder(name, config)
        try:
            SUITE_FUNCS[name](config, rng, rec)
        except (ArithmeticError, np.linalg.LinAlgError) as exc:
            rec.add("error", float("nan"), 0.0, note=f"{type(exc).__name__}: {exc}")
        records.extend(rec.records)
    return VerificationReport(records, config.seed, tuple(config.suites))
