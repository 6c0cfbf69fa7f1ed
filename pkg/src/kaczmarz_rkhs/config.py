"""Measure specs and suite settings read from YAML or JSON.

A measure spec is a mapping with ``type`` in {atomic, ifs, mixture}:

    type: atomic
    atoms: [[0.0, 0.5], [0.5, 0.5]]

    type: ifs
    scale: 3
    digits: [0, 2]
    weights: [0.5, 0.5]      # optional

    type: mixture
    terms: [[0.5, mu3], [0.5, {type: atomic, atoms: [[0.5, 1.0]]}]]

A term's measure may be the name of a builtin or of another entry in the
same config.  Errors carry the field path and, for YAML input, the line.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import yaml

from .errors import ConfigError, InvalidMeasure
from .measures import IFS, Atomic, MeasureSpec, Mixture, cantor, delta

DEFAULT_SEED = 0x5EED


def builtin_measures() -> dict[str, MeasureSpec]:
    mu3 = cantor(3)
    return {
        "delta0": delta(0.0),
        "two-atom": Atomic(((0.0, 0.5), (0.5, 0.5))),
        "mu3": mu3,
        "mu4": cantor(4),
        "mixture": Mixture(((0.5, mu3), (0.5, delta(0.5)))),
    }


def _line(lines: Mapping | None, path: tuple) -> int | None:
    if not lines:
        return None
    while path:
        if path in lines:
            return lines[path]
        path = path[:-1]
    return lines.get((), None)


def _fail(msg: str, path: tuple, lines) -> ConfigError:
    name = ".".join(str(p) for p in path) or None
    return ConfigError(msg, field=name, line=_line(lines, path))


def _number(value, path, lines, kind=float):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(f"expected a number, got {value!r}", path, lines)
    if kind is int:
        if isinstance(value, float) and not value.is_integer():
            raise _fail(f"expected an integer, got {value!r}", path, lines)
        return int(value)
    if not math.isfinite(value):
        raise _fail("expected a finite number", path, lines)
    return float(value)


def parse_spec(
    node: Any,
    path: tuple = (),
    lines: Mapping | None = None,
    named: Mapping[str, MeasureSpec] | None = None,
) -> MeasureSpec:
    """Build a MeasureSpec from a parsed mapping (or a builtin name)."""
    named = {**builtin_measures(), **(named or {})}
    if isinstance(node, str):
        if node not in named:
            raise _fail(f"unknown measure {node!r}", path, lines)
        return named[node]
    if not isinstance(node, Mapping):
        raise _fail("measure spec must be a mapping or a name", path, lines)
    kind = node.get("type")
    try:
        if kind == "atomic":
            raw = node.get("atoms")
            if not isinstance(raw, list) or not raw:
                raise _fail("atoms must be a non-empty list of [x, w]", path + ("atoms",), lines)
            pairs = []
            for i, item in enumerate(raw):
                p = path + ("atoms", i)
                if not isinstance(item, (list, tuple)) or len(item) != 2:
                    raise _fail("each atom is a pair [x, w]", p, lines)
                pairs.append((_number(item[0], p, lines), _number(item[1], p, lines)))
            return Atomic(tuple(pairs))
        if kind == "ifs":
            scale = _number(node.get("scale"), path + ("scale",), lines, int)
            digits = node.get("digits")
            if not isinstance(digits, list):
                raise _fail("digits must be a list of integers", path + ("digits",), lines)
            digits = tuple(_number(d, path + ("digits", i), lines, int) for i, d in enumerate(digits))
            weights = node.get("weights")
            if weights is not None:
                if not isinstance(weights, list):
                    raise _fail("weights must be a list", path + ("weights",), lines)
                weights = tuple(_number(w, path + ("weights", i), lines) for i, w in enumerate(weights))
            return IFS(scale, digits, weights)
        if kind == "mixture":
            raw = node.get("terms")
            if not isinstance(raw, list) or not raw:
                raise _fail("terms must be a non-empty list", path + ("terms",), lines)
            terms = []
            for i, item in enumerate(raw):
                p = path + ("terms", i)
                if isinstance(item, Mapping) and "coefficient" in item:
                    coef, sub, sp = item["coefficient"], item.get("measure"), p + ("measure",)
                elif isinstance(item, (list, tuple)) and len(item) == 2:
                    coef, sub, sp = item[0], item[1], p + (1,)
                else:
                    raise _fail("each term is [eta, measure] or {coefficient, measure}", p, lines)
                terms.append((_number(coef, p, lines), parse_spec(sub, sp, lines, named)))
            return Mixture(tuple(terms))
    except InvalidMeasure as exc:
        raise _fail(str(exc), path, lines) from exc
    raise _fail(f"type must be atomic, ifs or mixture, got {kind!r}", path + ("type",), lines)


# --------------------------------------------------------------------------
# YAML with line numbers


def _construct(node, path, lines):
    lines[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            key = yaml.safe_load(yaml.serialize(k)) if not isinstance(k, yaml.ScalarNode) else k.value
            out[key] = _construct(v, path + (key,), lines)
        return out
    if isinstance(node, yaml.SequenceNode):
        return [_construct(v, path + (i,), lines) for i, v in enumerate(node.value)]
    return yaml.safe_load(yaml.serialize(node))


def load_tree(text: str) -> tuple[Any, dict]:
    """Parse YAML (a superset of JSON); returns the data and a path -> line map."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"cannot parse config: {getattr(exc, 'problem', exc)}",
                          line=mark.line + 1 if mark else None) from exc
    if node is None:
        return {}, {}
    lines: dict = {}
    return _construct(node, (), lines), lines


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_spec(path: str | Path) -> MeasureSpec:
    data, lines = load_tree(_read(path))
    return parse_spec(data, (), lines)


# --------------------------------------------------------------------------
# suite configuration

SUITES = (
    "kaczmarz-two-path",
    "kernel-equality",
    "reproducing",
    "parseval",
    "herglotz-roundtrip",
    "expsum",
    "clark",
    "weighted-dual",
    "wold",
    "psd",
    "spectrality",
)


@dataclass
class SuiteConfig:
    """Settings for :func:`kaczmarz_rkhs.suites.run_suite`.

    ``order`` and ``depth`` left as None let each suite use the sizes its
    criterion names.  ``measures`` extends the builtin test set.
    """

    suite: str = "all"
    measures: dict = field(default_factory=builtin_measures)
    order: int | None = None
    depth: int | None = None
    radii: tuple | None = None
    tolerances: dict = field(default_factory=dict)
    tol_scale: float = 1.0
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}", field="suite")
        if self.order is not None and (not isinstance(self.order, int) or self.order < 8):
            raise ConfigError("order must be an integer >= 8", field="order")
        if self.depth is not None and (not isinstance(self.depth, int) or self.depth < 1):
            raise ConfigError("depth must be an integer >= 1", field="depth")
        if not (self.tol_scale > 0 and math.isfinite(self.tol_scale)):
            raise ConfigError("tol-scale must be positive", field="tol_scale")
        for k, v in self.tolerances.items():
            if not (isinstance(v, (int, float)) and v > 0):
                raise ConfigError("tolerances must be positive", field=f"tolerances.{k}")
        if self.radii is not None:
            r = list(self.radii)
            if not r or any(not (0 < x < 1) for x in r) or any(b <= a for a, b in zip(r, r[1:])):
                raise ConfigError("radii must increase strictly inside (0, 1)", field="radii")
            self.radii = tuple(float(x) for x in r)
        if not isinstance(self.seed, int) or self.seed < 0 or self.seed >= 2**64:
            raise ConfigError("seed must be an integer in [0, 2^64)", field="seed")

    @property
    def suites(self) -> tuple:
        return SUITES if self.suite == "all" else (self.suite,)


_CONFIG_KEYS = {"suite", "measures", "order", "depth", "radii", "tolerances", "tol_scale", "seed"}


def parse_config(data: Any, lines: Mapping | None = None, **overrides) -> SuiteConfig:
    """Build a SuiteConfig from a parsed tree; keyword overrides win over the file."""
    if data is None:
        data = {}
    if not isinstance(data, Mapping):
        raise ConfigError("config must be a mapping", line=_line(lines, ()))
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        key = sorted(map(str, unknown))[0]
        raise _fail(f"unknown key {key!r}", (key,), lines)
    measures = builtin_measures()
    raw_measures = data.get("measures", {}) or {}
    if not isinstance(raw_measures, Mapping):
        raise _fail("measures must be a mapping of name -> spec", ("measures",), lines)
    for name, node in raw_measures.items():
        measures[str(name)] = parse_spec(node, ("measures", name), lines, measures)
    kwargs = {k: data[k] for k in ("suite", "order", "depth", "radii", "tolerances", "tol_scale", "seed") if k in data}
    kwargs.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return SuiteConfig(measures=measures, **kwargs)
    except ConfigError as exc:
        if exc.field and lines:
            raise _fail(exc.message, tuple(exc.field.split(".")), lines) from exc
        raise
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path, **overrides) -> SuiteConfig:
    data, lines = load_tree(_read(path))
    return parse_config(data, lines, **overrides)
