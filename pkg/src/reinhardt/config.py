"""Declarative YAML configuration for domains and checks.

A config parses to a weight system plus a defining function (or a probe-only
control function) together with check options and smoothness loci.  Field
names are normative; see the README for the reference.  Parse failures raise
ConfigError with a field-addressed diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from .analysis import Locus, ProbeConfig, moduli_function_as_real
from .domain import ReinhardtDomain
from .homog import (
    DefiningFunction,
    InvariantProfile,
    Monomial,
    SegmentIntegral,
    tabulated,
)
from .presets import PRESET_NAMES, get_preset
from .weights import WeightSystem


class ConfigError(ValueError):
    pass


@dataclass
class CheckOptions:
    samples: int = 1000
    seed: int = 0
    s1_samples: int = 10000
    moebius_params: tuple = (0.3, 0.5 + 0.2j, 0.9)


@dataclass
class Build:
    """A parsed configuration ready to run."""

    name: str
    mode: str                 # "reinhardt" | "probe"
    ws: object
    psi: object
    domain: object
    loci: tuple
    probe_function: object
    probe_k: int
    quadrature: bool
    check: CheckOptions

    @property
    def probe_only(self):
        return self.domain is None

    def probe_config(self, k=None, **kw):
        return ProbeConfig(k=k or self.probe_k, loci=self.loci, **kw)


def _need(cfg, key, where):
    if key not in cfg:
        raise ConfigError("%s: missing required field %r" % (where, key))
    return cfg[key]


def _parse_weights(cfg):
    w = _need(cfg, "weights", "config")
    try:
        return WeightSystem(
            int(_need(w, "n", "weights")),
            tuple(_need(w, "group_sizes", "weights")),
            tuple(float(a) for a in _need(w, "alphas", "weights")),
            int(_need(w, "k", "weights")),
        )
    except (TypeError, ValueError) as e:
        raise ConfigError("weights: %s" % e)


def _parse_density(spec, where):
    if spec is None:
        return "one"
    if isinstance(spec, str):
        return spec
    if isinstance(spec, dict) and "file" in spec:
        try:
            data = np.loadtxt(spec["file"])
        except OSError as e:
            raise ConfigError("%s.density.file: %s" % (where, e))
        return tabulated(data[:, 0], data[:, 1])
    raise ConfigError("%s.density: expected builtin name or {file: PATH}" % where)


def _parse_term(t, i, ws):
    where = "terms[%d]" % i
    kind = _need(t, "type", where)
    if kind == "monomial":
        return Monomial(
            float(_need(t, "coeff", where)),
            tuple(float(v) for v in _need(t, "exponents", where)),
        )
    if kind == "segment":
        u = _need(t, "u_range", where)
        return SegmentIntegral(
            float(u[0]), float(u[1]),
            tuple(float(v) for v in _need(t, "s_start", where)),
            tuple(float(v) for v in _need(t, "s_end", where)),
            _parse_density(t.get("density"), where),
            int(t.get("nodes", 32)),
        )
    if kind == "invariant_profile":
        return InvariantProfile(
            tuple(float(v) for v in _need(t, "prefactor", where)),
            tuple(tuple(float(v) for v in q) for q in _need(t, "quotients", where)),
            t.get("profile", "quintic_blend"),
        )
    raise ConfigError("%s.type: unknown term type %r" % (where, kind))


def _parse_s1_profile(spec, ws, where="s1_profile"):
    if spec == "one":
        return lambda arg: np.ones(np.asarray(arg).shape[:-1])
    if isinstance(spec, dict) and "file" in spec:
        try:
            data = np.loadtxt(spec["file"])
        except OSError as e:
            raise ConfigError("%s.file: %s" % (where, e))
        interp = tabulated(data[:, 0], data[:, 1])
        # table is parametrized by the last modulus coordinate on S_1
        return lambda arg: interp(np.asarray(arg)[..., -1])
    raise ConfigError("%s: expected 'one' or {file: PATH}" % where)


def _parse_loci(cfg):
    loci = []
    for i, l in enumerate(cfg.get("loci", [])):
        where = "loci[%d]" % i
        loci.append(
            Locus(
                str(_need(l, "name", where)),
                tuple(float(v) for v in _need(l, "base", where)),
                tuple(float(v) for v in _need(l, "normal", where)),
            )
        )
    return tuple(loci)


def _parse_check(cfg):
    c = cfg.get("check", {}) or {}
    opts = CheckOptions()
    if "samples" in c:
        opts.samples = int(c["samples"])
    if "seed" in c:
        opts.seed = int(c["seed"])
    if "s1_samples" in c:
        opts.s1_samples = int(c["s1_samples"])
    if "moebius_params" in c:
        opts.moebius_params = tuple(complex(str(a)) for a in c["moebius_params"])
    return opts


def parse_config(cfg):
    """Build domain, checks, and loci from a configuration mapping."""
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a mapping")
    if "preset" in cfg:
        preset = get_preset(
            cfg["preset"], ellipsoid_alpha=cfg.get("ellipsoid_alpha", 4.0)
        )
        build = Build(
            preset.name, "probe" if preset.probe_only else "reinhardt",
            preset.ws, preset.psi, preset.domain, preset.loci,
            preset.probe_function, preset.probe_k, preset.quadrature,
            _parse_check(cfg),
        )
        if cfg.get("loci"):
            build.loci = _parse_loci(cfg)
        return build
    if cfg.get("control"):
        preset = get_preset(str(cfg["control"]))
        loci = _parse_loci(cfg) or preset.loci
        return Build(
            preset.name, "probe", None, None, None, loci,
            preset.probe_function, int(cfg.get("probe_k", preset.probe_k)),
            False, _parse_check(cfg),
        )
    ws = _parse_weights(cfg)
    mode = cfg.get("mode", "reinhardt")
    if mode != "reinhardt":
        raise ConfigError("mode: only 'reinhardt' configs are file-definable")
    terms = [
        _parse_term(t, i, ws) for i, t in enumerate(cfg.get("terms", []) or [])
    ]
    s1 = cfg.get("s1_profile")
    try:
        if s1 is not None:
            if terms:
                raise ConfigError("s1_profile and terms are mutually exclusive")
            psi = DefiningFunction(ws, s1_profile=_parse_s1_profile(s1, ws))
        else:
            psi = DefiningFunction(ws, terms)
    except ValueError as e:
        raise ConfigError("terms: %s" % e)
    loci = _parse_loci(cfg)
    if not loci:
        loci = _default_loci(ws)
    n_tail = ws.n - ws.group_sizes[0]
    probe_f = moduli_function_as_real(psi, n_tail) if all(
        g == 1 for g in ws.group_sizes[1:]
    ) else None
    return Build(
        str(cfg.get("name", "config")), "reinhardt", ws, psi,
        ReinhardtDomain(ws, psi), loci, probe_f,
        int(cfg.get("probe_k", min(ws.k, 2))),
        any(isinstance(t, SegmentIntegral) for t in terms),
        _parse_check(cfg),
    )


def _default_loci(ws):
    """Coordinate-axis loci (scalar tail groups only)."""
    if any(g != 1 for g in ws.group_sizes[1:]):
        return ()
    d = ws.d
    loci = []
    for j in range(d):
        base = [0.0] * (2 * d)
        for i in range(d):
            if i != j:
                base[2 * i] = 0.7
        normal = [0.0] * (2 * d)
        normal[2 * j] = 1.0
        loci.append(Locus("z%d=0" % (j + 2), tuple(base), tuple(normal)))
    return tuple(loci)


def load_config(path):
    """Read and parse a YAML config file."""
    try:
        with open(path) as fh:
            cfg = yaml.safe_load(fh)
    except OSError as e:
        raise ConfigError("cannot read config: %s" % e)
    except yaml.YAMLError as e:
        raise ConfigError("YAML parse error: %s" % e)
    return parse_config(cfg)


def preset_config(name):
    """A config mapping equivalent to a built-in preset (round-trippable)."""
    cfg = _preset_config_body(name)
    if "control" in cfg:
        return cfg
    preset = get_preset(name)
    cfg["loci"] = [
        {"name": l.name, "base": list(l.base), "normal": list(l.normal)}
        for l in preset.loci
    ]
    cfg["probe_k"] = preset.probe_k
    return cfg


def _preset_config_body(name):
    if name in ("corner", "smooth"):
        return {"control": name}
    if name not in PRESET_NAMES:
        raise ConfigError("unknown preset %r" % name)
    if name == "ball":
        return {
            "name": "ball",
            "weights": {"n": 3, "group_sizes": [1, 1, 1], "alphas": [2, 2], "k": 1},
            "terms": [],
        }
    if name == "ellipsoid":
        return {
            "name": "ellipsoid",
            "weights": {"n": 2, "group_sizes": [1, 1], "alphas": [4], "k": 1},
            "terms": [],
        }
    if name == "theorem1-poly":
        return {
            "name": "theorem1-poly",
            "weights": {"n": 3, "group_sizes": [1, 1, 1], "alphas": [8, 8], "k": 2},
            "terms": [
                {"type": "monomial", "coeff": 0.5, "exponents": [2, 6]},
                {"type": "monomial", "coeff": 1.0, "exponents": [4, 4]},
                {"type": "monomial", "coeff": 0.5, "exponents": [6, 2]},
            ],
        }
    if name == "example5":
        return {
            "name": "example5",
            "weights": {"n": 3, "group_sizes": [1, 1, 1], "alphas": [9, 9], "k": 2},
            "terms": [
                {
                    "type": "segment",
                    "u_range": [4, 5],
                    "s_start": [5, 4],
                    "s_end": [4, 5],
                    "density": "one",
                    "nodes": 32,
                }
            ],
        }
    if name == "example6":
        return {
            "name": "example6",
            "weights": {"n": 3, "group_sizes": [1, 1, 1], "alphas": [8, 8], "k": 2},
            "terms": [
                {
                    "type": "invariant_profile",
                    "prefactor": [8, 0],
                    "quotients": [[-2, 2]],
                    "profile": "quintic_blend",
                }
            ],
        }
    raise ConfigError("unknown preset %r" % name)
