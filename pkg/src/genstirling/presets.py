"""Named parameter triples for the classical Stirling-type families.

Parameterized families take their free parameters as keyword arguments,
e.g. ``preset_lookup("howard", theta=1, lam=1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InputError
from .numeric import exact
from .triple import ParameterTriple


@dataclass(frozen=True)
class Preset:
    name: str
    title: str
    params: tuple
    build: Callable[..., tuple]
    has_dual: bool = True


@dataclass(frozen=True)
class ResolvedPreset:
    name: str
    triple: ParameterTriple
    dual: ParameterTriple | None


def _p(*names):
    return tuple(names)


_CATALOG = [
    Preset("classical-first-kind", "signed Stirling numbers of the first kind", (), lambda: (1, 0, 0)),
    Preset("classical-second-kind", "Stirling numbers of the second kind", (), lambda: (0, 1, 0)),
    Preset("binomial", "binomial coefficients", (), lambda: (0, 0, 1), has_dual=False),
    Preset("lah", "Lah numbers", (), lambda: (-1, 1, 0)),
    Preset("signless", "signless Stirling numbers of the first kind", (), lambda: (-1, 0, 0)),
    Preset("carlitz-degenerate", "Carlitz degenerate Stirling numbers", _p("theta"), lambda theta: (1, theta, 0)),
    Preset("carlitz-weighted", "Carlitz weighted Stirling numbers", _p("lambda"), lambda lam: (1, 0, -lam)),
    Preset("howard", "Howard weighted degenerate Stirling numbers", _p("theta", "lambda"), lambda theta, lam: (1, theta, -lam)),
    Preset("gould-hopper", "Gould-Hopper non-central Lah numbers", _p("a", "b"), lambda a, b: (0, 1, -a + b)),
    Preset(
        "charalambides-koutras",
        "Charalambides-Koutras non-central C numbers",
        _p("s", "a", "b"),
        lambda s, a, b: (1 / s, 1, -a + b),
    ),
    Preset("riordan-noncentral", "Riordan non-central Stirling numbers", _p("a", "b"), lambda a, b: (1, 0, b - a)),
    Preset("tsylova", "Tsylova Stirling numbers", _p("alpha", "beta"), lambda alpha, beta: (alpha, beta, 0)),
    Preset("hsu-shiue", "Hsu-Shiue Stirling numbers", _p("alpha", "beta", "r"), lambda alpha, beta, r: (alpha, beta, r)),
    Preset("todorov", "Todorov Stirling numbers", _p("x"), lambda x: (1, x, 0), has_dual=False),
    Preset("ahuja-enneking", "Ahuja-Enneking associated Lah numbers", _p("r"), lambda r: (-1 / r, 1, 0), has_dual=False),
    Preset("broder-r", "Broder r-Stirling numbers", _p("r"), lambda r: (-1, 0, r), has_dual=False),
]

CATALOG = {p.name: p for p in _CATALOG}


def preset_lookup(name: str, **params) -> ResolvedPreset:
    """Resolve a preset name (plus its free parameters) to a triple and its dual."""
    try:
        preset = CATALOG[name]
    except KeyError:
        raise InputError(f"unknown preset {name!r}; known: {', '.join(CATALOG)}")
    # "lambda" is a keyword; accept "lam" as well
    if "lam" in params and "lambda" not in params:
        params["lambda"] = params.pop("lam")
    missing = [p for p in preset.params if p not in params]
    extra = [p for p in params if p not in preset.params]
    if missing or extra:
        raise InputError(
            f"preset {name!r} takes parameters {list(preset.params)}; missing {missing}, unexpected {extra}"
        )
    values = [exact(params[p]) for p in preset.params]
    if name == "carlitz-degenerate" and values[0] == 0:
        raise InputError("carlitz-degenerate needs theta != 0")
    if name in ("charalambides-koutras", "ahuja-enneking") and values[0] == 0:
        raise InputError(f"{name} needs a nonzero {preset.params[0]}")
    alpha, beta, r = (Fraction(v) for v in preset.build(*values))
    triple = ParameterTriple(alpha, beta, r)
    return ResolvedPreset(name, triple, triple.dual() if preset.has_dual else None)
