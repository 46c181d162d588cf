from fractions import Fraction as F

import pytest

from genstirling.errors import InputError
from genstirling.presets import CATALOG, preset_lookup
from genstirling.triple import ParameterTriple as T

REQUIRED = {
    "classical-first-kind", "classical-second-kind", "binomial", "lah", "signless",
    "carlitz-degenerate", "carlitz-weighted", "howard", "gould-hopper", "charalambides-koutras",
    "riordan-noncentral", "tsylova", "todorov", "ahuja-enneking", "broder-r",
}


def test_catalog_complete():
    assert REQUIRED <= set(CATALOG)


def test_fixed_presets():
    p = preset_lookup("classical-second-kind")
    assert p.triple == T.of(0, 1, 0) and p.dual == T.of(1, 0, 0)
    p = preset_lookup("lah")
    assert p.triple == T.of(-1, 1, 0) and p.dual == T.of(1, -1, 0)
    assert preset_lookup("binomial").triple == T.of(0, 0, 1)


def test_parameterized_presets():
    assert preset_lookup("howard", theta=1, lam=1).triple == T.of(1, 1, -1)
    assert preset_lookup("howard", theta=2, **{"lambda": 3}).triple == T.of(1, 2, -3)
    assert preset_lookup("charalambides-koutras", s=4, a=1, b=3).triple == T.of(F(1, 4), 1, 2)
    assert preset_lookup("ahuja-enneking", r=2).dual is None
    assert preset_lookup("gould-hopper", a="1/2", b=2).triple == T.of(0, 1, F(3, 2))


def test_lookup_errors():
    with pytest.raises(InputError):
        preset_lookup("nope")
    with pytest.raises(InputError):
        preset_lookup("howard", theta=1)
    with pytest.raises(InputError):
        preset_lookup("lah", theta=1)
    with pytest.raises(InputError):
        preset_lookup("ahuja-enneking", r=0)
