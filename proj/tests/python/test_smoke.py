import json
import math
import os
import sys

import pytest

_pkg_dir = os.environ.get("BESSELORBIT_PKG_DIR")
if _pkg_dir and _pkg_dir not in sys.path:
    sys.path.insert(0, _pkg_dir)

import besselorbit  # noqa: E402

ARC = json.dumps([{"kind": "circle", "density": "1", "sup": 1.0}])
LEBESGUE = json.dumps(
    [{"kind": "interval", "lower": -1.0, "upper": 1.0, "density": "1"}]
)


def test_total_mass():
    assert besselorbit.total_mass(ARC) == pytest.approx(1.0, abs=1e-10)
    assert besselorbit.total_mass(LEBESGUE) == pytest.approx(2.0, abs=1e-10)


def test_moment():
    m = besselorbit.moment(ARC, 2, 2)
    assert m.real == pytest.approx(1.0, abs=1e-10)
    assert besselorbit.moment(ARC, 1, 0) == pytest.approx(0.0, abs=1e-10)


def test_gram_norm():
    assert besselorbit.gram_norm(ARC, 32) == pytest.approx(1.0, abs=1e-9)
    profile = besselorbit.gram_profile(LEBESGUE, [8, 16, 32])
    norms = [norm for _, norm in profile]
    assert norms == sorted(norms)
    assert norms[-1] <= 2 * math.pi + 1e-8


def test_analyze_verdicts():
    report = json.loads(besselorbit.analyze(ARC))
    assert report["schema_version"] == 1
    assert report["verdict"]["status"] == "BESSEL"
    assert report["verdict"]["bound"] == pytest.approx(1.0)

    heat = besselorbit.heat_measure_spec(1.0)
    refuted = json.loads(besselorbit.analyze(heat))
    assert refuted["verdict"]["status"] == "NOT_BESSEL"
    assert refuted["verdict"]["witness"] == "tail_ratio_sup"


def test_heat_closed_forms():
    eps = 2.0**-10
    assert besselorbit.heat_tail(1.0, eps) == pytest.approx(
        2.0 * math.sqrt(-math.log(1.0 - eps)), rel=1e-12
    )
    k = 10**6
    scaled = k * besselorbit.heat_moment(1.0, k)
    closed = math.sqrt(math.pi * k) * math.erf(math.sqrt(k) / 2.0)
    assert scaled == pytest.approx(closed, rel=1e-3)


def test_density_eval_and_errors():
    assert besselorbit.eval_density("1 + 0.5*cos(theta)", ["theta"], [0.0]) == 1.5
    with pytest.raises(besselorbit.ExprParseError):
        besselorbit.eval_density("1 +", ["theta"], [0.0])
    with pytest.raises(besselorbit.SpecParseError):
        besselorbit.validate_spec("not json")
