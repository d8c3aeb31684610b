import math
import os
import pathlib

import pytest

import digifix

DATA = pathlib.Path(os.environ.get("DIGIFIX_TEST_DATA", pathlib.Path(__file__).resolve().parents[1] / "data"))


def test_adjacency_and_distances():
    assert digifix.cu_adjacent([0, 0], [1, 1], 2)
    assert not digifix.cu_adjacent([0, 0], [1, 1], 1)
    assert digifix.lp_distance([0, 0], [3, 4], 2.0) == 5.0
    with pytest.raises(ValueError):
        digifix.cu_adjacent([0], [0, 1], 1)


def test_image_and_space():
    img = digifix.DigitalImage([[0], [1], [3]], 1)
    assert img.size == 3
    assert len(img.components()) == 2
    space = digifix.DigitalMetricSpace(img, "lp", 1.0)
    assert space.min_separation == 1.0
    assert space.diameter == 3.0
    assert digifix.constant_collapse_bound(space) == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        digifix.DigitalMetricSpace(img, "shortest_path")


def test_involution():
    img = digifix.DigitalImage.interval(0, 1)
    space = digifix.DigitalMetricSpace(img)
    cond = digifix.ConditionSpec("saljah", {"k1": 0.0, "k2": math.sqrt(0.9), "k3": 0.3})
    report = digifix.check_condition(space, [1, 0], cond)
    assert report.holds
    assert report.margin == pytest.approx(0.89)
    assert digifix.fixed_points(space, [1, 0]) == []
    inv = digifix.involution_counterexample()
    assert inv["certified"] and inv["coefficient_sum"] == 0.99


def test_fixed_points_and_orbits():
    space = digifix.DigitalMetricSpace(digifix.DigitalImage.interval(0, 2))
    orbit = digifix.picard_orbit(space, [1, 1, 1], 0)
    assert orbit.orbit == [0, 1, 1]
    assert orbit.constancy_index == 1
    assert digifix.solve_unique_fixed_point(space, [1, 1, 1], digifix.ConditionSpec("quasi", {"c": 0.4})) == 1
    with pytest.raises(RuntimeError):
        digifix.solve_unique_fixed_point(space, [0, 1, 2], digifix.ConditionSpec("quasi", {"c": 0.4}))


def test_fpp():
    assert digifix.has_fpp(digifix.DigitalImage([[2, 2]], 1))[0]
    ok, witness, _ = digifix.has_fpp(digifix.DigitalImage.interval(0, 1))
    assert not ok and witness == [1, 0]
    grid = digifix.DigitalImage([[x, y] for x in range(3) for y in range(3)], 2)
    with pytest.raises(digifix.BudgetExceeded):
        digifix.has_fpp(grid)


def test_fallacies_and_doubling():
    assert digifix.ratio_L(0.5) == (1.0, False)
    value, sum_ok, r_lt_1 = digifix.ratio_r(0.3, 0.0, 0.2, 0.4, 0.0)
    assert value == pytest.approx(1.75) and sum_ok and not r_lt_1
    d = digifix.doubling_counterexample(30)
    assert d["certified"] and d["ratio"] == 2.0 and d["pairs"] == 435


def test_documents():
    space, table, cond = digifix.parse_document((DATA / "saljah.json").read_text())
    assert table == [1, 0]
    assert digifix.check_condition(space, table, cond).holds
    with pytest.raises(ValueError):
        digifix.parse_document((DATA / "malformed.json").read_text())


def test_demo():
    items = digifix.run_demo()
    assert items and all(passed for _, passed, _ in items)
