import numpy as np
import pytest

from chebtrees.planetree import GREY, reference_tree
from chebtrees.polynum import NoConvergence, classify
from chebtrees.zhomotopy.degree7 import (ORDERS, chebyshev_labellings, degree7_sample, degree7_samples, final_pair,
                                         match_table, merge_ends, poly_at, project, residual, table_names)


@pytest.fixture(scope="module")
def sample():
    return degree7_sample(0)


def test_sample_is_on_the_variety(sample):
    assert residual(sample.point) < 1e-10
    p = sample.poly
    a, b, c, d = sample.point
    assert abs(p(1) - p(0)) < 1e-10
    assert abs(p(a) - p(b)) < 1e-10 and abs(p(c) - p(d)) < 1e-10


def test_sample_class_and_order(sample):
    assert str(sample.passport.trim()) == "<2,2|2,2|2,2>"
    assert sample.order in ORDERS and sample.component == ORDERS[sample.order]
    assert sample.consistent


def test_sampling_is_deterministic():
    s1, s2 = degree7_sample(3), degree7_sample(3)
    assert np.allclose(s1.point, s2.point)


def test_samples_do_not_depend_on_jobs():
    one = degree7_samples(2, seed=7, jobs=1)
    two = degree7_samples(2, seed=7, jobs=2)
    assert [s.point for s in one] == [s.point for s in two]


def test_tables():
    assert len(table_names("C1")) > 0 and len(table_names("C2")) > 0
    for name in table_names():
        t = merge_ends(reference_tree(name))
        assert GREY not in {v.color for v in t.vertices}
        assert match_table(reference_tree(name)) is not None


def test_labellings_are_chebyshev_points():
    t, _ = final_pair()
    labs = chebyshev_labellings(t)
    assert labs
    for x0 in labs:
        assert residual(x0) < 1e-8
        assert classify(poly_at(x0)).kind == "Chebyshev"


def test_projection_fails_cleanly():
    with pytest.raises(NoConvergence):
        project(np.zeros(4), np.ones(4), maxiter=2)
