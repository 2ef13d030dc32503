import random
from fractions import Fraction
from math import comb

import pytest

from conelab.catalog import make_grid, named, random_config
from conelab.cones import sample_projection, sample_vertex
from conelab.errors import DimensionMismatch, NoFormAvailable, ZeroForm
from conelab.geometry import PointConfig, ProjPoint, sample_point
from conelab.ideals import (
    Form,
    HVector,
    MonomialBasis,
    condition_matrix,
    fat_ideal_dim,
    forms_through,
    h_vector,
    hilbert_function,
    ideal_dim,
    is_complete_intersection,
    multiplicity_at,
    residual_ci_check,
)
from props import one_tail_violations, small_configs, hilbert_fact_violations, has_long_one_tail


def test_monomial_basis_order():
    b = MonomialBasis(3, 2)
    assert b.exponents == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert len(MonomialBasis(4, 4)) == 35
    assert b.index[(0, 1, 1)] == 4


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_fat_point_row_count(m):
    P = ProjPoint([1, 2, 3, 4])
    cfg = named("D4").config
    mat = condition_matrix(cfg, 4, (P, m))
    assert mat.rows == len(cfg) + comb(m + 2, 3)


@pytest.mark.parametrize("name", ["D4", "Z4", "F4"])
def test_chart_and_derivative_routes_agree(name, protocol):
    cfg = named(name).config
    P = sample_vertex(cfg, protocol, 0)
    for d in range(2, 6):
        for m in range(1, d + 1):
            assert fat_ideal_dim(cfg, P, m, d) == fat_ideal_dim(cfg, P, m, d, method="derivatives")


def test_fat_dim_edge_cases():
    cfg = named("D4").config
    P = ProjPoint([3, 1, 4, 1])
    assert fat_ideal_dim(cfg, P, 0, 3) == ideal_dim(cfg, 3)
    assert fat_ideal_dim(cfg, P, 5, 4) == 0
    with pytest.raises(ValueError):
        fat_ideal_dim(cfg, cfg[0], 2, 2)


def test_planar_four_points_double_point():
    cfg = PointConfig([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 0]])
    P = ProjPoint([2, -3, 5, 7])
    assert fat_ideal_dim(cfg, P, 2, 2) == 2
    assert fat_ideal_dim(cfg, P, 2, 2, method="derivatives") == 2


def test_h_vectors():
    assert h_vector(make_grid(3, 3, random.Random(1))) == HVector((1, 3, 5))
    line5 = random_config("on-skew-lines", ((5,), 0), random.Random(2))
    assert h_vector(line5) == HVector((1, 1, 1, 1, 1))
    zp = random_config("on-skew-lines", ((5, 5, 5), 1), random.Random(3))
    assert h_vector(zp) == HVector((1, 3, 6, 3, 3))
    assert h_vector(named("F4").config) == HVector((1, 3, 6, 10, 3, 1))
    assert h_vector(PointConfig([])) == HVector(())


def test_hilbert_function_is_rank_of_evaluation():
    cfg = named("D4").config
    for t in range(5):
        assert hilbert_function(cfg, t) == comb(t + 3, 3) - ideal_dim(cfg, t)


def test_hilbert_function_facts_on_random_configs():
    configs = small_configs(40, seed="unit")
    assert all(not hilbert_fact_violations(c) for c in configs)


def test_ones_in_h_vector_force_collinear_points():
    configs = [c for c in small_configs(40, seed="unit-tail") if has_long_one_tail(c)]
    assert configs
    assert all(not one_tail_violations(c) for c in configs)


def test_multiplicity():
    P = (1, 2, 3, 4)
    l1 = Form.from_terms(4, 1, {(1, 0, 0, 0): 2, (0, 1, 0, 0): -1})
    l2 = Form.from_terms(4, 1, {(0, 0, 1, 0): 4, (0, 0, 0, 1): -3})
    assert multiplicity_at(l1 * l2, P) == 2
    f = Form.from_terms(4, 2, {(2, 0, 0, 0): 1})
    assert multiplicity_at(f, P) == 0
    with pytest.raises(ZeroForm):
        multiplicity_at(Form.from_terms(4, 2, {}), P)


def test_form_arithmetic_and_json():
    f = Form.from_terms(3, 2, {(2, 0, 0): Fraction(1, 3), (0, 1, 1): -2})
    g = Form.from_json(3, 2, f.to_json())
    assert g == f
    assert (f - f).is_zero()
    assert f((1, 1, 1)) == Fraction(-5, 3)
    assert f.derivative(0) == Form.from_terms(3, 1, {(1, 0, 0): Fraction(2, 3)})
    assert str(f) == "1/3*x0^2 + -2*x1*x2"


def test_forms_through_vanish():
    cfg = named("D4").config
    for F in forms_through(cfg, 3):
        assert all(F(p.coords) == 0 for p in cfg)


def plane_grid(a, b):
    return PointConfig([[i, j, 1] for i in range(a) for j in range(b)])


def test_complete_intersection_certificates(protocol):
    cfg = plane_grid(3, 4)
    v = is_complete_intersection(cfg, 4, 3, protocol)
    assert v.certified and v.type_pair == (3, 4) and v.label == "yes"
    assert v.revalidate(cfg)
    F, G = v.certificate
    assert (F.degree, G.degree) == (3, 4)


def test_general_points_are_not_a_complete_intersection(protocol):
    rng = random.Random(4)
    pts = []
    while len(pts) < 9:
        pts.append(sample_point(rng, 1000, dim=2, avoid=pts))
    v = is_complete_intersection(PointConfig(pts), 3, 3, protocol)
    assert not v.certified and v.label == "probably-no" and v.trials_used == protocol.trials
    assert not v.revalidate(PointConfig(pts))


def test_ci_errors(protocol):
    with pytest.raises(DimensionMismatch):
        is_complete_intersection(plane_grid(3, 4), 3, 3, protocol)
    with pytest.raises(NoFormAvailable):
        is_complete_intersection(PointConfig([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 1, 3, protocol)
    with pytest.raises(ValueError):
        is_complete_intersection(named("D4").config, 3, 4, protocol)


def test_residual_of_a_complete_intersection(protocol):
    cfg = plane_grid(3, 4)
    sub = [i for i, p in enumerate(cfg) if p.coords[1] in (0, 2)]
    v = residual_ci_check(cfg, sub, 3, 4, 2, protocol)
    assert v.certified and v.type_pair == (2, 3)


def test_projection_identity_on_catalog(protocol):
    for name in ("D4", "Z4", "Z2"):
        cfg = named(name).config
        center, _, image = sample_projection(cfg, protocol, 0)
        for d in range(1, 7):
            assert fat_ideal_dim(cfg, center, d, d) == ideal_dim(image, d)
