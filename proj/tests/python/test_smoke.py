import math

import numpy as np
import pytest

import cinorm


def test_permutations():
    s = cinorm.Permutation("(1 2)")
    t = cinorm.Permutation("(2 3)")
    assert str(s * t) == "(1 3 2)"
    assert cinorm.supp_norm(cinorm.Permutation("(1 2)(3 4)")) == 4
    assert cinorm.tr_norm(cinorm.Permutation("(1 2 3 4)")) == 3
    assert cinorm.three_cycle_norm(cinorm.Permutation("(1 2 3)")) == 1
    assert str(cinorm.cut(cinorm.Permutation("(1 2 3)"), 1)) == "(1 2)"
    left, right = cinorm.split(cinorm.Permutation("(1 2 3 4 5)"), 2)
    assert left * right == cinorm.Permutation("(1 2 3 4 5)")
    with pytest.raises(cinorm.CinormError):
        cinorm.Permutation("(1 2")


def test_covering_and_certificates():
    g = cinorm.Permutation("(1 2 3 4 5)")
    b, c = cinorm.commutator_witness(g, 5)
    assert cinorm.commutator(b, c) == g
    cert = cinorm.commutator_certificate(g, 5)
    cinorm.verify_certificate(cert)
    cert["c"] = "(1 2 3)"
    with pytest.raises(cinorm.CinormError, match="RecompositionMismatch"):
        cinorm.verify_certificate(cert)
    report = cinorm.brenner_check(cinorm.Permutation("(1 2)(3 4)"), 5)
    assert report["covered_by_fourth_power"]
    conj = cinorm.express_as_conjugates(cinorm.Permutation("(1 2 3 4 5 6 7)"), cinorm.Permutation("(1 2)(3 4)"))
    cinorm.verify_certificate(conj)
    assert len(conj["factors"]) <= 8 * 7 / 4 + 4


def test_integers():
    r = cinorm.intnorm(24)
    assert r["terms"] == ["8", "8", "8"]
    assert cinorm.intnorm(3, exact=True)["value"] == 2
    assert cinorm.lower_bound_xn(8) == 8
    cinorm.verify_certificate({"kind": "intnorm", "target": "24", "value": 3, "terms": ["8", "8", "8"]})


def test_matrices():
    assert cinorm.rank_norm_exact([["1", "0"], ["0", "2"]]) == 1
    theta = math.pi / 3
    g = np.eye(4)
    g[:2, :2] = [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
    assert cinorm.rank_norm_numeric(g) == 2
    p = cinorm.so_project(g)
    assert p.shape == (3, 3)
    assert cinorm.rank_norm_numeric(p) <= 2


def test_products():
    assert cinorm.free_product_l1(["Z", "Z"], "(1:3)(2:-2)") == ("(1:3)(2:-2)", 5)


def test_run_suite_small():
    report = cinorm.run_suite({"suites": ["products", "intnorm"], "samples": 10})
    assert report["ok"]
    assert report["config"]["seed"] == 20240601
    assert [s["name"] for s in report["suites"]] == ["intnorm", "products"]
    with pytest.raises(cinorm.CinormError, match="ConfigInvalid"):
        cinorm.run_suite({"max_degree": 40})
