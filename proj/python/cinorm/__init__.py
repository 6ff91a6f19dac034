"""Finite-scale verifiers for conjugation-invariant norms."""

import json

from ._cinorm import (
    CinormError,
    Permutation,
    commutator,
    commutator_witness,
    conjugate,
    cut,
    displaced_set,
    elementary_rotation,
    free_product_l1,
    lower_bound_xn,
    rank_norm_exact,
    rank_norm_numeric,
    so_project,
    split,
    suite_names,
    supp_norm,
    three_cycle_norm,
    tr_norm,
)
from . import _cinorm


def brenner_check(s, n):
    return json.loads(_cinorm._brenner_check(s, n))


def commutator_certificate(g, n):
    return json.loads(_cinorm._commutator_certificate(g, n))


def express_as_conjugates(h, g):
    return json.loads(_cinorm._express_as_conjugates(h, g))


def intnorm(target, exact=False, depth=6):
    """Norm of an integer ("24", "x(5)" or "x(4,3)") for the factorial generators."""
    return json.loads(_cinorm._intnorm(str(target), exact, depth))


def run_suite(config=None):
    """Runs the verification suites; keys as in the CLI's JSON config."""
    return json.loads(_cinorm._run_suite(json.dumps(config or {})))


def verify_certificate(certificate):
    """Raises CinormError unless the certificate recomposes."""
    text = certificate if isinstance(certificate, str) else json.dumps(certificate)
    _cinorm._verify_certificate(text)
