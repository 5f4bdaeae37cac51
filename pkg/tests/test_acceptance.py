"""Acceptance gate: every criterion is an exact identity over Q(q), checked
at desk scale with zero tolerance; the three timed criteria also assert
their stated wall-clock budgets.

Each test prints one pass/fail line (run pytest with -s to see them all).
"""

import time

import pytest

from qloop.suites import CHECKS

BUDGETS = {"associativity": 60.0, "pair-residue": 300.0,
           "qchar-two-routes": 600.0}

CRITERIA = [
    ("1", "associativity",
     "shuffle associativity, 200 randomized sl2/sl3 triples"),
    ("2", "pair-residue",
     "residue formula equals chain pairing on the word corpus"),
    ("3", "bialgebra-axioms",
     "bialgebra pairing axioms for the coproduct on sl2 words"),
    ("4", "factorization-dims",
     "window dimensions equal ordered slope-decomposition sums"),
    ("5", "double-relation",
     "Drinfeld double relation for four generator classes at p=0, 1/2"),
    ("6", "theorem-affine-sl2",
     "slope-0 coproduct equals the affine values on generators"),
    ("7", "rmatrix",
     "R-matrix intertwining and window factorization, |hdeg| <= 2"),
    ("8", "qchar-two-routes",
     "refined character: product formula vs kernel route, depth 3"),
    ("9", "shifted-kernels",
     "shifted kernel equals two-contour kernel, symbolic weight"),
    ("10", "regular-independence",
     "regular-weight dimension tables agree at p=0 and p=1/2"),
    ("11", "qchar-multiplicative",
     "q-characters multiply under the slope tensor product"),
]


@pytest.mark.parametrize("number,check,label", CRITERIA,
                         ids=[c[1] for c in CRITERIA])
def test_acceptance(number, check, label):
    t0 = time.time()
    report = {}
    passed, details = CHECKS[check](report)
    elapsed = time.time() - t0
    status = "pass" if passed else "FAIL"
    print("criterion %-2s [%s] %-22s %.1fs: %s"
          % (number, status, check, elapsed, label))
    assert passed, details
    budget = BUDGETS.get(check)
    if budget is not None:
        assert elapsed < budget, \
            "criterion %s exceeded its %.0fs budget (%.1fs)" \
            % (number, budget, elapsed)
