"""Acceptance criteria, one test per criterion.

Each test runs its checks at the stated sample sizes and prints a single
``criterion N: PASS|FAIL`` line.  Run directly (``python3 tests/test_acceptance.py``)
for the summary alone.
"""

from __future__ import annotations

import sys
import time

import pytest

from metaplectic import verify

SEED = 20240601

# criterion -> (title, [(check name, trials)])
CRITERIA = {
    1: ("Hilbert symbol vs conic oracle, 16 square classes + 200 pairs per p in {3,5,7,11}",
        [("hilbert.square-classes", 1), ("hilbert.conic", 200)]),
    2: ("Weil index axioms, 200 pairs per place",
        [("weil.axioms", 200), ("weil.rank1-gauss", 50)]),
    3: ("global reciprocity of gamma and of the Hilbert symbol, 100 forms",
        [("weil.reciprocity", 100), ("hilbert.reciprocity", 100)]),
    4: ("trace lemmas, degree 2-5 at p in {3,5,7}",
        [("trace.lemmas", 60)]),
    5: ("keystone, 100 per p in {3,5,7} and 100 at R",
        [("calcul-qx.keystone", 100)]),
    6: ("lattice character: trivial cases, regular reduction, 60 Cayley comparisons",
        [("theta.trivial", 30), ("theta.regular-reduction", 30), ("theta.cayley", 60)]),
    7: ("Maslov: dimension, dihedral/chain coherence, 100 Sp(4, Q_3) cocycles",
        [("maslov.dimension", 60), ("maslov.chain", 40), ("maslov.cocycle", 100)]),
    8: ("Delta_0: 100 reciprocity, n'n''=0, split appends, 50 real, 50 product formula",
        [("delta0.reciprocity", 100), ("delta0.trivial", 30), ("delta0.descent", 30),
         ("delta0.renard", 50), ("product-formula.delta0", 50)]),
    9: ("reciprocity lemmas, 100 Lie + 100 group pairs, Mobius up to degree 5",
        [("reciprocity.lie", 100), ("reciprocity.group", 100), ("reciprocity.mobius", 100)]),
    10: ("normalization on 25 regular-reduction pairs, 25 c''-twists",
         [("transfer.normalization", 25), ("transfer.twist", 25)]),
}


def run_criterion(k: int) -> tuple[bool, str]:
    title, checks = CRITERIA[k]
    t0 = time.perf_counter()
    reports = [verify.run_check(verify.find_check(name), n, SEED) for name, n in checks]
    ok = all(r.passed for r in reports)
    detail = ", ".join(f"{r.name} {r.trials - len(r.failures)}/{r.trials}" for r in reports)
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]  {time.perf_counter() - t0:.1f}s"
    if not ok:
        first = next(r for r in reports if not r.passed)
        line += f"\n    first failure in {first.name}: {first.failures[0]}"
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    ok, line = run_criterion(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
