# coding: utf-8

# # Transfer factors
#
# An H-class is a pair of class parameters (for delta' and delta''). The sign
# Delta_0 is a product of Hilbert symbols. The full factor on the compact
# group multiplies it by a phase of Theta and a Weil index.

import json
from pathlib import Path

from metaplectic import codec
from metaplectic.transfer import (
    alpha_dprime,
    correspond,
    delta0,
    delta0_swapped,
    delta_R,
    full_delta,
    real_gamma,
)

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"

# A pair at p = 5 with regular reduction. Here the factor is normalized to 1.

gamma, _ = codec.pair(json.loads((GOLDEN / "pair_regular.json").read_text()))
print("alpha'' =", codec.etale_to_json(alpha_dprime(gamma)))
print("Delta_0 =", delta0(gamma), " swapped roles:", delta0_swapped(gamma))
print("Delta =", full_delta(gamma, 5).to_json())

# A pair at p = 3 where the Weil index of delta'' contributes -1.

gamma, _ = codec.pair(json.loads((GOLDEN / "pair_phase.json").read_text()))
print("phase example:", full_delta(gamma, 3).to_json())

# The corresponding element of Sp on the G side.

delta = correspond(gamma)
print("delta parameter:", json.dumps(codec.param_to_json(delta))[:100], "...")

# Over R, Delta_0 is the product of sgn(Re w' - Re w'') over circle eigenvalues.

w1 = [("3/5", "4/5")]
w2 = [(0, 1), ("4/5", "3/5")]
g = real_gamma(w1, w2)
print("real place: Delta_0 =", delta0(g), " sign formula =", delta_R(w1, w2))
