"""Numeric constants shared by the compiled and pure-Python kernels.

Bernoulli-number coefficients for the Euler-Maclaurin tail are generated
exactly with Fraction arithmetic at import time; the Gauss-Kronrod 7/15
nodes and weights are the classical QUADPACK values.
"""

import math
from fractions import Fraction

MAX_EM_TERMS = 30

LN_TWO_PI = math.log(2.0 * math.pi)
EULER_GAMMA = 0.5772156649015328606


def _bernoulli(limit):
    """B_0 .. B_limit as exact fractions (B_1 = -1/2 convention)."""
    bs = [Fraction(1)]
    for m in range(1, limit + 1):
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * bs[k]
        bs.append(-acc / (m + 1))
    return bs


def _em_coefficients(terms):
    """c_j = B_{2j} / (2j)! for j = 1..terms, and consecutive ratios."""
    bs = _bernoulli(2 * terms + 2)
    cs = []
    for j in range(1, terms + 2):
        cs.append(bs[2 * j] / Fraction(math.factorial(2 * j)))
    coeffs = [float(c) for c in cs[:terms]]
    ratios = [float(cs[j + 1] / cs[j]) for j in range(terms)]
    return coeffs, ratios


# EM_C[j-1] = B_{2j}/(2j)!; EM_RATIO[j-1] = c_{j+1}/c_j, used so the tail
# terms can be built by a stable multiplicative recurrence.
EM_C, EM_RATIO = _em_coefficients(MAX_EM_TERMS)

# 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15).  Positive
# half of the symmetric node set; index 7 is the origin.
KRONROD_X = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
)
KRONROD_W = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
)
# Gauss weights belong to Kronrod nodes 1, 3, 5, 7.
GAUSS_W = (
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
)
