"""Exact invariants behind endoscopic transfer for the metaplectic group.

Hilbert symbols and Weil indices over Q_p (p odd) and R, Maslov forms,
class parameters of classical groups, the lattice-model character of the
Weil representation and the transfer factor, all in exact rational and
cyclotomic arithmetic.
"""

__version__ = "0.1.0"
