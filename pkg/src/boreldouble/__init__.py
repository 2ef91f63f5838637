"""Exact-arithmetic Drinfeld doubles of Borel subalgebras.

Builds simple Lie algebras in a Chevalley basis, the Drinfeld double of a
Borel subalgebra together with its contraction family and truncated-loop
realizations, and machine-verifies the structural statements relating them
(isomorphisms, root combinatorics, extended-diagram automorphism lifting,
derivation-algebra decompositions) — all over exact rationals.
"""

__version__ = "0.1.0"
