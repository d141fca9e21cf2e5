"""twistlab: identity checks for character twists of degree-2 Dirichlet series.

Subpackages by topic: exact character arithmetic (characters), truncated
coefficient algebra and local-factor inversion (series), functional-equation
invariants and pole prediction (invariants), the twist-decomposition identity
(twistdecomp), stationary-phase numerics (phase), the contradiction audit
(audit), fixture generation and I/O (fixtures), and the command line (cli).
"""

from .characters import (
    DirichletCharacter,
    GaussSumValue,
    RootOfUnityValue,
    c_coefficient,
    c_coefficient_direct,
    conductor,
    enumerate_characters,
    gauss_sum,
    primitive_inducing,
    verify_lemma1,
)

__version__ = "0.1.0"
