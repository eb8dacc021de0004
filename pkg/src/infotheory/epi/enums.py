"""Enumerations for infotheory-epi.

Defines distribution generator kinds and atom placement modes.
"""

from enum import Enum


class GeneratorKind(Enum):
    """Families of discrete distributions the harness can build.

    Attributes:
        RANDOM: Probabilities drawn from the flat simplex distribution.
        BINOMIAL: B(n, p) on {0, ..., n}.
        UNIFORM: Equiprobable atoms.
        NEAR_DEGENERATE: Mass 1 - delta on one atom, the rest spread evenly.
        FROM_FILE: Atoms read from a pmf file.
    """

    RANDOM = "random"
    BINOMIAL = "binomial"
    UNIFORM = "uniform"
    NEAR_DEGENERATE = "near_degenerate"
    FROM_FILE = "from_file"


class Placement(Enum):
    """Where generated atoms sit on the real line.

    Attributes:
        INTEGER_GRID: Values 0, 1, ..., k - 1 (lattice regime).
        RANDOM_REAL: Uniform draws in [0, 10] with a minimum gap of 1e-3
            (generic-spacing regime).
    """

    INTEGER_GRID = "integer_grid"
    RANDOM_REAL = "random_real"


class SpecialFamily(Enum):
    """Families from the literature whose stronger inequality is reproduced.

    Attributes:
        BINOMIAL_HALF: Pairs B(n, 1/2) and B(m, 1/2).
        UNIFORM_IID: Identically distributed integer-uniform pairs.
        UNIFORM_MIXED: Non-identical integer-uniform pairs (reported only).
    """

    BINOMIAL_HALF = "binomial_half"
    UNIFORM_IID = "uniform_iid"
    UNIFORM_MIXED = "uniform_mixed"
