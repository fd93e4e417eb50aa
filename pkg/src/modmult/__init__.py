"""modmult: exact multiplicities of Gamma/Gamma1-characters in spaces of
modular forms and cusp forms, with an exact slope-verification harness."""

__version__ = "0.1.0"

from .cosets import (CuspDatum, PermutationAction, Signature, area_constant_c,
                     coset_action, signature_from_action, subgroup_signature)
from .dimensions import DimResult, dims, quasi_period
from .exact import (CycloValue, InconsistentSystem, cyclotomic_poly,
                    euler_phi, mobius, solve_linear_exact)
from .reps import (CharacterTable, MultiplicitySeries, QuotientPair,
                   RationalCharacter, abelian_character_table,
                   artin_decompose, load_character_table,
                   multiplicity_series, parity_of, permutation_character,
                   rational_characters)
from .sl2 import (FiniteSubgroup, QuotientGroup, SubgroupSpec,
                  cyclic_subgroups_up_to_conjugacy, enumerate_sl2,
                  galois_class_orbits, quotient, realize)

__all__ = [name for name in dir() if not name.startswith("_")]
