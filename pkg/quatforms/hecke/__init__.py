from .descriptor import ConventionProfile, HeckeDescriptor
from .space import MODELS, AutForm, FormSpace
from .witness import IDENTITY, Witness, coset_reps, global_witness, local_coset, witness_elements, witness_table
from .operator import HeckeMatrix, HeckeOperator, apply, hecke_matrix
from .character import CharacterProjector, character_value, quadratic_character, teichmuller

__all__ = [
    "ConventionProfile",
    "HeckeDescriptor",
    "MODELS",
    "AutForm",
    "FormSpace",
    "Witness",
    "IDENTITY",
    "coset_reps",
    "local_coset",
    "global_witness",
    "witness_elements",
    "witness_table",
    "HeckeMatrix",
    "HeckeOperator",
    "apply",
    "hecke_matrix",
    "CharacterProjector",
    "character_value",
    "quadratic_character",
    "teichmuller",
]
