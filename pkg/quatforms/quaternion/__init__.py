from .quat import I, J, K, ONE, ONE_PLUS_I, Quat, quat_conj, quat_mul, quat_norm, quat_trace
from .units import (
    enumerate_norm,
    hurwitz_units,
    left_unit_class,
    left_unit_classes,
    norm_class_reps,
    unit_subgroup,
)
from .two_adic import TwoAdicClass, TwoAdicQuotient, two_adic_quotient, two_adic_reduce, two_adic_size
from .splitting import solve_ab, split_p

__all__ = [
    "Quat",
    "ONE",
    "I",
    "J",
    "K",
    "ONE_PLUS_I",
    "quat_mul",
    "quat_conj",
    "quat_norm",
    "quat_trace",
    "hurwitz_units",
    "unit_subgroup",
    "enumerate_norm",
    "left_unit_class",
    "left_unit_classes",
    "norm_class_reps",
    "TwoAdicClass",
    "TwoAdicQuotient",
    "two_adic_quotient",
    "two_adic_reduce",
    "two_adic_size",
    "solve_ab",
    "split_p",
]
