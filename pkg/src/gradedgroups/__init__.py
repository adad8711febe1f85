"""Centrally graded groups, discrete Clifford groups Q(t) and their group algebras."""

from ._accel import backend_name
from .clifford_group import Signature, VeeElement, VeeGroup
from .classify import NormalForm, normal_form
from .gamma import F2, GammaRing, make_custom, make_z_mod_m

__version__ = "0.1.0"

__all__ = [
    "F2",
    "GammaRing",
    "NormalForm",
    "Signature",
    "VeeElement",
    "VeeGroup",
    "backend_name",
    "make_custom",
    "make_z_mod_m",
    "normal_form",
]
