"""Exact arithmetic for explicit Hecke elements acting on period polynomials."""

from .algebra import ONE, PI_S, PI_U, S, T, U, U2, ProjMatrix, RingElement
from .classnumbers import hurwitz_H
from .elements import build_wTn, build_wTn_alt
from .forms import BinaryQuadraticForm, conjugacy_key
from .periods import trace_formula_rhs, trace_on_Vw, trace_on_Ww
from .qexp import trace_oracle
from .verify import project_to_B, verify_A, verify_A_merel, verify_B, verify_class_sums, verify_coset_sums

__version__ = "0.1.0"
