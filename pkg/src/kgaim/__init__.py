"""Bound states of the d-dimensional Klein-Gordon equation with Coulomb and
Kratzer-type scalar and vector potentials, solved with the asymptotic
iteration method and checked against direct numerical integration."""

from .laurent import AIMSession, LaurentPoly, aim_iterate, aim_numeric_root
from .model import PotentialParams, ProblemSpec, build_aim_inputs, build_radial
from .spectra import (
    BoundState,
    MonicSystem,
    coulomb_energy,
    coulomb_wavefunction,
    equal_kratzer_energy,
    equal_kratzer_nonrel,
    equal_kratzer_wavefunction,
    g1_excited_solve,
    g2_excited_solve,
    g_excited_solve,
    monic_solve,
    unequal_constraint_solve,
    unequal_ground_solve,
)

__version__ = "0.1.0"
