"""Photon-field signatures of the Dicke-model phase transition.

Exact diagonalization of the Dicke model, the effective single-mode photon
Hamiltonian with its SU(1,1) closed forms, and the datasets for the ground
energy, photon number, photon statistics and x/p-coefficient figures.
"""

__version__ = "0.1.0"
