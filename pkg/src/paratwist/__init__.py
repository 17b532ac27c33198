"""Exact twisting of degree-2 paramodular Fourier expansions at an odd prime.

Subpackages:
  cyclotomic     exact Q(zeta_{p^e}) arithmetic
  matgsp         4x4 symplectic-similitude matrices, two realizations
  characters     Legendre character, Gauss sums, factorizations
  groups         paramodular membership, Atkin-Lehner element
  cosets         canonical coset keys and weighted coset sums
  hecke_cosets   explicit double-coset representative families
  families       monomial families of the twisting operator (both forms)
  localfamilies  local integrand tables and proof-step displays
  twist          the twisting engine (exact coefficient maps, oracles)
  local_identities   coset-sum verification of the local identities
  fourier        truncated expansions, slash actions, numeric evaluation
  forms          test-form construction (eta products, Jacobi data, lifts)
  hecke_action   Hecke/Atkin-Lehner action and the commutation suite
  cli            batch command-line front end
"""

from .cyclotomic import Cyclotomic
from .matgsp import GSpMat, J_REAL, JPRIME_REAL, gsp_check, padic_val

__all__ = [
    "Cyclotomic",
    "GSpMat",
    "J_REAL",
    "JPRIME_REAL",
    "gsp_check",
    "padic_val",
]

__version__ = "0.1.0"
