"""Minmatrix workbench for non-iterative normal modal logics.

Normalizes degree <= 1 modal formulas into minmatrices, computes prime
orbits and characteristic minmatrices by substitution collapse, builds
the coordinate lattices of the corresponding systems, generates their
defining axioms, and checks their Kripke frame semantics exhaustively on
small frames.
"""

from .context import CapExceededError, Context, DegreeError, context, enumerate_E
from .formula import (Formula, FormulaSyntaxError, modal_degree, parse, render,
                      variables)
from .kripke import (Frame, FrameCondition, Model, correspondence_check,
                     eval_model, find_countermodel, valid_on_frame)
from .lattice import (CMM, STAR, SystemCoord, build_hasse, cmm_from_coords,
                      collapse, coverage, enumerate_cmms, map_to_star)
from .minmatrix import ContextMismatchError, Minmatrix, is_theorem_K, normalize
from .orbit import PrimeOrbit, compute_orbits, orbit_closed_form, orbit_of
from .substitution import (Substitution, apply_formula, apply_minmatrix,
                           apply_minterm, classify, compose, critical_substitution,
                           enumerate_primes, identity, is_prime)
from .axiom import (alpha_D, alpha_K, alpha_prime_K, named_systems, system_of)

__version__ = "0.1.0"
