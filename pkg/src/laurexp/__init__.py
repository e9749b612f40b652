"""Certified irrationality-exponent bounds for algebraic Laurent series
over finite fields, computed from a uniform-morphism description of the
coefficient sequence.

The pieces: exact finite-field and polynomial arithmetic (ffield), words and
morphic fixed points (words), digit automata and kernels (automata),
repetition witnesses (repetition), the word-polynomial matrix calculus and
coprimality certificates (wordpoly), the exact-rational bound engine
(exponent), truncated Laurent series (series), and the analysis pipeline /
CLI on top (pipeline, fixtures, cli).
"""

from .ffield import (FieldDescriptor, FieldElement, Polynomial, QuotientRing,
                     UnityRootPlan, finite_field, poly_gcd, quotient_eval,
                     unity_root_plan)
from .words import (Coding, SequenceStream, UniformMorphism, apply_morphism,
                    fixed_point_prefix, validate)
from .automata import Dfao, KernelDescriptor, build_dfao, kernel, minimize, rebase
from .repetition import (AgreementRecord, RepetitionWitness, measure_agreement,
                         pigeonhole_witness, search_witness)
from .wordpoly import (CoprimalityCertificate, coprimality_check, iterate_value,
                       morphism_matrix, occurrence_vector, periodicity_certificate,
                       r_vector, word_poly)
from .exponent import (BoundReport, approximation_bounds, general_bound,
                       witness_bounds)
from .series import (LaurentSeries, RationalFunction, distance_degree,
                     expand_rational, fixed_point_solve, verify_algebraic,
                     word_to_rational)
from .pipeline import ProblemSpec, analyze_problem

__version__ = "0.1.0"
