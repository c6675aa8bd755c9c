"""Construct, validate, classify and perturb complex Hadamard matrices."""

from .core import (DEFAULT_TOL, PhaseGrid, ValidationReport, as_matrix, dephase, fourier,
                   haagerup_fingerprint, is_dephased, is_hadamard, tensor, unbiasedness)
from .constructions import (DitaSpec, MubSet, crt_certificate, dita, hadamard4, is_prime,
                            mub_check, mub_prime)
from .equivalence import (EquivalenceCertificate, EquivalenceVerdict, canonical_dephased,
                          equivalent_bruteforce, invariant_distinguish, random_equivalent,
                          verify_certificate)
from .geometry import (SimplexEmbedding, basis_simplex, bloch_dot, density_from_vector,
                       density_matrix, hs_distance, maximally_mixed, span_rank, sphere_radii,
                       total_orthogonality)
from .tangent import (ContinuationReport, DefectReport, LinearizedSystem, build_linearized,
                      conjectured_dimension, continue_orders, defect_formula, defect_numeric,
                      dephased_bound, extend_series)

__version__ = "0.1.0"
