"""Cyclic nested lattice codes: construction, cyclicity tests, encoding and isomorphism checks."""

from .cyclic import cyclic_coordinates, cyclic_encode, generator_order, is_primitive, n2_row_coprime
from .design import (WDesign, build, build_w_s2, build_w_s3, derive_coding_lattice, last_row_cofactors,
                     make_isomorphic_last_row)
from .exact import adjugate, det, gcd_vec, inverse, solve_diophantine
from .iso import check_divisibility, codeword_add, info_add, verify_isomorphism
from .lattice import (NumericPolicy, a2_lattice, e8_lattice, integer_lattice, is_member, make_lattice,
                      sublattice_W, volume)
from .nested import (code_rate, encode, enumerate_codebook, index, make_code, mod_shaping,
                     usage_metrics)
from .quantize import cvp_enumerate, quantize, shaping_gain_estimate

__version__ = "0.1.0"
