"""Distance colorings of the q-ary n-cube over finite fields."""

from .field import Field, field_from_q, field_new
from .cube import Mode, hamming_distance, hamming_weight, rank, sphere_size, unrank
from .codes import LinearCode, forbidden_greedy, gv_greedy, hamming_code, simplex_code
from .coloring import (Coloring, ProblemSpec, VerifyResult, coset_coloring, exact_d1_coloring,
                       m_matrix, m_matrix_coloring, slab_coloring, verify_coloring)
from .bounds import bounds_report

__version__ = "0.1.0"
