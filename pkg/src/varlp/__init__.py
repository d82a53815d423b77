"""Variable-exponent sequence spaces, the discrete Hilbert transform, and
discrete Fourier multipliers, with a numerical verification harness."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .embedding import Embedding, GDecomposition, cell_modular_sum, embed, g_decompose
from .exponents import (ExponentFunction, ExponentSequence, LogHolderReport,
                        check_log_holder, conjugate, p_bar, p_lower)
from .hilbert import (FiniteSection, HilbertOptions, PointwiseBound,
                      SingularPointError, continuous_hilbert_step,
                      discrete_hilbert, finite_section_norm, operator_matrix,
                      pointwise_bound)
from .multipliers import (MikhlinReport, MultiplierHypotheses, Symbol,
                          apply_multiplier, check_hypotheses, get_symbol,
                          mikhlin_check, product_symbol, reflected_symbol)
from .spaces import (NormResult, Sequence, StepFunction, classical_norm,
                     luxemburg_norm_seq, luxemburg_norm_step, modular_seq,
                     modular_step, sample_unit_ball)
from .verify import (NormEstimate, Report, SuiteConfig, SUITE_NAMES,
                     estimate_operator_norm, exponent_family,
                     report_to_csv_text, report_to_json_bytes, run_suite)

__version__ = "0.1.0"
