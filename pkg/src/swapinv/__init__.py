"""Finite-field analysis of inverse and swapped-inverse permutations:
c-differential spectra, closed-form uniformity predictors, and exhaustive
verification sweeps over odd prime powers."""

from .fields import FieldCtx, arith, make_field, quad_root_count
from .predictors import (Prediction, chi_congruence_table, du_fourcase_swap1g,
                         outside_pa_predicate, pa_fourcase_swap1g,
                         predict_cdu_inv, predict_cdu_swap01,
                         predict_cdu_swap1g, predict_du_inv,
                         predict_du_swap1g, predict_lemma_a1)
from .spectra import (CaseProbe, SpectrumReport, c_row_histogram,
                      c_uniformity, cdiff_count, classify_pcn,
                      differential_max, full_c_sweep, max_at_least, pa_probe,
                      threshold_survey_by_c, uniformity_by_c)
from .sweeps import (SweepSummary, TheoremVerdict, THEOREMS, pa_case_suite,
                     expected_instances, iter_verdicts, prime_powers,
                     property_suite, sweep, write_report)
from .tables import (FuncTable, affine_compose, dump_table, inverse_table,
                     parse_table, read_table, swap01, swap1g, swapped_inverse,
                     write_table)

__version__ = "0.1.0"
