from mcg_certs.algebra.determinant import (
    det_bareiss,
    det_from_traces,
    newton_elementary,
)
from mcg_certs.algebra.matrix import (
    IntMatrix,
    TraceSequence,
    kernel_rank_rational,
    mat_pow,
    rank_rational,
    reduce_mod,
    trace_powers,
)
from mcg_certs.algebra.smith import smith_normal_form
