from mcg_certs.homology.curves import (
    BaseCurve,
    CurveTable,
    TwistWord,
    evaluate_twist_word,
    load_curve_table,
)
from mcg_certs.homology.symplectic import (
    SymplecticSpace,
    intersection,
    is_symplectic,
    is_torelli,
    m_value,
    orbit_sum_subspace,
    standard_space,
    transvection,
)
