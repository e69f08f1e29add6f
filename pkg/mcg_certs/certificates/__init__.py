from mcg_certs.certificates.cover import (
    CoverModel,
    ObstructionCert,
    build_cover_space,
    build_paper_map,
    build_torelli_variant,
    normal_generation_obstruction,
)
from mcg_certs.certificates.lefschetz import (
    LowerBoundCert,
    lower_bound_certificate,
    trace_witness,
)
from mcg_certs.certificates.spread import (
    SpreadBound,
    SpreadState,
    upper_bound_eq2,
)
