"""Exact lattice arithmetic for Fourier-Mukai partners of K3 surfaces."""

from .lattice import (
    IntegerLattice,
    LatticeError,
    Signature,
    SmithDecomposition,
    determinant,
    direct_sum,
    discriminant_form,
    pairing,
    signature,
    smith_normal_form,
    standard_lattice,
)
from .discform import (
    BoundExceeded,
    DiscIsometry,
    DiscSubgroup,
    FiniteQuadraticForm,
    enumerate_isometries,
    find_isomorphism,
    is_isomorphic,
    negate,
    q_value,
    same_genus,
    subgroup_from_generators,
)
from .rank1 import (
    ExtendedNSVector,
    PartnerDescriptor,
    enumerate_partners,
    euler_phi,
    is_special,
    mukai_vector,
    pi_vector,
    prime_factorization,
    search_lemma25_counterexamples,
    solve_hyperbolic_partner,
    tau,
)
from .counting import (
    CountingInput,
    GenusRep,
    double_coset_count,
    fm_count,
    gamma_quotient_order,
    hodge_order_check,
    rank1_fm_count,
    rank2_fm_count,
)
from .bqf import (
    BinaryQuadraticForm,
    PellSolution,
    narrow_class_number,
    pell_fundamental,
    wide_class_number,
)

__version__ = "0.1.0"
