from .commutators import commutator, engel_word, is_n_engel
from .platforms import (
    HeisenbergLikeElement,
    MetabelianPlatform,
    UnitriangularMatrix,
    enumerate_unitriangular,
    heis_conj,
    heis_inv,
    heis_mul,
    heis_pow,
    unitriangular_order,
)
from .presentation import (
    PcElement,
    PcPresentation,
    collect,
    dihedral8,
    free_abelian,
    hirsch_length,
    pc_inv,
    pc_mul,
    pc_pow,
    symmetric3,
    z2_by_z,
)

__all__ = [
    "HeisenbergLikeElement",
    "MetabelianPlatform",
    "PcElement",
    "PcPresentation",
    "UnitriangularMatrix",
    "collect",
    "commutator",
    "dihedral8",
    "engel_word",
    "enumerate_unitriangular",
    "free_abelian",
    "heis_conj",
    "heis_inv",
    "heis_mul",
    "heis_pow",
    "hirsch_length",
    "is_n_engel",
    "pc_inv",
    "pc_mul",
    "pc_pow",
    "symmetric3",
    "unitriangular_order",
    "z2_by_z",
]
