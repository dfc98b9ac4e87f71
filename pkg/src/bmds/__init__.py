"""Binary MDS array codes over F2[x]/(1 + x^(p*tau)).

Two code families are provided: ``C1`` (odd parity count, built from an
encoding matrix) and ``C2`` (even parity count, built from a check matrix).
Both support encoding, any-k-of-n decoding and single-column repair that
downloads close to the minimum-storage-regenerating amount of data.
"""
from .code import CodeParams, MonomialMatrix, build_check_matrix, build_encoding_matrix, validate
from .codec import ColumnSet, decode, encode, encode_c1, encode_c2, lift, drop
from .errors import (
    BmdsError,
    DimensionError,
    DomainError,
    FormatError,
    NotInvertibleError,
    NotMDSError,
    ParameterError,
    RepairError,
    UnrecoverableError,
)
from .gf2 import BACKEND
from .mdscheck import check_mds, sufficient_bound, table1_scan
from .repair import RepairPlan, bandwidth_report, execute_repair, msr_lower_bound, plan_repair
from .ring import RingContext, RingElement

__version__ = "0.1.0"
