"""Equiangular tight frames from hyperovals, with exact certificates."""

from .cyclo import CycloMatrix, CycloNum, root_of_unity
from .designs import IncidenceMatrix, singer_projective_plane, verify_bibd
from .errors import HyperEtfError
from .etf import extend, flatten, hyperoval_etf, steiner_etf
from .frame import FrameMatrix, SpanSpec
from .frame_io import read_frame, write_csv, write_json
from .gf import make_field
from .groups import AbelianGroup, character_table, harmonic_etf, is_difference_set, paired_search
from .surd import Surd
from .verify import EtfCertificate, certify, exact_rank, welch_bound_sq

__all__ = [
    "AbelianGroup", "CycloMatrix", "CycloNum", "EtfCertificate", "FrameMatrix", "HyperEtfError",
    "IncidenceMatrix", "SpanSpec", "Surd", "certify", "character_table", "exact_rank", "extend",
    "flatten", "harmonic_etf", "hyperoval_etf", "is_difference_set", "make_field", "paired_search",
    "read_frame", "root_of_unity", "singer_projective_plane", "steiner_etf", "verify_bibd",
    "welch_bound_sq", "write_csv", "write_json",
]
