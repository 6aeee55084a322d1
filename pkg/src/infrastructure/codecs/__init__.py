"""
Text codecs for laboratory artifacts: CSV for sampled data, JSON for
set models, Teichmueller points and reports.
"""

from .csv_codecs import (
    decode_circle,
    decode_curve,
    decode_field,
    decode_trace,
    encode_circle,
    encode_curve,
    encode_field,
    encode_map,
    encode_trace,
)
from .json_codecs import (
    dump_json,
    dump_report,
    read_teich_point,
    set_model_from_dict,
    set_model_to_dict,
    write_teich_point,
)

__all__ = [
    "decode_circle",
    "decode_curve",
    "decode_field",
    "decode_trace",
    "encode_circle",
    "encode_curve",
    "encode_field",
    "encode_map",
    "encode_trace",
    "dump_json",
    "dump_report",
    "read_teich_point",
    "set_model_from_dict",
    "set_model_to_dict",
    "write_teich_point",
]
