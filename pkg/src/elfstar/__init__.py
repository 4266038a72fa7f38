"""Elf* / SElf*: erasing-based lossless compression of float64 time series."""

from .blockcodec import CodecConfig, RuleMode, ShareMode, compress, compress_block, decompress_block
from .container import decompress
from .distrib import CountDistribution, count_lead, count_trail
from .errors import DecodeError, ElfError, EmptyDistributionError, FormatError, TruncatedStreamError
from .floatcodec import DecimalMeta, decimal_meta, erasable_bits, erase, restore
from .ruleopt import Rule, RuleCost, global_app_rule, local_app_rule, total_cost
from .streamcodec import StreamEncoder, stream_compress, stream_decompress

__version__ = "0.1.0"

__all__ = [
    "CodecConfig",
    "CountDistribution",
    "DecimalMeta",
    "DecodeError",
    "ElfError",
    "EmptyDistributionError",
    "FormatError",
    "Rule",
    "RuleCost",
    "RuleMode",
    "ShareMode",
    "StreamEncoder",
    "TruncatedStreamError",
    "compress",
    "compress_block",
    "count_lead",
    "count_trail",
    "decimal_meta",
    "decompress",
    "decompress_block",
    "erasable_bits",
    "erase",
    "global_app_rule",
    "local_app_rule",
    "restore",
    "stream_compress",
    "stream_decompress",
    "total_cost",
]
