"""Batch Elf* codec: one self-contained bit stream per block.

Block payload, MSB-first::

    value_count u32 | lead rule | trail rule | record*

A rule is ``ln`` (3 bits, 0..5) followed by ``2**ln - 1`` items of 6 bits
(``a_0 = 0`` is implicit).  Each record is an erase preamble followed by
one of three XOR cases::

    erase:  0                      value stored unerased
            1 1                    erased, same alpha as last transmitted
            1 0 aaaa               erased, new alpha
    xor:    01                     xor == 0
            1  center              reuse stored lead/trail window
            00 li ti center        new window from rule indices li / ti

``center`` holds the bits of the XOR word between the (approximated)
leading and trailing zero runs.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import container
from .bitio import BitSink, BitSource
from .distrib import CountDistribution
from .errors import DecodeError, FormatError
from .floatcodec import ALPHA_MAX, bits_to_float, erase_bits, restore
from .ruleopt import DEFAULT_TRAIL_RULE, ELF_LEAD_RULE, Rule, rule_or_default

DEFAULT_BLOCK_SIZE = 1000
MAX_RULE_BITS = 5


class RuleMode(str, Enum):
    ADAPTIVE = "adaptive"
    FIXED = "fixed"


class ShareMode(str, Enum):
    ADAPTIVE_CPRIME = "cprime"
    LEGACY_C = "legacy"


@dataclass(frozen=True)
class CodecConfig:
    rule_mode: RuleMode = RuleMode.ADAPTIVE
    share_mode: ShareMode = ShareMode.ADAPTIVE_CPRIME
    fixed_lead_rule: Rule = ELF_LEAD_RULE
    fixed_trail_rule: Rule = DEFAULT_TRAIL_RULE

    def __post_init__(self):
        object.__setattr__(self, "rule_mode", RuleMode(self.rule_mode))
        object.__setattr__(self, "share_mode", ShareMode(self.share_mode))
        for rule in (self.fixed_lead_rule, self.fixed_trail_rule):
            check_serializable(rule)

    @property
    def legacy(self) -> bool:
        return self.share_mode is ShareMode.LEGACY_C


@dataclass(frozen=True)
class BlockHeader:
    value_count: int
    lead_rule: Rule
    trail_rule: Rule


class EncoderState:
    """XOR-chain state both sides keep in lockstep.

    ``stored_lead``/``stored_trail`` are the approximated counts of the last
    record that transmitted a window, i.e. what the decoder knows.
    ``prev_alpha`` is 0 until an alpha has been sent.
    """

    __slots__ = ("prev_bits", "stored_lead", "stored_trail", "prev_alpha")

    def __init__(self):
        self.prev_bits = 0
        self.stored_lead = 0
        self.stored_trail = 0
        self.prev_alpha = 0

    def snapshot(self):
        return (self.prev_bits, self.stored_lead, self.stored_trail, self.prev_alpha)


def check_serializable(rule: Rule) -> None:
    z = rule.z
    if z & (z - 1) or z > 1 << MAX_RULE_BITS:
        raise ValueError(f"rule length {z} is not a power of two <= 32: {rule}")


def write_rule(sink: BitSink, rule: Rule) -> None:
    check_serializable(rule)
    sink.write_bits(rule.presentation_bits, 3)
    for a in rule.items[1:]:
        sink.write_bits(a, 6)


def read_rule(source: BitSource) -> Rule:
    pos = source.cursor
    ln = source.read_bits(3)
    if ln > MAX_RULE_BITS:
        raise DecodeError(f"rule length exponent {ln} > {MAX_RULE_BITS}", pos)
    items = [0] + [source.read_bits(6) for _ in range((1 << ln) - 1)]
    try:
        return Rule(tuple(items))
    except ValueError as exc:
        raise DecodeError(f"invalid rule in header: {exc}", pos) from None


def rule_bits(rule: Rule) -> int:
    return 3 + 6 * (rule.z - 1)


def should_share(lead, trail, stored_lead, stored_trail, ln, tn, mode=ShareMode.ADAPTIVE_CPRIME):
    """Whether a nonzero XOR word reuses the stored lead/trail window."""
    if mode is ShareMode.LEGACY_C or mode == "legacy":
        return lead == stored_lead and trail >= stored_trail
    return (
        lead >= stored_lead
        and trail >= stored_trail
        and (lead - stored_lead) + (trail - stored_trail) < 1 + ln + tn
    )


def encode_run(state, sink, erased, alphas, lead_rule, trail_rule, legacy=False):
    """Encode pre-erased words (``alphas[i] == 0`` means unerased).

    Returns the lead and trail zero counts of the nonzero XOR words seen,
    so streaming callers can gather distributions in the same pass.
    """
    write = sink.write_bits
    ln = lead_rule.presentation_bits
    tn = trail_rule.presentation_bits
    limit = 1 + ln + tn
    lindex, lvalue = lead_rule._index, lead_rule._value
    tindex, tvalue = trail_rule._index, trail_rule._value
    width00 = 2 + ln + tn
    prev = state.prev_bits
    sl = state.stored_lead
    st = state.stored_trail
    prev_alpha = state.prev_alpha
    leads = []
    trails = []
    for bits, alpha in zip(erased, alphas):
        if alpha:
            if alpha == prev_alpha:
                pre, npre = 0b11, 2
            else:
                pre, npre = 0b100000 | alpha, 6
                prev_alpha = alpha
        else:
            pre, npre = 0, 1
        x = bits ^ prev
        prev = bits
        if not x:
            write((pre << 2) | 0b01, npre + 2)
            continue
        lead = 64 - x.bit_length()
        trail = (x & -x).bit_length() - 1
        leads.append(lead)
        trails.append(trail)
        if legacy:
            share = lead == sl and trail >= st
        else:
            share = lead >= sl and trail >= st and lead - sl + trail - st < limit
        if share:
            write((pre << 1) | 1, npre + 1)
            write(x >> st, 64 - sl - st)
        else:
            sl = lvalue[lead]
            st = tvalue[trail]
            write((pre << width00) | (lindex[lead] << tn) | tindex[trail], npre + width00)
            write(x >> st, 64 - sl - st)
    state.prev_bits = prev
    state.stored_lead = sl
    state.stored_trail = st
    state.prev_alpha = prev_alpha
    return leads, trails


def decode_run(state, source, count, lead_rule, trail_rule, out):
    """Decode ``count`` records, appending floats to ``out``."""
    read = source.read_bits
    read_bit = source.read_bit
    ln = lead_rule.presentation_bits
    tn = trail_rule.presentation_bits
    litems = lead_rule.items
    titems = trail_rule.items
    lz = len(litems)
    tz = len(titems)
    prev = state.prev_bits
    sl = state.stored_lead
    st = state.stored_trail
    prev_alpha = state.prev_alpha
    append = out.append
    for _ in range(count):
        pos = source.cursor
        alpha = 0
        if read_bit():
            if read_bit():
                if not prev_alpha:
                    raise DecodeError("'same alpha' flag before any alpha was sent", pos)
                alpha = prev_alpha
            else:
                alpha = read(4)
                if not 1 <= alpha <= ALPHA_MAX:
                    raise DecodeError(f"alpha {alpha} out of range", pos)
                prev_alpha = alpha
        if read_bit():
            x = read(64 - sl - st) << st
        elif read_bit():
            x = 0
        else:
            li = read(ln)
            ti = read(tn)
            if li >= lz or ti >= tz:
                raise DecodeError("rule index out of range", pos)
            sl = litems[li]
            st = titems[ti]
            if sl + st > 63:
                raise DecodeError("approximated lead + trail exceeds 63", pos)
            x = read(64 - sl - st) << st
        prev ^= x
        v = bits_to_float(prev)
        if alpha:
            try:
                v = restore(v, alpha)
            except (ValueError, OverflowError):
                raise DecodeError("erased flag set on a non-finite value", pos) from None
        append(v)
    state.prev_bits = prev
    state.stored_lead = sl
    state.stored_trail = st
    state.prev_alpha = prev_alpha


def _as_array(values) -> np.ndarray:
    arr = np.ascontiguousarray(values, dtype=np.float64).reshape(-1)
    return arr


def erase_all(arr: np.ndarray):
    """Erased storage words and alphas for a float64 array."""
    erased = []
    alphas = []
    for v, bits in zip(arr.tolist(), arr.view(np.uint64).tolist()):
        e, a = erase_bits(v, bits)
        erased.append(e)
        alphas.append(a)
    return erased, alphas


def xor_distributions(erased, prev_bits=0):
    """Lead/trail distributions of the XOR chain over ``erased`` words."""
    leads = []
    trails = []
    prev = prev_bits
    for bits in erased:
        x = bits ^ prev
        prev = bits
        if x:
            leads.append(64 - x.bit_length())
            trails.append((x & -x).bit_length() - 1)
    return CountDistribution.from_samples(leads), CountDistribution.from_samples(trails)


def choose_rules(lead_cd, trail_cd, config: CodecConfig):
    if config.rule_mode is RuleMode.FIXED:
        return config.fixed_lead_rule, config.fixed_trail_rule
    return rule_or_default(lead_cd), rule_or_default(trail_cd)


def compress_block(values, config: CodecConfig = None) -> bytes:
    """Encode one block into a self-contained payload."""
    config = config or CodecConfig()
    arr = _as_array(values)
    n = arr.size
    if n == 0:
        raise ValueError("cannot compress an empty block")
    if n >= 1 << 32:
        raise ValueError("block too large for a 32-bit value count")
    erased, alphas = erase_all(arr)
    lead_rule, trail_rule = choose_rules(*xor_distributions(erased), config)
    sink = BitSink()
    sink.write_bits(n, 32)
    write_rule(sink, lead_rule)
    write_rule(sink, trail_rule)
    encode_run(EncoderState(), sink, erased, alphas, lead_rule, trail_rule, config.legacy)
    return sink.getvalue()


def read_block_header(source: BitSource) -> BlockHeader:
    pos = source.cursor
    n = source.read_bits(32)
    if n == 0:
        raise DecodeError("block header declares zero values", pos)
    return BlockHeader(n, read_rule(source), read_rule(source))


def encode_value(state: EncoderState, sink: BitSink, v: float, header: BlockHeader, mode=ShareMode.ADAPTIVE_CPRIME):
    """Append one record for ``v``; ``state`` is updated in place."""
    arr = np.array([v], dtype=np.float64)
    erased, alphas = erase_all(arr)
    encode_run(state, sink, erased, alphas, header.lead_rule, header.trail_rule, ShareMode(mode) is ShareMode.LEGACY_C)
    return state


def decode_value(state: EncoderState, source: BitSource, header: BlockHeader) -> float:
    out = []
    decode_run(state, source, 1, header.lead_rule, header.trail_rule, out)
    return out[0]


def decompress_block(payload: bytes) -> np.ndarray:
    source = BitSource(payload)
    header = read_block_header(source)
    out = []
    decode_run(EncoderState(), source, header.value_count, header.lead_rule, header.trail_rule, out)
    return np.array(out, dtype=np.float64)


def split_blocks(arr: np.ndarray, block_size: int):
    return [arr[i : i + block_size] for i in range(0, arr.size, block_size)]


def compress(values, block_size: int = DEFAULT_BLOCK_SIZE, config: CodecConfig = None, workers: int = 1) -> bytes:
    """Encode a whole series as a batch container."""
    config = config or CodecConfig()
    arr = _as_array(values)
    if arr.size == 0:
        raise ValueError("cannot compress an empty series")
    if not 0 < block_size < 1 << 32:
        raise ValueError(f"block size {block_size} out of range")
    blocks = split_blocks(arr, block_size)
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(workers) as pool:
            payloads = list(pool.map(compress_block, blocks, [config] * len(blocks)))
    else:
        payloads = [compress_block(b, config) for b in blocks]
    parts = [container.pack_header(container.MODE_BATCH, block_size, arr.size)]
    parts.extend(container.pack_payload(p) for p in payloads)
    return b"".join(parts)


def decompress_batch(data: bytes) -> np.ndarray:
    mode, _, total = container.parse_header(data)
    if mode != container.MODE_BATCH:
        raise FormatError("not a batch container", 5)
    chunks = []
    seen = 0
    for offset, payload in container.iter_payloads(data):
        try:
            block = decompress_block(payload)
        except DecodeError as exc:
            raise DecodeError(f"block at byte {offset}: {exc}", offset) from None
        chunks.append(block)
        seen += block.size
    if seen != total:
        raise FormatError(f"header announces {total} values, blocks hold {seen}", 10)
    if not chunks:
        raise FormatError("container holds no blocks", container.HEADER_SIZE)
    return np.concatenate(chunks)
