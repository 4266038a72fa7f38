import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import same_bits
from elfstar import synth
from elfstar.bitio import BitSink, BitSource
from elfstar.blockcodec import (
    BlockHeader,
    CodecConfig,
    EncoderState,
    RuleMode,
    ShareMode,
    compress,
    compress_block,
    decode_run,
    decode_value,
    decompress_batch,
    decompress_block,
    encode_value,
    read_block_header,
    read_rule,
    rule_bits,
    should_share,
    write_rule,
)
from elfstar.container import decompress
from elfstar.errors import DecodeError
from elfstar.ruleopt import ELF_LEAD_RULE, Rule


def payload_bits(payload):
    """Bits actually consumed by a decoder over ``payload``."""
    src = BitSource(payload)
    header = read_block_header(src)
    decode_run(EncoderState(), src, header.value_count, header.lead_rule, header.trail_rule, [])
    return src.cursor


def test_should_share_examples():
    assert should_share(10, 50, 10, 50, 3, 3)
    assert should_share(10, 50, 10, 44, 3, 3)  # excess 6 < 7
    assert not should_share(10, 51, 10, 44, 3, 3)  # excess 7
    assert not should_share(11, 50, 10, 50, 3, 3, ShareMode.LEGACY_C)
    assert should_share(11, 50, 10, 50, 3, 3, ShareMode.ADAPTIVE_CPRIME)
    assert not should_share(9, 60, 10, 50, 3, 3)


def test_rule_serialization_roundtrip():
    for rule in [Rule((0,)), Rule((0, 9)), ELF_LEAD_RULE, Rule(tuple(range(0, 64, 2)))]:
        sink = BitSink()
        write_rule(sink, rule)
        assert sink.bit_len == rule_bits(rule)
        assert read_rule(BitSource(sink.getvalue())) == rule
    with pytest.raises(ValueError):
        write_rule(BitSink(), Rule((0, 1, 2)))


def test_header_rule_violation_is_decode_error():
    sink = BitSink()
    sink.write_bits(2, 3)
    for a in (5, 5, 9):  # not strictly increasing
        sink.write_bits(a, 6)
    with pytest.raises(DecodeError):
        read_rule(BitSource(sink.getvalue()))
    sink = BitSink()
    sink.write_bits(7, 3)
    with pytest.raises(DecodeError):
        read_rule(BitSource(sink.getvalue() + bytes(64)))


def _encode_one(state, v, header):
    sink = BitSink()
    encode_value(state, sink, v, header)
    return sink


def test_zero_xor_costs_two_flag_bits():
    header = BlockHeader(2, ELF_LEAD_RULE, Rule((0, 16, 24, 30)))
    state = EncoderState()
    _encode_one(state, 1.5e300, header)  # unerased: preamble is one bit
    sink = _encode_one(state, 1.5e300, header)
    assert sink.bit_len == 1 + 2
    assert sink.getvalue() == bytes([0b00100000])


def test_share_path_taken_with_equal_counts():
    header = BlockHeader(3, Rule((0, 8, 12, 16)), Rule((0, 40)))
    state = EncoderState()
    state.stored_lead, state.stored_trail = 12, 40
    # xor with lead 12, trail 40 against prev 0; value unerased (NaN pattern)
    x = 0x0008010000000000
    assert (64 - x.bit_length(), (x & -x).bit_length() - 1) == (12, 40)
    sink = BitSink()
    from elfstar.blockcodec import encode_run

    encode_run(state, sink, [x], [0], header.lead_rule, header.trail_rule)
    assert sink.bit_len == 1 + 1 + (64 - 12 - 40)
    assert BitSource(sink.getvalue()).read_bits(2) == 0b01  # unerased, flag '1'
    # now the lead drops below the stored window: must take the '00' path
    state2 = EncoderState()
    state2.stored_lead, state2.stored_trail = 16, 0
    sink = BitSink()
    encode_run(state2, sink, [x], [0], header.lead_rule, header.trail_rule)
    assert BitSource(sink.getvalue()).read_bits(3) == 0b000
    assert (state2.stored_lead, state2.stored_trail) == (12, 40)


def test_encode_decode_value_pair():
    header = BlockHeader(3, ELF_LEAD_RULE, Rule((0, 16, 24, 30)))
    values = [3.17, 3.25, 3.21]
    enc = EncoderState()
    sink = BitSink()
    for v in values:
        encode_value(enc, sink, v, header)
    dec = EncoderState()
    src = BitSource(sink.getvalue())
    assert [decode_value(dec, src, header) for _ in values] == values
    assert dec.snapshot() == enc.snapshot()


def test_identical_values():
    one = compress_block([12.34])
    many = compress_block([12.34] * 1000)
    b1 = payload_bits(one)
    # every repeat: erased + same-alpha (2 bits) then zero-xor flag (2 bits)
    assert payload_bits(many) == b1 + 999 * 4
    assert len(many) == -(-(b1 + 999 * 4) // 8)
    assert same_bits(decompress_block(many), [12.34] * 1000)


def test_identical_unerasable_values():
    b1 = payload_bits(compress_block([np.pi]))
    assert payload_bits(compress_block([np.pi] * 1000)) == b1 + 999 * 3


def test_random_walk_ratio_golden():
    block = synth.random_walk(1000, alpha=2, step=0.05, seed=0)
    payload = compress_block(block)
    ratio = len(payload) / (8 * 1000)
    assert ratio < 0.45
    assert len(payload) == 1203  # frozen from this implementation
    assert same_bits(decompress_block(payload), block)


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        compress_block([])
    with pytest.raises(ValueError):
        compress([])


def test_zero_count_header_rejected():
    with pytest.raises(DecodeError):
        decompress_block(bytes(16))


def test_truncated_payload():
    payload = compress_block(synth.random_walk(200, seed=1))
    with pytest.raises(DecodeError):
        decompress_block(payload[: len(payload) // 2])


def test_all_zero_xor_block_falls_back():
    payload = compress_block([0.0] * 50)
    src = BitSource(payload)
    header = read_block_header(src)
    assert header.lead_rule == Rule((0,)) and header.trail_rule == Rule((0,))
    assert same_bits(decompress_block(payload), [0.0] * 50)


def test_fixed_and_legacy_configs_roundtrip(walk):
    for cfg in [
        CodecConfig(rule_mode=RuleMode.FIXED),
        CodecConfig(share_mode="legacy"),
        CodecConfig(rule_mode="fixed", share_mode="legacy", fixed_lead_rule=Rule((0, 10)), fixed_trail_rule=Rule((0,))),
    ]:
        assert same_bits(decompress(compress(walk, 700, cfg)), walk)


def test_config_rejects_unserializable_rule():
    with pytest.raises(ValueError):
        CodecConfig(fixed_lead_rule=Rule((0, 1, 2)))
    with pytest.raises(ValueError):
        CodecConfig(rule_mode="sometimes")


def test_container_roundtrip_and_workers(walk):
    data = compress(walk, 1000)
    assert data[:4] == b"ELFS" and data[4] == 1 and data[5] == 0
    assert int.from_bytes(data[6:10], "little") == 1000
    assert int.from_bytes(data[10:18], "little") == walk.size
    assert compress(walk, 1000, workers=2) == data
    assert same_bits(decompress_batch(data), walk)


def test_container_count_mismatch():
    data = bytearray(compress([1.5, 2.5, 3.5], 2))
    data[10] = 4
    with pytest.raises(DecodeError):
        decompress(bytes(data))


def test_monotone_benefit():
    series = [
        synth.random_walk(4000, alpha=a, step=s, seed=k)
        for k, (a, s) in enumerate([(1, 0.5), (2, 0.05), (3, 0.2), (4, 0.01), (2, 5.0)])
    ]
    series.append(synth.decimal_uniform(4000, alpha=3, seed=9))
    for values in series:
        for i in range(0, values.size, 1000):
            block = values[i : i + 1000]
            adaptive = compress_block(block)
            fixed = compress_block(block, CodecConfig(rule_mode="fixed"))
            header = read_block_header(BitSource(adaptive))
            slack = 2 * (rule_bits(header.lead_rule) + rule_bits(header.trail_rule))
            assert payload_bits(adaptive) <= payload_bits(fixed) + slack


float_bits = st.integers(0, 2**64 - 1).map(lambda b: np.array([b], dtype=np.uint64).view(np.float64)[0])
decimals = st.builds(lambda d, a: d / 10**a, st.integers(-(10**9), 10**9), st.integers(1, 8))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.one_of(float_bits, decimals, st.sampled_from([0.0, -0.0, 1.0])), min_size=1, max_size=80))
def test_lossless_arbitrary(values):
    arr = np.array(values, dtype=np.float64)
    for cfg in (CodecConfig(), CodecConfig(share_mode="legacy"), CodecConfig(rule_mode="fixed")):
        assert same_bits(decompress_block(compress_block(arr, cfg)), arr)


def test_corruption_never_crashes(walk):
    payload = bytearray(compress_block(walk[:500]))
    rng = np.random.default_rng(5)
    outcomes = {"error": 0, "mismatch": 0, "silent": 0}
    for _ in range(300):
        damaged = bytearray(payload)
        bit = int(rng.integers(0, len(damaged) * 8))
        damaged[bit // 8] ^= 0x80 >> (bit % 8)
        try:
            out = decompress_block(bytes(damaged))
        except DecodeError:
            outcomes["error"] += 1
            continue
        if same_bits(out, walk[:500]):
            outcomes["silent"] += 1  # flip landed in padding
        else:
            outcomes["mismatch"] += 1
    assert outcomes["error"] + outcomes["mismatch"] >= 290
