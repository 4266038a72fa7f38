"""Streaming Elf* over tumbling windows.

Every window starts with one flag bit; a 1 is followed by a new lead and
trail rule, a 0 keeps the active pair.  Window 0 runs on the built-in
default rules unless the configuration supplies others.  After window 0
the rules are always recomputed from the window just finished; after a later window ``i`` they are recomputed only
when its ratio got worse than window ``i - 1`` (``cr[i-1] - cr[i] < 0``).
The XOR chain and the stored lead/trail window carry across boundaries.
"""

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import container
from .bitio import BitSink, BitSource
from .blockcodec import (
    CodecConfig,
    EncoderState,
    RuleMode,
    decode_run,
    encode_run,
    erase_all,
    read_rule,
    write_rule,
)
from .distrib import CountDistribution
from .errors import DecodeError, FormatError
from .ruleopt import DEFAULT_TRAIL_RULE, ELF_LEAD_RULE, Rule, rule_or_default

DEFAULT_WINDOW = 1000


@dataclass
class WindowState:
    w: int
    active_lead_rule: Rule
    active_trail_rule: Rule
    index: int = 0
    position: int = 0
    start_bit: int = 0
    cr_prev: Optional[float] = None
    cr_curr: Optional[float] = None
    pending_leads: list = field(default_factory=list)
    pending_trails: list = field(default_factory=list)
    next_rules: Optional[tuple] = None

    @property
    def pending_lead_cd(self) -> CountDistribution:
        return CountDistribution.from_samples(self.pending_leads)

    @property
    def pending_trail_cd(self) -> CountDistribution:
        return CountDistribution.from_samples(self.pending_trails)


class StreamEncoder:
    """Push values with :meth:`feed` / :meth:`feed_many`, then :meth:`finish`.

    ``rule_updates`` lists the windows whose flag bit announced new rules,
    and ``ratios`` the per-window compression ratios used for the refresh
    decisions.
    """

    def __init__(self, window: int = DEFAULT_WINDOW, config: CodecConfig = None):
        if not 0 < window < 1 << 32:
            raise ValueError(f"window size {window} out of range")
        self.config = config or CodecConfig()
        self.window_state = WindowState(window, ELF_LEAD_RULE, DEFAULT_TRAIL_RULE)
        # non-default starting rules go out behind window 0's flag bit
        self.window_state.next_rules = (self.config.fixed_lead_rule, self.config.fixed_trail_rule)
        self.encoder_state = EncoderState()
        self.sink = BitSink()
        self.count = 0
        self.rule_updates: List[int] = []
        self.window_bits: List[int] = []
        self.ratios: List[float] = []
        self._finished = False

    def feed(self, v: float) -> None:
        self.feed_many(np.array([v], dtype=np.float64))

    def feed_many(self, values) -> None:
        if self._finished:
            raise RuntimeError("stream already finished")
        arr = np.ascontiguousarray(values, dtype=np.float64).reshape(-1)
        ws = self.window_state
        i = 0
        while i < arr.size:
            if ws.position == 0:
                self._open_window()
            take = min(ws.w - ws.position, arr.size - i)
            erased, alphas = erase_all(arr[i : i + take])
            leads, trails = encode_run(
                self.encoder_state,
                self.sink,
                erased,
                alphas,
                ws.active_lead_rule,
                ws.active_trail_rule,
                self.config.legacy,
            )
            ws.pending_leads.extend(leads)
            ws.pending_trails.extend(trails)
            ws.position += take
            self.count += take
            i += take
            if ws.position == ws.w:
                self._close_window()

    def _open_window(self) -> None:
        ws = self.window_state
        ws.start_bit = self.sink.bit_len
        new = ws.next_rules
        ws.next_rules = None
        if new is not None and new != (ws.active_lead_rule, ws.active_trail_rule):
            self.sink.write_bits(1, 1)
            write_rule(self.sink, new[0])
            write_rule(self.sink, new[1])
            ws.active_lead_rule, ws.active_trail_rule = new
            self.rule_updates.append(ws.index)
        else:
            self.sink.write_bits(0, 1)

    def _close_window(self) -> None:
        ws = self.window_state
        bits = self.sink.bit_len - ws.start_bit
        ws.cr_curr = bits / (64 * ws.position)
        self.window_bits.append(bits)
        self.ratios.append(ws.cr_curr)
        if ws.index == 0:
            refresh = True
        else:
            refresh = ws.cr_prev - ws.cr_curr < 0
        if refresh and self.config.rule_mode is RuleMode.ADAPTIVE and ws.pending_leads:
            ws.next_rules = (
                rule_or_default(ws.pending_lead_cd),
                rule_or_default(ws.pending_trail_cd),
            )
        ws.cr_prev = ws.cr_curr
        ws.pending_leads = []
        ws.pending_trails = []
        ws.index += 1
        ws.position = 0

    def finish(self) -> bytes:
        if self._finished:
            raise RuntimeError("stream already finished")
        if self.count == 0:
            raise ValueError("no values were fed")
        ws = self.window_state
        if ws.position:
            self.window_bits.append(self.sink.bit_len - ws.start_bit)
        self._finished = True
        header = container.pack_header(container.MODE_STREAM, ws.w, self.count)
        return header + container.pack_payload(self.sink.getvalue())


def stream_compress(values, window: int = DEFAULT_WINDOW, config: CodecConfig = None) -> bytes:
    enc = StreamEncoder(window, config)
    enc.feed_many(values)
    return enc.finish()


def iter_stream_decompress(data: bytes):
    """Yield decoded values window by window."""
    data = bytes(data)
    mode, w, total = container.parse_header(data)
    if mode != container.MODE_STREAM:
        raise FormatError("not a stream container", 5)
    payloads = list(container.iter_payloads(data))
    if len(payloads) != 1:
        raise FormatError(f"stream container needs one payload, found {len(payloads)}", container.HEADER_SIZE)
    offset, payload = payloads[0]
    if total == 0 or not payload:
        raise FormatError("empty stream payload", offset)
    source = BitSource(payload)
    state = EncoderState()
    lead_rule, trail_rule = ELF_LEAD_RULE, DEFAULT_TRAIL_RULE
    remaining = total
    while remaining:
        pos = source.cursor
        if source.read_bit():
            try:
                lead_rule = read_rule(source)
                trail_rule = read_rule(source)
            except DecodeError as exc:
                raise DecodeError(f"window rules: {exc}", pos) from None
        n = min(w, remaining)
        out = []
        decode_run(state, source, n, lead_rule, trail_rule, out)
        remaining -= n
        yield from out


def stream_decompress(data: bytes) -> np.ndarray:
    return np.array(list(iter_stream_decompress(data)), dtype=np.float64)
