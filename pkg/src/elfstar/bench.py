"""Benchmark harness reporting ratio and per-block codec times.

Timings wrap only the in-memory codec calls and take the median of
``repeats`` runs per block.  Batch ratios are per-block payload bytes over
``8 * values``, averaged across blocks; the stream ratio covers the whole
stream payload.
"""

import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List

import numpy as np

from . import container
from .blockcodec import CodecConfig, RuleMode, ShareMode, compress_block, decompress_block, split_blocks
from .streamcodec import StreamEncoder, stream_decompress

CONFIGS = {
    "adaptive": CodecConfig(),
    "fixed": CodecConfig(rule_mode=RuleMode.FIXED),
    "legacy": CodecConfig(share_mode=ShareMode.LEGACY_C),
    "fixed-legacy": CodecConfig(rule_mode=RuleMode.FIXED, share_mode=ShareMode.LEGACY_C),
}
DEFAULT_CONFIGS = ("adaptive", "fixed", "legacy", "stream")


@dataclass
class BenchRow:
    name: str
    value_count: int
    compression_ratio: float
    compress_time_us_per_block: float
    decompress_time_us_per_block: float
    mode: str
    config: str
    block_ratios: List[float] = field(default_factory=list, repr=False)


@dataclass
class BenchReport:
    rows: List[BenchRow] = field(default_factory=list)
    errors: Dict[str, str] = field(default_factory=dict)

    COLUMNS = (
        "name",
        "value_count",
        "compression_ratio",
        "compress_time_us_per_block",
        "decompress_time_us_per_block",
        "mode",
        "config",
    )

    def to_csv(self) -> str:
        lines = [",".join(self.COLUMNS)]
        for row in self.rows:
            d = asdict(row)
            lines.append(
                f"{d['name']},{d['value_count']},{d['compression_ratio']:.6f},"
                f"{d['compress_time_us_per_block']:.1f},{d['decompress_time_us_per_block']:.1f},"
                f"{d['mode']},{d['config']}"
            )
        return "\n".join(lines)

    def to_table(self) -> str:
        head = f"{'name':<24} {'values':>9} {'config':<13} {'ratio':>8} {'comp us':>10} {'decomp us':>10}"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(
                f"{r.name:<24} {r.value_count:>9} {r.config:<13} {r.compression_ratio:>8.4f} "
                f"{r.compress_time_us_per_block:>10.1f} {r.decompress_time_us_per_block:>10.1f}"
            )
        for name, msg in self.errors.items():
            lines.append(f"{name}: ERROR {msg}")
        return "\n".join(lines)


def _median_us(fn, arg, repeats):
    times = []
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(arg)
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times) * 1e6


def bench_batch(name, values, config_name, block_size=1000, max_blocks=100, repeats=5):
    config = CONFIGS[config_name]
    blocks = split_blocks(np.asarray(values, dtype=np.float64), block_size)[:max_blocks]
    ratios = []
    ctimes = []
    dtimes = []
    for block in blocks:
        payload, ct = _median_us(lambda b: compress_block(b, config), block, repeats)
        _, dt = _median_us(decompress_block, payload, repeats)
        ratios.append(len(payload) / (8 * block.size))
        ctimes.append(ct)
        dtimes.append(dt)
    return BenchRow(
        name,
        sum(b.size for b in blocks),
        float(np.mean(ratios)),
        float(np.mean(ctimes)),
        float(np.mean(dtimes)),
        "batch",
        config_name,
        ratios,
    )


def stream_payload_ratio(data: bytes, count: int) -> float:
    return (len(data) - container.HEADER_SIZE - 4) / (8 * count)


def bench_stream(name, values, window=1000, max_blocks=100, repeats=5):
    values = np.asarray(values, dtype=np.float64)[: window * max_blocks]
    nblocks = -(-values.size // window)

    def run(v):
        enc = StreamEncoder(window)
        enc.feed_many(v)
        return enc.finish()

    data, ct = _median_us(run, values, repeats)
    _, dt = _median_us(stream_decompress, data, repeats)
    return BenchRow(
        name,
        int(values.size),
        stream_payload_ratio(data, values.size),
        ct / nblocks,
        dt / nblocks,
        "stream",
        "stream",
    )


def run_bench(series, configs=DEFAULT_CONFIGS, block_size=1000, max_blocks=100, repeats=5) -> BenchReport:
    """Bench every ``name -> values`` entry of ``series`` under ``configs``.

    A failing input is recorded in ``report.errors`` and the run goes on.
    """
    report = BenchReport()
    for name, values in series.items():
        try:
            if isinstance(values, Exception):
                raise values
            for cfg in configs:
                if cfg == "stream":
                    report.rows.append(bench_stream(name, values, block_size, max_blocks, repeats))
                else:
                    report.rows.append(bench_batch(name, values, cfg, block_size, max_blocks, repeats))
        except Exception as exc:  # per-input failures must not stop the run
            report.errors[name] = str(exc)
    return report
