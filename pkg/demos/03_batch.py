"""Batch compression of a file, block by block.

Blocks are independent, so a bigger input can be split across worker
processes.  The container keeps the block size and total count in its
header so decoding needs nothing else.
"""

import time

import numpy as np

from elfstar import compress, decompress, synth
from elfstar.blockcodec import CodecConfig

values = np.concatenate([synth.random_walk(50_000, alpha=a, step=0.5 * 10**-a, seed=a) for a in (1, 2, 3, 4)])
for label, cfg in (
    ("adaptive rules, relaxed sharing", CodecConfig()),
    ("fixed rules", CodecConfig(rule_mode="fixed")),
    ("adaptive rules, strict sharing", CodecConfig(share_mode="legacy")),
):
    t0 = time.perf_counter()
    data = compress(values, 1000, cfg)
    enc = time.perf_counter() - t0
    t0 = time.perf_counter()
    back = decompress(data)
    dec = time.perf_counter() - t0
    assert np.array_equal(back.view(np.uint64), values.view(np.uint64))
    print(f"{label:<32} ratio={len(data) / (8 * values.size):.4f}  encode {enc:.2f}s  decode {dec:.2f}s")

t0 = time.perf_counter()
compress(values, 1000, workers=4)
print(f"4 workers: encode {time.perf_counter() - t0:.2f}s")
