"""Streaming: values arrive one at a time and rules follow the data.

The stream encoder works in tumbling windows.  After the first window it
learns rules from what it saw; later it only relearns when a window does
worse than the one before.  Here the series switches from one decimal to
six halfway through, and the encoder reacts one window later.
"""

import numpy as np

from elfstar import synth
from elfstar.streamcodec import StreamEncoder, iter_stream_decompress

coarse = synth.random_walk(3000, alpha=1, step=0.5, seed=1)
fine = synth.random_walk(3000, alpha=6, step=0.001, start=coarse[-1], seed=2)
values = np.concatenate([coarse, fine])

enc = StreamEncoder(window=500)
for v in values:  # one value at a time, as a sensor would deliver them
    enc.feed(float(v))
data = enc.finish()

for i, (bits, ratio) in enumerate(zip(enc.window_bits, enc.ratios)):
    mark = "  <- new rules" if i in enc.rule_updates else ""
    print(f"window {i:>2}: {bits:>6} bits ratio {ratio:.3f}{mark}")

decoded = list(iter_stream_decompress(data))
assert np.array_equal(np.array(decoded).view(np.uint64), values.view(np.uint64))
print(f"\n{values.size} values in {len(data)} bytes, ratio {len(data) / (8 * values.size):.4f}")
