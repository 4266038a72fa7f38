"""Leading/trailing zero counts of XOR words and their 64-bucket histograms."""

import numpy as np


def count_lead(x: int) -> int:
    if x <= 0 or x >> 64:
        raise ValueError("count_lead needs a nonzero 64-bit word")
    return 64 - x.bit_length()


def count_trail(x: int) -> int:
    if x <= 0 or x >> 64:
        raise ValueError("count_trail needs a nonzero 64-bit word")
    return (x & -x).bit_length() - 1


class CountDistribution:
    """Histogram ``c_0..c_63`` of zero counts with the pruning tables.

    ``nz`` counts nonzero buckets among ``c_1..c_63``.  ``nz_f[j]`` is the
    number of nonzero buckets in ``c_1..c_j`` and ``nz_r[j]`` the number in
    ``c_{j+1}..c_63``; both arrays are indexed 0..63 with entry 0 unused
    (``nz_f[0] = 0``, ``nz_r[0] = nz``).
    """

    def __init__(self, counts=None):
        if counts is None:
            self.c = np.zeros(64, dtype=np.int64)
        else:
            c = np.asarray(counts, dtype=np.int64)
            if c.shape != (64,):
                raise ValueError(f"expected 64 counters, got shape {c.shape}")
            if (c < 0).any():
                raise ValueError("counters must be non-negative")
            self.c = c.copy()
        self._tables = None

    @classmethod
    def from_samples(cls, samples):
        samples = np.asarray(samples, dtype=np.int64)
        if samples.size and (samples.min() < 0 or samples.max() > 63):
            raise ValueError("zero counts must lie in [0, 63]")
        return cls(np.bincount(samples, minlength=64))

    def accumulate(self, k: int) -> None:
        if not 0 <= k <= 63:
            raise ValueError(f"bucket {k} outside [0, 63]")
        self.c[k] += 1
        self._tables = None

    def merge(self, other: "CountDistribution") -> "CountDistribution":
        return CountDistribution(self.c + other.c)

    @property
    def total(self) -> int:
        return int(self.c.sum())

    def _build(self):
        nonzero = (self.c[1:] != 0).astype(np.int64)
        f = np.zeros(64, dtype=np.int64)
        f[1:] = np.cumsum(nonzero)
        nz = int(f[63])
        self._tables = (nz, f, nz - f)
        return self._tables

    @property
    def nz(self) -> int:
        return (self._tables or self._build())[0]

    @property
    def nz_f(self) -> np.ndarray:
        return (self._tables or self._build())[1]

    @property
    def nz_r(self) -> np.ndarray:
        return (self._tables or self._build())[2]

    def counts(self) -> list:
        return [int(x) for x in self.c]

    def __eq__(self, other):
        if not isinstance(other, CountDistribution):
            return NotImplemented
        return bool(np.array_equal(self.c, other.c))

    def __repr__(self):
        nonzero = {i: int(n) for i, n in enumerate(self.c) if n}
        return f"CountDistribution({nonzero})"

    def to_text(self) -> str:
        """64 lines of ``index count``."""
        return "\n".join(f"{i} {int(n)}" for i, n in enumerate(self.c))


def distributions(xors):
    """Lead and trail distributions over the nonzero words of ``xors``."""
    leads = []
    trails = []
    for x in xors:
        if x:
            leads.append(64 - x.bit_length())
            trails.append((x & -x).bit_length() - 1)
    return CountDistribution.from_samples(leads), CountDistribution.from_samples(trails)
