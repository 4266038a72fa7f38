"""Approximation rules for zero counts and the dynamic program that picks them.

A rule ``<a_0=0, a_1, ..., a_{z-1}>`` maps a zero count ``n`` down to the
largest item ``<= n``; transmitting the item index costs
``ceil(log2 z)`` bits per record, while the rounding costs ``n - App(n)``
extra stored bits.  :func:`local_app_rule` minimises the rounding cost for
a fixed ``z``; :func:`global_app_rule` picks ``z`` as well.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .distrib import CountDistribution
from .errors import EmptyDistributionError


@dataclass(frozen=True)
class Rule:
    items: Tuple[int, ...]
    _index: tuple = field(init=False, repr=False, compare=False)
    _value: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        items = tuple(int(a) for a in self.items)
        if not items or items[0] != 0:
            raise ValueError(f"rule must start with 0: {items}")
        if len(items) > 64:
            raise ValueError("rule has more than 64 items")
        for a, b in zip(items, items[1:]):
            if not a < b:
                raise ValueError(f"rule items must be strictly increasing: {items}")
        if items[-1] > 63:
            raise ValueError(f"rule items must lie in [0, 63]: {items}")
        index = []
        j = 0
        for n in range(64):
            while j + 1 < len(items) and items[j + 1] <= n:
                j += 1
            index.append(j)
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "_index", tuple(index))
        object.__setattr__(self, "_value", tuple(items[j] for j in index))

    @property
    def z(self) -> int:
        return len(self.items)

    @property
    def presentation_bits(self) -> int:
        return (len(self.items) - 1).bit_length()

    def approximate(self, n: int) -> Tuple[int, int]:
        """``(index, value)`` of the largest item not exceeding ``n``."""
        return self._index[n], self._value[n]

    def __str__(self):
        return ",".join(map(str, self.items))


GORILLA_RULE = Rule(tuple(range(32)))
ELF_LEAD_RULE = Rule((0, 8, 12, 16, 18, 20, 22, 24))
DEFAULT_TRAIL_RULE = Rule((0, 16, 24, 30, 34, 38, 42, 46))
ZERO_RULE = Rule((0,))


class RuleCost(NamedTuple):
    c_app: int
    c_pre: int

    @property
    def c_total(self) -> int:
        return self.c_app + self.c_pre


class DpTable(NamedTuple):
    """``dp[i][j]``: cheapest rounding cost of counts ``<= i`` with ``a_j = i``.

    ``None`` marks unreachable or pruned states; ``pre`` holds the previous
    item of the optimal partial rule (``-1`` before ``a_0``).
    """

    dp: List[List[Optional[int]]]
    pre: List[List[int]]
    z_eff: int


def _counts(cd) -> List[int]:
    if isinstance(cd, CountDistribution):
        return cd.counts()
    c = [int(x) for x in cd]
    if len(c) != 64:
        raise ValueError(f"expected 64 counters, got {len(c)}")
    return c


def _prefix(c):
    s = [0] * 65
    w = [0] * 65
    for p in range(64):
        s[p + 1] = s[p] + c[p]
        w[p + 1] = w[p] + c[p] * p
    return s, w


def total_cost(rule: Rule, cd) -> RuleCost:
    c = _counts(cd)
    value = rule._value
    c_app = sum(ci * (i - value[i]) for i, ci in enumerate(c) if ci)
    return RuleCost(c_app, sum(c) * rule.presentation_bits)


def dp_table(cd, z: int, prune: bool = True) -> DpTable:
    """Fill the state table for rules of ``min(z, nz + 1)`` items.

    With ``prune`` set, buckets with zero count never host an item (zero
    pruning) and an item ``a_j = i`` is skipped when fewer than ``j``
    nonzero buckets lie in ``[1, i]`` or fewer than ``z' - 1 - j`` lie above
    ``i`` (front-rear pruning).
    """
    if not 1 <= z <= 64:
        raise ValueError(f"rule length {z} outside [1, 64]")
    c = _counts(cd)
    f = [0] * 64
    for i in range(1, 64):
        f[i] = f[i - 1] + (c[i] != 0)
    nz = f[63]
    r = [nz - fi for fi in f]
    zp = min(z, nz + 1)
    s, w = _prefix(c)

    dp = [[None] * zp for _ in range(64)]
    pre = [[-1] * zp for _ in range(64)]
    dp[0][0] = 0
    for i in range(1, 64):
        if prune and c[i] == 0:
            continue
        wi = w[i]
        si = s[i]
        for j in range(1, min(i, zp - 1) + 1):
            if j == 1:
                dp[i][1] = wi
                pre[i][1] = 0
                continue
            if prune and (f[i] < j or r[i] < zp - 1 - j):
                continue
            best = None
            best_k = -1
            for k in range(j - 1, i):
                d = dp[k][j - 1]
                if d is None:
                    continue
                cost = d + (wi - w[k + 1]) - k * (si - s[k + 1])
                if best is None or cost < best:
                    best = cost
                    best_k = k
            if best is not None:
                dp[i][j] = best
                pre[i][j] = best_k
    return DpTable(dp, pre, zp)


def local_app_rule(cd, z: int, prune: bool = True) -> Tuple[Rule, int]:
    """Rule with exactly ``z`` items minimising the total rounding cost."""
    c = _counts(cd)
    table = dp_table(c, z, prune)
    dp, pre, zp = table
    s, w = _prefix(c)
    j = zp - 1
    best = None
    k_star = -1
    for k in range(j, 64):
        d = dp[k][j]
        if d is None:
            continue
        cost = d + (w[64] - w[k + 1]) - k * (s[64] - s[k + 1])
        if best is None or cost < best:
            best = cost
            k_star = k
    assert best is not None, "no feasible rule; pruning tables inconsistent"

    items = []
    k = k_star
    while k != -1:
        items.append(k)
        k = pre[k][j]
        j -= 1
    items.reverse()

    missing = z - len(items)
    if missing:
        # any extra item on an empty bucket leaves the cost unchanged
        taken = set(items)
        spare = [i for i in range(1, 64) if c[i] == 0 and i not in taken][:missing]
        assert len(spare) == missing, "not enough empty buckets to pad rule"
        items = sorted(items + spare)
    return Rule(tuple(items)), best


def global_app_rule(cd) -> Tuple[Rule, RuleCost]:
    """Rule of any length minimising rounding plus presentation cost."""
    c = _counts(cd)
    total = sum(c)
    if total == 0:
        raise EmptyDistributionError("empty distribution")
    nz = sum(1 for ci in c[1:] if ci)
    best_rule = None
    best_cost = None
    for ln in range(min(nz.bit_length(), 5) + 1):
        c_pre = total * ln
        if best_cost is not None and c_pre >= best_cost.c_total:
            break
        rule, c_app = local_app_rule(c, 1 << ln)
        if best_cost is None or c_app + c_pre < best_cost.c_total:
            best_rule = rule
            best_cost = RuleCost(c_app, c_pre)
    return best_rule, best_cost


def rule_or_default(cd, default: Rule = ZERO_RULE) -> Rule:
    """Globally best rule, or ``default`` when ``cd`` holds no records."""
    try:
        return global_app_rule(cd)[0]
    except EmptyDistributionError:
        return default


def _app_cost(support, items):
    cost = 0
    idx = 0
    cur = 0
    n = len(items)
    for i, ci in support:
        while idx < n and items[idx] <= i:
            cur = items[idx]
            idx += 1
        cost += ci * (i - cur)
    return cost


def _check_support(c, max_index):
    if not 0 <= max_index <= 16:
        raise ValueError(f"max_index {max_index} outside [0, 16]")
    if any(c[max_index + 1 :]):
        raise ValueError(f"distribution has mass above max_index={max_index}")


def brute_force_local(cd, z: int, max_index: int) -> Tuple[Rule, int]:
    """Exhaustive minimum rounding cost over rules of ``z`` items within
    ``[0, max_index]``.  Only meaningful for ``z - 1 <= max_index``."""
    c = _counts(cd)
    _check_support(c, max_index)
    if not 1 <= z <= max_index + 1:
        raise ValueError(f"rule length {z} not enumerable within [0, {max_index}]")
    support = [(i, ci) for i, ci in enumerate(c) if ci]
    best = None
    best_items = None
    for combo in combinations(range(1, max_index + 1), z - 1):
        cost = _app_cost(support, combo)
        if best is None or cost < best:
            best = cost
            best_items = combo
    return Rule((0,) + best_items), best


def brute_force_best_rule(cd, max_index: int) -> Tuple[Rule, RuleCost]:
    """Exhaustive minimum total cost over every rule within ``[0, max_index]``."""
    c = _counts(cd)
    _check_support(c, max_index)
    total = sum(c)
    support = [(i, ci) for i, ci in enumerate(c) if ci]
    best = None
    best_items = None
    for size in range(max_index + 1):
        c_pre = total * size.bit_length()  # ceil(log2(size + 1))
        if best is not None and c_pre >= best.c_total:
            break
        for combo in combinations(range(1, max_index + 1), size):
            cost = RuleCost(_app_cost(support, combo), c_pre)
            if best is None or cost.c_total < best.c_total:
                best = cost
                best_items = combo
    return Rule((0,) + best_items), best
