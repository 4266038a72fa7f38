"""Approximation rules: picking which zero counts get an exact code.

Each record spends a few bits naming its leading-zero count.  A rule keeps
only some counts; anything in between rounds down and pays with extra
stored bits.  The optimiser balances that rounding cost against the index
width, and this demo shows what it settles on for a real series.
"""

from elfstar import synth
from elfstar.blockcodec import erase_all, xor_distributions
from elfstar.ruleopt import ELF_LEAD_RULE, GORILLA_RULE, global_app_rule, local_app_rule, total_cost

values = synth.random_walk(1000, alpha=2, step=0.05, seed=1)
lead, trail = xor_distributions(erase_all(values)[0])

for name, cd in (("lead", lead), ("trail", trail)):
    busy = [f"{i}:{n}" for i, n in enumerate(cd.counts()) if n]
    print(f"{name} zero counts seen: {' '.join(busy)}")
    rule, cost = global_app_rule(cd)
    print(f"  best rule <{rule}>  rounding={cost.c_app} index={cost.c_pre} total={cost.c_total}")
    for fixed_name, fixed in (("8-item fixed", ELF_LEAD_RULE), ("every count 0..31", GORILLA_RULE)):
        print(f"  {fixed_name:<18} total={total_cost(fixed, cd).c_total}")
    print("  best cost for each rule length:")
    for z in (1, 2, 4, 8, 16):
        r, c_app = local_app_rule(cd, z)
        print(f"    z={z:<2} rounding={c_app:<6} rule=<{r}>")
