"""Erasing: how a short decimal hides a long run of removable mantissa bits.

A value like 3.17 is stored as a 52-bit mantissa, but only a handful of
those bits are needed to get 3.17 back once we know it has two decimal
places.  Clearing the rest turns XORs between neighbours into words with
many trailing zeros, which is what the codec feeds on.
"""

from elfstar.floatcodec import bits_to_float, decimal_meta, erase, float_to_bits, restore

for v in (3.17, 20.05, 0.001, 123456.789, 3.141592653589793):
    meta = decimal_meta(v)
    v_prime, meta = erase(v)
    print(f"{v!r:>20}  alpha={meta.alpha:<2} beta={meta.beta:<2} erasable={meta.erasable_bits:<3} erased={meta.erased}")
    if meta.erased:
        print(f"{'':>20}  {float_to_bits(v):064b}")
        print(f"{'':>20}  {float_to_bits(v_prime):064b}  -> {v_prime!r}")
        assert restore(v_prime, meta.alpha) == v

# neighbours in a slowly moving series share most of their high bits
a, b = erase(20.05)[0], erase(20.10)[0]
x = float_to_bits(a) ^ float_to_bits(b)
print(f"\nxor of erased 20.05 and 20.10: {x:064b}")
print(f"leading zeros {64 - x.bit_length()}, trailing zeros {(x & -x).bit_length() - 1}")
raw = float_to_bits(20.05) ^ float_to_bits(20.10)
print(f"center bits: {x.bit_length() - (x & -x).bit_length() + 1} erased, {raw.bit_length() - (raw & -raw).bit_length() + 1} unerased")
assert bits_to_float(float_to_bits(a)) == a
