"""Decimal metadata, erasing and restoring of double-precision values.

A value ``v`` with ``alpha`` fractional decimal digits can lose its low
mantissa bits as long as the erased value ``v'`` stays inside
``(v - 10**-alpha, v)``: the original is then recovered by truncating
``v'`` after ``alpha`` fractional digits and adding ``10**-alpha``.
"""

import math
import struct
from dataclasses import dataclass

ALPHA_MAX = 14
BETA_MAX = 15
ERASE_THRESHOLD = 4

_D = struct.Struct("<d")
_Q = struct.Struct("<Q")
_POW10 = [10**i for i in range(ALPHA_MAX + 1)]
# smallest f with 2**f >= 10**alpha, i.e. ceil(alpha * log2(10))
_CEIL_LOG2_POW10 = [0] + [(10**i).bit_length() for i in range(1, 400)]


def float_to_bits(v: float) -> int:
    return _Q.unpack(_D.pack(v))[0]


def bits_to_float(bits: int) -> float:
    return _D.unpack(_Q.pack(bits))[0]


@dataclass(frozen=True)
class DecimalMeta:
    alpha: int
    beta: int
    erasable_bits: int
    erased: bool


_NOT_ERASED_ZERO = DecimalMeta(0, 0, 0, False)


def alpha_beta(v: float):
    """Decimal place count and significand count of a finite nonzero ``v``.

    Both come from the shortest round-trip representation (``repr``) with
    any exponent folded back into positional form.  Integers report one
    decimal place, since their canonical form is ``d.0``.
    """
    s = repr(v)
    if s[0] == "-":
        s = s[1:]
    epos = s.find("e")
    if epos >= 0:
        exp = int(s[epos + 1 :])
        s = s[:epos]
    else:
        exp = 0
    dot = s.find(".")
    if dot >= 0:
        ip, fp = s[:dot], s[dot + 1 :].rstrip("0")
    else:
        ip, fp = s, ""
    nfrac = len(fp)
    alpha = nfrac - exp
    if alpha < 1:
        alpha = 1
    ndigits = len((ip + fp).lstrip("0"))
    top = ndigits - 1 - nfrac + exp
    return alpha, top + 1 + alpha


def erasable_bits(v: float, alpha: int) -> int:
    """Number of low mantissa bits that erasing ``v`` may clear.

    The result can be zero or negative, in which case nothing is erased.
    """
    if alpha < len(_CEIL_LOG2_POW10):
        f = _CEIL_LOG2_POW10[alpha]
    else:
        f = (10**alpha).bit_length()
    return 52 - (f + math.frexp(v)[1] - 1)


def decimal_meta(v: float) -> DecimalMeta:
    return erase(v)[1]


def restore(v_prime: float, alpha: int) -> float:
    """Invert :func:`erase` given the decimal place count of the original.

    The truncation of ``|v_prime|`` to ``alpha`` fractional digits is done
    in exact rational arithmetic, and the final division is correctly
    rounded, so no binary rounding step can shift a digit.
    """
    if v_prime == 0:
        return v_prime
    if not 1 <= alpha <= ALPHA_MAX:
        raise ValueError(f"alpha {alpha} outside supported range [1, {ALPHA_MAX}]")
    n, d = v_prime.as_integer_ratio()
    if n < 0:
        n = -n
    p = _POW10[alpha]
    out = ((n * p) // d + 1) / p
    return -out if v_prime < 0 else out


def erase_bits(v: float, bits: int):
    """Erase ``v`` given its storage ``bits``.

    Returns ``(erased_bits, alpha)`` where ``alpha`` is 0 when the value
    takes the unerased path.  This is the encoder's hot path; :func:`erase`
    is the public wrapper.
    """
    if v == 0 or v != v or v - v != 0:
        return bits, 0
    alpha, beta = alpha_beta(v)
    if alpha > ALPHA_MAX or beta > BETA_MAX:
        return bits, 0
    eb = erasable_bits(v, alpha)
    if eb <= ERASE_THRESHOLD:
        return bits, 0
    mask = (1 << eb) - 1
    if not bits & mask:
        return bits, 0
    erased = bits & ~mask
    # guard: only keep erasures the decoder is guaranteed to undo
    if restore(bits_to_float(erased), alpha) != v:
        return bits, 0
    return erased, alpha


def erase(v: float):
    """Return ``(v_prime, meta)``; ``v_prime`` is ``v`` itself when not erased."""
    if v == 0 or v != v or v - v != 0:
        if v == 0:
            return v, _NOT_ERASED_ZERO
        return v, DecimalMeta(0, 0, 0, False)
    bits = float_to_bits(v)
    alpha, beta = alpha_beta(v)
    eb = erasable_bits(v, alpha)
    erased_bits, used_alpha = erase_bits(v, bits)
    if not used_alpha:
        return v, DecimalMeta(alpha, beta, eb, False)
    return bits_to_float(erased_bits), DecimalMeta(alpha, beta, eb, True)
