"""Counter-based deterministic randomness.

Every random decision in the engine is a pure function of the user seed and
the decision's coordinates (frame, row, column).  No generator state is
carried between cells, so cells can be resolved in any order — or in
parallel — with bit-identical results.

The mixing function is part of the repository's external contract (outputs
must be reproducible across implementations), so it is pinned bit-exactly:

    mask(x)       = x mod 2**64
    sm64(x)       : x += 0x9E3779B97F4A7C15          (mod 2**64)
                    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9   (mod 2**64)
                    x = (x ^ (x >> 27)) * 0x94D049BB133111EB   (mod 2**64)
                    x = x ^ (x >> 31)
    mix(seed, w1, ..., wn) = hn  where  h0 = sm64(mask(seed))
                                        hi = sm64(h(i-1) XOR mask(wi))
    u01(...)      = (mix(...) >> 11) / 2**53         (a float in [0, 1))

sm64 is the SplitMix64 finalizer (Steele, Lea & Flood's mixing constants).
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def _sm64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def mix(seed: int, *words: int) -> int:
    """Hash a seed and counter words into a uniform 64-bit value."""
    h = _sm64(seed & _MASK64)
    for w in words:
        h = _sm64(h ^ (w & _MASK64))
    return h


def u01(seed: int, *words: int) -> float:
    """Uniform float in [0, 1) derived from mix(seed, *words)."""
    return (mix(seed, *words) >> 11) * 2.0**-53
