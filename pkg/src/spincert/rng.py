"""Deterministic, portable random number generation.

SplitMix64 (Steele, Lea & Flood's 64-bit mixer) with named substreams: each
check derives its own stream from (seed, label), so adding, removing or
reordering checks never changes the samples another check sees. No numpy
BitGenerator is involved; every draw is reproducible from the seed alone.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


def _fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & _MASK
    return h


class SplitMix64:
    """Seeded 64-bit generator with uniform/normal draws and substreams."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def stream(self, label: str) -> "SplitMix64":
        """Independent substream keyed by a text label."""
        return SplitMix64(_mix(self._state ^ _fnv1a64(label.encode("utf-8"))))

    def u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _mix(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.u64() >> 11) * 2.0 ** -53

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (inclusive)."""
        span = hi - lo + 1
        return lo + self.u64() % span

    def normal(self) -> float:
        """Standard normal via Box-Muller (cosine branch)."""
        u1 = self.uniform()
        if u1 <= 0.0:
            u1 = 2.0 ** -53
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def normals(self, *shape: int) -> np.ndarray:
        out = np.empty(int(np.prod(shape)), dtype=np.float64)
        for i in range(out.size):
            out[i] = self.normal()
        return out.reshape(shape)

    def complex_normals(self, *shape: int) -> np.ndarray:
        return self.normals(*shape) + 1j * self.normals(*shape)

    def unit_vector(self, n: int) -> np.ndarray:
        while True:
            v = self.normals(n)
            norm = np.linalg.norm(v)
            if norm > 1e-6:
                return v / norm

    def rotation(self, n: int) -> np.ndarray:
        """Random element of SO(n) via QR with sign fixing."""
        if n == 1:
            return np.array([[1.0]])
        q, r = np.linalg.qr(self.normals(n, n))
        q = q * np.sign(np.diag(r))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        return q

    def unitary(self, n: int) -> np.ndarray:
        """Random unitary via complex QR with phase fixing."""
        q, r = np.linalg.qr(self.complex_normals(n, n))
        d = np.diag(r)
        return q * (d / np.abs(d))
