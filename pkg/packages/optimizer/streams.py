"""Deterministic random streams.

A stream is a ``numpy.random.SeedSequence``. Children are addressed by keys
appended to the parent's spawn key, so the same (parent, keys) pair always
yields the same child no matter how many siblings were derived before or in
which process.
"""
import numpy as np

Stream = np.random.SeedSequence

GENERATE = 0
EVALUATE = 1

ARRIVALS = 0
SERVICES = 1


def root_stream(seed: int) -> Stream:
    """Top-level stream for a base seed."""
    return np.random.SeedSequence(seed)


def derive(stream: Stream, *keys: int) -> Stream:
    """Child stream addressed by ``keys``; the parent is left untouched."""
    return np.random.SeedSequence(
        entropy=stream.entropy,
        spawn_key=tuple(stream.spawn_key) + tuple(int(k) for k in keys),
        pool_size=stream.pool_size,
    )


def generator(stream: Stream) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(stream))
