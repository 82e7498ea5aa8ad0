"""Named seed streams derived from one master seed.

Every random choice in the pipeline flows from a single master seed through
independent, named derivation streams so any component can be reseeded in
isolation without disturbing the others.
"""

import hashlib

import numpy as np

_U64 = 1 << 64


def derive_seed(master: int, *names) -> int:
    """Derive a 64-bit stream seed from a master seed and a stream name path."""
    msg = ":".join([str(int(master) % _U64), *map(str, names)]).encode()
    return int.from_bytes(hashlib.sha256(msg).digest()[:8], "little")


def rng_for(master: int, *names) -> np.random.Generator:
    """PCG64 generator on the named stream."""
    return np.random.Generator(np.random.PCG64(derive_seed(master, *names)))
