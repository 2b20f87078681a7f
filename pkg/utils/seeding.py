"""
Seed derivation for reproducible, coordination-free random streams
"""
import numpy as np

# stream tags
GRAPH = 0
COVARIATES = 1
RESPONSE = 2
KNOCKOFFS = 3
FOLDS = 4

SEED_MAX = 2 ** 64


def _combine(state):
    return (int(state[0]) << 32) | int(state[1])


def check_seed(seed):
    """Validate a user seed (unsigned 64-bit integer)"""
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) < SEED_MAX:
        raise ValueError(f'seed must be an integer in [0, 2**64), got {seed!r}')
    return int(seed)


def derive_seed(base_seed, stream, *keys):
    """
    Integer seed for one stream of one repetition

    The same (base_seed, stream, keys) always yields the same seed; distinct
    tuples give statistically independent streams.
    """
    entropy = [check_seed(base_seed), int(stream)] + [int(k) for k in keys]
    return _combine(np.random.SeedSequence(entropy).generate_state(2, dtype=np.uint32))


def fresh_seed():
    """Seed drawn from OS entropy, recorded so a fresh run can be replayed"""
    return _combine(np.random.SeedSequence().generate_state(2, dtype=np.uint32))
