import numpy as np


def derive_seed(*keys: int) -> int:
    """Stable 32-bit seed for the work item identified by keys (master seed first)."""
    return int(np.random.SeedSequence([int(k) for k in keys]).generate_state(1)[0])
