import numpy as np

from ris_dps import ChannelRealization, PhaseShiftSet

TWO_PI = 2.0 * np.pi


def random_phase_set(rng, k, min_sep=1e-6):
    """Strictly increasing phases in [0, 2*pi), re-drawn until well separated."""
    while True:
        ph = np.sort(rng.uniform(0.0, TWO_PI, size=k))
        if k == 1 or np.min(np.diff(ph)) >= min_sep:
            return PhaseShiftSet(ph)


def random_instance(rng, n, k, hd_max=2.0):
    """A generic small instance: O(1) amplitudes, fully random directions."""
    phases = random_phase_set(rng, k)
    v = rng.uniform(0.1, 2.0, size=n) * np.exp(1j * rng.uniform(0, TWO_PI, n))
    h_d = rng.uniform(0.0, hd_max) * np.exp(1j * rng.uniform(0, TWO_PI))
    return ChannelRealization(h_d, v), phases
