"""Binary spike rasters on a discrete time grid.

All simulation code in this package works on step-indexed rasters:
axis 0 is time (``n_steps`` rows of width ``step_size``), axis 1 is the
neuron index. Entries are strictly 0 or 1; a neuron emits at most one
spike per step.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError


@dataclass
class SpikeTensor:
    """Binary spike raster, shape [n_steps, n_neurons]."""

    data: np.ndarray
    step_size: float = 1.0

    def __post_init__(self):
        self.data = np.asarray(self.data)
        if self.data.ndim != 2:
            raise ShapeError(f"spike raster must be 2-D, got shape {self.data.shape}")
        if self.data.shape[0] < 1 or self.data.shape[1] < 1:
            raise ShapeError(f"spike raster needs >=1 step and >=1 neuron, got {self.data.shape}")
        if self.data.dtype != np.uint8:
            vals = np.unique(self.data)
            if not np.isin(vals, (0, 1)).all():
                raise ShapeError("spike raster entries must be 0 or 1")
            self.data = self.data.astype(np.uint8)

    @property
    def n_steps(self):
        return self.data.shape[0]

    @property
    def n_neurons(self):
        return self.data.shape[1]

    def spike_times(self, neuron):
        """Step indices at which `neuron` fires."""
        return np.flatnonzero(self.data[:, neuron])

    def count(self):
        """Total spike count per neuron, shape [n_neurons]."""
        return self.data.sum(axis=0)

    def copy(self):
        return SpikeTensor(self.data.copy(), self.step_size)


def empty_raster(n_steps, n_neurons, step_size=1.0):
    return SpikeTensor(np.zeros((n_steps, n_neurons), dtype=np.uint8), step_size)


def raster_from_times(n_steps, n_neurons, events, step_size=1.0):
    """Build a raster from an iterable of (step, neuron) pairs; out-of-range steps are rejected."""
    data = np.zeros((n_steps, n_neurons), dtype=np.uint8)
    for t, i in events:
        data[t, i] = 1
    return SpikeTensor(data, step_size)
