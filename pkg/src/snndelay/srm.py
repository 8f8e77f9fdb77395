"""Discrete-time Spike Response Model.

A neuron's membrane potential is the weighted sum of its inputs filtered
through the synaptic kernel

    eps(t) = (t / tau_s) * exp(1 - t / tau_s),   t > 0

plus a refractory feedback of its own past spikes through

    nu(t) = -2 * theta_u * (t / tau_r) * exp(1 - t / tau_r),   t > 0.

Both kernels are 0 at t = 0 and sampled on the unit step grid
t = 1..trunc_len. Spike emission compares the potential against the
threshold theta_u; equality counts as a spike so the rule is
deterministic at the boundary.

The time loop is sequential (the refractory term uses spikes the layer
has already emitted); everything else is vectorized over batch and
neurons.
"""

from dataclasses import dataclass

import numpy as np

from .core import SpikeTensor
from .errors import ParameterError, ShapeError

KERNEL_TAIL_TOL = 1e-4  # kernels truncated once |kernel| / scale stays below this


def sample_epsilon_kernel(tau_s, trunc_len):
    """Synaptic kernel samples at t = 1..trunc_len (t=0 excluded, value 0)."""
    if tau_s <= 0:
        raise ParameterError(f"tau_s must be > 0, got {tau_s}")
    if trunc_len < 1:
        raise ParameterError(f"trunc_len must be >= 1, got {trunc_len}")
    t = np.arange(1, trunc_len + 1, dtype=np.float64)
    return (t / tau_s) * np.exp(1.0 - t / tau_s)


def sample_nu_kernel(tau_r, theta_u, trunc_len):
    """Refractory kernel samples at t = 1..trunc_len; minimum -2*theta_u at t = tau_r."""
    if tau_r <= 0:
        raise ParameterError(f"tau_r must be > 0, got {tau_r}")
    if theta_u <= 0:
        raise ParameterError(f"theta_u must be > 0, got {theta_u}")
    if trunc_len < 1:
        raise ParameterError(f"trunc_len must be >= 1, got {trunc_len}")
    t = np.arange(1, trunc_len + 1, dtype=np.float64)
    return -2.0 * theta_u * (t / tau_r) * np.exp(1.0 - t / tau_r)


def default_trunc_len(tau_s, tau_r, cap=None):
    """Last step at which either kernel is still above the tail tolerance.

    eps is compared against KERNEL_TAIL_TOL directly, nu against
    KERNEL_TAIL_TOL relative to its 2*theta_u scale (both kernels share
    the same shape). Optionally capped at `cap` (usually n_steps).
    """
    tau = max(float(tau_s), float(tau_r))
    # (t/tau) exp(1 - t/tau) decays monotonically past its peak at tau
    t = int(np.ceil(tau)) + 1
    while (t / tau) * np.exp(1.0 - t / tau) >= KERNEL_TAIL_TOL:
        t += 1
    trunc = max(t - 1, 1)
    if cap is not None:
        trunc = min(trunc, int(cap))
    return trunc


@dataclass
class KernelBank:
    """Sampled kernels and firing constants shared by one layer."""

    eps_samples: np.ndarray
    nu_samples: np.ndarray
    tau_s: float
    tau_r: float
    theta_u: float
    trunc_len: int

    @classmethod
    def build(cls, tau_s, tau_r, theta_u, trunc_len=None, cap=None):
        if trunc_len is None:
            trunc_len = default_trunc_len(tau_s, tau_r, cap=cap)
        return cls(
            eps_samples=sample_epsilon_kernel(tau_s, trunc_len),
            nu_samples=sample_nu_kernel(tau_r, theta_u, trunc_len),
            tau_s=float(tau_s),
            tau_r=float(tau_r),
            theta_u=float(theta_u),
            trunc_len=int(trunc_len),
        )


@dataclass
class LayerParams:
    """Dense weights plus per-neuron axonal delays for one layer.

    `delays` is None for layers without axonal delays (the readout).
    """

    weights: np.ndarray
    kernel: KernelBank
    delays: "object" = None  # DelayVector, kept loose to avoid an import cycle

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.ndim != 2:
            raise ShapeError(f"weights must be [n_out, n_in], got shape {self.weights.shape}")
        if self.delays is not None and len(self.delays.values) != self.weights.shape[0]:
            raise ShapeError(
                f"delay vector length {len(self.delays.values)} != fan-out {self.weights.shape[0]}"
            )

    @property
    def n_out(self):
        return self.weights.shape[0]

    @property
    def n_in(self):
        return self.weights.shape[1]


def causal_conv(x, kernel):
    """Causal FIR sum out[t] = sum_{k=1..L} kernel[k-1] * x[t-k] along axis 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    n = x.shape[0]
    for k in range(1, min(len(kernel), n - 1) + 1):
        out[k:] += kernel[k - 1] * x[:-k]
    return out


def causal_corr(g, kernel):
    """Adjoint of causal_conv: gx[t] = sum_{k=1..L} kernel[k-1] * g[t+k]."""
    g = np.asarray(g, dtype=np.float64)
    out = np.zeros_like(g)
    n = g.shape[0]
    for k in range(1, min(len(kernel), n - 1) + 1):
        out[:-k] += kernel[k - 1] * g[k:]
    return out


def heaviside_spike(u, theta_u):
    """Elementwise spike emission: 1 where u >= theta_u (equality spikes)."""
    u = np.asarray(u)
    spikes = (u >= theta_u).astype(np.uint8)
    if spikes.ndim == 2:
        return SpikeTensor(spikes)
    return spikes


def srm_forward_raw(weights, kernel, spikes, refractory=True):
    """Membrane dynamics for a batch of samples.

    Args:
        weights: [n_out, n_in] effective (possibly quantized) weights.
        kernel: KernelBank.
        spikes: [n_steps, batch, n_in] binary input rasters.
        refractory: include the nu self-feedback (disable for linearity checks).

    Returns:
        (potentials [n_steps, batch, n_out] float64,
         out_spikes [n_steps, batch, n_out] uint8,
         drive [n_steps, batch, n_in] float64)  -- eps-filtered inputs, kept for backward.
    """
    spikes = np.asarray(spikes)
    if spikes.ndim != 3:
        raise ShapeError(f"expected [n_steps, batch, n_in], got shape {spikes.shape}")
    if spikes.shape[2] != weights.shape[1]:
        raise ShapeError(f"fan-in mismatch: input has {spikes.shape[2]} neurons, weights expect {weights.shape[1]}")

    n_steps, batch, _ = spikes.shape
    n_out = weights.shape[0]
    drive = causal_conv(spikes, kernel.eps_samples)
    current = drive @ weights.T  # [T, B, n_out]

    u = np.empty((n_steps, batch, n_out), dtype=np.float64)
    out = np.zeros((n_steps, batch, n_out), dtype=np.uint8)
    if not refractory:
        np.copyto(u, current)
        out[:] = u >= kernel.theta_u
        return u, out, drive

    nu = kernel.nu_samples
    lk = len(nu)
    feedback = np.zeros((n_steps + lk, batch, n_out), dtype=np.float64)
    for t in range(n_steps):
        u[t] = current[t] + feedback[t]
        fired = u[t] >= kernel.theta_u
        if fired.any():
            out[t] = fired
            feedback[t + 1 : t + 1 + lk] += nu[:, None, None] * fired
    return u, out, drive


def membrane_forward(layer, spikes, refractory=True):
    """Run one layer over a single sample.

    Args:
        layer: LayerParams (delays are ignored here; see the delay module).
        spikes: SpikeTensor with n_neurons == layer fan-in.

    Returns:
        (potentials [n_steps, n_out] float64, SpikeTensor of emitted spikes)
    """
    if spikes.n_neurons != layer.n_in:
        raise ShapeError(f"input has {spikes.n_neurons} neurons, layer expects {layer.n_in}")
    u, out, _ = srm_forward_raw(layer.weights, layer.kernel, spikes.data[:, None, :], refractory=refractory)
    return u[:, 0, :], SpikeTensor(out[:, 0, :], spikes.step_size)
