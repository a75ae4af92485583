"""
Many qubits, one number
=======================

Each qubit sees its own reservoir.  A W-type state keeps its shape: the excited
component shrinks by ``P_t`` and the rest flows into the ground state.  The
dense tensor-product channel reproduces this, and the fidelity does not care
about N or the amplitudes.
"""
import numpy as np

from ddqsl import (PulseSchedule, SpectralParams, evolve_dense, evolve_w, fidelity,
                   make_w_state, population)

rng = np.random.default_rng(7)
p, s, t = SpectralParams(0.2), PulseSchedule(10.0, 5), 10.0
print("P_t =", population(t, p, s))
for n in (1, 2, 3, 4):
    w = make_w_state(rng.normal(size=n) + 1j * rng.normal(size=n))
    closed = evolve_w(w, t, p, s).density_matrix()
    dense = evolve_dense(w, t, p, s)
    print(f"N={n}: max |closed - dense| = {np.abs(closed - dense).max():.1e}, "
          f"fidelity = {fidelity(w, t, p, s):.12f}")
