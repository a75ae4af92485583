"""
Speed limit time as a function of the number of pulses
======================================================

For W-type states the evolution is fixed by one population ``P_t``.  The speed
limit ratio needs only ``P_tau`` and the total rise of ``P`` over the window,
and both come from the monotone segmentation of the trajectory.
"""
import numpy as np

from ddqsl import DegenerateTargetError, PulseSchedule, SpectralParams, population, qslt

tau = 10.0
print(" n   ratio(weak)  P_tau(weak)   ratio(strong)  P_tau(strong)")
for n in range(26):
    s = PulseSchedule(tau, n)
    cols = []
    for g0 in (0.2, 5.0):
        p = SpectralParams(g0)
        try:
            r = qslt(p, s)
            cols += [f"{r.ratio:.5f}", f"{r.p_tau:.5f}"]
        except DegenerateTargetError:
            cols += ["   -   ", f"{population(tau, p, s):.5f}"]
    print(f"{n:2d}   {cols[0]:>9}    {cols[1]:>9}     {cols[2]:>9}      {cols[3]:>9}")

# Weak coupling: more pulses freeze the decay, P_tau climbs toward 1 and the
# bound tightens monotonically.  Strong coupling: the ratio wobbles for a few
# pulses before the same trend sets in.
