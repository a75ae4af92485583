"""
Information backflow and the optimal initial pair
=================================================

The BLP measure sums the rises of the trace distance between two evolved
states.  Among antipodal pure pairs only two candidates matter: the pole pair,
whose distance is ``P_t``, and an equator pair, whose distance is ``sqrt(P_t)``.
A brute-force grid over the Bloch sphere confirms the choice.
"""
from ddqsl import PulseSchedule, SpectralParams, non_markovianity
from ddqsl.nonmarkov import blp_grid_search

tau = 10.0
for g0 in (0.2, 5.0):
    p = SpectralParams(g0)
    print(f"\ngamma0 = {g0}")
    print(" n   Gamma     pole      equator   optimal")
    for n in range(0, 26, 2):
        r = non_markovianity(p, PulseSchedule(tau, n))
        print(f"{n:2d}   {r.gamma:.5f}   {r.gamma_theta0:.5f}   {r.gamma_theta_pi4:.5f}   {r.optimal}")

s = PulseSchedule(tau, 4)
p = SpectralParams(5.0)
grid, theta, _, _ = blp_grid_search(p, s, theta_steps=33, phi_steps=2, full=True)
print(f"\ngrid search (strong, n=4): Gamma={grid:.5f} at theta={theta:.4f}")
print(f"closed form:               Gamma={non_markovianity(p, s).gamma:.5f}")
