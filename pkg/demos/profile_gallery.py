"""Solve the profile problem across slopes and show convergence diagnostics.

For a fixed transfer coefficient and interval length, walks the conductivity
slope from 0 toward the certified threshold, prints the solver diagnostics
for each case, and samples the converged profiles at a few stations. The
beta = 0 row doubles as an exactness check against the closed form.
"""

import numpy as np

from gmerf import GMEParams, approx_error, contraction_threshold, solve_gme

GAMMA = 1.0
LAM = 2.0
STATIONS = (0.0, 0.5, 1.0, 1.5, 2.0)


def main() -> None:
    b1 = contraction_threshold(GAMMA)
    print(f"gamma = {GAMMA}, lam = {LAM}, certified slope threshold beta1 = {b1:.6f}")
    print()
    header = ["beta", "iters", "residual", "d_coeff", "phi'(lam)", "sup|phi-phi0|"]
    header += [f"phi({s})" for s in STATIONS]
    print("  ".join(f"{h:>13s}" for h in header))
    for frac in (0.0, 0.25, 0.5, 0.75, 0.95):
        beta = frac * b1
        sol = solve_gme(GMEParams(beta=beta, gamma=GAMMA, lam=LAM))
        row = [
            f"{beta:13.6f}",
            f"{sol.iterations:13d}",
            f"{sol.residual:13.2e}",
            f"{sol.d_coeff:13.6f}",
            f"{sol.phi_prime_lambda:13.6f}",
            f"{approx_error(0, sol):13.2e}",
        ]
        row += [f"{float(sol.phi(s)):13.6f}" for s in STATIONS]
        print("  ".join(row))
    print()
    print("The beta = 0 row recovers the constant-conductivity closed form to")
    print("quadrature accuracy; larger slopes depress the whole profile while")
    print("keeping it pinned at phi(lam) = 1.")
    sol = solve_gme(GMEParams(beta=0.95 * b1, gamma=GAMMA, lam=LAM))
    diffs = np.diff(sol.phi.values)
    print(f"Steepest case: min forward difference {diffs.min():.3e} (monotone),")
    print(f"profile range [{sol.phi.values.min():.6f}, {sol.phi.values.max():.6f}].")


if __name__ == "__main__":
    main()
