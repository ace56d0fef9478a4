#!/usr/bin/env python3
"""Exercise the generalized sum rule and the Kirchhoff index family it
implies, plus the Foster edge sum for a reversible doubly stochastic
chain."""

import numpy as np

from mrdist import (
    SumRulePair,
    analyze,
    eigenvalues,
    eigentime_constant,
    foster_first_formula,
    foster_sum,
    generate_random_chain,
    kirchhoff_indices,
    make_sum_rule_pair,
    omega_from_fundamental,
    sum_rule,
    validate,
)

np.set_printoptions(precision=6, suppress=True)

mat = generate_random_chain(7, "reversible", seed=3)
analysis = analyze(mat)
om = omega_from_fundamental(analysis.F)
n = mat.n

# --- the generalized sum rule -------------------------------------------
# any (M, K) with K 1 = 1 and M(K - I) symmetric satisfies
#   sum_{i,j} (M(K-I))_{ij} Omega_{ij} = 2 Tr(M(I-K)F)
print("random sum-rule pairs:")
for seed in range(5):
    pair = make_sum_rule_pair(n, seed)
    lhs, rhs = sum_rule(pair, om, analysis.F)
    print(f"  seed {seed}: lhs = {lhs:+.12f}   rhs = {rhs:+.12f}   "
          f"gap = {abs(lhs - rhs):.2e}")

# the stationary pair M = diag(pi), K = Pi recovers the multiplicative index
pair = SumRulePair(M=np.diag(analysis.pi), K=analysis.Pi)
lhs, rhs = sum_rule(pair, om, analysis.F)
print(f"stationary pair: lhs = {lhs:.12f} (multiplicative Kirchhoff index)")

# --- Kirchhoff indices ----------------------------------------------------
report = kirchhoff_indices(om, analysis.pi, analysis.t_av)
print(f"\nKemeny constant t_av:        {analysis.t_av:.6f}")
print(f"Kirchhoff index sum(Omega):  {report.kirchhoff:.6f}")
print(f"2 n t_av:                    {2 * n * analysis.t_av:.6f}")

et = eigentime_constant(eigenvalues(mat.P))
print(f"eigentime sum 1/(1-lambda):  {et:.6f}  (equals t_av)")

print(f"multiplicative index:        {report.multiplicative:.6f}")
print(f"additive index:              {report.additive:.6f}")
print(f"   bounds [{report.additive_lower:.6f}, {report.additive_upper:.6f}]")

# --- Foster analogue ------------------------------------------------------
for m in (1, 2, 3):
    lhs, rhs = foster_sum(mat, om, m, analysis)
    print(f"trace identity m={m}: lhs = {lhs:.12f}   rhs = {rhs:.12f}")

# reversible + doubly stochastic: the plain edge sum collapses to 2(n - 1)
base = generate_random_chain(6, "doubly_stochastic", seed=1)
sym = validate(0.5 * (base.P + base.P.T))
sym_analysis = analyze(sym)
sym_om = omega_from_fundamental(sym_analysis.F)
edge_sum = foster_first_formula(sym, sym_om)
print(f"\nFoster edge sum on a symmetric doubly stochastic chain: "
      f"{edge_sum:.12f}  (2(n-1) = {2 * (sym.n - 1)})")
