"""Parameter learning: relative frequencies versus Dirichlet smoothing.

Fits the fixed-structure network on the full 297-row table and prints a few
of the recovered conditional probability tables, then shows how the
Bayesian estimator interpolates between the data and a uniform prior.
"""

import numpy as np

from heartbn import clean, discretize, fit_bayesian, fit_mle, heart_network, load_cleveland

table = discretize(clean(load_cleveland()))
dag = heart_network()
net = fit_mle(dag, table)

print("P(sex) =", np.round(net.cpts["sex"].table[0], 7))
print("P(fbs) =", np.round(net.cpts["fbs"].table[0], 7))
print()

print("P(target | thal):")
for thal_state in range(3):
    row = net.cpts["target"].row([thal_state])
    print(f"  thal={thal_state}: {np.round(row, 7)}")
print()

print("P(oldpeakC | slope, target):")
for slope in range(3):
    for target in range(2):
        row = net.cpts["oldpeakC"].row([slope, target])
        print(f"  slope={slope} target={target}: {np.round(row, 7)}")
print()

print("Dirichlet smoothing pulls the ca distribution toward uniform:")
print("  ess            P(ca | target=1)")
for ess in (0.01, 10.0, 1000.0, 100000.0):
    smoothed = fit_bayesian(dag, table, ess)
    print(f"  {ess:<12g} {np.round(smoothed.cpts['ca'].row([1]), 4)}")
