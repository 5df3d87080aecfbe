"""Graph queries on the fixed heart-disease network.

Builds the 14-node network, walks its structure, and answers the classic
separation questions: which attributes are shielded from the diagnosis,
and what is the smallest set that makes everything else irrelevant.
"""

from heartbn import d_separated, heart_network, markov_blanket, topological_order

dag = heart_network()

print("nodes:", len(dag.nodes), "edges:", len(dag.edges))
print("topological order:", " -> ".join(topological_order(dag)))
print()

for node in ("target", "thalachC", "oldpeakC"):
    print(f"parents({node}) = {dag.parents(node)}")
print()

# Conditioning on the defect type cuts the only path from sex to the diagnosis.
print("sex _|_ target | {thal}: ", d_separated(dag, {"sex"}, {"target"}, {"thal"}))
print("sex _|_ target | {}:     ", d_separated(dag, {"sex"}, {"target"}, set()))

# Fasting blood sugar is isolated, so it is unconditionally irrelevant.
print("fbs _|_ target | {}:     ", d_separated(dag, {"fbs"}, {"target"}, set()))

# slope and exang meet head-to-head at thalachC.  Blocking the upper route
# through target and cp separates them, until conditioning on the collider
# itself re-opens the lower one.
print("slope _|_ exang | {target, cp}:          ",
      d_separated(dag, {"slope"}, {"exang"}, {"target", "cp"}))
print("slope _|_ exang | {target, cp, thalachC}:",
      d_separated(dag, {"slope"}, {"exang"}, {"target", "cp", "thalachC"}))
print()

blanket = markov_blanket(dag, "target")
print("Markov blanket of target:", sorted(blanket))
print("every other variable is irrelevant to the diagnosis once these are known")
