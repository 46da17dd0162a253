"""The combinatorial CI calculus: relations, duality, minors, axioms, closure.

Two cautionary pairs are worked out: one whose relation is not even a
semigraphoid (its closure blows up to everything), and a pair of squares
whose relation is a gaussoid yet still incomplete, detected by an inference
rule that is valid for all regular Gaussians.
"""

import doublemarkov as dm
from doublemarkov import ci

# relation of a graph: all separation statements
p3 = dm.Graph.from_edges(3, [(1, 2), (2, 3)])
print("separation relation of the 3-path:", dm.relation_of_graph(p3).statements())

# duality complements the conditioning sets and swaps the two graphs' roles
g = dm.Graph.from_edges(4, [(1, 2), (2, 3)])
h = dm.Graph.from_edges(4, [(1, 3)])
r = dm.double_markov_relation(g, h)
print("\npair with disjoint edges: relation has", len(r), "of 24 statements")
missing = [s for s in ci.full_relation(4).statements() if s not in r]
print("missing statements:", missing)

# the relation violates the semigraphoid axiom...
viol = dm.check_axioms(r)
print("first violation:", viol[0])

# ... so its closure under that single Horn rule is everything, matching the
# fact that the model is a single point (shared edge set is empty)
closed = dm.closure(r, ["semigraphoid"])
print("semigraphoid closure size:", len(closed), "of", len(ci.full_relation(4)))

# the two-squares pair: a gaussoid, but incomplete
g2 = dm.Graph.from_edges(4, [(1, 2), (1, 4), (2, 3), (3, 4)])
h2 = dm.Graph.from_edges(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
r2 = dm.double_markov_relation(g2, h2)
print("\ntwo squares:", r2.statements())
print("gaussoid:", not dm.check_axioms(r2))
closed2 = dm.closure(r2, ci.HORN_RULES)
print("closure with the quadruple rule contains (1 3 |):", closed2.has(1, 3))
print("closure equals the relation of the common graph taken twice:",
      closed2 == dm.double_markov_relation(
          dm.edge_intersection(g2, h2), dm.edge_intersection(g2, h2)))

# upward-stable gaussoids are exactly graph separation relations
back = dm.recognize_markov(dm.relation_of_graph(p3))
print("\nround-trip recognition of the 3-path:", back)
