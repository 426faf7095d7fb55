"""Plumbing trees, Seifert data, and recognizing the E8 form.

Walkthrough: build the Poincare sphere's plumbing three ways (tree, Seifert
data, Brieskorn multiplicities), check they agree, and watch the E8 lattice
appear both as a tree and as a marked linear chain.

Run:  python demos/01_plumbings_and_e8.py
"""

from plumbcalc import (
    BrieskornTriple,
    ChainDiagram,
    SeifertData,
    brieskorn_seifert,
    chain_to_gram,
    classify,
    determinant,
    graph_to_gram,
    isometric,
    negdef_plumbing,
    plumbing_to_seifert,
    recognize_e8,
    seifert_to_plumbing,
    signature,
)

print("=== The Poincare sphere Sigma(2,3,5) ===")
triple = BrieskornTriple(2, 3, 5)
data = brieskorn_seifert(triple)
print(f"Seifert data (normalized): e = {data.e}, branches = {data.branches}")
print(f"euler number = {data.euler_number()}   (always -1/pqr)")

tree = negdef_plumbing(triple)
gram = graph_to_gram(tree)
print(f"negative-definite plumbing: {tree.rank} vertices, weights {tree.weights}")
print(f"determinant = {determinant(gram)}, signature = {signature(gram)}")
print(f"classification = {classify(gram)}")
print(f"recognize_e8 -> {recognize_e8(gram)}   (-1 means the negative E8 form)")

print()
print("=== Reading Seifert data back off the tree ===")
back = plumbing_to_seifert(tree)
print(f"raw read: e = {back.e}, branches = {back.branches}")
print(f"normalized again: {back.normalized() == data}")

print()
print("=== The same form from a marked chain ===")
# 2^[6] .(2) 4 . 2 : eight framings, one doubled link
chain = ChainDiagram((2, 2, 2, 2, 2, 2, 4, 2), (5, 2))
chain_gram = chain_to_gram(chain)
print(f"chain framings {chain.framings}, marked link {chain.marked}")
print(f"recognize_e8 -> {recognize_e8(chain_gram)}   (+1: the positive E8 form)")

cert = isometric(chain_gram, gram.negate())
print(f"explicit isometry to the negated tree Gram found: {cert is not None}")

print()
print("=== The corrected endpoint data of the reduction chains ===")
corrected = SeifertData(2, ((3, 2), (4, 3), (7, 4)))
literal = SeifertData(2, ((3, 2), (5, 4), (7, 4)))
for name, s in (("corrected", corrected), ("as printed", literal)):
    g = graph_to_gram(seifert_to_plumbing(s))
    print(
        f"S(2; {s.branches}) [{name}]: det = {determinant(g)}, "
        f"recognize_e8 = {recognize_e8(g)}"
    )
print("(the printed branch (5,4) breaks unimodularity; (4,3) restores E8)")
