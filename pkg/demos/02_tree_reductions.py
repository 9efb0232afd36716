"""Tree-to-tree reductions and their decoders, round-tripped live.

Each transformer maps a source tree to an image so that any image solution
pulls back: localization along sampled positions, block-redundancy packing,
fixed-color index coding, chain coding over an enumeration, and the
tournament construction.  Run: python3 demos/02_tree_reductions.py
"""

from treehom.reductions import (
    LengthLexEnum,
    build_u_sequence,
    chain_code_tree,
    decode_chain_code,
    decode_fixed_color,
    decode_localized,
    decode_packed,
    fixed_color_tree,
    homog_from_transitive,
    localize_tree,
    pack_redundant,
    packed_expansion,
    tournament_from_tree,
    transitive_subtournament,
)
from treehom.trees import (
    PartialHom,
    enumerate_homogeneous,
    full_tree,
    gamma_tree,
    paths_at_horizon,
    random_tree,
)

print("== localization: solutions inside a prescribed position set ==")
t = gamma_tree({1}, 1, 4)
xs = (1, 3)
image = localize_tree(t, xs)
print("image nodes:", sorted(image.nodes))
for hom0 in enumerate_homogeneous(image, image.horizon, image.horizon):
    decoded = decode_localized(t, xs, hom0)
    print(f"  image {hom0.positions}/{hom0.color}  ->  source {decoded.positions}/{decoded.color}")

print("\n== packing: block redundancy forces dense matchings to read a path ==")
useq = build_u_sequence(lambda n: n // 2, 5)
print("block boundaries for g(n) = n//2:", useq.u)
word = (1, 0, 1, 0, 1)
print("expansion of 10101:", "".join(map(str, packed_expansion(word, useq))))
src = random_tree(3, 2, 4, thin=0.2)
packed, useq4 = pack_redundant(src, lambda n: n // 2)
tau = paths_at_horizon(src)[0]
sparse = PartialHom.of({p: packed_expansion(tau, useq4)[p] for p in range(0, useq4.u[4], 2)})
print("sparse-but-packed matching decodes to:", decode_packed(sparse, packed, useq4), "=", tau)

print("\n== fixed-color coding: color-0 sets name prefix chains ==")
chain_src = gamma_tree({0, 1}, 1, 4)
coded = fixed_color_tree(chain_src)
zero_sets = [
    h
    for h in enumerate_homogeneous(coded, coded.horizon, 3)
    if h.color == 0 and h.positions and max(h.positions) < coded.horizon
]
for h in zero_sets[:4]:
    print(f"  color-0 set {h.positions} decodes to path {decode_fixed_color(chain_src, h)}")

print("\n== chain coding: paths become strictly growing index chains ==")
image, bound = chain_code_tree(full_tree(2, 2))
print("image level sizes:", [len(image.level(s)) for s in range(image.horizon + 1)])
print("branching bound per position:", bound)
enum = LengthLexEnum(2)
h = PartialHom.of({i: enum.index_of((1, 0)[:i]) for i in range(3)})
print("index chain decodes to:", decode_chain_code(h, image, full_tree(2, 2)))

print("\n== tournament route: dominance order recovers a homogeneous set ==")
t = gamma_tree({0}, 1, 6)
r = tournament_from_tree(t)
u = transitive_subtournament(r, 4)
print("transitive subtournament (dominance order):", u)
res = homog_from_transitive(t, r, u, t.horizon)
print(f"case {res.case}: homogeneous set {res.hom.positions} color {res.hom.color}")
