"""The seven-vertex example where the efficient matching is not individually rational."""
from irmatch import max_cycle_cover
from irmatch.generators import FIGURE1_BLUE, gen_figure1
from irmatch.mechanisms import ir_gaps, veto_mechanism
from irmatch.ownership import OwnershipAssignment

inst = gen_figure1()
g = inst.graph
print("edges:", sorted(g.edges))

best = max_cycle_cover(g, cap=3)
print("maximum matching:", best.cycles, "->", best.size, "vertices")

# blue owns v2, v3, v6 (ids 1, 2, 5); red owns the rest
owner = [0 if v in FIGURE1_BLUE else 1 for v in range(g.vertex_count)]
a = OwnershipAssignment.fixed(owner)
for rec in ir_gaps(g, a, 3, best, k=2):
    print(f"player {rec.player}: internal {rec.internal_opt}, share {rec.share}, gap {rec.gap}")

out = veto_mechanism(g, a, 3, best, k=2)
print("accepted:", out.accepted, "| vetoed by:", out.vetoing_players)
print("final matching:", out.final_matching.cycles, "->", out.size, "vertices")
