"""Exact E|opt(H)| by subset enumeration, with Fractions throughout."""
from fractions import Fraction

from irmatch.decomposition import (claim2_closed_form, complete_two_cycle_graph,
                                   exact_internal_expectation, exact_sweep)
from irmatch.generators import gen_appb_pentagon, gen_appb_triangle

tri = gen_appb_triangle().graph
p = Fraction(2, 3)
e = exact_internal_expectation(tri, 2, p)
print(f"triangle of 2-cycles, p = {p}: E = {e} vs p*opt = {p * 2}")

print("\ncomplete graphs K_(2t+1):")
for t in (1, 2, 3):
    for q in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)):
        closed, cap = claim2_closed_form(t, q)
        exact = exact_internal_expectation(complete_two_cycle_graph(2 * t + 1), 2, q)
        print(f"  t={t} p={q}: exact {exact}, closed form {closed}, 2tp {cap}")

print("\npentagon, L = 3:")
pent = gen_appb_pentagon(3).graph
for q, exp, bound in exact_sweep(pent, 3, [Fraction(k, 12) for k in range(6, 12)]):
    print(f"  p={str(q):5s} E={float(exp):.4f} p*opt={float(bound):.4f} {'>' if exp > bound else '<='}")
