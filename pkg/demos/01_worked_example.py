"""Walk the order-24 example end to end.

The binary tetrahedral group (SL2 over the field with three elements) is
the smallest group whose socle question has real content: the socle of
the center turns out to be an ideal of the whole group algebra, and all
three characterization conditions can be watched doing their work.

Run:  python3 demos/01_worked_example.py
"""

from soclelab import CenterAlgebra, parse_family
from soclelab.analysis import analyze_group

g = parse_family("sl2(3)")
alg = CenterAlgebra(g, 2)

print(f"group {g.name}: order {g.order}, {alg.k} conjugacy classes")
print(f"class sizes: {[c.size for c in alg.classes]}")

d = alg.dims()
print(f"\ncenter dim {d['center']}, radical dim {d['radical']}, "
      f"socle dim {d['socle']}")

direct, criterion = alg.socle_ideal_verdict()
print(f"socle is an ideal of the full group algebra: {direct}")
print(f"socle lies in the derived-coset span:        {criterion}")

blocks = alg.socle_coset_decomposition(g.sylow_subgroup(2))
print(f"\nsocle splits over the complement cosets: "
      f"{[(rep, dim) for rep, dim in blocks]}")
print("one dimension per coset of the Sylow subgroup, as it should be")

r = analyze_group(g, 2)
ch = r["theorems"]["ideal_characterization"]
print("\nthe three-condition characterization:")
print(f"  quotient by second derived is the affine model: {ch['affine_match']}")
print(f"  some complement element fixes the second derived "
      f"subgroup pointwise: {ch['has_fixer']}")
print(f"  derived subgroup is a Camina group: {ch['derived_camina']}")
print(f"  predicted verdict {ch['predicted']} == computed verdict "
      f"{ch['direct']}")
print(f"\nnotes: {ch['notes']}")
