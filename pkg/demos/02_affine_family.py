"""The one-dimensional affine groups, scanned at their defining primes.

AGL(1,q) is the Frobenius group of maps x -> ax + b on the q-element
field. Its derived subgroup is the (elementary abelian) translation
part, a Sylow subgroup for the defining prime, and the socle of the
center is always an ideal, of dimension exactly q - 1.

Run:  python3 demos/02_affine_family.py
"""

from soclelab import CenterAlgebra, parse_family

print(f"{'q':>3} {'order':>6} {'socle dim':>9} {'ideal':>6} {'frobenius':>9}")
for q, p in [(3, 3), (4, 2), (5, 5), (7, 7), (8, 2), (9, 3), (11, 11),
             (13, 13), (16, 2)]:
    g = parse_family(f"agl(1,{q})")
    alg = CenterAlgebra(g, p)
    direct, criterion = alg.socle_ideal_verdict()
    assert direct == criterion
    frob = g.is_frobenius_with_kernel(g.derived_subgroup())
    print(f"{q:>3} {g.order:>6} {alg.dims()['socle']:>9} "
          f"{str(direct):>6} {str(frob):>9}")

print("\nsocle dimension q - 1 = index of the kernel, every time:")
print("the q - 1 nontrivial complement cosets each carry one dimension,")
print("and the identity coset contributes the kernel sum itself")
