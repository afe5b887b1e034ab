"""
Almost conjugate subgroups and lift degrees
===========================================

Two subgroups of the affine group of Z/8 meet every conjugacy class equally
often but are not conjugate.  The covers they define see every closed curve
with the same list of lift degrees.
"""

from sunadacheck.config import default_config
from sunadacheck.covers import degree_multiset, preimage_components
from sunadacheck.group_core import CosetSpace, is_almost_conjugate, is_conjugate_subgroup

cfg = default_config()
H, K = cfg.subgroup("H"), cfg.subgroup("K")
G = H.parent

# class by class, |H & C| and |K & C| agree
cert = is_almost_conjugate(H, K)
for rep, size, h, k in cert.table:
    print(f"class of {rep}: size {size:2d}   H {h}   K {k}")
print("almost conjugate:", cert.almost_conjugate)
print("conjugate:", is_conjugate_subgroup(H, K)[0])

# equivalently, every element permutes H\G and K\G with the same cycle type
sh, sk = CosetSpace(H), CosetSpace(K)
print("cycle types agree:", all(sh.cycle_type(g) == sk.cycle_type(g) for g in G))

# the curve alpha lifts with degrees 1,1,2,2,2 to both covers
rho, alpha = cfg.rho(), cfg.alpha()
print("rho(alpha) =", rho(alpha))
for S in (H, K):
    print(S.name, "degrees:", degree_multiset(preimage_components(rho, S, alpha)))
