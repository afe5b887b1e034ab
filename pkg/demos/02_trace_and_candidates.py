"""
Pinning down the length of alpha
================================

The metric is given by three 2x2 matrices.  We first find the transcription
of the matrix for ``a`` that reproduces the stated trace, then list every
word with the same letter content and edge budget and check which ones share
alpha's trace.
"""

import mpmath

from sunadacheck.config import default_config
from sunadacheck.enumeration import find_trace_matches, generate_candidates
from sunadacheck.exact_linalg import calibrate_metric, hyperbolic_length, word_matrix
from sunadacheck.words import SUBSURFACE, cyclic_reduce

# only one candidate matrix, multiplied in reading order, hits 109505/2048
rows, chosen = calibrate_metric()
for r in rows:
    print(f"{r.candidate:36s} {r.order:5s} det(a) = {str(r.det_a):6s} tr = {r.trace}  {'<-' if r.matches else ''}")

cfg = default_config()
alpha = cfg.alpha_sub()
m = cfg.metric()
print("tr(alpha) =", word_matrix(m, alpha).trace)
print("length(alpha) =", mpmath.nstr(hyperbolic_length(m, alpha), 30))

# every cyclic word with two a, one a^-1, one x, one x^-1, one more b than b^-1
cands = generate_candidates(cfg.constraints())
print(cands.counts())

# matching on tr^2/det is exact; the matches are alpha and tau(alpha)^-1
rep = find_trace_matches(cands, m, cyclic_reduce(alpha, SUBSURFACE))
for key in rep.class_keys():
    print("same trace:", key)
