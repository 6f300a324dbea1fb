"""Default numeric tolerances.

Scale-dependent tolerances are expressed as factors of a body's diameter
(or of a matrix's largest entry) and resolved at the point of use.
"""

# absolute tolerance for point identity / dedup during hull reduction
TAU_GEOM = 1e-9

# affine-rank threshold, relative to diameter
TAU_RANK = 1e-9

# Steiner-point / centering tolerance, relative to diameter
TAU_STEINER = 1e-6

# symmetry test tolerance (body vs. reflected body), relative to diameter
TAU_SYM = 1e-7

# metric-axiom slack, relative to the largest matrix entry
TAU_TRI = 1e-9

# concavity slack for densities, relative to the largest value
TAU_CONC = 1e-9

# discretization allowance for geodesic measurements, relative to the
# intrinsic diameter, calibrated for mesh_level 4 / boundary_res 512
MESH_ALLOWANCE = 0.02

# truncation depth of the weighted sup-series distance on densities;
# terms k = 0..K_MAX-1, truncation error at most 2**-(K_MAX - 1)
K_MAX = 20
