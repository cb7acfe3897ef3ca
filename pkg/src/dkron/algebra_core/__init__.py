from .fields import ExtField, GroundField, common_field, field_tower, fq_solve
from .polys import (Poly, RatFunc, hnf_rows, mat_det, mat_identity, mat_inv, mat_mul,
                    parse_poly, ratfunc_from_laurent, vec_mat)
from .logexact import LogExact, LogPoly, frac_str, parse_frac
from .exppoly import (ExpPoly, ExpRat, Laurent, Radical, expoly_taylor,
                      exprat_laurent_at_zero, taylor_value)
from .recurrence import berlekamp_massey, rational_generating_function
