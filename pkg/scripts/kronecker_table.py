"""Both sides of the Kronecker limit formula over the sample points, as a tab-separated table."""
import argparse

from dkron.drinfeld import discriminant_valuation
from dkron.eisenstein import kronecker_check
from dkron.lattices import lattice_from_point
from dkron.suite import kronecker_points


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--r", type=int, nargs="+", default=[1, 2, 3])
    a = ap.parse_args()
    print("q\tr\tz\tY\tlog_q Im\tlog_q|Delta|\tderiv0\trhs\tok")
    for q in a.q:
        for r in a.r:
            for z, Y in kronecker_points(q, r):
                L = lattice_from_point(z, Y)
                k = kronecker_check(L)
                ylab = "A^r" if Y is None else str(Y[0][0])
                print(f"{q}\t{r}\t{z}\t{ylab}\t{z.profile().im_total}\t{discriminant_valuation(L)}\t"
                      f"{k['deriv0']}\t{k['rhs']}\t{k['ok']}", flush=True)


if __name__ == "__main__":
    main()
