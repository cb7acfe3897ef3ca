"""Class numbers, zeta values, heights and Euler-Kronecker constants of small CM orders over F_3."""
from dkron import cm_heights as cm

ORDERS = [("T", "1"), ("T^3+T+2", "1"), ("T^3-T", "1"), ("2*T^2+1", "1"),
          ("T", "T"), ("T^3+T+2", "T"), ("2*T^2+1", "T")]


def main():
    print("D\tf\th\tzeta(0)\theight A\theight B\tlog_q D_A(O)\tgamma_K")
    for D, f in ORDERS:
        O = cm.make_order(D, f, 3)
        c = cm.taguchi_check(O)
        cov = cm.covolume_order(O)["direct"]
        gamma = cm.euler_kronecker(O)["gamma"] if O.maximal else "-"
        print(f"{D}\t{f}\t{c['h']}\t{c['zeta0']}\t{c['path_a']}\t{c['path_b']}\t{cov}\t{gamma}", flush=True)


if __name__ == "__main__":
    main()
