"""dkron command line: exact Eisenstein, Siegel unit and CM height computations."""
import argparse
import json
import os
import sys
from dataclasses import fields, replace
from fractions import Fraction

from . import config
from .algebra_core import GroundField, LogExact, LogPoly, RatFunc, parse_poly
from .errors import DkronError


def encode(x, q=None, approx=False):
    if hasattr(x, "to_json"):
        out = x.to_json()
        if approx and isinstance(x, LogExact) and q:
            return {"exact": out, "approx (non-authoritative)": round(x.approx(q), 12)}
        return encode(out, q, approx)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): encode(v, q, approx) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v, q, approx) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, LogPoly):
        return str(x)
    return str(x)


def _flatten(x, prefix=""):
    if isinstance(x, dict):
        for k, v in x.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(x, list):
        for i, v in enumerate(x):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, x


def emit(obj, cfg, approx=False, stream=None):
    stream = stream or sys.stdout
    data = encode(obj, cfg.q, approx)
    if cfg.fmt == "tsv":
        for k, v in _flatten(data):
            stream.write(f"{k}\t{v}\n")
    else:
        stream.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


# argument helpers

def _split_top(s):
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return [t.strip() for t in out]


def parse_vector(q, r, text):
    text = text.strip()
    if text == "0":
        return [RatFunc.const(q, 0)] * r
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    vals = [parse_poly(q, t) for t in _split_top(text)]
    if len(vals) != r:
        raise DkronError(f"expected {r} coordinates in {text!r}")
    return vals


def parse_schwartz(q, r, text):
    """'0:2,(1/T,0):-1' -> SchwartzData on coset representatives."""
    from .lattices import SchwartzData
    D = {}
    for item in _split_top(text):
        key, _, w = item.rpartition(":")
        if not key:
            raise DkronError(f"bad Schwartz datum {item!r}")
        beta = tuple(parse_vector(q, r, key))
        D[beta] = D.get(beta, 0) + int(w)
    return SchwartzData(r, q, D)


def parse_phi(q, r, text):
    from .lattices import SchwartzData
    if text in (None, "", "unit"):
        return SchwartzData.delta0(r, q)
    if text.startswith("level:"):
        m = parse_poly(q, text[6:])
        zero = RatFunc.const(q, 0)
        e1 = tuple([m.inv()] + [zero] * (r - 1))
        e2 = tuple([zero] * (r - 1) + [m.inv()])
        return SchwartzData(r, q, {e1: 1, e2: -1})
    return parse_schwartz(q, r, text)


def parse_point(q, r, text):
    from .period_domain import PointH, standard_point
    gf = GroundField(q)
    if r == 1:
        return PointH(1, [], gf)
    if not text:
        return standard_point(gf, r)
    return PointH.parse(gf, r, _split_top(text))


def parse_label(r, text):
    from .period_domain import VertexLabel
    diag = [int(x) for x in text.split(",")] if text else [0] * r
    if len(diag) != r:
        raise DkronError(f"vertex needs {r} diagonal exponents")
    return VertexLabel(diag, {})


# subcommands

def cmd_eis(a, cfg):
    from .eisenstein import analyze, eis_exact, taylor_at_zero
    from .lattices import lattice_from_point
    z = parse_point(cfg.q, a.r, a.z)
    L = lattice_from_point(z)
    E = eis_exact(L, parse_poly(cfg.q, a.a).num if a.a else None)
    res = analyze(E, max(a.taylor, 1))
    out = {"z": str(z), "series": E, "value0": res.value0, "deriv0": res.deriv0}
    if a.taylor:
        out["taylor"] = [str(c) for c in taylor_at_zero(E, a.taylor)]
    return out, True


def cmd_jacobi(a, cfg):
    from .eisenstein import second_limit_check
    from .lattices import lattice_from_point
    z = parse_point(cfg.q, a.r, a.z)
    L = lattice_from_point(z)
    w = L.from_basis_coords(parse_vector(cfg.q, a.r, a.w))
    c = second_limit_check(L, w)
    return {"z": str(z), **c}, c["ok"]


def cmd_kronecker(a, cfg):
    from .eisenstein import kronecker_check
    from .lattices import lattice_from_point
    z = parse_point(cfg.q, a.r, a.z)
    c = kronecker_check(lattice_from_point(z))
    verdict = "PASS" if c["ok"] else "FAIL"
    return {"z": str(z), "verdict": verdict, "lhs": c["deriv0"], "rhs": c["rhs"], "value0": c["value0"]}, c["ok"]


def cmd_mirabolic(a, cfg):
    from .siegel import lerch_check
    from .period_domain import vertex_point
    lab = parse_label(a.r, a.vertex)
    z = vertex_point(lab, GroundField(cfg.q))
    phi = parse_phi(cfg.q, a.r, a.phi)
    c = lerch_check(z, phi, averaged=not a.unaveraged)
    return {"vertex": lab.to_json(cfg.q), **c}, c["ok"]


def cmd_siegel(a, cfg):
    from .siegel import siegel_report
    z = parse_point(cfg.q, a.r, a.z)
    D = parse_schwartz(cfg.q, a.r, a.D)
    rep = siegel_report(z, D)
    return {"z": str(z), "D": D.to_json(), "report": rep}, True


def cmd_building(a, cfg):
    from .period_domain import building_map
    z = parse_point(cfg.q, a.r, a.z)
    prof = z.profile()
    return {"z": str(z), "im_log": [str(x) for x in prof.im_log], "im_total": str(prof.im_total),
            "building_point": building_map(z).to_json(cfg.q)}, True


def _order(a, cfg):
    from .cm_heights import make_order
    return make_order(a.D, a.f, cfg.q)


def cmd_order(a, cfg):
    from . import cm_heights as cm
    O = _order(a, cfg)
    what = a.what
    if what == "classgroup":
        return {"order": O.to_json(), "class_group": cm.class_group(O).to_json()}, True
    if what == "zeta":
        Z = cm.zeta_ideal(O)
        return {"order": O.to_json(), "zeta": Z, "zeta0": Z.value_at_s0(),
                "logder0": Z.log_derivative_s0()}, True
    if what == "taguchi":
        return cmd_taguchi(a, cfg)
    if what == "gamma":
        return cmd_gamma(a, cfg)
    if what == "covolume":
        c = cm.covolume_order(O)
        return {"order": O.to_json(), **c}, c["ok"]
    raise DkronError(f"unknown order query {what}")


def cmd_taguchi(a, cfg):
    from . import cm_heights as cm
    O = _order(a, cfg)
    c = cm.taguchi_check(O)
    return {"order": O.to_json(), **c}, c["ok"] and c["zeta0_ok"]


def cmd_gamma(a, cfg):
    from . import cm_heights as cm
    O = _order(a, cfg)
    c = cm.euler_kronecker(O)
    ok = c["zeta_matches_curve"] and c["functional_equation"] and c["logder_ok"] and c["height_ok"]
    return {"order": O.to_json(), **c}, ok


def cmd_suite(a, cfg):
    from .suite import run_suite
    only = {int(x) for x in a.only.split(",")} if a.only else None
    results = run_suite(a.q_suite or None, only)
    if cfg.fmt == "tsv" or a.table:
        for r in results:
            sys.stderr.write(r.line() + "\n")
    table = [{"criterion": r.number, "name": r.name, "result": "PASS" if r.ok else "FAIL"} for r in results]
    out = {"table": table}
    if a.details:
        out["details"] = [r.to_json() for r in results]
    return out, all(r.ok for r in results)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=argparse.SUPPRESS, help="odd prime 3..31")
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON file with session settings")
    common.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                        help="valuation units kept in Laurent series")
    common.add_argument("--format", choices=["json", "tsv"], dest="fmt", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--approx", action="store_true", default=argparse.SUPPRESS,
                        help="append decimal approximations")
    p = argparse.ArgumentParser(prog="dkron", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def point_args(sp):
        sp.add_argument("--r", type=int, default=2, help="rank")
        sp.add_argument("--z", default="", help="coordinates, e.g. 'zeta*T^(1/2)'")

    sp = sub.add_parser("eis", parents=[common], help="closed form of E(z, s) and its data at s = 0")
    point_args(sp)
    sp.add_argument("--a", default=None, help="auxiliary nonconstant polynomial (default T)")
    sp.add_argument("--taylor", type=int, default=0)
    sp.set_defaults(fn=cmd_eis)

    sp = sub.add_parser("jacobi", parents=[common], help="E(z, w, s) at a torsion point w")
    point_args(sp)
    sp.add_argument("--w", required=True, help="coordinates of w in k^r, e.g. '(1/T,0)'")
    sp.set_defaults(fn=cmd_jacobi)

    sp = sub.add_parser("kronecker-check", parents=[common], help="both sides of the Kronecker limit formula")
    point_args(sp)
    sp.set_defaults(fn=cmd_kronecker)

    sp = sub.add_parser("mirabolic", parents=[common], help="Laurent data of the mirabolic series at a vertex")
    sp.add_argument("--r", type=int, default=2)
    sp.add_argument("--vertex", default="", help="diagonal exponents, e.g. '1,0'")
    sp.add_argument("--phi", default="unit", help="unit | level:<poly> | explicit coset:weight list")
    sp.add_argument("--unaveraged", action="store_true")
    sp.set_defaults(fn=cmd_mirabolic)

    sp = sub.add_parser("siegel", parents=[common], help="valuation of a Drinfeld-Siegel unit and eta")
    point_args(sp)
    sp.add_argument("--D", required=True, help="coset:weight pairs, e.g. '0:2,(1/T,0):-1'")
    sp.add_argument("--level", default=None, help="accepted for compatibility; read off D")
    sp.set_defaults(fn=cmd_siegel)

    sp = sub.add_parser("building-map", parents=[common], help="imaginary profile and building image of z")
    point_args(sp)
    sp.set_defaults(fn=cmd_building)

    for name, fn in (("order", cmd_order), ("taguchi", cmd_taguchi), ("gamma", cmd_gamma)):
        sp = sub.add_parser(name, parents=[common], help=f"{name} computations for O = A + A f sqrt(D)")
        sp.add_argument("--D", required=True)
        sp.add_argument("--f", default="1")
        if name == "order":
            sp.add_argument("what", choices=["classgroup", "zeta", "taguchi", "gamma", "covolume"])
            sp.add_argument("--ideal", default=None, help="ideal class (zeta is class independent)")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    sp.add_argument("--only", default="", help="comma-separated criterion numbers")
    sp.add_argument("--details", action="store_true")
    sp.add_argument("--table", action="store_true", help="also print one line per criterion to stderr")
    sp.set_defaults(fn=cmd_suite)
    return p


def load_config(a):
    cfg = config.SessionConfig()
    if a.config:
        with open(a.config) as fh:
            data = json.load(fh)
        names = {f.name for f in fields(config.SessionConfig)}
        unknown = set(data) - names
        if unknown:
            raise DkronError(f"unknown config keys: {sorted(unknown)}")
        cfg = replace(cfg, **data)
    env = os.environ.get("DKRON_PRECISION")
    if env:
        cfg = replace(cfg, precision=int(env))
    over = {}
    if a.q is not None:
        over["q"] = a.q
    if a.precision is not None:
        over["precision"] = a.precision
    if a.fmt:
        over["fmt"] = a.fmt
    if a.seed is not None:
        over["seed"] = a.seed
    cfg = replace(cfg, **over)
    GroundField(cfg.q)
    if not 3 <= cfg.q <= 31:
        raise DkronError("q must be an odd prime between 3 and 31")
    return cfg


def main(argv=None):
    parser = build_parser()
    a = parser.parse_args(argv)
    for k, v in (("q", None), ("config", None), ("precision", None), ("fmt", None), ("seed", None), ("approx", False)):
        if not hasattr(a, k):
            setattr(a, k, v)
    a.q_suite = a.q if a.command == "suite" else None
    try:
        cfg = load_config(a)
    except (DkronError, ValueError, TypeError, OSError) as e:
        sys.stderr.write(f"dkron: configuration error: {e}\n")
        return 2
    config.use(cfg)
    try:
        out, ok = a.fn(a, cfg)
    except DkronError as e:
        emit({"error": type(e).__name__, "message": str(e), "command": a.command}, cfg)
        return 1
    emit(out, cfg, a.approx)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
